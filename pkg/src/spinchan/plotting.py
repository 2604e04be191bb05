"""Figure rendering for the sweep reports.

Sweeps write delimited data first; these helpers draw the companion figure
next to it so a report directory is self-contained.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def plot_fidelity_sweep(rows, path) -> None:
    """Fidelity of the transferred twin vs the qubit benchmark, per alpha."""
    alphas = [r["alpha"] for r in rows]
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    ax.plot(alphas, [r["fidelity_equivalent"] for r in rows], "o-", ms=3.5,
            label="twin at minimal separable spin")
    ax.plot(alphas, [r["fidelity_qubit"] for r in rows], "s--", ms=3.5, color="0.5",
            label="qubit benchmark (1+alpha)/2")
    ax.set_xlabel("channel mixing alpha")
    ax.set_ylabel("transfer fidelity")
    ax.set_ylim(0.0, 1.02)
    ax.legend(frameon=False, fontsize=8)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def plot_distance_sweep(rows, path, alpha: float) -> None:
    """Relative distance against spin, separable region marked."""
    spins = [r["spin_twice"] / 2 for r in rows]
    values = [r["relative_distance"] for r in rows]
    flags = [r["separable_flag"] for r in rows]
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    ax.plot(spins, values, "-", color="0.6", lw=1)
    ent = [i for i, f in enumerate(flags) if not f]
    sep = [i for i, f in enumerate(flags) if f]
    if ent:
        ax.plot([spins[i] for i in ent], [values[i] for i in ent], "o", ms=3.5,
                color="tab:red", label="entangled channel")
    if sep:
        ax.plot([spins[i] for i in sep], [values[i] for i in sep], "o", ms=3.5,
                color="tab:blue", label="separable channel")
    ax.set_xlabel("spin S")
    ax.set_ylabel("relative distance")
    ax.set_title(f"alpha = {alpha:g}", fontsize=9)
    ax.legend(frameon=False, fontsize=8)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
