"""Command-line front end.

    spinchan run <A|B|C|D> --alpha F [--beta F] [--spin auto|fixed:<2S>]
                 [--bloch x,y,z | --dir x,y,z] --seed N --out PATH
    spinchan sweep fidelity --alpha-range a:b:step [--spin ...] --out CSV [--plot [PNG]]
    spinchan sweep distance --alpha F --spin-range a:b --out CSV [--plot [PNG]]
    spinchan verify [scope]

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import verify
from .errors import InvalidInputError, SpinChanError
from .metrics import fidelity, relative_distance
from .protocols import (
    protocol_discord_swap,
    protocol_known_qubit,
    protocol_unknown_qubit,
    protocol_unknown_qudit,
)
from .spin import HalfInteger
from .states import BlochVector, equivalent_qudit, s_min

PLOT_PLACEHOLDER = "__derive__"


def _parse_vector(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidInputError(f"expected three comma-separated components, got {text!r}")
    try:
        return np.array([float(x) for x in parts])
    except ValueError as exc:
        raise InvalidInputError(f"non-numeric vector component in {text!r}") from exc


def _parse_range(text: str, expect_step: bool) -> tuple[float, float, float]:
    parts = text.split(":")
    if expect_step and len(parts) != 3:
        raise InvalidInputError(f"expected start:stop:step, got {text!r}")
    if not expect_step and len(parts) not in (2, 3):
        raise InvalidInputError(f"expected start:stop, got {text!r}")
    try:
        nums = [float(x) for x in parts]
    except ValueError as exc:
        raise InvalidInputError(f"non-numeric range bound in {text!r}") from exc
    if len(nums) == 2:
        nums.append(0.5)
    start, stop, step = nums
    if step <= 0:
        raise InvalidInputError(f"range step must be positive, got {step!r}")
    return start, stop, step


def _resolve_spin(spec: str, alpha: float, beta: float | None = None) -> HalfInteger:
    if spec == "auto":
        s = s_min(alpha)
        if beta is not None:
            s = max(s, s_min(beta))
        return s
    if spec.startswith("fixed:"):
        try:
            twice = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise InvalidInputError(f"bad spin spec {spec!r}") from exc
        return HalfInteger(twice)
    raise InvalidInputError(f"--spin must be 'auto' or 'fixed:<2S>', got {spec!r}")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def cmd_run(args) -> int:
    spin = _resolve_spin(args.spin, args.alpha, args.beta if args.protocol == "D" else None)
    if args.protocol == "A":
        if args.bloch is None:
            raise InvalidInputError("protocol A needs --bloch x,y,z")
        p = BlochVector.from_sequence(_parse_vector(args.bloch))
        transcript = protocol_unknown_qubit(p, args.alpha, spin, args.seed)
    elif args.protocol == "B":
        if args.dir is None:
            raise InvalidInputError("protocol B needs --dir x,y,z")
        transcript = protocol_known_qubit(_parse_vector(args.dir), args.alpha, spin, args.seed)
    elif args.protocol == "C":
        if args.bloch is None:
            raise InvalidInputError("protocol C needs --bloch x,y,z")
        p = BlochVector.from_sequence(_parse_vector(args.bloch))
        transcript = protocol_unknown_qudit(p, args.alpha, spin, args.seed)
    else:
        if args.beta is None:
            raise InvalidInputError("protocol D needs --beta")
        transcript = protocol_discord_swap(args.alpha, args.beta, spin, args.seed)
    transcript.write(args.out, include_state=args.embed_state)
    print(
        f"protocol {transcript.protocol}: outcome {transcript.outcome} "
        f"(p = {transcript.probability:.6f}), residual {transcript.residual:.3e} "
        f"-> {args.out}"
    )
    return 0


def _plot_path(plot_arg, out: str) -> Path | None:
    if plot_arg is None:
        return None
    if plot_arg == PLOT_PLACEHOLDER:
        return Path(out).with_suffix(".png")
    return Path(plot_arg)


def cmd_sweep_fidelity(args) -> int:
    start, stop, step = _parse_range(args.alpha_range, expect_step=True)
    z = BlochVector(0.0, 0.0, 1.0)
    rows = []
    alpha = start
    while alpha <= stop + 1e-12:
        spin = _resolve_spin(args.spin, alpha)
        f_eq = fidelity(equivalent_qudit(spin, z), equivalent_qudit(spin, z.scaled(alpha)))
        rows.append(
            {
                "alpha": alpha,
                "spin_twice": spin.twice,
                "fidelity_equivalent": f_eq,
                "fidelity_qubit": (1 + alpha) / 2,
            }
        )
        alpha += step
    lines = ["alpha,spin_twice,fidelity_equivalent,fidelity_qubit"]
    for r in rows:
        lines.append(
            f"{_fmt(r['alpha'])},{r['spin_twice']},"
            f"{_fmt(r['fidelity_equivalent'])},{_fmt(r['fidelity_qubit'])}"
        )
    Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"wrote {len(rows)} rows -> {args.out}")
    plot = _plot_path(args.plot, args.out)
    if plot is not None:
        from .plotting import plot_fidelity_sweep

        plot_fidelity_sweep(rows, plot)
        print(f"rendered figure -> {plot}")
    return 0


def cmd_sweep_distance(args) -> int:
    start, stop, _ = _parse_range(args.spin_range, expect_step=False)
    alpha = args.alpha
    if not -1.0 < alpha < 1.0:
        raise InvalidInputError(f"--alpha must lie in (-1, 1), got {alpha!r}")
    rows = []
    twice = HalfInteger.from_value(start).twice if start >= 0.5 else 1
    stop_twice = HalfInteger.from_value(stop).twice
    while twice <= stop_twice:
        s = HalfInteger(twice)
        separable = abs(alpha) <= twice / (twice + 2)
        rows.append(
            {
                "spin_twice": twice,
                "relative_distance": relative_distance(alpha, s),
                "separable_flag": int(separable),
            }
        )
        twice += 1
    lines = ["spin_twice,relative_distance,separable_flag"]
    for r in rows:
        lines.append(f"{r['spin_twice']},{_fmt(r['relative_distance'])},{r['separable_flag']}")
    Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"wrote {len(rows)} rows -> {args.out}")
    plot = _plot_path(args.plot, args.out)
    if plot is not None:
        from .plotting import plot_distance_sweep

        plot_distance_sweep(rows, plot, alpha)
        print(f"rendered figure -> {plot}")
    return 0


def cmd_verify(args) -> int:
    results = verify.run(args.scope)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        detail = f"  [{r.detail}]" if r.detail else ""
        print(f"{status}  {r.scope:<20} {r.name:<{width}}{detail}")
        failures += 0 if r.passed else 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinchan",
        description="Simulate and verify communication protocols over separable "
        "qubit-qudit spin channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute one protocol and write its transcript")
    run.add_argument("protocol", choices=("A", "B", "C", "D"))
    run.add_argument("--alpha", type=float, required=True, help="channel mixing parameter")
    run.add_argument("--beta", type=float, help="second channel mixing (protocol D)")
    run.add_argument(
        "--spin",
        default="auto",
        help="'auto' (minimal separable spin) or 'fixed:<2S>' (default: auto)",
    )
    run.add_argument("--bloch", help="input polarisation x,y,z (protocols A and C)")
    run.add_argument("--dir", help="known qubit direction x,y,z (protocol B)")
    run.add_argument("--seed", type=int, required=True, help="outcome sampling seed")
    run.add_argument("--out", required=True, help="transcript JSON path")
    run.add_argument(
        "--embed-state", action="store_true", help="embed the output state matrix in the JSON"
    )
    run.set_defaults(fn=cmd_run)

    sweep = sub.add_parser("sweep", help="parameter sweeps emitting CSV reports")
    sweep_sub = sweep.add_subparsers(dest="sweep_kind", required=True)

    fid = sweep_sub.add_parser("fidelity", help="transfer fidelity against alpha")
    fid.add_argument("--alpha-range", required=True, help="start:stop:step")
    fid.add_argument("--spin", default="auto", help="'auto' or 'fixed:<2S>' (default: auto)")
    fid.add_argument("--seed", type=int, default=0, help="accepted for interface uniformity; rows are deterministic")
    fid.add_argument("--out", required=True, help="CSV path")
    fid.add_argument(
        "--plot",
        nargs="?",
        const=PLOT_PLACEHOLDER,
        help="also render a figure (default: CSV path with .png)",
    )
    fid.set_defaults(fn=cmd_sweep_fidelity)

    dist = sweep_sub.add_parser("distance", help="relative distance against spin")
    dist.add_argument("--alpha", type=float, required=True)
    dist.add_argument("--spin-range", required=True, help="start:stop in spin units")
    dist.add_argument("--seed", type=int, default=0, help="accepted for interface uniformity; rows are deterministic")
    dist.add_argument("--out", required=True, help="CSV path")
    dist.add_argument(
        "--plot",
        nargs="?",
        const=PLOT_PLACEHOLDER,
        help="also render a figure (default: CSV path with .png)",
    )
    dist.set_defaults(fn=cmd_sweep_distance)

    ver = sub.add_parser("verify", help="run invariant and acceptance checks")
    ver.add_argument(
        "scope",
        nargs="?",
        default="all",
        choices=("all",) + tuple(verify.SCOPES),
        help="check scope (default: all)",
    )
    ver.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SpinChanError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
