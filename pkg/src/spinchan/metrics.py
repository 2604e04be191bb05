"""State-comparison measures and the measurement-disturbance witness.

The witness reports the smallest Hilbert-Schmidt disturbance a projective
measurement on the qubit side can inflict; any strictly positive value rules
out a decomposition that is classical on the qubit, so it certifies nonzero
discord.  A zero value is inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import ContractViolationError, DimensionMismatchError
from .linalg import embed_operator, psd_sqrt
from .measurement import direction_projectors
from .spin import HalfInteger
from .states import DensityMatrix

FIDELITY_SYMMETRY_TOL = 1e-8
GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class MetricReport:
    fidelity: float
    hs_distance: float
    relative_distance: float
    witness_value: Optional[float] = None


def _uhlmann(a: np.ndarray, b: np.ndarray) -> float:
    # Tr sqrt(sqrt(a) b sqrt(a)) equals the trace norm of sqrt(a) sqrt(b)
    prod = psd_sqrt(a) @ psd_sqrt(b)
    return float(np.sum(scipy.linalg.svdvals(prod)) ** 2)


def fidelity(r1: DensityMatrix, r2: DensityMatrix) -> float:
    """(Tr sqrt(sqrt(r1) r2 sqrt(r1)))^2, averaged over both orderings."""
    if r1.dim != r2.dim:
        raise DimensionMismatchError(f"state dimensions differ: {r1.dim} vs {r2.dim}")
    f12 = _uhlmann(r1.matrix, r2.matrix)
    f21 = _uhlmann(r2.matrix, r1.matrix)
    if abs(f12 - f21) > FIDELITY_SYMMETRY_TOL:
        raise ContractViolationError(
            f"fidelity asymmetry {abs(f12 - f21):.3e} exceeds {FIDELITY_SYMMETRY_TOL:.1e}"
        )
    return 0.5 * (f12 + f21)


def hs_distance(r1: DensityMatrix, r2: DensityMatrix) -> float:
    """sqrt(Tr[(r1 - r2)^2]), the Frobenius distance of Hermitian matrices."""
    if r1.dim != r2.dim:
        raise DimensionMismatchError(f"state dimensions differ: {r1.dim} vs {r2.dim}")
    return float(np.linalg.norm(r1.matrix - r2.matrix))


def channel_distance_scale(s: HalfInteger) -> float:
    """sqrt((S+1) / (3 S (2S+1))), the distance unit of the twin family."""
    spin = s.value
    return float(np.sqrt((spin + 1.0) / (3.0 * spin * (2.0 * spin + 1.0))))


def relative_distance(alpha: float, s: HalfInteger) -> float:
    """Distance gained over the fully noisy channel: alpha * scale(S)."""
    return alpha * channel_distance_scale(s)


@dataclass(frozen=True)
class AsymptoticsReport:
    relative_distance: float
    large_spin_limit: float
    limit_gap: float
    branch_plus_distance: float
    branch_minus_distance: float
    branch_gap: float
    branch_ratio: float


def asymptotics_check(alpha: float, s: HalfInteger) -> AsymptoticsReport:
    """Compare the exact distance figures with their large-S forms.

    The qubit-transfer figure approaches alpha / sqrt(6 S); the two branch
    figures of the qudit transfer approach each other with exact ratio
    (S+1)/S.
    """
    scale = channel_distance_scale(s)
    d = alpha * scale
    limit = alpha / np.sqrt(6.0 * s.value)
    d1 = (alpha / 3.0) * scale
    d2 = (alpha * (s.value + 1.0) / (3.0 * s.value)) * scale
    return AsymptoticsReport(
        relative_distance=d,
        large_spin_limit=float(limit),
        limit_gap=float(abs(d - limit) / d) if d else 0.0,
        branch_plus_distance=d1,
        branch_minus_distance=d2,
        branch_gap=float(abs(d1 - d2) / d1) if d1 else 0.0,
        branch_ratio=float(d2 / d1) if d1 else 0.0,
    )


def qubit_dephased(rho: DensityMatrix, direction) -> np.ndarray:
    """Sum of P +- rho P +- for the qubit projectors along ``direction``."""
    if rho.dims[0] != 2:
        raise DimensionMismatchError(f"first subsystem must be a qubit, profile {rho.dims}")
    out = np.zeros_like(rho.matrix)
    for _, proj in direction_projectors(direction).items():
        full = embed_operator(proj, rho.dims, (0,))
        out = out + full @ rho.matrix @ full
    return out


def _direction(theta: float, phi: float) -> np.ndarray:
    st = np.sin(theta)
    return np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def _golden_section(f, lo: float, hi: float, iters: int) -> float:
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (a + b) / 2


def disturbance_witness(
    rho: DensityMatrix,
    coarse: tuple[int, int] = (30, 60),
    refine_iters: int = 50,
    sweeps: int = 6,
) -> tuple[float, np.ndarray]:
    """Minimum over qubit measurement directions of the dephasing disturbance.

    Coarse scan over a (n_theta x n_phi) grid, then alternating golden-section
    refinement in theta and phi.  Returns the minimal Hilbert-Schmidt
    disturbance and its direction; a value above ~1e-6 certifies discord with
    respect to qubit-side measurements.
    """
    if rho.dims[0] != 2:
        raise DimensionMismatchError(f"first subsystem must be a qubit, profile {rho.dims}")

    def value(theta: float, phi: float) -> float:
        return float(np.linalg.norm(rho.matrix - qubit_dephased(rho, _direction(theta, phi))))

    n_theta, n_phi = coarse
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    best = (np.inf, 0.0, 0.0)
    for th in thetas:
        for ph in phis:
            v = value(th, ph)
            if v < best[0]:
                best = (v, th, ph)

    dt = np.pi / (n_theta - 1)
    dp = 2 * np.pi / n_phi
    _, th, ph = best
    for _ in range(sweeps):
        th = _golden_section(lambda t: value(t, ph), th - dt, th + dt, refine_iters)
        ph = _golden_section(lambda p: value(th, p), ph - dp, ph + dp, refine_iters)
    v = value(th, ph)
    if v > best[0]:
        v, th, ph = best
    return v, _direction(th, ph)
