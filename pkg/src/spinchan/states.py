"""State constructors.

Qubits from Bloch vectors, their spin-S twins carrying the same polarisation,
the noisy-singlet channel family in both 2x2 and 2x(2S+1) form, the minimal
spin at which the channel becomes separable, coherent-state sampling of
states, and the explicit product-state decomposition that certifies
separability by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    ExceptionalStateError,
    InvalidBlochError,
    InvalidParameterError,
    NotPositiveError,
    SeparabilityRangeError,
)
from .linalg import as_matrix, hermiticity_defect, partial_trace, tensor_product
from .sphere import FULL_SOLID_ANGLE, SphereGrid
from .spin import PAULI, HalfInteger, scs_amplitude_matrix, spin_operators

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_FLOOR = -1e-10
BLOCH_TOL = 1e-12


@dataclass(frozen=True)
class BlochVector:
    """Polarisation 3-vector with |p| <= 1."""

    px: float
    py: float
    pz: float

    def __post_init__(self):
        if self.norm > 1.0 + BLOCH_TOL:
            raise InvalidBlochError(f"|p| = {self.norm!r} exceeds 1")

    @classmethod
    def from_sequence(cls, seq) -> "BlochVector":
        v = np.asarray(seq, dtype=float)
        if v.shape != (3,):
            raise InvalidBlochError(f"expected 3 components, got shape {v.shape}")
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.px, self.py, self.pz])

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.px**2 + self.py**2 + self.pz**2))

    def scaled(self, factor: float) -> "BlochVector":
        return BlochVector(factor * self.px, factor * self.py, factor * self.pz)


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density operator with its subsystem dimension profile."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = as_matrix(self.matrix)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if prod(dims) != m.shape[0]:
            raise DimensionMismatchError(f"profile {dims} does not match side {m.shape[0]}")
        defect = hermiticity_defect(m)
        if defect > HERMITIAN_TOL:
            raise NotPositiveError(f"density matrix not Hermitian (defect {defect:.3e})")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise NotPositiveError(f"density matrix trace {tr!r} != 1")
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < EIG_FLOOR:
            raise NotPositiveError(f"density matrix has eigenvalue {lo:.3e} < 0")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def expectation(self, op) -> float:
        """Real expectation value of a Hermitian observable."""
        return float(np.trace(self.matrix @ np.asarray(op, dtype=complex)).real)

    def marginal(self, keep: Sequence[int]) -> "DensityMatrix":
        keep = tuple(sorted(set(keep)))
        reduced = partial_trace(self.matrix, self.dims, keep)
        return DensityMatrix(reduced, tuple(self.dims[i] for i in keep))

    def conjugated(self, unitary) -> "DensityMatrix":
        u = as_matrix(unitary)
        return DensityMatrix(u @ self.matrix @ u.conj().T, self.dims)


def maximally_mixed(dims) -> DensityMatrix:
    dims = (dims,) if isinstance(dims, int) else tuple(int(d) for d in dims)
    side = prod(dims)
    return DensityMatrix(np.eye(side, dtype=complex) / side, dims)


def qubit_state(p: BlochVector) -> DensityMatrix:
    """(1/2)(1 + sigma.p)."""
    m = 0.5 * (np.eye(2, dtype=complex) + p.px * PAULI[0] + p.py * PAULI[1] + p.pz * PAULI[2])
    return DensityMatrix(m, (2,))


def equivalent_qudit(s: HalfInteger, p: BlochVector) -> DensityMatrix:
    """Spin-S twin of a qubit: (1/(2S+1))(1 + (S.p)/S).

    Same polarisation vector, same coherent-state samples, different rank.
    """
    ops = spin_operators(s)
    m = (np.eye(s.dim, dtype=complex) + ops.dot(p.vec) / s.value) / s.dim
    return DensityMatrix(m, (s.dim,))


def _pauli_dot_pauli() -> np.ndarray:
    return sum(tensor_product(g, g) for g in PAULI)


def werner_2x2(alpha: float) -> DensityMatrix:
    """(1/4)(1 - alpha sigma.sigma) for -1/3 <= alpha <= 1."""
    if not -1 / 3 - 1e-12 <= alpha <= 1 + 1e-12:
        raise InvalidParameterError(f"alpha = {alpha!r} outside [-1/3, 1]")
    m = (np.eye(4, dtype=complex) - alpha * _pauli_dot_pauli()) / 4
    return DensityMatrix(m, (2, 2))


def sigma_dot_spin_unit(s: HalfInteger) -> np.ndarray:
    """sigma tensor S/S summed over components (qubit factor first)."""
    ops = spin_operators(s)
    return sum(tensor_product(g, a) for g, a in zip(PAULI, ops.unit_vector()))


def equivalent_werner(alpha: float, s: HalfInteger) -> DensityMatrix:
    """2x(2S+1) twin of the noisy singlet: (1/(2(2S+1)))(1 - alpha sigma.(S/S)).

    Valid whenever the result is positive semidefinite, i.e. for
    -S/(S+1) <= alpha <= 1 (checked numerically, not by formula).
    """
    side = 2 * s.dim
    m = (np.eye(side, dtype=complex) - alpha * sigma_dot_spin_unit(s)) / side
    try:
        return DensityMatrix(m, (2, s.dim))
    except NotPositiveError as exc:
        raise InvalidParameterError(
            f"alpha = {alpha!r} gives a non-positive channel at S = {s}: {exc}"
        ) from exc


def s_min(alpha: float) -> HalfInteger:
    """Smallest S whose 2x(2S+1) channel twin at this alpha is separable.

    Separability holds iff |alpha| <= S/(S+1); alpha with |alpha| >= 1 has no
    finite-spin separable twin.
    """
    a = abs(float(alpha))
    if a >= 1.0:
        raise ExceptionalStateError(f"|alpha| = {a!r} >= 1 admits no separable twin")
    twice = 1
    while a > twice / (twice + 2):
        twice += 1
    return HalfInteger(twice)


@dataclass(frozen=True)
class QFunctionSamples:
    """Coherent-state diagonal of a state on a grid.

    values has one axis per subsystem; axis k runs over the grid nodes for
    subsystem k.  The quadrature-weighted total is 1 for a unit-trace state.
    """

    grid: SphereGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        # same floor as the state validation: samples of a valid state are
        # bounded below by its least eigenvalue times the prefactor
        if v.size and float(v.min()) < -1e-9:
            raise NotPositiveError(f"coherent-state samples go negative ({v.min():.3e})")

    @property
    def quadrature_total(self) -> float:
        acc = self.values
        for _ in range(acc.ndim):
            acc = np.tensordot(acc, self.grid.weight, axes=([acc.ndim - 1], [0]))
        return float(acc)


def q_function(rho: DensityMatrix, grid: SphereGrid) -> QFunctionSamples:
    """Sample ((d1/4pi)...(dk/4pi)) <n1 x ... x nk| rho |n1 x ... x nk>.

    One prefactor d/(4 pi) per tensor factor; supports one or two subsystems.
    """
    dims = rho.dims
    mats = []
    for d in dims:
        if d < 2:
            raise InvalidParameterError("subsystems must have dimension >= 2")
        mats.append(scs_amplitude_matrix(HalfInteger(d - 1), grid))
    pref = prod(d / FULL_SOLID_ANGLE for d in dims)
    if len(dims) == 1:
        psi = mats[0]
        vals = np.einsum("ak,ab,bk->k", psi.conj(), rho.matrix, psi, optimize=True).real
    elif len(dims) == 2:
        u, v = mats
        t = rho.matrix.reshape(dims + dims)
        vals = np.einsum(
            "ai,bj,abcd,ci,dj->ij", u.conj(), v.conj(), t, u, v, optimize=True
        ).real
    else:
        raise InvalidParameterError("coherent-state sampling supports at most two subsystems")
    return QFunctionSamples(grid, pref * vals)


@dataclass(frozen=True)
class ProductEnsemble:
    """Convex mixture of explicit qubit x qudit product states.

    Existence of this object is a separability certificate for whatever the
    mixture reconstructs.
    """

    weights: np.ndarray
    qubit_factors: tuple[DensityMatrix, ...]
    qudit_factors: tuple[DensityMatrix, ...]

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if not (len(w) == len(self.qubit_factors) == len(self.qudit_factors)):
            raise InvalidParameterError("weights and factors must have equal length")
        if w.size and float(w.min()) < 0:
            raise NotPositiveError(f"ensemble weight {w.min():.3e} is negative")
        if abs(float(w.sum()) - 1.0) > 1e-12:
            raise InvalidParameterError(f"weights sum to {w.sum()!r}, expected 1")

    def __len__(self):
        return len(self.weights)

    def reconstruct(self) -> DensityMatrix:
        acc = None
        for w, a, b in zip(self.weights, self.qubit_factors, self.qudit_factors):
            term = w * tensor_product(a.matrix, b.matrix)
            acc = term if acc is None else acc + term
        return DensityMatrix(acc, (self.qubit_factors[0].dim, self.qudit_factors[0].dim))


def separable_decomposition(alpha: float, s: HalfInteger, grid: SphereGrid) -> ProductEnsemble:
    """Explicit product mixture reconstructing the 2x(2S+1) channel twin.

    Averages (1/2)(1 - beta sigma.n) x |n><n| over the sphere with
    beta = alpha (S+1)/S, which needs |alpha| <= S/(S+1).  The grid must
    integrate spherical harmonics exactly to degree 2S + 1 for the
    reconstruction to hold to quadrature accuracy.
    """
    bound = s.twice / (s.twice + 2)
    if abs(alpha) > bound + 1e-12:
        raise SeparabilityRangeError(
            f"|alpha| = {abs(alpha)!r} exceeds S/(S+1) = {bound!r} at S = {s}"
        )
    beta = alpha * (s.twice + 2) / s.twice
    weights = grid.weight / FULL_SOLID_ANGLE
    psi = scs_amplitude_matrix(s, grid)
    qubits = []
    qudits = []
    for k, n in enumerate(grid.directions):
        qubits.append(qubit_state(BlochVector.from_sequence(-beta * n)))
        proj = np.outer(psi[:, k], psi[:, k].conj())
        qudits.append(DensityMatrix(proj, (s.dim,)))
    return ProductEnsemble(weights, tuple(qubits), tuple(qudits))


def retrieval_observable(s: HalfInteger, direction) -> np.ndarray:
    """(3S/(S+1)) (S.n)/S: reads a twin's polarisation at qubit scale."""
    n = np.asarray(direction, dtype=float)
    norm = float(np.linalg.norm(n))
    if n.shape != (3,) or abs(norm - 1.0) > 1e-12:
        raise InvalidParameterError(f"direction must be a unit 3-vector, got {direction!r}")
    ops = spin_operators(s)
    return (3.0 / (s.value + 1.0)) * ops.dot(n)
