"""Projective measurements.

Projector families (two-qubit Bell basis, the dichotomic qudit-qubit
exchange observable, qubit direction projectors), their application to
multipartite states with exact outcome probabilities, seeded outcome
sampling, and the four-party contraction that projects parties (1, 4) of a
pair of channels without materialising the joint matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .errors import (
    CapacityError,
    ContractViolationError,
    DimensionMismatchError,
    InvalidInputError,
)
from .linalg import embed_operator, hermitian_eig, partial_trace, tensor_product
from .spin import PAULI, HalfInteger, spin_operators
from .states import DensityMatrix

PROJECTOR_TOL = 1e-10
EIG_CLUSTER_TOL = 1e-8
ZERO_PROBABILITY = 1e-14
DENSE_QUDIT_CAP = 21

BELL_LABELS = ("psi_minus", "phi_minus", "phi_plus", "psi_plus")
#: sign of the sigma_i sigma_i correlator in each Bell projector, (xx, yy, zz)
BELL_SIGNS = {
    "psi_minus": (-1, -1, -1),
    "phi_minus": (-1, +1, +1),
    "phi_plus": (+1, -1, +1),
    "psi_plus": (+1, +1, -1),
}


@dataclass(frozen=True)
class ProjectorSet:
    """Complete family of mutually orthogonal projectors on fixed subsystems."""

    labels: tuple[str, ...]
    projectors: tuple[np.ndarray, ...]
    acting: tuple[int, ...]

    def __post_init__(self):
        mats = tuple(np.asarray(p, dtype=complex) for p in self.projectors)
        for p in mats:
            p.setflags(write=False)
        object.__setattr__(self, "projectors", mats)
        if len(self.labels) != len(mats) or not mats:
            raise InvalidInputError("labels and projectors must pair up non-trivially")
        side = mats[0].shape[0]
        total = np.zeros((side, side), dtype=complex)
        for label, p in zip(self.labels, mats):
            if p.shape != (side, side):
                raise DimensionMismatchError(f"projector {label} has shape {p.shape}")
            if np.max(np.abs(p - p.conj().T)) > PROJECTOR_TOL:
                raise ContractViolationError(f"projector {label} is not Hermitian")
            if np.max(np.abs(p @ p - p)) > PROJECTOR_TOL:
                raise ContractViolationError(f"projector {label} is not idempotent")
            total += p
        if np.max(np.abs(total - np.eye(side))) > PROJECTOR_TOL:
            raise ContractViolationError("projectors do not sum to the identity")
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if np.max(np.abs(mats[i] @ mats[j])) > PROJECTOR_TOL:
                    raise ContractViolationError(
                        f"projectors {self.labels[i]} and {self.labels[j]} overlap"
                    )

    def __len__(self):
        return len(self.projectors)

    def items(self):
        return zip(self.labels, self.projectors)

    def on(self, *indices: int) -> "ProjectorSet":
        """Same projectors bound to different subsystem slots."""
        return replace(self, acting=tuple(indices))


def bell_projectors() -> ProjectorSet:
    """The four maximally entangled two-qubit projectors, in Pauli form."""
    eye = np.eye(4, dtype=complex)
    mats = []
    for label in BELL_LABELS:
        signs = BELL_SIGNS[label]
        corr = sum(sg * tensor_product(g, g) for sg, g in zip(signs, PAULI))
        mats.append((eye + corr) / 4)
    return ProjectorSet(BELL_LABELS, tuple(mats), (0, 1))


def exchange_observable(s: HalfInteger) -> np.ndarray:
    """(S/S).sigma on a qudit x qubit pair (qudit factor first)."""
    ops = spin_operators(s)
    return sum(tensor_product(a, g) for a, g in zip(ops.unit_vector(), PAULI))


def eigenvalue_cluster_projectors(
    op, labels: Sequence[str], tol: float = EIG_CLUSTER_TOL, descending: bool = True
) -> tuple[ProjectorSet, tuple[float, ...]]:
    """Spectral projectors of a Hermitian operator, grouping eigenvalues
    closer than ``tol`` into one cluster.  Returns the set and the cluster
    eigenvalue means, ordered descending by default."""
    w, v = hermitian_eig(op)
    clusters: list[list[int]] = [[0]]
    for i in range(1, len(w)):
        if w[i] - w[clusters[-1][0]] <= tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    if descending:
        clusters = clusters[::-1]
    if len(clusters) != len(labels):
        raise ContractViolationError(
            f"expected {len(labels)} eigenvalue clusters, found {len(clusters)}"
        )
    mats = []
    values = []
    for idx in clusters:
        block = v[:, idx]
        mats.append(block @ block.conj().T)
        values.append(float(np.mean(w[idx])))
    return (
        ProjectorSet(tuple(labels), tuple(mats), (0, 1)),
        tuple(values),
    )


def dichotomic_projectors(s: HalfInteger) -> ProjectorSet:
    """Eigenprojectors of the qudit-qubit exchange observable.

    Eigenvalue +1 carries rank 2(S+1) ("plus"), eigenvalue -(S+1)/S carries
    rank 2S ("minus").
    """
    pset, values = eigenvalue_cluster_projectors(exchange_observable(s), ("plus", "minus"))
    expected = (1.0, -(s.value + 1.0) / s.value)
    for got, want in zip(values, expected):
        if abs(got - want) > 1e-8:
            raise ContractViolationError(
                f"exchange observable spectrum {values} != {expected}"
            )
    return pset


def direction_projectors(m) -> ProjectorSet:
    """Qubit projectors (1/2)(1 +- sigma.m) for a unit direction m."""
    v = np.asarray(m, dtype=float)
    if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise ContractViolationError(f"direction must be a unit 3-vector, got {m!r}")
    sm = v[0] * PAULI[0] + v[1] * PAULI[1] + v[2] * PAULI[2]
    eye = np.eye(2, dtype=complex)
    return ProjectorSet(("plus", "minus"), ((eye + sm) / 2, (eye - sm) / 2), (0,))


@dataclass(frozen=True)
class MeasurementRecord:
    """One outcome: its label, exact probability, and the normalised state of
    the kept subsystems (None when the outcome has no support)."""

    label: str
    probability: float
    post_state: Optional[DensityMatrix]

    @property
    def defined(self) -> bool:
        return self.post_state is not None


def measure(
    state: DensityMatrix, projectors: ProjectorSet, keep: Sequence[int]
) -> list[MeasurementRecord]:
    """Apply a complete projector family and collapse onto ``keep``.

    probability_k = Tr[(P_k x 1) rho]; the post state is the partial trace of
    (P_k x 1) rho (P_k x 1) over everything not kept, renormalised.
    """
    keep = tuple(sorted(set(int(k) for k in keep)))
    records = []
    for label, proj in projectors.items():
        full = embed_operator(proj, state.dims, projectors.acting)
        projected = full @ state.matrix @ full
        p = float(np.trace(projected).real)
        if p < ZERO_PROBABILITY:
            records.append(MeasurementRecord(label, max(p, 0.0), None))
            continue
        reduced = partial_trace(projected, state.dims, keep) / p
        post = DensityMatrix(reduced, tuple(state.dims[i] for i in keep))
        records.append(MeasurementRecord(label, p, post))
    return records


def sample_outcome(records: Sequence[MeasurementRecord], seed: int) -> str:
    """Inverse-CDF draw from the outcome distribution.

    Deterministic given (records, seed); the generator is NumPy's PCG64.
    """
    if not records:
        raise InvalidInputError("cannot sample from an empty record list")
    probs = np.array([r.probability for r in records], dtype=float)
    total = float(probs.sum())
    if abs(total - 1.0) > 1e-10:
        raise InvalidInputError(f"outcome probabilities sum to {total!r}, not 1")
    u = np.random.Generator(np.random.PCG64(seed)).random()
    idx = int(np.searchsorted(np.cumsum(probs), u, side="right"))
    return records[min(idx, len(records) - 1)].label


def four_party_contract(
    rho12: DensityMatrix,
    rho34: DensityMatrix,
    projector_on_1_4: np.ndarray,
    method: str = "factored",
) -> tuple[float, Optional[DensityMatrix]]:
    """Project parties (1, 4), both qubits, of rho12 x rho34 and return the
    outcome probability plus the normalised state of parties (2, 3).

    The factored path contracts indices directly; the dense path (an oracle,
    capped at qudit dimension 21) materialises the full four-party matrix.
    """
    if rho12.dims[0] != 2 or rho34.dims[1] != 2:
        raise DimensionMismatchError(
            f"parties 1 and 4 must be qubits, got profiles {rho12.dims}, {rho34.dims}"
        )
    proj = np.asarray(projector_on_1_4, dtype=complex)
    if proj.shape != (4, 4):
        raise DimensionMismatchError(f"projector must be 4x4, got {proj.shape}")
    db = rho12.dims[1]
    dc = rho34.dims[0]

    if method == "dense":
        if max(db, dc) > DENSE_QUDIT_CAP:
            raise CapacityError(
                f"dense four-party path capped at qudit dimension {DENSE_QUDIT_CAP}"
            )
        dims = (2, db, dc, 2)
        full = tensor_product(rho12.matrix, rho34.matrix)
        emb = embed_operator(proj, dims, (0, 3))
        projected = emb @ full @ emb
        p = float(np.trace(projected).real)
        if p < ZERO_PROBABILITY:
            return max(p, 0.0), None
        reduced = partial_trace(projected, dims, (1, 2)) / p
        return p, DensityMatrix(reduced, (db, dc))
    if method != "factored":
        raise InvalidInputError(f"unknown method {method!r}")

    q4 = proj.reshape(2, 2, 2, 2)
    r4 = rho12.matrix.reshape(2, db, 2, db)
    s4 = rho34.matrix.reshape(dc, 2, dc, 2)
    # post[(b,c),(b',c')] = sum_{a,d,e,f} P[(a,d),(e,f)] r[e,b,a,b'] s[c,f,c',d]
    t = np.einsum("adef,ebag,cfhd->bcgh", q4, r4, s4, optimize=True)
    p = float(np.einsum("bcbc->", t).real)
    if p < ZERO_PROBABILITY:
        return max(p, 0.0), None
    post = t.reshape(db * dc, db * dc) / p
    return p, DensityMatrix(post, (db, dc))
