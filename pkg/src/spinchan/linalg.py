"""Dense complex matrix kernel.

Tensor products, partial traces, Hermitian eigendecompositions, PSD square
roots and unitaries generated by Hermitian operators.  Everything is a plain
``numpy.ndarray`` of complex128; subsystem structure is carried separately as
a tuple of dimensions with the first factor outermost in the Kronecker
ordering.
"""

from __future__ import annotations

import string
from math import prod
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from .errors import ContractViolationError, DimensionMismatchError, NotPositiveError

HERMITICITY_TOL = 1e-10
PSD_FLOOR = -1e-10


def as_matrix(m) -> np.ndarray:
    """Coerce to a square complex matrix with finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ContractViolationError("matrix has non-finite entries")
    return a


def hermiticity_defect(m: np.ndarray) -> float:
    """Max-entry magnitude of m - m^dagger."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def check_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL, what: str = "matrix") -> np.ndarray:
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ContractViolationError(f"{what} is not Hermitian (defect {defect:.3e} > {tol:.1e})")
    return m


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product with the first factor outermost."""
    return np.kron(as_matrix(a), as_matrix(b))


def tensor(*factors) -> np.ndarray:
    """Left fold of tensor_product over two or more factors."""
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = np.kron(out, as_matrix(f))
    return out


def _check_profile(m: np.ndarray, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 2 for d in dims):
        raise DimensionMismatchError(f"subsystem dimensions must be >= 2, got {dims}")
    if prod(dims) != m.shape[0]:
        raise DimensionMismatchError(
            f"dimension profile {dims} does not match matrix side {m.shape[0]}"
        )
    return dims


def partial_trace(m, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    Kept subsystems stay in their original relative order.  Tracing out
    everything returns a 1x1 matrix holding the full trace.
    """
    a = as_matrix(m)
    dims = _check_profile(a, dims)
    n = len(dims)
    keep = tuple(sorted(set(int(k) for k in keep)))
    if any(k < 0 or k >= n for k in keep):
        raise DimensionMismatchError(f"keep indices {keep} out of range for {n} subsystems")

    letters = string.ascii_lowercase
    row, col = [], []
    pos = 0
    for i in range(n):
        if i in keep:
            row.append(letters[pos])
            col.append(letters[pos + 1])
            pos += 2
        else:
            row.append(letters[pos])
            col.append(letters[pos])
            pos += 1
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    t = a.reshape(dims + dims)
    res = np.einsum("".join(row) + "".join(col) + "->" + out, t)
    side = prod(dims[i] for i in keep) if keep else 1
    return res.reshape(side, side)


def permute_subsystems(m, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors so that new slot j holds old subsystem order[j]."""
    a = as_matrix(m)
    dims = _check_profile(a, dims)
    n = len(dims)
    order = tuple(int(i) for i in order)
    if sorted(order) != list(range(n)):
        raise DimensionMismatchError(f"{order} is not a permutation of {n} subsystems")
    t = a.reshape(dims + dims)
    axes = list(order) + [n + i for i in order]
    side = prod(dims)
    return t.transpose(axes).reshape(side, side)


def embed_operator(op, dims: Sequence[int], acting: Sequence[int]) -> np.ndarray:
    """Extend ``op`` (acting on the listed subsystems, in that order) by
    identities on the remaining subsystems of the profile."""
    a = as_matrix(op)
    dims = tuple(int(d) for d in dims)
    acting = tuple(int(i) for i in acting)
    if len(set(acting)) != len(acting) or any(i < 0 or i >= len(dims) for i in acting):
        raise DimensionMismatchError(f"invalid acting subsystems {acting} for profile {dims}")
    if prod(dims[i] for i in acting) != a.shape[0]:
        raise DimensionMismatchError(
            f"operator side {a.shape[0]} does not match subsystems {acting} of {dims}"
        )
    rest = [i for i in range(len(dims)) if i not in acting]
    full = np.kron(a, np.eye(prod(dims[i] for i in rest) if rest else 1, dtype=complex))
    seq = list(acting) + rest  # current subsystem arrangement, in old labels
    cur_dims = [dims[i] for i in seq]
    order = [seq.index(j) for j in range(len(dims))]
    return permute_subsystems(full, cur_dims, order)


def hermitian_eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and the unitary of column eigenvectors.
    """
    a = as_matrix(m)
    check_hermitian(a, what="eigendecomposition input")
    w, v = scipy.linalg.eigh(a)
    return w, v


def psd_sqrt(m) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in [PSD_FLOOR, 0) are clipped to zero; anything below the
    floor is rejected.
    """
    w, v = hermitian_eig(m)
    if w[0] < PSD_FLOOR:
        raise NotPositiveError(f"matrix has eigenvalue {w[0]:.3e} below {PSD_FLOOR:.1e}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def unitary_from_generator(h, angle: float) -> np.ndarray:
    """exp(-i * angle * h) for Hermitian h, via spectral decomposition."""
    w, v = hermitian_eig(as_matrix(h))
    phases = np.exp(-1j * angle * w)
    return (v * phases) @ v.conj().T
