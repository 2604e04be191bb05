"""Spin-S operator algebra.

Ladder construction of (Sx, Sy, Sz) in the basis |m = S ... -S> (index 0 is
m = +S), axis-angle rotations exp(-i angle S.n), and spin coherent states
obtained by rotating the top state |m = S> to point along (theta, phi).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.linalg

from .errors import CapacityError, ContractViolationError, InvalidParameterError

SPIN_CAP_ENV = "SPINCHAN_MAX_SPIN_TWICE"
DEFAULT_MAX_SPIN_TWICE = 100

UNIT_AXIS_TOL = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (PAULI_X, PAULI_Y, PAULI_Z)


def max_spin_twice() -> int:
    """Dense-path cap on 2S, overridable via SPINCHAN_MAX_SPIN_TWICE."""
    raw = os.environ.get(SPIN_CAP_ENV)
    if raw is None:
        return DEFAULT_MAX_SPIN_TWICE
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InvalidParameterError(f"{SPIN_CAP_ENV}={raw!r} is not an integer") from exc
    if cap < 1:
        raise InvalidParameterError(f"{SPIN_CAP_ENV} must be >= 1, got {cap}")
    return cap


@dataclass(frozen=True, order=True)
class HalfInteger:
    """Spin quantum number stored exactly as 2S."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise InvalidParameterError(f"2S must be an integer, got {self.twice!r}")
        if self.twice < 1:
            raise InvalidParameterError(f"spin must be >= 1/2, got 2S = {self.twice}")

    @classmethod
    def from_value(cls, value) -> "HalfInteger":
        doubled = Fraction(value).limit_denominator(10**6) * 2
        if doubled.denominator != 1:
            raise InvalidParameterError(f"{value!r} is not a half-integer")
        return cls(int(doubled))

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @property
    def dim(self) -> int:
        return self.twice + 1

    def __str__(self):
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"


@dataclass(frozen=True)
class SpinTriple:
    """The three spin components at fixed S (hbar = 1)."""

    s: HalfInteger
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    def vector(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.sx, self.sy, self.sz)

    def unit_vector(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Components of S/S (the normalised spin direction operator)."""
        inv = 1.0 / self.s.value
        return (self.sx * inv, self.sy * inv, self.sz * inv)

    def dot(self, vec) -> np.ndarray:
        v = np.asarray(vec, dtype=float)
        return v[0] * self.sx + v[1] * self.sy + v[2] * self.sz


def _check_capacity(s: HalfInteger):
    cap = max_spin_twice()
    if s.twice > cap:
        raise CapacityError(f"2S = {s.twice} exceeds the dense-path cap {cap}")


@lru_cache(maxsize=None)
def _spin_matrices(twice: int):
    spin = twice / 2.0
    dim = twice + 1
    m = spin - np.arange(dim)
    sz = np.diag(m).astype(complex)
    # <m+1| S+ |m> = sqrt(S(S+1) - m(m+1)); row index of m+1 is one less
    raise_amp = np.sqrt(spin * (spin + 1) - m[1:] * (m[1:] + 1))
    sp = np.zeros((dim, dim), dtype=complex)
    sp[np.arange(dim - 1), np.arange(1, dim)] = raise_amp
    sm = sp.conj().T
    sx = (sp + sm) / 2
    sy = (sp - sm) / 2j
    for a in (sx, sy, sz):
        a.setflags(write=False)
    return sx, sy, sz


def spin_operators(s: HalfInteger) -> SpinTriple:
    """Sz diagonal, Sx/Sy from the ladder operators."""
    _check_capacity(s)
    sx, sy, sz = _spin_matrices(s.twice)
    return SpinTriple(s, sx, sy, sz)


def _check_unit(axis) -> np.ndarray:
    v = np.asarray(axis, dtype=float)
    if v.shape != (3,):
        raise ContractViolationError(f"axis must be a 3-vector, got shape {v.shape}")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > UNIT_AXIS_TOL:
        raise ContractViolationError(f"axis must be unit length, |axis| = {norm!r}")
    return v


def wigner_rotation(s: HalfInteger, axis, angle: float) -> np.ndarray:
    """Spin-S rotation exp(-i angle S.axis) about a unit axis."""
    v = _check_unit(axis)
    _check_capacity(s)
    w, vecs = _rotation_eig(s.twice, tuple(float(x) for x in v))
    return (vecs * np.exp(-1j * angle * w)) @ vecs.conj().T


@lru_cache(maxsize=256)
def _rotation_eig(twice: int, axis_key: tuple):
    sx, sy, sz = _spin_matrices(twice)
    gen = axis_key[0] * sx + axis_key[1] * sy + axis_key[2] * sz
    w, v = scipy.linalg.eigh(gen)
    v.setflags(write=False)
    w.setflags(write=False)
    return w, v


@dataclass(frozen=True)
class SpinCoherentState:
    """Unit vector of amplitudes whose spin expectation points along n(theta, phi)."""

    amplitudes: np.ndarray
    theta: float
    phi: float

    @property
    def direction(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])


def spin_coherent_state(s: HalfInteger, theta: float, phi: float) -> SpinCoherentState:
    """Rotate |m = S> by exp(-i Sz phi) exp(-i Sy theta)."""
    amps = _scs_amplitudes(s, float(theta), float(phi))
    return SpinCoherentState(amps, float(theta), float(phi))


@lru_cache(maxsize=None)
def _sy_eig(twice: int):
    _, sy, _ = _spin_matrices(twice)
    w, v = scipy.linalg.eigh(sy)
    w.setflags(write=False)
    v.setflags(write=False)
    return w, v


def _scs_amplitudes(s: HalfInteger, theta: float, phi: float) -> np.ndarray:
    _check_capacity(s)
    w, v = _sy_eig(s.twice)
    top = np.zeros(s.dim, dtype=complex)
    top[0] = 1.0
    rotated = (v * np.exp(-1j * theta * w)) @ (v.conj().T @ top)
    m = s.value - np.arange(s.dim)
    amps = np.exp(-1j * phi * m) * rotated
    amps.setflags(write=False)
    return amps


def scs_amplitude_matrix(s: HalfInteger, grid) -> np.ndarray:
    """Stack of coherent-state amplitude column vectors, one per grid node."""
    cols = [
        _scs_amplitudes(s, th, ph) for th, ph in zip(grid.theta, grid.phi)
    ]
    return np.column_stack(cols)


def scs_resolution_residual(s: HalfInteger, grid) -> float:
    """Max-entry residual of (2S+1)/(4 pi) sum_k w_k |n_k><n_k| - identity."""
    psi = scs_amplitude_matrix(s, grid)
    acc = (psi * grid.weight) @ psi.conj().T
    acc *= s.dim / (4 * np.pi)
    return float(np.max(np.abs(acc - np.eye(s.dim))))
