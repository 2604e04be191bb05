"""Quadrature grids on the unit sphere.

Product rules, Gauss-Legendre in cos(theta) times uniform in phi, with
weights normalised so they sum to the full solid angle 4 pi.  A rule with
n_theta polar nodes and n_phi azimuthal nodes integrates spherical harmonics
exactly up to degree min(2 n_theta - 1, n_phi - 1).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

FULL_SOLID_ANGLE = 4 * np.pi


@dataclass(frozen=True)
class SphereGrid:
    """Flat list of (theta, phi) nodes with quadrature weights summing to 4 pi."""

    theta: np.ndarray
    phi: np.ndarray
    weight: np.ndarray

    def __post_init__(self):
        for name in ("theta", "phi", "weight"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (self.theta.shape == self.phi.shape == self.weight.shape):
            raise InvalidParameterError("theta, phi and weight must have equal length")
        total = float(np.sum(self.weight))
        if abs(total - FULL_SOLID_ANGLE) > 1e-8:
            raise InvalidParameterError(
                f"weights sum to {total!r}, expected 4*pi = {FULL_SOLID_ANGLE!r}"
            )

    @classmethod
    def gauss_legendre(cls, n_theta: int, n_phi: int) -> "SphereGrid":
        if n_theta < 1 or n_phi < 1:
            raise InvalidParameterError("node counts must be positive")
        x, w = np.polynomial.legendre.leggauss(n_theta)
        thetas = np.arccos(x)
        phis = 2 * np.pi * np.arange(n_phi) / n_phi
        th, ph = np.meshgrid(thetas, phis, indexing="ij")
        wt = np.repeat(w * (2 * np.pi / n_phi), n_phi)
        return cls(th.ravel(), ph.ravel(), wt)

    @classmethod
    def for_spin(cls, s) -> "SphereGrid":
        """Rule exact to degree 2S + 2: enough for coherent-state averages
        of a spin-S system against one extra vector factor."""
        return cls.gauss_legendre(s.twice + 3, 2 * s.twice + 6)

    @property
    def size(self) -> int:
        return self.theta.size

    @property
    def directions(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.column_stack((st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)))

    def average(self, values) -> float:
        """Spherical mean (1 / 4 pi) sum_k w_k f_k."""
        return float(np.dot(self.weight, np.asarray(values)) / FULL_SOLID_ANGLE)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["theta", "phi", "weight"])
            for th, ph, w in zip(self.theta, self.phi, self.weight):
                writer.writerow([f"{th:.17g}", f"{ph:.17g}", f"{w:.17g}"])

    @classmethod
    def from_csv(cls, path) -> "SphereGrid":
        rows = []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().lower() == "theta":
                    continue
                rows.append([float(v) for v in row[:3]])
        if not rows:
            raise InvalidParameterError(f"no grid rows found in {path}")
        arr = np.asarray(rows)
        return cls(arr[:, 0], arr[:, 1], arr[:, 2])
