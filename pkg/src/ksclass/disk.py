"""Evaluation of truncated series on sampled sub-disks of the unit disk."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import PointOutsideDisk
from .series import TruncatedSeries

EPS_STRICT = 1e-9


@dataclass(frozen=True)
class DiskGrid:
    """Concentric circles |z| = r, each sampled at equally spaced angles 2*pi*j/M.

    Radii are sorted on construction.
    """

    radii: tuple[float, ...]
    angles_per_circle: int = 720
    label: str = ""

    def __post_init__(self):
        radii = tuple(sorted(float(r) for r in self.radii))
        if not radii:
            raise ValueError("grid needs at least one radius")
        if any(not 0.0 < r < 1.0 for r in radii):
            raise ValueError(f"grid radii must lie in (0, 1), got {radii}")
        if int(self.angles_per_circle) < 8:
            raise ValueError("angles_per_circle must be >= 8")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "angles_per_circle", int(self.angles_per_circle))
        if not self.label:
            object.__setattr__(self, "label", f"r<={radii[-1]:g},M={self.angles_per_circle}")

    @property
    def r_max(self) -> float:
        return self.radii[-1]

    def points(self) -> np.ndarray:
        """Grid points, shape (len(radii), angles_per_circle)."""
        theta = 2 * np.pi * np.arange(self.angles_per_circle) / self.angles_per_circle
        return np.asarray(self.radii)[:, None] * np.exp(1j * theta)[None, :]

    def to_dict(self) -> dict[str, Any]:
        return {"radii": list(self.radii), "angles": self.angles_per_circle}

    @classmethod
    def from_dict(cls, data: dict[str, Any], label: str = "") -> "DiskGrid":
        return cls(tuple(data["radii"]), int(data.get("angles", 720)), label)


DEFAULT_GRID = DiskGrid((0.3, 0.5, 0.7, 0.9, 0.95, 0.99), 720, "default")


@dataclass(frozen=True)
class RangeStat:
    min_real: float
    max_abs: float
    argmin_point: complex
    argmax_point: complex
    tail_estimate: float


def evaluate(a: TruncatedSeries, z: complex) -> complex:
    """Horner evaluation of the retained polynomial at a point of the open disk."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise PointOutsideDisk(f"|z| = {abs(z):g} is not inside the unit disk")
    acc = 0j
    for c in a.coeffs[::-1]:
        acc = acc * z + c
    return complex(acc)


def circle_values(a: TruncatedSeries, r: float, m: int) -> np.ndarray:
    """Values at r*exp(2*pi*i*j/m), j = 0..m-1.

    Coefficients are folded modulo m and summed with one FFT, which is
    exact up to rounding since exp(i*n*theta_j) is m-periodic in n.
    """
    n = a.order + 1
    scaled = a.coeffs * r ** np.arange(n)
    pad = (-n) % m
    folded = np.concatenate([scaled, np.zeros(pad, dtype=np.complex128)]).reshape(-1, m).sum(axis=0)
    return np.fft.ifft(folded) * m


def grid_values(a: TruncatedSeries, grid: DiskGrid) -> tuple[np.ndarray, np.ndarray]:
    """(points, values) over the grid, both shaped (len(radii), angles)."""
    m = grid.angles_per_circle
    values = np.stack([circle_values(a, r, m) for r in grid.radii])
    return grid.points(), values


def tail_bound(a: TruncatedSeries, r: float) -> float:
    """Heuristic majorant M r^{N+1} / (1 - r) of the discarded tail on |z| = r.

    M is the largest coefficient modulus among the top quarter of the
    retained indices. This is not rigorous (it assumes the coefficients
    stop growing), which is why certificates report it separately.
    """
    if not 0.0 < r < 1.0:
        raise ValueError("tail_bound needs 0 < r < 1")
    n = a.order
    start = min(3 * (n + 1) // 4, n)
    big = float(np.max(np.abs(a.coeffs[start:])))
    if big == 0.0:
        return 0.0
    return big * r ** (n + 1) / (1.0 - r)


def range_stats(a: TruncatedSeries, grid: DiskGrid) -> RangeStat:
    pts, vals = grid_values(a, grid)
    pts, vals = pts.ravel(), vals.ravel()
    i_min = int(np.argmin(vals.real))
    i_max = int(np.argmax(np.abs(vals)))
    return RangeStat(
        min_real=float(vals.real[i_min]),
        max_abs=float(np.abs(vals[i_max])),
        argmin_point=complex(pts[i_min]),
        argmax_point=complex(pts[i_max]),
        tail_estimate=tail_bound(a, grid.r_max),
    )
