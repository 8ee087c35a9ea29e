"""Coordinate charts and sample grids."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import ChartMismatchError, DomainError


@dataclass(frozen=True)
class Interval:
    lower: float = -math.inf
    upper: float = math.inf
    closed_lower: bool = False
    closed_upper: bool = False

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"empty interval: lower={self.lower} upper={self.upper}")

    def contains(self, x: np.ndarray) -> np.ndarray:
        lo = x >= self.lower if self.closed_lower else x > self.lower
        hi = x <= self.upper if self.closed_upper else x < self.upper
        return lo & hi


@dataclass(frozen=True)
class Chart:
    """A 4-dimensional coordinate chart.

    Coordinate 0 is the timelike label. ``periods[i]`` is the period of a
    periodic coordinate (``None`` otherwise); periodic coordinates are not
    bounds-checked since any real value labels a valid point.
    """

    name: str
    coordinates: tuple[str, str, str, str]
    domain: tuple[Interval, Interval, Interval, Interval] = (
        Interval(), Interval(), Interval(), Interval())
    periods: tuple[float | None, ...] = (None, None, None, None)
    timelike: int = 0

    def __post_init__(self):
        if len(self.coordinates) != 4 or len(self.domain) != 4 or len(self.periods) != 4:
            raise ValueError("charts are 4-dimensional")
        if self.timelike != 0:
            raise ValueError("the timelike coordinate must be index 0")
        for p in self.periods:
            if p is not None and not (math.isfinite(p) and p > 0):
                raise ValueError(f"invalid period {p}")

    @property
    def key(self) -> tuple:
        """Identity used for compatibility checks (domain restrictions allowed)."""
        return (self.name, self.coordinates)

    def index(self, name: str) -> int:
        return self.coordinates.index(name)

    def restrict(self, **bounds: Interval) -> Chart:
        """Same chart on a smaller domain, e.g. ``restrict(r=Interval(0, 2))``."""
        dom = list(self.domain)
        for name, iv in bounds.items():
            dom[self.index(name)] = iv
        return replace(self, domain=tuple(dom))

    def contains(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        ok = np.all(np.isfinite(pts), axis=-1)
        for i, iv in enumerate(self.domain):
            if self.periods[i] is None:
                ok &= iv.contains(pts[..., i])
        return ok

    def check_points(self, points) -> None:
        inside = self.contains(points)
        if not np.all(inside):
            pts = np.asarray(points, dtype=float).reshape(-1, 4)
            bad = pts[~inside.reshape(-1)][0]
            raise DomainError(f"point {tuple(bad)} outside the domain of chart {self.name!r}")


def same_chart(*charts: Chart) -> Chart:
    first = charts[0]
    for c in charts[1:]:
        if c.key != first.key:
            raise ChartMismatchError(f"chart mismatch: {first.name!r} vs {c.name!r}")
    return first


@dataclass(frozen=True)
class SampleGrid:
    """Tensor-product grid of chart points."""

    axes: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray] = field(repr=False)
    description: str = ""

    def __post_init__(self):
        axes = tuple(np.atleast_1d(np.asarray(a, dtype=float)) for a in self.axes)
        if len(axes) != 4:
            raise ValueError("a grid needs one axis per coordinate")
        object.__setattr__(self, "axes", axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def points(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axes, indexing="ij")
        return np.stack([m.reshape(-1) for m in mesh], axis=-1)

    @classmethod
    def box(cls, ranges: Sequence[tuple[float, float] | float], n: int = 11) -> SampleGrid:
        """Grid with ``n`` points on each ranged axis; scalars pin an axis."""
        axes = []
        parts = []
        for r in ranges:
            if np.ndim(r) == 0:
                axes.append(np.array([float(r)]))
                parts.append(f"{float(r):g}")
            else:
                lo, hi = r
                axes.append(np.linspace(lo, hi, n))
                parts.append(f"[{lo:g},{hi:g}]x{n}")
        return cls(tuple(axes), " x ".join(parts))

    @classmethod
    def from_points(cls, points) -> "PointSet":
        return PointSet(np.asarray(points, dtype=float).reshape(-1, 4))


@dataclass(frozen=True)
class PointSet:
    """Scattered sample points, interchangeable with :class:`SampleGrid`."""

    pts: np.ndarray = field(repr=False)
    description: str = "scattered points"

    @property
    def size(self) -> int:
        return len(self.pts)

    def points(self) -> np.ndarray:
        return self.pts
