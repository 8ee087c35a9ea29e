"""Parametrised spatial paths and adaptive quadrature along them."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from . import ad
from .charts import Chart
from .errors import DomainError, QuadratureError

QUAD_ABS_TOL = 1e-11
QUAD_LIMIT = 200


@dataclass(frozen=True, eq=False)
class LoopPath:
    """A spatial path s ∈ [0, 1] -> chart coordinates.

    ``position(s)`` must be written with :mod:`framelab.ad` functions so the
    tangent is exact. Closed paths are checked to return to their start modulo
    periodic coordinates.
    """

    chart: Chart
    position: Callable[[object], tuple]
    closed: bool = True
    label: str = ""

    def __post_init__(self):
        s = np.linspace(0.0, 1.0, 17)
        pts = self.points(s)
        if np.ptp(pts[:, self.chart.timelike]) > 1e-12:
            raise DomainError("loop paths must be spatial (constant time coordinate)")
        if self.closed:
            gap = pts[-1] - pts[0]
            for i, period in enumerate(self.chart.periods):
                if period is not None:
                    gap[i] = (gap[i] + period / 2) % period - period / 2
            if np.max(np.abs(gap)) > 1e-12:
                raise DomainError(f"loop {self.label!r} is not closed (gap {gap})")

    def points(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        return np.stack([np.broadcast_to(np.asarray(c, float), s.shape)
                         for c in self.position(s)], axis=-1)

    def tangent(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        tag = ad.new_tag()
        comps = self.position(ad.Dual(s, 1.0, tag))
        return np.stack([np.broadcast_to(np.asarray(ad.tangent(c, tag), float), s.shape)
                         for c in comps], axis=-1)

    def reversed(self) -> LoopPath:
        pos = self.position
        return LoopPath(self.chart, lambda s: pos(1.0 - s), self.closed,
                        f"reversed({self.label})")


def circle(chart: Chart, radius: float, sense: int = +1, t0: float = 0.0, z0: float = 0.0,
           phi0: float = 0.0) -> LoopPath:
    """Circle r = radius in a (t, r, φ, z) chart, traversed in the ±φ sense."""
    return LoopPath(chart, lambda s: (t0, radius, phi0 + sense * 2.0 * math.pi * s, z0),
                    True, f"circle(R={radius:g})")


def arc(chart: Chart, radius: float, phi0: float, dphi: float, t0: float = 0.0,
        z0: float = 0.0) -> LoopPath:
    return LoopPath(chart, lambda s: (t0, radius, phi0 + dphi * s, z0), False,
                    f"arc(R={radius:g}, {phi0:g}->{phi0 + dphi:g})")


def ellipse(chart: Chart, a: float, b: float, sense: int = +1, t0: float = 0.0,
            z0: float = 0.0) -> LoopPath:
    """Ellipse x = a cos θ, y = b sin θ in a (t, r, φ, z) chart.

    φ = θ + arctan((b - a) sin θ cos θ / (a cos² θ + b sin² θ)) stays continuous
    over the whole turn.
    """
    def pos(s):
        th = sense * 2.0 * math.pi * s
        c, sn = ad.cos(th), ad.sin(th)
        r = ad.sqrt(a * a * c * c + b * b * sn * sn)
        phi = th + ad.arctan((b - a) * sn * c / (a * c * c + b * sn * sn))
        return (t0, r, phi, z0)

    return LoopPath(chart, pos, True, f"ellipse(a={a:g}, b={b:g})")


def quadrature(f: Callable[[float], float], lower: float = 0.0, upper: float = 1.0,
               abs_tol: float = QUAD_ABS_TOL, limit: int = QUAD_LIMIT) -> tuple[float, float]:
    """Adaptive Gauss-Kronrod integral with a hard subdivision cap.

    Returns ``(value, error_estimate)``; raises :class:`QuadratureError` carrying the
    achieved error when the tolerance is not met.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, info, *rest = integrate.quad(
            f, lower, upper, epsabs=abs_tol, epsrel=0.0, limit=limit, full_output=True)
    if rest or err > abs_tol or not math.isfinite(value):
        raise QuadratureError(
            f"quadrature did not reach {abs_tol:g} (achieved {err:.3g}, "
            f"{info['last']} subintervals)", err)
    return value, err
