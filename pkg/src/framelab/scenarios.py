"""Charts, metrics and frames of Minkowski spacetime seen from a rotating platform.

Units have c = 1. ``omega`` is the platform angular velocity, ``radius`` the
platform radius, ``v`` a boost speed. Trocheries-type frames take a profile
``Omega(r)`` given either as a number or as a callable mapping a field (or an
array) of radii to angular parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .charts import Chart, Interval, SampleGrid
from .errors import DomainError
from .fields import (ONE, ZERO, ScalarField, arcsinh, arctan, as_field, constant,
                     coordinates, cos, cosh, sin, sinh, sqrt)
from .frames import FrameField, make_frame
from .tensors import ChartMap, MetricField, VectorField, pullback_metric

R_MIN = 1e-6
TWO_PI = 2.0 * math.pi

Profile = Callable[[ScalarField], ScalarField]


# charts and metrics ------------------------------------------------------------

def cylindrical_chart(r_min: float = R_MIN, name: str = "cylindrical",
                      r_max: float = math.inf) -> Chart:
    return Chart(
        name, ("t", "r", "phi", "z"),
        (Interval(), Interval(r_min, r_max, closed_lower=True), Interval(0.0, TWO_PI,
         closed_lower=True), Interval()),
        (None, None, TWO_PI, None),
    )


def minkowski_cylindrical(r_min: float = R_MIN) -> tuple[Chart, MetricField]:
    """η = dt² - dr² - r² dφ² - dz² on r ≥ r_min."""
    chart = cylindrical_chart(r_min)
    _, r, _, _ = coordinates(chart.coordinates)
    return chart, MetricField.diagonal(chart, [ONE, constant(-1.0), -(r * r), constant(-1.0)])


def minkowski_cartesian() -> tuple[Chart, MetricField]:
    chart = Chart("cartesian", ("t", "x", "y", "z"))
    return chart, MetricField.diagonal(chart, [1.0, -1.0, -1.0, -1.0])


def cylindrical_to_cartesian(r_min: float = R_MIN) -> ChartMap:
    """(t, r, φ, z) -> (t, r cos φ, r sin φ, z); the inverse uses the half-angle form of φ."""
    cyl = cylindrical_chart(r_min)
    cart, _ = minkowski_cartesian()
    t, r, phi, z = coordinates(cyl.coordinates)
    T, X, Y, Z = coordinates(cart.coordinates)
    rho = sqrt(X * X + Y * Y)
    return ChartMap(cyl, cart, (t, r * cos(phi), r * sin(phi), z),
                    (T, rho, 2.0 * arctan(Y / (rho + X)), Z))


def frame_I(chart: Chart, g: MetricField, name: str = "I") -> FrameField:
    """The inertial frame ∂/∂t (unvalidated; the metric must have g_00 = 1)."""
    return FrameField(VectorField(chart, (ONE, ZERO, ZERO, ZERO)), g, name)


def _check_omega(omega: float) -> None:
    if not math.isfinite(omega) or omega < 0:
        raise DomainError(f"angular velocity must be finite and >= 0, got {omega}")


def frame_P(omega: float, r_min: float = R_MIN) -> FrameField:
    """Rigidly rotating frame γ(∂_t + ω ∂_φ), γ = (1 - ω² r²)^(-1/2), on r < 1/ω."""
    _check_omega(omega)
    chart, g = minkowski_cylindrical(r_min)
    if omega > 0:
        chart = chart.restrict(r=Interval(r_min, 1.0 / omega, closed_lower=True))
    _, r, _, _ = coordinates(chart.coordinates)
    gamma = 1.0 / sqrt(1.0 - omega**2 * r * r)
    return FrameField(VectorField(chart, (gamma, ZERO, omega * gamma, ZERO)), g, "P")


def rotating_chart(omega: float, r_min: float = R_MIN) -> tuple[ChartMap, MetricField]:
    """Co-rotating coordinates t̂ = t, r̂ = r, φ̂ = φ - ωt, ẑ = z.

    Returns the map from the rotating chart to the cylindrical one and the
    pulled-back metric, with g_{t̂t̂} = 1 - ω² r̂² and g_{t̂φ̂} = -ω r̂².
    """
    _check_omega(omega)
    cyl, g = minkowski_cylindrical(r_min)
    r_max = 1.0 / omega if omega > 0 else math.inf
    rot = Chart("rotating", ("t_hat", "r_hat", "phi_hat", "z_hat"),
                (Interval(), Interval(r_min, r_max, closed_lower=True),
                 Interval(0.0, TWO_PI, closed_lower=True), Interval()),
                (None, None, TWO_PI, None))
    th, rh, ph, zh = coordinates(rot.coordinates)
    t, r, phi, z = coordinates(cyl.coordinates)
    T = ChartMap(rot, cyl, (th, rh, ph + omega * th, zh), (t, r, phi - omega * t, z))
    return T, pullback_metric(T, g)


def frame_P_rotating(omega: float, r_min: float = R_MIN) -> FrameField:
    """P in its adapted rotating chart: (g_{t̂t̂})^(-1/2) ∂/∂t̂."""
    T, g = rotating_chart(omega, r_min)
    return FrameField(VectorField(T.source, (1.0 / sqrt(g[0, 0]), ZERO, ZERO, ZERO)), g, "P")


def lorentz_factor(v: float) -> float:
    if not abs(v) < 1:
        raise DomainError(f"boost speed must satisfy |v| < 1, got {v}")
    return 1.0 / math.sqrt(1.0 - v * v)


def frame_boost(v: float, sign: int = +1) -> FrameField:
    """γ(∂_t ± v ∂_x) on the Cartesian chart; sign=+1 gives I', sign=-1 gives I''."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    gam = lorentz_factor(v)
    chart, g = minkowski_cartesian()
    return FrameField(VectorField(chart, (gam, sign * gam * v, 0.0, 0.0)), g,
                      "I'" if sign > 0 else "I''")


def boosted_chart(v: float) -> tuple[ChartMap, MetricField]:
    """Adapted coordinates of the frame moving with speed v along x.

    Returns the map (t', x', y', z') -> (t, x, y, z) and the pulled-back metric.
    """
    gam = lorentz_factor(v)
    cart, g = minkowski_cartesian()
    boosted = Chart("boosted", ("t'", "x'", "y'", "z'"))
    tp, xp, yp, zp = coordinates(boosted.coordinates)
    t, x, y, z = coordinates(cart.coordinates)
    T = ChartMap(boosted, cart,
                 (gam * (tp + v * xp), gam * (xp + v * tp), yp, zp),
                 (gam * (t - v * x), gam * (x - v * t), y, z))
    return T, pullback_metric(T, g)


# Trocheries-type frames ---------------------------------------------------------

def as_profile(Omega) -> Profile:
    if callable(Omega):
        return Omega
    value = float(Omega)
    return lambda r: as_field(value) if isinstance(r, ScalarField) else value + 0.0 * r


def trocheries_chart(Omega, r_min: float = 1e-3, r_max: float = math.inf) -> ChartMap:
    """Map from Lorentz-like rotating coordinates (t̄, r̄, φ̄, z̄) to cylindrical ones.

    With a = Ω(r) r the forward direction (cylindrical -> barred) is
    t̄ = t cosh a - r φ sinh a and φ̄ = φ cosh a - (t/r) sinh a; it is the map's
    ``inverse`` here, and the hyperbolic rotation is undone for ``forward``.
    """
    prof = as_profile(Omega)
    cyl = cylindrical_chart(r_min, r_max=r_max)
    bar = Chart("trocheries", ("t_bar", "r_bar", "phi_bar", "z_bar"),
                (Interval(), Interval(r_min, r_max, closed_lower=True), Interval(), Interval()))
    tb, rb, pb, zb = coordinates(bar.coordinates)
    t, r, phi, z = coordinates(cyl.coordinates)
    ab = as_field(prof(rb)) * rb
    a = as_field(prof(r)) * r
    forward = (tb * cosh(ab) + rb * pb * sinh(ab), rb,
               pb * cosh(ab) + (tb / rb) * sinh(ab), zb)
    inverse = (t * cosh(a) - r * phi * sinh(a), r,
               phi * cosh(a) - (t / r) * sinh(a), z)
    return ChartMap(bar, cyl, forward, inverse)


def frame_Pbar(Omega, r_min: float = 1e-3, r_max: float = math.inf) -> FrameField:
    """cosh(Ω r) ∂_t - (sinh(Ω r)/r) ∂_φ on the annulus r_min ≤ r < r_max."""
    prof = as_profile(Omega)
    chart, g = minkowski_cylindrical(r_min)
    if math.isfinite(r_max):
        chart = chart.restrict(r=Interval(r_min, r_max, closed_lower=True, closed_upper=True))
    _, r, _, _ = coordinates(chart.coordinates)
    a = as_field(prof(r)) * r
    return FrameField(VectorField(chart, (cosh(a), ZERO, -sinh(a) / r, ZERO)), g, "Pbar")


def rim_speed(Omega, r) -> np.ndarray:
    """Speed of the P̄ observers relative to I at radius r: tanh(Ω(r) r)."""
    r = np.asarray(r, dtype=float)
    return np.tanh(np.asarray(as_profile(Omega)(r)) * r)


@dataclass(frozen=True)
class PhysicalityReport:
    rim_radius: float
    sinh_at_rim: float
    rim_speed: float
    satisfied: bool
    omega_for_constraint: float  # constant Ω solving sinh(Ω R) = 1
    rim_speed_under_constraint: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def physicality_constraint(Omega, rim_radius: float, tol: float = 1e-9) -> PhysicalityReport:
    """Evaluate the rim condition lim_{r -> R} sinh(Ω r) = 1 and the implied rim speed.

    Reports both sinh and tanh since the condition and the physical speed differ;
    nothing is decided beyond whether the stated condition holds.
    """
    prof = as_profile(Omega)
    approach = rim_radius * (1.0 - np.array([1e-4, 1e-6, 1e-8, 0.0]))
    s = np.sinh(np.asarray(prof(approach), dtype=float) * approach)
    sinh_rim = float(s[-1])
    if not abs(s[-2] - sinh_rim) < 1e-6 * max(1.0, abs(sinh_rim)):
        raise DomainError("profile is not continuous at the rim")
    omega_c = math.asinh(1.0) / rim_radius
    return PhysicalityReport(
        rim_radius=float(rim_radius),
        sinh_at_rim=sinh_rim,
        rim_speed=float(np.tanh(np.arcsinh(sinh_rim))),
        satisfied=abs(sinh_rim - 1.0) < tol,
        omega_for_constraint=omega_c,
        rim_speed_under_constraint=math.tanh(math.asinh(1.0)),
    )


def equivalence_omega(omega, r):
    """Ω(r) = arcsinh(ω r / sqrt(1 - ω² r²)) / r, for fields or arrays alike."""
    if isinstance(r, ScalarField):
        return arcsinh(omega * r / sqrt(1.0 - omega * omega * r * r)) / r
    omega = np.asarray(omega, dtype=float)
    r = np.asarray(r, dtype=float)
    x = omega * r
    if np.any(np.abs(x) >= 1) or np.any(r <= 0):
        raise DomainError("equivalence_omega needs 0 < r and |ω r| < 1")
    return np.arcsinh(x / np.sqrt(1.0 - x * x)) / r


def equivalence_profile(omega: float) -> Profile:
    return lambda r: equivalence_omega(omega, r)


@dataclass(frozen=True)
class EquivalenceReport:
    max_deviation: float
    sense: str          # which rotation sense of the P̄ family matched P
    n_points: int
    max_deviation_other_sense: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _components_P(omega, r):
    gam = 1.0 / np.sqrt(1.0 - (omega * r) ** 2)
    return gam, omega * gam


def _components_Pbar(Om, r):
    a = Om * r
    return np.cosh(a), -np.sinh(a) / r


def verify_Pbar_equals_P(omegas, radii) -> EquivalenceReport:
    """Compare P(ω) with P̄ whose profile is the equivalence Ω(r), over an (r, ω) grid.

    The barred family rotates in the negative φ sense for positive Ω, so the
    match is attempted with Ω built from -ω and from +ω; the smaller deviation
    is reported together with its sense label.
    """
    W, Rr = np.meshgrid(np.asarray(omegas, float), np.asarray(radii, float), indexing="ij")
    pt, pphi = _components_P(W, Rr)
    devs = {}
    for label, s in (("omega_negated", -1.0), ("omega_as_is", +1.0)):
        bt, bphi = _components_Pbar(equivalence_omega(s * W, Rr), Rr)
        devs[label] = float(max(np.max(np.abs(bt - pt)), np.max(np.abs(bphi - pphi))))
    best = min(devs, key=devs.get)
    other = [k for k in devs if k != best][0]
    return EquivalenceReport(devs[best], best, W.size, devs[other])


def constant_profile_deviation(omegas, radii) -> float:
    """Largest P̄ vs P deviation when Ω is held constant at -ω (its slow-rotation value)."""
    W, Rr = np.meshgrid(np.asarray(omegas, float), np.asarray(radii, float), indexing="ij")
    pt, pphi = _components_P(W, Rr)
    bt, bphi = _components_Pbar(-W, Rr)
    return float(max(np.max(np.abs(bt - pt)), np.max(np.abs(bphi - pphi))))


# scenario library --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Scenario:
    name: str
    chart: Chart
    metric: MetricField
    frame: FrameField
    parameters: dict = field(default_factory=dict)
    grid: SampleGrid | None = None


def _platform_grid(radius: float, n: int, r_lo: float) -> SampleGrid:
    return SampleGrid.box([0.0, (r_lo, radius), (0.0, TWO_PI * (n - 1) / n), (-1.0, 1.0)], n)


def build_scenario(name: str, omega: float = 0.1, radius: float = 1.0, boost: float = 0.6,
                   profile=None, r_min: float = R_MIN, n: int = 11) -> Scenario:
    """One of ``I``, ``P``, ``P_rotating``, ``I'``, ``I''``, ``Pbar`` with a validated frame.

    ``profile`` defaults to the equivalence profile built from ``-omega`` so that
    P̄ reproduces P.
    """
    params = {"omega": omega, "radius": radius}
    r_lo = max(r_min, 0.1 * radius)
    if name in ("P", "P_rotating", "Pbar") and omega * radius >= 1:
        raise DomainError("ωR must be < 1")
    if name == "I":
        chart, g = minkowski_cylindrical(r_min)
        frame = frame_I(chart, g)
        grid = _platform_grid(radius, n, r_lo)
    elif name == "P":
        frame = frame_P(omega, r_min)
        chart, g = frame.chart, frame.metric
        grid = _platform_grid(radius, n, r_lo)
    elif name == "P_rotating":
        frame = frame_P_rotating(omega, r_min)
        chart, g = frame.chart, frame.metric
        grid = _platform_grid(radius, n, r_lo)
    elif name in ("I'", "I''"):
        params = {"boost": boost}
        frame = frame_boost(boost, +1 if name == "I'" else -1)
        chart, g = frame.chart, frame.metric
        grid = SampleGrid.box([0.0, (-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0)], n)
    elif name == "Pbar":
        prof = profile if profile is not None else equivalence_profile(-omega)
        frame = frame_Pbar(prof, r_lo, radius)
        chart, g = frame.chart, frame.metric
        grid = _platform_grid(radius, n, r_lo)
        params["profile"] = "equivalence" if profile is None else repr(profile)
    else:
        raise KeyError(f"unknown scenario {name!r}")
    frame = make_frame(g, frame.vector, grid, frame.name)
    return Scenario(name, chart, g, frame, params, grid)


SCENARIOS = ("I", "P", "P_rotating", "I'", "I''", "Pbar")
