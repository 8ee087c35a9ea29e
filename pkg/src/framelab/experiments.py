"""Light transit and clock-synchronisation experiments on the rotating platform.

Directions are labelled explicitly: ``co`` is light travelling in the sense of
rotation (+φ̂), ``counter`` against it. All times are in units with c = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NullRootError
from .frames import FrameField
from .loops import LoopPath, arc, circle, quadrature
from .scenarios import frame_P_rotating, lorentz_factor, rotating_chart
from .tensors import MetricField

MAX_DELTA_PHI = 1e-2
STATIONARY_TOL = 1e-12


def _check_platform(omega: float, radius: float) -> None:
    if not (math.isfinite(omega) and omega >= 0 and radius > 0):
        raise DomainError("need ω >= 0 and R > 0")
    if not omega * radius < 1:
        raise DomainError("ωR must be < 1")


def _require_stationary(g: MetricField, loop: LoopPath) -> None:
    pts = loop.points(np.linspace(0.0, 1.0, 9))
    dt = g.derivatives(pts)[:, loop.chart.timelike]
    if np.max(np.abs(dt)) > STATIONARY_TOL:
        raise DomainError("null transit integration needs a metric independent of the time coordinate")


# synchronisation ----------------------------------------------------------------

def einstein_offset(g: MetricField, x, dx) -> float:
    """(g_{0i}/g_{00}) Δx^i: coordinate-time shift of the event simultaneous to one at x + Δx."""
    G = g.matrix(np.asarray(x, dtype=float))
    if not G[0, 0] > 0:
        raise DomainError(f"g_00 = {G[0, 0]:.6g} <= 0: the time coordinate is not timelike here")
    dx = np.asarray(dx, dtype=float)
    return float(G[0, 1:] @ dx[1:] / G[0, 0])


def loop_sync_defect(g: MetricField, loop: LoopPath) -> float:
    """Δt̂ = -∮ (g_{0i}/g_{00}) dx^i along the loop."""

    def integrand(s):
        G = g.matrix(loop.points(s))
        if not G[0, 0] > 0:
            raise DomainError("g_00 <= 0 on the loop")
        return -float(G[0, 1:] @ loop.tangent(s)[1:] / G[0, 0])

    return quadrature(integrand)[0]


def sync_defect_closed_form(omega: float, radius: float) -> float:
    return 2.0 * math.pi * omega * radius**2 / (1.0 - (omega * radius) ** 2)


@dataclass(frozen=True)
class ClockChainResult:
    n: int
    link_offsets: tuple[float, ...]  # per-link Einstein offsets (g_0i/g_00) Δx^i
    defect: float                    # Δt̂ = -Σ link offsets
    reference: float                 # closed-form loop value
    relative_error: float

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["link_offsets"] = list(self.link_offsets)
        return d


def clock_chain(omega: float, radius: float, n: int, sense: int = +1) -> ClockChainResult:
    """Synchronise n clocks on the rim pairwise, 0->1->...->n-1->0, and return the mismatch."""
    if n < 3:
        raise DomainError("a clock chain needs at least 3 clocks")
    _check_platform(omega, radius)
    _, g = rotating_chart(omega)
    step = sense * 2.0 * math.pi / n
    offsets = tuple(
        einstein_offset(g, (0.0, radius, k * step, 0.0), (0.0, 0.0, step, 0.0))
        for k in range(n))
    defect = -math.fsum(offsets)
    ref = sense * sync_defect_closed_form(omega, radius)
    rel = abs(defect - ref) / abs(ref) if ref else abs(defect)
    return ClockChainResult(n, offsets, defect, ref, rel)


# Sagnac -------------------------------------------------------------------------

@dataclass(frozen=True)
class SagnacResult:
    T_co: float
    T_counter: float
    tau_co: float
    tau_counter: float
    L: float
    c_co: float
    c_counter: float

    @property
    def delta_tau(self) -> float:
        return self.tau_co - self.tau_counter

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["delta_tau"] = self.delta_tau
        return d


def sagnac_analytic(omega: float, radius: float) -> SagnacResult:
    """Round-trip coordinate and proper times of light guided along the rim."""
    _check_platform(omega, radius)
    wr = omega * radius
    T_co = 2.0 * math.pi * radius / (1.0 - wr)
    T_counter = 2.0 * math.pi * radius / (1.0 + wr)
    root = math.sqrt(1.0 - wr * wr)
    L = 2.0 * math.pi * radius / root
    tau_co, tau_counter = root * T_co, root * T_counter
    return SagnacResult(T_co, T_counter, tau_co, tau_counter, L, L / tau_co, L / tau_counter)


def null_rate(g: MetricField, x, xdot) -> float:
    """Future root dt/ds of g(σ', σ') = 0 for spatial velocity ``xdot``."""
    G = g.matrix(np.asarray(x, dtype=float))
    A = G[0, 0]
    B = float(G[0, 1:] @ xdot[1:])
    C = float(xdot[1:] @ G[1:, 1:] @ xdot[1:])
    disc = B * B - A * C
    if not A > 0 or not disc > 0:
        raise NullRootError(f"no future null direction along tangent {tuple(xdot)} "
                            f"(g_00 = {A:.6g}, discriminant = {disc:.6g})")
    rate = (-B + math.sqrt(disc)) / A
    if not rate > 0:
        raise NullRootError("null root is not future pointing")
    return rate


def sagnac_numeric(g: MetricField, loop: LoopPath, direction: str = "co") -> float:
    """Coordinate time for light to traverse ``loop`` (``counter`` uses the reversed loop)."""
    if direction not in ("co", "counter"):
        raise ValueError("direction must be 'co' or 'counter'")
    path = loop if direction == "co" else loop.reversed()
    _require_stationary(g, path)
    return quadrature(lambda s: null_rate(g, path.points(s), path.tangent(s)))[0]


def periphery_length_numeric(g: MetricField, Q: FrameField, loop: LoopPath) -> float:
    """Rest length ∫ sqrt(-h(ẋ, ẋ)) ds with h = g - α_Q ⊗ α_Q."""
    alpha = Q.one_form_fields()

    def integrand(s):
        x = loop.points(s)
        xd = loop.tangent(s)
        a = np.array([f(x) for f in alpha])
        h = g.matrix(x) - np.outer(a, a)
        hv = float(xd @ h @ xd)
        if hv > 0:
            raise DomainError("tangent is not spacelike in the frame's rest space")
        return math.sqrt(-hv)

    return quadrature(integrand)[0]


def sagnac_round_trip_delta(omega: float, radius: float) -> float:
    """T_co - T_counter = 4πωR² / (1 - ω²R²)."""
    return 4.0 * math.pi * omega * radius**2 / (1.0 - (omega * radius) ** 2)


# one-way measurements --------------------------------------------------------------

@dataclass(frozen=True)
class OneWaySpeed:
    co: float
    counter: float
    synchronization: str
    omega: float
    radius: float
    delta_phi: float
    orientation: float
    transit_co: float       # coordinate times of the two single-leg transits
    transit_counter: float
    distance: float         # rest length of the arc between the clocks
    clock_offset: float     # reading offset applied to the second clock

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def one_way_local_speed(omega: float, radius: float, delta_phi: float,
                        synchronization: str = "einstein", orientation: float = 0.0,
                        max_delta: float = MAX_DELTA_PHI) -> OneWaySpeed:
    """Light speed measured between two neighbouring rim clocks A (at φ̂0) and B (at φ̂0 + δφ̂).

    Clock readings are proper times √g_00 t̂ plus an offset. With ``einstein``
    synchronisation B's offset follows from the Einstein convention; with
    ``naive`` both clocks simply show scaled coordinate time.
    """
    if synchronization not in ("einstein", "naive"):
        raise ValueError("synchronization must be 'einstein' or 'naive'")
    if not 0 < delta_phi < max_delta:
        raise DomainError(f"δφ̂ must lie in (0, {max_delta:g}) for neighbouring clocks")
    _check_platform(omega, radius)
    T, g = rotating_chart(omega)
    chart = T.source
    A = np.array([0.0, radius, orientation, 0.0])
    B = np.array([0.0, radius, orientation + delta_phi, 0.0])
    leg = arc(chart, radius, orientation, delta_phi)
    t_ab = sagnac_numeric(g, leg, "co")
    t_ba = sagnac_numeric(g, leg, "counter")
    rate_a = math.sqrt(g[0, 0](A))
    rate_b = math.sqrt(g[0, 0](B))
    if synchronization == "einstein":
        offset = rate_a * einstein_offset(g, A, B - A)
    else:
        offset = 0.0
    dist = periphery_length_numeric(g, frame_P_rotating(omega), leg)
    co = dist / (rate_b * t_ab + offset)
    counter = dist / (rate_a * t_ba - offset)
    return OneWaySpeed(co, counter, synchronization, omega, radius, delta_phi, orientation,
                       t_ab, t_ba, dist, offset)


def relative_velocity(v: float) -> float:
    """Speed of I'' (moving with -v) as seen from I' (moving with +v)."""
    return 2.0 * v / (1.0 + v * v)


def boost_matrix(u: float) -> np.ndarray:
    """(t, x) coordinates of an event in a frame moving with velocity u along x."""
    gam = lorentz_factor(u)
    return np.array([[gam, -gam * u], [-gam * u, gam]])


def boost_simultaneity_offset(v: float, dx_prime: float) -> float:
    """I''-coordinate time between two events simultaneous in I' and Δx' apart along x."""
    lorentz_factor(v)
    m = boost_matrix(-v) @ boost_matrix(-v)  # I' -> I -> I''
    return float(m[0, 1] * dx_prime)


@dataclass(frozen=True)
class ChiuHsuSherryReport:
    speeds: dict             # orientation label -> {"co", "counter"}
    max_speed_deviation: float
    boost_speed: float
    pair_separation: float   # rest separation of the two clocks
    desynchronization: float  # I''-judged offset of the I'-synchronised pair
    method: str = ("reconstruction: Einstein-offset light-speed measurement at two platform "
                   "orientations plus standard boost composition I' -> I -> I''")

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def chiu_hsu_sherry_check(omega: float, radius: float, delta_phi: float) -> ChiuHsuSherryReport:
    """Local light speed at orientations 0 and π, and the frame-dependent desynchronisation."""
    speeds = {}
    dev = 0.0
    for label, phi0 in (("0", 0.0), ("pi", math.pi)):
        m = one_way_local_speed(omega, radius, delta_phi, "einstein", phi0)
        speeds[label] = {"co": m.co, "counter": m.counter}
        dev = max(dev, abs(m.co - 1.0), abs(m.counter - 1.0))
    v = omega * radius
    sep = m.distance
    return ChiuHsuSherryReport(speeds, dev, v, sep, boost_simultaneity_offset(v, sep))


def rim_circle(omega: float, radius: float, sense: int = +1) -> tuple[MetricField, LoopPath]:
    """Rotating-chart metric and the rim circle, the standard Sagnac setup."""
    _check_platform(omega, radius)
    T, g = rotating_chart(omega)
    return g, circle(T.source, radius, sense)
