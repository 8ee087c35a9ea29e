"""Reference frames: validation, kinematic decomposition and synchronizability.

A frame ``Q`` is a unit, future-pointing timelike vector field. Its dual one-form
``α = g(Q, ·)`` has covariant derivative ``T_{μν} = ∇_ν Q_μ``, which splits into

    T_{μν} = a_μ Q_ν + ω_{μν} + σ_{μν} + Θ h_{μν} / 3

with the projection tensor ``h = g - α⊗α``. Rotation and shear are the
antisymmetric and trace-free symmetric parts, both projected twice with
``h^ρ_μ = δ^ρ_μ - Q^ρ Q_μ``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .charts import same_chart
from .errors import FrameValidationError
from .fields import ScalarField
from .forms import PForm, exterior_derivative, hodge_star, wedge
from .tensors import (MetricField, Rank2Tensor, VectorField, contract, lower_index,
                      nabla_oneform, raise_index)

NORM_TOL = 1e-10
CLASSIFY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class FrameField:
    vector: VectorField
    metric: MetricField
    name: str = ""

    @property
    def chart(self):
        return self.vector.chart

    def __call__(self, points) -> np.ndarray:
        return self.vector(points)

    def one_form(self) -> PForm:
        return lower_index(self.metric, self.vector)

    def one_form_fields(self) -> tuple[ScalarField, ...]:
        alpha = self.one_form()
        return tuple(alpha[(m,)] for m in range(4))


def make_frame(g: MetricField, v: VectorField, grid, name: str = "") -> FrameField:
    """Validate ``v`` as a reference frame on the sample grid.

    The grid must lie inside ``v.chart``'s domain (a frame may live on a
    restriction of the metric's chart). Raises :class:`FrameValidationError`
    for non-unit, non-timelike or past-pointing samples and
    :class:`~framelab.errors.DomainError` for out-of-domain samples.
    """
    same_chart(g.chart, v.chart)
    pts = grid.points()
    if len(pts) == 0:
        raise FrameValidationError("empty sample grid")
    v.chart.check_points(pts)
    with np.errstate(all="ignore"):
        comps = v(pts)
        norm = contract(g, v, v)(pts)
    if not np.all(np.isfinite(comps)) or not np.all(np.isfinite(norm)):
        raise FrameValidationError(f"{name or 'frame'}: non-finite components on the grid")
    if np.any(norm <= 0):
        i = int(np.argmin(norm))
        kind = "null" if norm[i] == 0 else "spacelike"
        raise FrameValidationError(
            f"{name or 'frame'}: {kind} at {tuple(pts[i])} (g(V,V) = {norm[i]:.6g})")
    worst = int(np.argmax(np.abs(norm - 1.0)))
    if abs(norm[worst] - 1.0) > NORM_TOL:
        raise FrameValidationError(
            f"{name or 'frame'}: not unit-normalized, g(V,V) = {norm[worst]:.12g} "
            f"at {tuple(pts[worst])}")
    if np.any(comps[:, 0] <= 0):
        bad = pts[int(np.argmin(comps[:, 0]))]
        raise FrameValidationError(f"{name or 'frame'}: not future-pointing at {tuple(bad)}")
    return FrameField(v, g, name)


def projection_tensor(g: MetricField, Q: FrameField, x) -> np.ndarray:
    """h_{μν} = g_{μν} - Q_μ Q_ν at ``x``."""
    same_chart(g.chart, Q.chart)
    alpha = Q.one_form()
    low = np.stack([alpha[(m,)](x) for m in range(4)], axis=-1)
    return g.matrix(x) - low[..., :, None] * low[..., None, :]


@dataclass(frozen=True)
class KinematicDecomposition:
    """Kinematic quantities of a frame at one or more points (leading batch axes)."""

    x: np.ndarray
    q_up: np.ndarray
    q_low: np.ndarray
    nabla_q: np.ndarray        # T[..., mu, nu] = ∇_nu Q_mu
    acceleration: np.ndarray   # a_mu
    rotation: np.ndarray       # ω_{mu nu}
    shear: np.ndarray          # σ_{mu nu}
    expansion: np.ndarray      # Θ
    projection: np.ndarray     # h_{mu nu}
    projector: np.ndarray = field(repr=False)  # h^rho_mu, indexed [..., rho, mu]

    def reconstruction(self) -> np.ndarray:
        a_alpha = self.acceleration[..., :, None] * self.q_low[..., None, :]
        return (a_alpha + self.rotation + self.shear
                + self.expansion[..., None, None] * self.projection / 3.0)

    def reconstruction_error(self) -> float:
        return float(np.max(np.abs(self.reconstruction() - self.nabla_q)))

    def projection_identity_error(self) -> float:
        """max |h^ρ_μ h^τ_ν T_ρτ - (T_μν - a_μ Q_ν)|."""
        P = self.projector
        lhs = np.einsum("...rm,...tn,...rt->...mn", P, P, self.nabla_q)
        rhs = self.nabla_q - self.acceleration[..., :, None] * self.q_low[..., None, :]
        return float(np.max(np.abs(lhs - rhs)))


def kinematic_decomposition(g: MetricField, Q: FrameField, x) -> KinematicDecomposition:
    same_chart(g.chart, Q.chart)
    pts = np.asarray(x, dtype=float)
    Q.chart.check_points(pts)
    low_fields = Q.one_form_fields()
    q_up = Q(pts)
    q_low = np.stack([f(pts) for f in low_fields], axis=-1)
    T = nabla_oneform(g, low_fields, pts)
    ginv = g.inverse(pts)
    gm = g.matrix(pts)

    accel = np.einsum("...mn,...n->...m", T, q_up)
    theta = np.einsum("...mn,...mn->...", ginv, T)
    h = gm - q_low[..., :, None] * q_low[..., None, :]
    P = np.eye(4) - q_up[..., :, None] * q_low[..., None, :]
    anti = 0.5 * (T - np.swapaxes(T, -1, -2))
    sym = 0.5 * (T + np.swapaxes(T, -1, -2))
    rot = np.einsum("...rm,...tn,...rt->...mn", P, P, anti)
    shear = np.einsum("...rm,...tn,...rt->...mn", P, P,
                      sym - theta[..., None, None] * h / 3.0)
    return KinematicDecomposition(pts, q_up, q_low, T, accel, rot, shear, theta, h, P)


def reconstruction_residual(g: MetricField, Q: FrameField, x) -> float:
    """Largest violation of the decomposition identity and of the projected-gradient identity."""
    k = kinematic_decomposition(g, Q, x)
    return max(k.reconstruction_error(), k.projection_identity_error())


def frobenius_obstruction(g: MetricField, Q: FrameField) -> PForm:
    """α ∧ dα; its vanishing is the integrability condition for the rest spaces."""
    same_chart(g.chart, Q.chart)
    alpha = Q.one_form()
    return wedge(alpha, exterior_derivative(alpha))


def vortex_vector(g: MetricField, Q: FrameField) -> VectorField:
    """Half the vector dual of *(α∧dα).

    The factor 1/2 makes the axis component of a rigidly rotating frame equal
    its angular velocity near the axis.
    """
    star = hodge_star(g, frobenius_obstruction(g, Q))
    return raise_index(g, star).scale(0.5)


@dataclass(frozen=True)
class SynchronizabilityReport:
    frame: str
    locally_synchronizable: bool
    locally_proper_time_synchronizable: bool
    rotating: bool
    inertial: bool
    max_d_alpha: float
    max_frobenius: float
    max_rotation: float
    max_nabla_q: float
    argmax: dict            # quantity name -> point attaining the maximum
    grid: str
    n_points: int
    tolerance: float

    @property
    def rotation_criterion_consistent(self) -> bool:
        """α∧dα ≈ 0 exactly when ω ≈ 0 on this grid."""
        return (self.max_frobenius < self.tolerance) == (self.max_rotation < self.tolerance)

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["argmax"] = {k: [float(c) for c in v] for k, v in self.argmax.items()}
        d["rotation_criterion_consistent"] = self.rotation_criterion_consistent
        return d


def _max_with_point(values: np.ndarray, pts: np.ndarray) -> tuple[float, np.ndarray]:
    flat = np.abs(values).reshape(len(pts), -1).max(axis=1)
    i = int(np.argmax(flat))  # first occurrence: deterministic
    return float(flat[i]), pts[i]


def _form_magnitudes(form: PForm, pts: np.ndarray) -> np.ndarray:
    if not form.components:
        return np.zeros((len(pts), 1))
    return np.stack([f(pts) for f in form.components.values()], axis=-1)


def classify(g: MetricField, Q: FrameField, grid, tol: float = CLASSIFY_TOL) -> SynchronizabilityReport:
    same_chart(g.chart, Q.chart)
    pts = grid.points()
    if len(pts) == 0:
        raise ValueError("empty sample grid")
    alpha = Q.one_form()
    dalpha = exterior_derivative(alpha)
    frob = wedge(alpha, dalpha)
    k = kinematic_decomposition(g, Q, pts)

    m_d, p_d = _max_with_point(_form_magnitudes(dalpha, pts), pts)
    m_f, p_f = _max_with_point(_form_magnitudes(frob, pts), pts)
    m_w, p_w = _max_with_point(k.rotation, pts)
    m_t, p_t = _max_with_point(k.nabla_q, pts)
    return SynchronizabilityReport(
        frame=Q.name,
        locally_synchronizable=m_f < tol,
        locally_proper_time_synchronizable=m_d < tol,
        rotating=m_w >= tol,
        inertial=m_t < tol,
        max_d_alpha=m_d,
        max_frobenius=m_f,
        max_rotation=m_w,
        max_nabla_q=m_t,
        argmax={"d_alpha": p_d, "frobenius": p_f, "rotation": p_w, "nabla_q": p_t},
        grid=getattr(grid, "description", ""),
        n_points=len(pts),
        tolerance=tol,
    )


@dataclass(frozen=True, eq=False)
class AdaptedCoframe:
    """θ⁰ = α_Q and the spatial tensor γ = g - θ⁰⊗θ⁰ (negative semidefinite)."""

    theta0: PForm
    gamma: Rank2Tensor

    def reconstruction_error(self, g: MetricField, points) -> float:
        th = np.stack([self.theta0[(m,)](points) for m in range(4)], axis=-1)
        rebuilt = th[..., :, None] * th[..., None, :] + self.gamma(points)
        return float(np.max(np.abs(rebuilt - g.matrix(points))))


def adapted_coframe(g: MetricField, Q: FrameField) -> AdaptedCoframe:
    same_chart(g.chart, Q.chart)
    theta0 = Q.one_form()
    z = [theta0[(m,)] for m in range(4)]
    gamma = tuple(tuple(g[m, n] - z[m] * z[n] for n in range(4)) for m in range(4))
    return AdaptedCoframe(theta0, Rank2Tensor(g.chart, gamma))


def diagonality_check(g_adapted: MetricField, grid, tol: float = CLASSIFY_TOL) -> tuple[bool, float]:
    """Whether the time-space components g_{i0} vanish on the grid."""
    pts = grid.points()
    worst = max(float(np.max(np.abs(g_adapted[0, i](pts)))) for i in (1, 2, 3))
    return worst < tol, worst

