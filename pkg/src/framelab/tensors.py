"""Metric, vector and rank-2 tensor fields; connection and chart maps.

Convention for first derivatives of tensors: the derivative index comes first,
``dg[..., rho, mu, nu] = ∂_rho g_{mu nu}``. For covariant derivatives of
one-forms the derivative index comes last, ``T[..., mu, nu] = ∇_nu α_mu``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import ad, linalg
from .charts import Chart, same_chart
from .errors import SingularMetricError
from .fields import ZERO, ScalarField, as_field
from .forms import PForm

DET_FLOOR = 1e-300


def _stack(fields, points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    return np.stack([f(pts) for f in fields], axis=-1)


@dataclass(frozen=True, eq=False)
class VectorField:
    chart: Chart
    components: tuple[ScalarField, ScalarField, ScalarField, ScalarField]

    def __post_init__(self):
        comps = tuple(as_field(c) for c in self.components)
        if len(comps) != 4:
            raise ValueError("vector fields have 4 components")
        object.__setattr__(self, "components", comps)

    def __call__(self, points) -> np.ndarray:
        return _stack(self.components, points)

    def __getitem__(self, i: int) -> ScalarField:
        return self.components[i]

    def scale(self, f) -> VectorField:
        f = as_field(f)
        return VectorField(self.chart, tuple(f * c for c in self.components))

    def grad(self, points) -> np.ndarray:
        """``out[..., nu, mu] = ∂_nu V^mu``."""
        return np.stack([_stack([c.partial(n) for c in self.components], points)
                         for n in range(4)], axis=-2)


@dataclass(frozen=True, eq=False)
class Rank2Tensor:
    """Covariant rank-2 tensor; all 16 components are stored."""

    chart: Chart
    components: tuple[tuple[ScalarField, ...], ...]

    def __post_init__(self):
        comps = tuple(tuple(as_field(c) for c in row) for row in self.components)
        if len(comps) != 4 or any(len(r) != 4 for r in comps):
            raise ValueError("rank-2 tensors have 4x4 components")
        object.__setattr__(self, "components", comps)

    def __call__(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return np.stack([_stack(row, pts) for row in self.components], axis=-2)

    def __getitem__(self, idx) -> ScalarField:
        mu, nu = idx
        return self.components[mu][nu]


@dataclass(frozen=True, eq=False)
class MetricField:
    """Symmetric metric of signature (+,-,-,-); one field per unordered pair.

    ``components`` maps ``(mu, nu)`` with ``mu <= nu`` to a field; missing
    pairs are zero. The ordered coordinate 4-form is positively oriented.
    """

    chart: Chart
    components: dict

    def __post_init__(self):
        clean = {}
        for (mu, nu), f in dict(self.components).items():
            key = (min(mu, nu), max(mu, nu))
            if key in clean:
                raise ValueError(f"component {key} given twice")
            clean[key] = as_field(f)
        object.__setattr__(self, "components", clean)

    @classmethod
    def diagonal(cls, chart: Chart, entries: Sequence) -> MetricField:
        return cls(chart, {(i, i): e for i, e in enumerate(entries)})

    def __getitem__(self, idx) -> ScalarField:
        mu, nu = idx
        return self.components.get((min(mu, nu), max(mu, nu)), ZERO)

    @property
    def rows(self) -> list[list[ScalarField]]:
        return [[self[m, n] for n in range(4)] for m in range(4)]

    # numeric evaluation -----------------------------------------------------

    def matrix(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        out = np.zeros(pts.shape[:-1] + (4, 4))
        for (m, n), f in self.components.items():
            v = f(pts)
            out[..., m, n] = v
            out[..., n, m] = v
        return out

    def derivatives(self, points) -> np.ndarray:
        """``dg[..., rho, mu, nu] = ∂_rho g_{mu nu}``."""
        pts = np.asarray(points, dtype=float)
        out = np.zeros(pts.shape[:-1] + (4, 4, 4))
        for (m, n), f in self.components.items():
            if f.const is not None:
                continue
            for rho in range(4):
                v = f.partial(rho)(pts)
                out[..., rho, m, n] = v
                out[..., rho, n, m] = v
        return out

    def determinant(self, points) -> np.ndarray:
        return np.linalg.det(self.matrix(points))

    def inverse(self, points) -> np.ndarray:
        g = self.matrix(points)
        d = np.linalg.det(g)
        if np.any(~np.isfinite(d)) or np.any(np.abs(d) < DET_FLOOR):
            raise SingularMetricError(f"{self.chart.name}: singular metric at a sample point")
        return np.linalg.inv(g)

    def signature(self, points) -> np.ndarray:
        """Counts of (positive, negative) eigenvalues at each point."""
        ev = np.linalg.eigvalsh(self.matrix(points))
        return np.stack([(ev > 0).sum(-1), (ev < 0).sum(-1)], axis=-1)

    # field-valued helpers -----------------------------------------------------

    @cached_property
    def det_field(self) -> ScalarField:
        return as_field(linalg.det(self.rows))

    def inverse_fields(self) -> list[list[ScalarField]]:
        return self._inverse_fields

    @cached_property
    def _inverse_fields(self) -> list[list[ScalarField]]:
        d = self.det_field
        adj = linalg.adjugate(self.rows)
        inv_d = _guarded_reciprocal(d, self.chart.name)
        inv = [[as_field(a) * inv_d for a in row] for row in adj]
        return inv

    def volume_density(self) -> ScalarField:
        from .fields import sqrt
        return sqrt(-self.det_field)


def _guarded_reciprocal(d: ScalarField, where: str) -> ScalarField:
    if d.const is not None:
        if d.const == 0:
            raise SingularMetricError(f"{where}: metric determinant vanishes identically")
        return as_field(1.0 / d.const)
    f = d.raw

    def fn(x):
        v = f(x)
        p = np.asarray(ad.primal(v))
        if np.any(np.abs(p) < DET_FLOOR) or not np.all(np.isfinite(p)):
            raise SingularMetricError(f"{where}: singular metric at an evaluation point")
        return 1.0 / v

    return ScalarField(fn, label=f"1/det({where})", deps=d.deps)


# index gymnastics -------------------------------------------------------------

def lower_index(g: MetricField, v: VectorField) -> PForm:
    chart = same_chart(g.chart, v.chart)
    comps = {}
    for m in range(4):
        total = ZERO
        for n in range(4):
            total = total + g[m, n] * v[n]
        comps[(m,)] = total
    return PForm(chart, 1, comps)


def raise_index(g: MetricField, alpha: PForm) -> VectorField:
    chart = same_chart(g.chart, alpha.chart)
    if alpha.degree != 1:
        raise ValueError("raise_index expects a one-form")
    ginv = g.inverse_fields()
    comps = []
    for m in range(4):
        total = ZERO
        for n in range(4):
            total = total + ginv[m][n] * alpha[(n,)]
        comps.append(total)
    return VectorField(chart, tuple(comps))


def contract(g: MetricField, u: VectorField, v: VectorField) -> ScalarField:
    """g(u, v) as a field."""
    same_chart(g.chart, u.chart, v.chart)
    total = ZERO
    for m in range(4):
        for n in range(4):
            total = total + g[m, n] * u[m] * v[n]
    return total


# connection -------------------------------------------------------------------

def christoffel(g: MetricField, points) -> np.ndarray:
    """Γ^λ_{μν} at the given points, shape ``(..., 4, 4, 4)`` indexed [λ, μ, ν]."""
    pts = np.asarray(points, dtype=float)
    g.chart.check_points(pts)
    ginv = g.inverse(pts)
    dg = g.derivatives(pts)
    # bracket[ρ, μ, ν] = ∂_μ g_ρν + ∂_ν g_ρμ - ∂_ρ g_μν
    bracket = (np.swapaxes(dg, -3, -2)
               + np.moveaxis(dg, -3, -1)
               - dg)
    gamma = 0.5 * np.einsum("...lr,...rmn->...lmn", ginv, bracket)
    return 0.5 * (gamma + np.swapaxes(gamma, -1, -2))


def christoffel_fields(g: MetricField) -> list:
    """Γ^λ_{μν} as differentiable fields, nested lists [λ][μ][ν]."""
    ginv = g.inverse_fields()
    dg = [[[g[m, n].partial(r) for n in range(4)] for m in range(4)] for r in range(4)]
    out = [[[None] * 4 for _ in range(4)] for _ in range(4)]
    for lam in range(4):
        for mu in range(4):
            for nu in range(mu, 4):
                total = ZERO
                for rho in range(4):
                    if ginv[lam][rho].is_zero:
                        continue
                    b = dg[mu][rho][nu] + dg[nu][rho][mu] - dg[rho][mu][nu]
                    total = total + ginv[lam][rho] * b
                total = 0.5 * total
                out[lam][mu][nu] = total
                out[lam][nu][mu] = total
    return out


def covariant_derivative_oneform(g: MetricField, alpha: PForm) -> Rank2Tensor:
    """T_{μν} = ∂_ν α_μ - Γ^λ_{μν} α_λ."""
    chart = same_chart(g.chart, alpha.chart)
    if alpha.degree != 1:
        raise ValueError("covariant_derivative_oneform expects a one-form")
    gam = christoffel_fields(g)
    a = [alpha[(m,)] for m in range(4)]
    rows = []
    for mu in range(4):
        row = []
        for nu in range(4):
            total = a[mu].partial(nu)
            for lam in range(4):
                total = total - gam[lam][mu][nu] * a[lam]
            row.append(total)
        rows.append(tuple(row))
    return Rank2Tensor(chart, tuple(rows))


def nabla_oneform(g: MetricField, alpha_fields: Sequence[ScalarField], points) -> np.ndarray:
    """Numeric ∇_ν α_μ at points, ``[..., mu, nu]``; fast path for grids."""
    pts = np.asarray(points, dtype=float)
    a = _stack(alpha_fields, pts)
    da = np.stack([_stack([f.partial(n) for n in range(4)], pts) for f in alpha_fields],
                  axis=-2)
    gam = christoffel(g, pts)
    return da - np.einsum("...lmn,...l->...mn", gam, a)


def covariant_derivative_metric(g: MetricField, points) -> np.ndarray:
    """∇_ρ g_{μν}, indexed [..., rho, mu, nu]; vanishes for the Levi-Civita connection."""
    pts = np.asarray(points, dtype=float)
    dg = g.derivatives(pts)
    gm = g.matrix(pts)
    gam = christoffel(g, pts)
    # Γ^λ_{ρμ} g_{λν} + Γ^λ_{ρν} g_{μλ}
    t1 = np.einsum("...lrm,...ln->...rmn", gam, gm)
    t2 = np.einsum("...lrn,...ml->...rmn", gam, gm)
    return dg - t1 - t2


# chart maps -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ChartMap:
    """Smooth map ``source -> target`` given by target coordinates as fields on source.

    ``inverse`` (optional) gives source coordinates as fields on target.
    """

    source: Chart
    target: Chart
    forward: tuple[ScalarField, ScalarField, ScalarField, ScalarField]
    inverse: tuple[ScalarField, ScalarField, ScalarField, ScalarField] | None = None

    def __call__(self, points) -> np.ndarray:
        return _stack(self.forward, points)

    def apply_inverse(self, points) -> np.ndarray:
        if self.inverse is None:
            raise ValueError("map has no inverse")
        return _stack(self.inverse, points)

    def jacobian_fields(self) -> list[list[ScalarField]]:
        """J[mu][a] = ∂ x_target^mu / ∂ x_source^a."""
        return [[self.forward[m].partial(a) for a in range(4)] for m in range(4)]

    def jacobian(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        J = self.jacobian_fields()
        return np.stack([_stack(row, pts) for row in J], axis=-2)

    def inverted(self) -> ChartMap:
        if self.inverse is None:
            raise ValueError("map has no inverse")
        return ChartMap(self.target, self.source, self.inverse, self.forward)


def pullback_field(T: ChartMap, f: ScalarField) -> ScalarField:
    return f.compose(T.forward)


def pullback_metric(T: ChartMap, g: MetricField) -> MetricField:
    """ĝ_ab = J^μ_a J^ν_b g_μν∘T on the source chart."""
    same_chart(T.target, g.chart)
    J = T.jacobian_fields()
    pulled = {key: f.compose(T.forward) for key, f in g.components.items()}

    def gT(m, n):
        return pulled.get((min(m, n), max(m, n)), ZERO)

    comps = {}
    for a in range(4):
        for b in range(a, 4):
            total = ZERO
            for m in range(4):
                if J[m][a].is_zero:
                    continue
                for n in range(4):
                    if J[n][b].is_zero:
                        continue
                    total = total + J[m][a] * J[n][b] * gT(m, n)
            comps[(a, b)] = total
    return MetricField(T.source, comps)


def pullback_vector(T: ChartMap, v: VectorField) -> VectorField:
    """Express a target-chart vector field in source coordinates (needs ``T.inverse``)."""
    same_chart(T.target, v.chart)
    if T.inverse is None:
        raise ValueError("pulling back a vector field needs the inverse map")
    Jinv = [[T.inverse[a].partial(m) for m in range(4)] for a in range(4)]
    comps = []
    for a in range(4):
        total = ZERO
        for m in range(4):
            total = total + Jinv[a][m] * v[m]
        comps.append(total.compose(T.forward))
    return VectorField(T.source, tuple(comps))
