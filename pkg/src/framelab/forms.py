"""Differential forms on a chart: wedge product, exterior derivative, Hodge star."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import TYPE_CHECKING, Mapping

import numpy as np

from .charts import Chart, same_chart
from .errors import DegreeError
from .fields import ZERO, ScalarField, as_field
from .linalg import det, permutation_sign

if TYPE_CHECKING:
    from .tensors import MetricField


def _increasing(p: int):
    return list(itertools.combinations(range(4), p))


@dataclass(frozen=True, eq=False)
class PForm:
    """A p-form stored by strictly increasing multi-index.

    Missing multi-indices are zero.
    """

    chart: Chart
    degree: int
    components: Mapping[tuple[int, ...], ScalarField]

    def __post_init__(self):
        if not 0 <= self.degree <= 4:
            raise DegreeError(f"form degree {self.degree} outside 0..4")
        clean = {}
        for idx, f in dict(self.components).items():
            idx = tuple(idx)
            if len(idx) != self.degree or any(i not in range(4) for i in idx):
                raise DegreeError(f"multi-index {idx} invalid for a {self.degree}-form")
            if list(idx) != sorted(set(idx)):
                raise ValueError(f"multi-index {idx} is not strictly increasing")
            f = as_field(f)
            if not f.is_zero:
                clean[idx] = f
        object.__setattr__(self, "components", MappingProxyType(clean))

    def __getitem__(self, idx) -> ScalarField:
        """Component for any index order, with the permutation sign applied."""
        idx = tuple(idx)
        s = permutation_sign(idx)
        if s == 0:
            return ZERO
        f = self.components.get(tuple(sorted(idx)), ZERO)
        return f if s > 0 else -f

    def __add__(self, other: PForm) -> PForm:
        same_chart(self.chart, other.chart)
        if self.degree != other.degree:
            raise DegreeError("cannot add forms of different degree")
        keys = set(self.components) | set(other.components)
        return PForm(self.chart, self.degree,
                     {k: self.components.get(k, ZERO) + other.components.get(k, ZERO)
                      for k in keys})

    def __neg__(self) -> PForm:
        return PForm(self.chart, self.degree, {k: -f for k, f in self.components.items()})

    def __sub__(self, other: PForm) -> PForm:
        return self + (-other)

    def scale(self, f) -> PForm:
        f = as_field(f)
        return PForm(self.chart, self.degree, {k: f * c for k, c in self.components.items()})

    def evaluate(self, points) -> dict[tuple[int, ...], np.ndarray]:
        return {idx: self.components.get(idx, ZERO)(points) for idx in _increasing(self.degree)}

    def dense(self, points) -> np.ndarray:
        """Fully antisymmetric component array of shape ``(..., 4, ..., 4)``."""
        pts = np.asarray(points, dtype=float)
        out = np.zeros(pts.shape[:-1] + (4,) * self.degree)
        for idx, f in self.components.items():
            val = f(pts)
            for perm in itertools.permutations(range(self.degree)):
                key = tuple(idx[k] for k in perm)
                out[(Ellipsis,) + key] = permutation_sign(perm) * val
        return out

    def max_abs(self, points) -> float:
        if not self.components:
            return 0.0
        return float(max(np.max(np.abs(f(points))) for f in self.components.values()))


def zero_form(chart: Chart, f) -> PForm:
    return PForm(chart, 0, {(): as_field(f)})


def basis(chart: Chart, *indices: int) -> PForm:
    """dx^i ∧ dx^j ∧ ... from coordinate indices (in any order)."""
    s = permutation_sign(indices)
    if s == 0:
        return PForm(chart, len(indices), {})
    return PForm(chart, len(indices), {tuple(sorted(indices)): float(s)})


def exterior_derivative(form: PForm) -> PForm:
    p = form.degree
    if p >= 4:
        raise DegreeError("the exterior derivative of a 4-form is not defined here")
    comps = {}
    for J in _increasing(p + 1):
        total = ZERO
        for k, j in enumerate(J):
            rest = J[:k] + J[k + 1:]
            c = form.components.get(rest)
            if c is None:
                continue
            term = c.partial(j)
            total = total + term if k % 2 == 0 else total - term
        comps[J] = total
    return PForm(form.chart, p + 1, comps)


def wedge(a: PForm, b: PForm) -> PForm:
    chart = same_chart(a.chart, b.chart)
    if a.degree + b.degree > 4:
        raise DegreeError(f"wedge of degrees {a.degree}+{b.degree} exceeds 4")
    comps: dict[tuple[int, ...], ScalarField] = {}
    for I, fa in a.components.items():
        for J, fb in b.components.items():
            K = I + J
            s = permutation_sign(K)
            if s == 0:
                continue
            key = tuple(sorted(K))
            term = fa * fb
            prev = comps.get(key, ZERO)
            comps[key] = prev + term if s > 0 else prev - term
    return PForm(chart, a.degree + b.degree, comps)


def hodge_star(g: MetricField, form: PForm) -> PForm:
    """Lorentzian Hodge dual with ε_{0123} = +sqrt|det g|.

    (*ω)_J = Σ_{I increasing} ω^I ε_{IJ}, where ω^I is obtained by raising all
    indices with the inverse metric.
    """
    chart = same_chart(g.chart, form.chart)
    p = form.degree
    ginv = g.inverse_fields()
    vol = g.volume_density()
    raised = {}
    for I in _increasing(p):
        total = ZERO
        for K, w in form.components.items():
            m = det([[ginv[i][k] for k in K] for i in I]) if p else 1.0
            total = total + as_field(m) * w
        raised[I] = total
    comps = {}
    for J in _increasing(4 - p):
        total = ZERO
        for I, w in raised.items():
            s = permutation_sign(I + J)
            if s == 0 or w.is_zero:
                continue
            total = total + w if s > 0 else total - w
        comps[J] = total * vol
    return PForm(chart, 4 - p, comps)
