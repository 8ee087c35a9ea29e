"""Tagged forward-mode dual numbers.

A :class:`Dual` carries a primal part and a tangent part, both of which may be
floats, numpy arrays or other duals. Every seeding gets a fresh integer tag and
operations between duals of different tags treat the lower-tagged operand as a
constant, so nesting (derivatives of derivatives) does not suffer from
perturbation confusion.

The elementary functions below accept floats, arrays and duals alike.
"""

from __future__ import annotations

import itertools

import numpy as np

_tags = itertools.count(1)


def new_tag() -> int:
    return next(_tags)


class Dual:
    __slots__ = ("re", "eps", "tag")
    __array_ufunc__ = None  # make numpy defer to the reflected operators

    def __init__(self, re, eps, tag: int):
        self.re = re
        self.eps = eps
        self.tag = tag

    def __repr__(self) -> str:
        return f"Dual({self.re!r}, {self.eps!r}, tag={self.tag})"

    def __neg__(self):
        return Dual(-self.re, -self.eps, self.tag)

    def __pos__(self):
        return self

    def __add__(self, other):
        tag = _top_tag(self, other)
        a, da = split(self, tag)
        b, db = split(other, tag)
        return Dual(a + b, da + db, tag)

    __radd__ = __add__

    def __sub__(self, other):
        tag = _top_tag(self, other)
        a, da = split(self, tag)
        b, db = split(other, tag)
        return Dual(a - b, da - db, tag)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        tag = _top_tag(self, other)
        a, da = split(self, tag)
        b, db = split(other, tag)
        return Dual(a * b, a * db + da * b, tag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        tag = _top_tag(self, other)
        a, da = split(self, tag)
        b, db = split(other, tag)
        q = a / b
        return Dual(q, (da - q * db) / b, tag)

    def __rtruediv__(self, other):
        tag = _top_tag(self, other)
        a, da = split(other, tag)
        b, db = split(self, tag)
        q = a / b
        return Dual(q, (da - q * db) / b, tag)

    def __pow__(self, p):
        if isinstance(p, Dual):
            return exp(p * log(self))
        # constant exponent
        return Dual(self.re**p, p * self.re ** (p - 1) * self.eps, self.tag)

    def __rpow__(self, base):
        return exp(self * log(base))


def _top_tag(a, b) -> int:
    ta = a.tag if isinstance(a, Dual) else 0
    tb = b.tag if isinstance(b, Dual) else 0
    return max(ta, tb)


def split(x, tag: int):
    """Primal and tangent of ``x`` with respect to perturbation ``tag``."""
    if isinstance(x, Dual) and x.tag == tag:
        return x.re, x.eps
    return x, 0.0


def tangent(x, tag: int):
    return split(x, tag)[1]


def primal(x):
    """Strip every perturbation level and return the underlying value."""
    while isinstance(x, Dual):
        x = x.re
    return x


def derivative(f, x0):
    """d f / dx at ``x0`` for a univariate ``f`` built from this module."""
    tag = new_tag()
    return tangent(f(Dual(x0, 1.0, tag)), tag)


# elementary functions -------------------------------------------------------

def sqrt(x):
    if isinstance(x, Dual):
        s = sqrt(x.re)
        return Dual(s, x.eps / (2.0 * s), x.tag)
    return np.sqrt(x)


def exp(x):
    if isinstance(x, Dual):
        e = exp(x.re)
        return Dual(e, e * x.eps, x.tag)
    return np.exp(x)


def log(x):
    if isinstance(x, Dual):
        return Dual(log(x.re), x.eps / x.re, x.tag)
    return np.log(x)


def sin(x):
    if isinstance(x, Dual):
        return Dual(sin(x.re), cos(x.re) * x.eps, x.tag)
    return np.sin(x)


def cos(x):
    if isinstance(x, Dual):
        return Dual(cos(x.re), -sin(x.re) * x.eps, x.tag)
    return np.cos(x)


def sinh(x):
    if isinstance(x, Dual):
        return Dual(sinh(x.re), cosh(x.re) * x.eps, x.tag)
    return np.sinh(x)


def cosh(x):
    if isinstance(x, Dual):
        return Dual(cosh(x.re), sinh(x.re) * x.eps, x.tag)
    return np.cosh(x)


def tanh(x):
    if isinstance(x, Dual):
        th = tanh(x.re)
        return Dual(th, (1.0 - th * th) * x.eps, x.tag)
    return np.tanh(x)


def arcsinh(x):
    if isinstance(x, Dual):
        return Dual(arcsinh(x.re), x.eps / sqrt(1.0 + x.re * x.re), x.tag)
    return np.arcsinh(x)


def arctan(x):
    if isinstance(x, Dual):
        return Dual(arctan(x.re), x.eps / (1.0 + x.re * x.re), x.tag)
    return np.arctan(x)


ELEMENTARY = {
    "sqrt": sqrt,
    "exp": exp,
    "log": log,
    "sin": sin,
    "cos": cos,
    "sinh": sinh,
    "cosh": cosh,
    "tanh": tanh,
    "arcsinh": arcsinh,
    "arctan": arctan,
}
