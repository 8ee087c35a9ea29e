"""Scalar component functions with exact partial derivatives.

A :class:`ScalarField` wraps a function of the four chart coordinates written
in terms of the elementary operations of :mod:`framelab.ad`. Fields compose
with the usual arithmetic operators and the lifted elementary functions in this
module; partial derivatives are new fields obtained by seeding a dual number,
so they can be differentiated again.

Evaluation is vectorised: ``f(points)`` accepts an array of shape ``(..., 4)``.
Each field records which coordinates it may depend on, so derivatives along
the others fold to the zero field.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from . import ad

Coords = tuple  # four numbers, arrays or duals
ALL = frozenset(range(4))


class ScalarField:
    __slots__ = ("fn", "const", "label", "deps")

    def __init__(self, fn: Callable[[Coords], object], const: float | None = None,
                 label: str = "", deps: frozenset = ALL):
        self.fn = fn
        self.const = const
        self.label = label
        self.deps = frozenset() if const is not None else frozenset(deps)

    def __repr__(self) -> str:
        if self.const is not None:
            return f"ScalarField(const={self.const})"
        return f"ScalarField({self.label or '?'})"

    # evaluation -------------------------------------------------------------

    def __call__(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        shape = pts.shape[:-1]
        if self.const is not None:
            return np.full(shape, self.const)
        value = self.fn(tuple(pts[..., i] for i in range(4)))
        return np.array(np.broadcast_to(ad.primal(value), shape), dtype=float)

    def raw(self, coords: Coords):
        """Evaluate on a tuple of coordinate values (floats, arrays or duals)."""
        if self.const is not None:
            return self.const
        return self.fn(coords)

    @property
    def is_zero(self) -> bool:
        return self.const == 0.0

    # calculus -----------------------------------------------------------------

    def partial(self, i: int) -> ScalarField:
        if self.const is not None or i not in self.deps:
            return ZERO
        parent = self.fn

        def fn(x):
            tag = ad.new_tag()
            xs = list(x)
            xs[i] = ad.Dual(xs[i], 1.0, tag)
            return ad.tangent(parent(tuple(xs)), tag)

        return ScalarField(fn, label=f"d{i}({self.label})", deps=self.deps)

    def grad(self, points) -> np.ndarray:
        return np.stack([self.partial(i)(points) for i in range(4)], axis=-1)

    def compose(self, coords: Sequence[ScalarField]) -> ScalarField:
        """``self`` evaluated at the point whose coordinates are ``coords``."""
        if self.const is not None:
            return self
        parent = self.fn
        maps = tuple(as_field(c) for c in coords)
        deps = frozenset().union(*(maps[j].deps for j in self.deps))

        def fn(x):
            return parent(tuple(m.raw(x) for m in maps))

        return ScalarField(fn, label=f"{self.label}∘T", deps=deps)

    # arithmetic with constant folding --------------------------------------------

    def __add__(self, other):
        other = as_field(other)
        if self.const is not None and other.const is not None:
            return constant(self.const + other.const)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        f, g = self.raw, other.raw
        return ScalarField(lambda x: f(x) + g(x), label=f"({self.label}+{other.label})",
                           deps=self.deps | other.deps)

    def __radd__(self, other):
        return as_field(other).__add__(self)

    def __neg__(self):
        if self.const is not None:
            return constant(-self.const)
        f = self.raw
        return ScalarField(lambda x: -f(x), label=f"-{self.label}", deps=self.deps)

    def __sub__(self, other):
        other = as_field(other)
        if self.const is not None and other.const is not None:
            return constant(self.const - other.const)
        if other.is_zero:
            return self
        if self.is_zero:
            return -other
        f, g = self.raw, other.raw
        return ScalarField(lambda x: f(x) - g(x), label=f"({self.label}-{other.label})",
                           deps=self.deps | other.deps)

    def __rsub__(self, other):
        return as_field(other).__sub__(self)

    def __mul__(self, other):
        other = as_field(other)
        if self.const is not None and other.const is not None:
            return constant(self.const * other.const)
        if self.is_zero or other.is_zero:
            return ZERO
        if self.const == 1.0:
            return other
        if other.const == 1.0:
            return self
        f, g = self.raw, other.raw
        return ScalarField(lambda x: f(x) * g(x), label=f"{self.label}*{other.label}",
                           deps=self.deps | other.deps)

    def __rmul__(self, other):
        return as_field(other).__mul__(self)

    def __truediv__(self, other):
        other = as_field(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero field")
        if self.const is not None and other.const is not None:
            return constant(self.const / other.const)
        if self.is_zero:
            return ZERO
        if other.const == 1.0:
            return self
        f, g = self.raw, other.raw
        return ScalarField(lambda x: f(x) / g(x), label=f"{self.label}/{other.label}",
                           deps=self.deps | other.deps)

    def __rtruediv__(self, other):
        return as_field(other).__truediv__(self)

    def __pow__(self, p):
        if isinstance(p, ScalarField):
            if p.const is None:
                return exp(p * log(self))
            p = p.const
        if p == 0:
            return ONE
        if p == 1:
            return self
        if self.const is not None:
            return constant(self.const ** p)
        f = self.raw
        if p == 2:
            return ScalarField(lambda x: (lambda v: v * v)(f(x)), label=f"{self.label}^2",
                               deps=self.deps)
        return ScalarField(lambda x: f(x) ** p, label=f"{self.label}^{p}", deps=self.deps)


def constant(c: float) -> ScalarField:
    return ScalarField(lambda x: c, const=float(c), label=repr(float(c)))


ZERO = constant(0.0)
ONE = constant(1.0)


def as_field(x) -> ScalarField:
    if isinstance(x, ScalarField):
        return x
    if np.ndim(x) != 0:
        raise TypeError("fields are built from scalars; got an array")
    return constant(float(x))


def coordinate(i: int, name: str | None = None) -> ScalarField:
    """The coordinate function x^i."""
    return ScalarField(lambda x: x[i], label=name or f"x{i}", deps=frozenset((i,)))


def coordinates(names: Sequence[str] = ("x0", "x1", "x2", "x3")) -> tuple[ScalarField, ...]:
    return tuple(coordinate(i, n) for i, n in enumerate(names))


def _lift(name: str):
    op = ad.ELEMENTARY[name]

    def lifted(x):
        if isinstance(x, ScalarField):
            if x.const is not None:
                return constant(float(op(x.const)))
            f = x.raw
            return ScalarField(lambda c: op(f(c)), label=f"{name}({x.label})", deps=x.deps)
        return op(x)

    lifted.__name__ = name
    lifted.__doc__ = f"Elementwise {name} on fields, floats, arrays or duals."
    return lifted


sqrt = _lift("sqrt")
exp = _lift("exp")
log = _lift("log")
sin = _lift("sin")
cos = _lift("cos")
sinh = _lift("sinh")
cosh = _lift("cosh")
tanh = _lift("tanh")
arcsinh = _lift("arcsinh")
arctan = _lift("arctan")


def from_function(fn: Callable[..., object], label: str = "") -> ScalarField:
    """Field from ``fn(x0, x1, x2, x3)`` written with :mod:`framelab.ad` functions."""
    return ScalarField(lambda x: fn(*x), label=label or getattr(fn, "__name__", ""))
