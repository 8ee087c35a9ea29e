"""Determinants and inverses written with ring operations only.

These work on any element type supporting ``+ - * /`` (floats, duals,
:class:`~framelab.fields.ScalarField`) so that inverse-metric components can
be built as differentiable fields.
"""

from __future__ import annotations

import itertools
from functools import reduce


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (0 if it has repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _is_zero(x) -> bool:
    return getattr(x, "is_zero", False) or (isinstance(x, (int, float)) and x == 0)


def det(m):
    """Leibniz determinant of a square nested sequence, skipping zero terms."""
    n = len(m)
    total = None
    for perm in itertools.permutations(range(n)):
        factors = [m[i][perm[i]] for i in range(n)]
        if any(_is_zero(f) for f in factors):
            continue
        term = reduce(lambda a, b: a * b, factors)
        if permutation_sign(perm) < 0:
            term = -term
        total = term if total is None else total + term
    return 0.0 if total is None else total


def minor(m, rows, cols):
    return [[m[i][j] for j in cols] for i in rows]


def adjugate(m):
    n = len(m)
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows = [k for k in range(n) if k != j]
            cols = [k for k in range(n) if k != i]
            c = det(minor(m, rows, cols))
            adj[i][j] = c if (i + j) % 2 == 0 else -c
    return adj


def inverse(m, reciprocal=None):
    """Matrix inverse as adjugate / determinant.

    ``reciprocal`` maps the determinant to its inverse; pass a guarded version
    to detect singular matrices.
    """
    d = det(m)
    inv_d = reciprocal(d) if reciprocal else 1.0 / d
    return [[a * inv_d for a in row] for row in adjugate(m)]
