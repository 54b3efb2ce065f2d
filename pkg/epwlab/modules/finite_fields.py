# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

"""
Small finite fields F_p and F_{p²} with table arithmetic

Elements are ints 0..q-1; in F_{p²} the int a + p·b stands for a + bθ,
where θ² is the least quadratic non-residue (θ² = θ + 1 when p = 2).
"""

from __future__ import annotations

import logging
from functools import lru_cache

from sympy import isprime, is_quad_residue

from epwlab.exceptions import EpwLabInputError

_logger = logging.getLogger(__name__)


class FieldError(EpwLabInputError):
    """Exception raised for unsupported field parameters"""
    pass


class FiniteField:
    """
    Finite field of order p or p²

    This class handles:
    - Addition, multiplication, negation and inversion through lookup tables
    - Embedding of integers through reduction mod p
    - Quadratic character of elements
    """

    def __init__(self, p, degree=1):
        if not isprime(p):
            raise FieldError(f"{p} is not prime")
        if degree not in (1, 2):
            raise FieldError(f"Only degrees 1 and 2 are supported, got {degree}")
        self.p = p
        self.degree = degree
        self.order = p ** degree
        self.theta_square = self._theta_square() if degree == 2 else None
        self._build_tables()

    def __repr__(self):
        return f"FiniteField(p={self.p}, degree={self.degree})"

    def _theta_square(self):
        """(c0, c1) with θ² = c0 + c1·θ."""
        if self.p == 2:
            return (1, 1)
        n = next(n for n in range(2, self.p) if not is_quad_residue(n, self.p))
        return (n, 0)

    def _pair(self, x):
        return x % self.p, x // self.p

    def _slow_mul(self, x, y):
        if self.degree == 1:
            return x * y % self.p
        a, b = self._pair(x)
        c, d = self._pair(y)
        c0, c1 = self.theta_square
        # (a + bθ)(c + dθ) = ac + (ad + bc)θ + bd(c0 + c1θ)
        real = (a * c + b * d * c0) % self.p
        imaginary = (a * d + b * c + b * d * c1) % self.p
        return real + self.p * imaginary

    def _slow_add(self, x, y):
        if self.degree == 1:
            return (x + y) % self.p
        a, b = self._pair(x)
        c, d = self._pair(y)
        return (a + c) % self.p + self.p * ((b + d) % self.p)

    def _build_tables(self):
        q = self.order
        self.add_table = [[self._slow_add(x, y) for y in range(q)] for x in range(q)]
        self.mul_table = [[self._slow_mul(x, y) for y in range(q)] for x in range(q)]
        self.neg_table = [next(y for y in range(q) if self.add_table[x][y] == 0) for x in range(q)]
        self.inv_table = [None] + [next(y for y in range(1, q) if self.mul_table[x][y] == 1) for x in range(1, q)]

    def elements(self):
        return range(self.order)

    def embed(self, n):
        return int(n) % self.p

    def add(self, x, y):
        return self.add_table[x][y]

    def sub(self, x, y):
        return self.add_table[x][self.neg_table[y]]

    def mul(self, x, y):
        return self.mul_table[x][y]

    def neg(self, x):
        return self.neg_table[x]

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("Inverse of zero in a finite field")
        return self.inv_table[x]

    def power(self, x, n):
        result = 1
        for _ in range(n):
            result = self.mul(result, x)
        return result

    def is_square(self, x):
        """Quadratic character; every element of a field of characteristic 2 is a square."""
        if x == 0 or self.p == 2:
            return True
        return self.power(x, (self.order - 1) // 2) == 1

    def dot(self, u, v):
        total = 0
        for x, y in zip(u, v):
            if x and y:
                total = self.add(total, self.mul(x, y))
        return total


@lru_cache(maxsize=None)
def get_field(p, degree=1):
    return FiniteField(p, degree)


def rref_ff(field, rows):
    """Reduced row echelon form over a finite field: (nonzero rows, pivots)."""
    rows = [list(row) for row in rows]
    if not rows:
        return [], ()
    cols = len(rows[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        scale = field.inv(rows[r][c])
        rows[r] = [field.mul(scale, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], tuple(pivots)


def rank_ff(field, rows):
    return len(rref_ff(field, rows)[1])


def kernel_ff(field, rows, cols):
    """Basis of {x : M x = 0} over a finite field."""
    reduced, pivots = rref_ff(field, rows) if rows else ([], ())
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for row, p in zip(reduced, pivots):
            v[p] = field.neg(row[f])
        basis.append(tuple(v))
    return basis


def det_ff(field, rows):
    """Determinant of a square matrix over a finite field."""
    rows = [list(row) for row in rows]
    n = len(rows)
    result = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = field.neg(result)
        result = field.mul(result, rows[c][c])
        scale = field.inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c]:
                factor = field.mul(rows[i][c], scale)
                rows[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[i], rows[c])]
    return result
