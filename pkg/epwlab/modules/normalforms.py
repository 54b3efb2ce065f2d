# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

from __future__ import annotations

import logging
from dataclasses import dataclass

_logger = logging.getLogger(__name__)


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def int_matrix(rows):
    return [[int(x) for x in row] for row in rows]


def int_mat_mul(a, b):
    columns = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in columns] for row in a]


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d with unimodular u, v such that u·m·v = diag(d)."""

    factors: tuple
    u: tuple
    v: tuple

    @property
    def rank(self):
        return sum(1 for d in self.factors if d)

    def nontrivial(self):
        """Invariant factors other than 0 and 1."""
        return tuple(d for d in self.factors if d > 1)


class _SmithReduction:
    """
    In-place reduction of an integer matrix to Smith normal form

    This class handles:
    - Moving the smallest entry of the trailing block to the pivot
    - Clearing the pivot row and column (the edging)
    - Restoring divisibility of the trailing block by the pivot
    The row and column operations are mirrored on left and right.
    """

    def __init__(self, rows):
        self.m = int_matrix(rows)
        self.rows = len(self.m)
        self.cols = len(self.m[0]) if self.m else 0
        self.left = identity(self.rows)
        self.right = identity(self.cols)

    def swap_rows(self, i, j):
        if i != j:
            self.m[i], self.m[j] = self.m[j], self.m[i]
            self.left[i], self.left[j] = self.left[j], self.left[i]

    def swap_cols(self, i, j):
        if i != j:
            for row in self.m:
                row[i], row[j] = row[j], row[i]
            for row in self.right:
                row[i], row[j] = row[j], row[i]

    def add_row(self, target, source, q):
        """row[target] += q * row[source]"""
        self.m[target] = [x + q * y for x, y in zip(self.m[target], self.m[source])]
        self.left[target] = [x + q * y for x, y in zip(self.left[target], self.left[source])]

    def add_col(self, target, source, q):
        """col[target] += q * col[source]"""
        for row in self.m:
            row[target] += q * row[source]
        for row in self.right:
            row[target] += q * row[source]

    def negate_row(self, i):
        self.m[i] = [-x for x in self.m[i]]
        self.left[i] = [-x for x in self.left[i]]

    def move_least_to_start(self, s):
        best = None
        for i in range(s, self.rows):
            for j in range(s, self.cols):
                value = abs(self.m[i][j])
                if value and (best is None or value < best[0]):
                    best = (value, i, j)
        if best is None:
            return False
        _, i, j = best
        self.swap_rows(s, i)
        self.swap_cols(s, j)
        return True

    def edging_is_zero(self, s):
        return (all(self.m[i][s] == 0 for i in range(s + 1, self.rows))
                and all(self.m[s][j] == 0 for j in range(s + 1, self.cols)))

    def null_edging(self, s):
        while not self.edging_is_zero(s):
            pivot = self.m[s][s]
            for i in range(s + 1, self.rows):
                if self.m[i][s]:
                    self.add_row(i, s, -(self.m[i][s] // pivot))
            for j in range(s + 1, self.cols):
                if self.m[s][j]:
                    self.add_col(j, s, -(self.m[s][j] // pivot))
            # a nonzero remainder is smaller than the pivot: make it the new pivot
            self.move_least_in_edging(s)

    def move_least_in_edging(self, s):
        value, pos = abs(self.m[s][s]), None
        for i in range(s + 1, self.rows):
            if self.m[i][s] and abs(self.m[i][s]) < value:
                value, pos = abs(self.m[i][s]), ("row", i)
        for j in range(s + 1, self.cols):
            if self.m[s][j] and abs(self.m[s][j]) < value:
                value, pos = abs(self.m[s][j]), ("col", j)
        if pos is not None:
            kind, index = pos
            if kind == "row":
                self.swap_rows(s, index)
            else:
                self.swap_cols(s, index)

    def ensure_divides(self, s):
        """Return True when the trailing block had to be folded back into the pivot row."""
        pivot = self.m[s][s]
        for i in range(s + 1, self.rows):
            for j in range(s + 1, self.cols):
                if self.m[i][j] % pivot:
                    self.add_row(s, i, 1)
                    return True
        return False

    def run(self):
        for s in range(min(self.rows, self.cols)):
            if not self.move_least_to_start(s):
                break
            while True:
                self.null_edging(s)
                if not self.ensure_divides(s):
                    break
            if self.m[s][s] < 0:
                self.negate_row(s)
        factors = tuple(self.m[i][i] for i in range(min(self.rows, self.cols)))
        return SmithForm(
            factors=factors,
            u=tuple(tuple(row) for row in self.left),
            v=tuple(tuple(row) for row in self.right),
        )


def smith_normal_form(m):
    """
    Smith normal form of an integer matrix

    Args:
        m (list): Rectangular grid of integers

    Returns:
        SmithForm: factors d₁ | d₂ | ... (zeros last) and unimodular u, v
            with u·m·v diagonal
    """
    if not m or not m[0]:
        rows = len(m)
        return SmithForm(factors=(), u=tuple(map(tuple, identity(rows))), v=())
    result = _SmithReduction(m).run()
    _logger.debug(f"Smith form of {len(m)}x{len(m[0])} matrix: {result.factors}")
    return result


def integer_kernel(m):
    """
    Basis of the integer kernel {x ∈ ℤ^n : m x = 0}

    With u·m·v = diag(d), the columns of v past the rank span the kernel.

    Returns:
        list: Kernel basis vectors (as lists)
    """
    form = smith_normal_form(m)
    cols = len(m[0])
    return [[form.v[i][j] for i in range(cols)] for j in range(form.rank, cols)]
