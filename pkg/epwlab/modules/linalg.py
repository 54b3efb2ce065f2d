# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

"""Exact rational linear algebra: echelon forms, kernels, subspaces and modular ranks."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from sympy import GF, QQ, Rational
from sympy.polys.matrices import DomainMatrix

from epwlab.config.settings import get_settings
from epwlab.exceptions import EpwLabInputError, MathematicalFailure

_logger = logging.getLogger(__name__)


class AmbientMismatchError(EpwLabInputError):
    """Exception raised when subspaces or vectors live in different ambient spaces"""
    pass


class DenominatorError(EpwLabInputError):
    """Exception raised when a modular prime divides an entry denominator"""
    pass


def to_scalar(value):
    """
    Convert a number to an exact rational scalar

    Args:
        value: int, Fraction, sympy Rational, QQ element or "p/q" string

    Returns:
        QQ element in lowest terms with positive denominator
    """
    if isinstance(value, str):
        return QQ.from_sympy(Rational(value.strip()))
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, bool):
        return QQ(int(value))
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def numerator(x):
    return int(QQ.numer(x))


def denominator(x):
    return int(QQ.denom(x))


def qq_matrix(rows, cols=None):
    """Build a DomainMatrix over QQ from nested sequences of numbers."""
    rows = [[to_scalar(x) for x in row] for row in rows]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    for row in rows:
        if len(row) != cols:
            raise AmbientMismatchError(f"Ragged matrix: expected {cols} columns, got {len(row)}")
    return DomainMatrix(rows, (len(rows), cols), QQ)


def as_matrix(m):
    return m if isinstance(m, DomainMatrix) else qq_matrix(m)


def matrix_rows(m):
    """Entries of a DomainMatrix as a list of lists of domain elements."""
    to_list = getattr(m, "to_list", None)
    if to_list is not None:
        return [list(row) for row in to_list()]
    rows, cols = m.shape
    return [[m[i, j].element for j in range(cols)] for i in range(rows)]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def mat_mul(a, b):
    """Product of two matrices given as lists of rows."""
    columns = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), QQ.zero) for col in columns] for row in a]


def dot(u, v):
    return sum((x * y for x, y in zip(u, v)), QQ.zero)


def rref(rows, cols):
    """
    Reduced row echelon form of a rational matrix

    Args:
        rows (list): Rows of the matrix
        cols (int): Number of columns

    Returns:
        tuple: (nonzero rref rows, pivot columns)
    """
    if not rows:
        return [], ()
    reduced, pivots = qq_matrix(rows, cols).rref()
    reduced = matrix_rows(reduced)
    return [tuple(reduced[i]) for i in range(len(pivots))], tuple(pivots)


def rank(m):
    m = as_matrix(m)
    if 0 in m.shape:
        return 0
    return m.rank()


@dataclass(frozen=True)
class Subspace:
    """
    A linear subspace of QQ^ambient stored by its reduced row echelon basis

    Two subspaces are equal exactly when their echelon bases are equal.
    """

    ambient: int
    rows: tuple = field(default=())

    @classmethod
    def span(cls, vectors, ambient=None):
        """Echelonized span of the given vectors."""
        vectors = [[to_scalar(x) for x in v] for v in vectors]
        if ambient is None:
            if not vectors:
                raise AmbientMismatchError("Cannot infer the ambient dimension of an empty span")
            ambient = len(vectors[0])
        for v in vectors:
            if len(v) != ambient:
                raise AmbientMismatchError(f"Vector of length {len(v)} in ambient {ambient}")
        basis, _ = rref(vectors, ambient)
        return cls(ambient, tuple(basis))

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient):
        return cls(ambient, tuple(
            tuple(QQ.one if i == j else QQ.zero for j in range(ambient)) for i in range(ambient)
        ))

    @property
    def dim(self):
        return len(self.rows)

    @cached_property
    def pivots(self):
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.rows)

    def basis(self):
        return [list(row) for row in self.rows]

    def coordinates(self, vector):
        """
        Coefficients of a vector in the echelon basis, or None if it is not in the span

        The echelon basis makes the coefficients the pivot entries of the vector.
        """
        vector = [to_scalar(x) for x in vector]
        if len(vector) != self.ambient:
            raise AmbientMismatchError(f"Vector of length {len(vector)} in ambient {self.ambient}")
        coefficients = [vector[p] for p in self.pivots]
        residual = list(vector)
        for c, row in zip(coefficients, self.rows):
            if c:
                residual = [r - c * x for r, x in zip(residual, row)]
        return coefficients if not any(residual) else None

    def contains(self, vector):
        return self.coordinates(vector) is not None

    def contains_subspace(self, other):
        self._check_ambient(other)
        return all(self.contains(row) for row in other.rows)

    def combination(self, coefficients):
        """The vector with the given coefficients in the echelon basis."""
        result = [QQ.zero] * self.ambient
        for c, row in zip(coefficients, self.rows):
            c = to_scalar(c)
            if c:
                result = [r + c * x for r, x in zip(result, row)]
        return result

    def __add__(self, other):
        self._check_ambient(other)
        return Subspace.span(self.basis() + other.basis(), self.ambient)

    def intersect(self, other):
        return subspace_intersect(self, other)

    def _check_ambient(self, other):
        if self.ambient != other.ambient:
            raise AmbientMismatchError(f"Ambient dimensions differ: {self.ambient} != {other.ambient}")


def kernel_from_rref(reduced, pivots, cols):
    """Echelonized basis of the kernel of a matrix given by its rref."""
    free = [j for j in range(cols) if j not in set(pivots)]
    vectors = []
    for f in free:
        v = [QQ.zero] * cols
        v[f] = QQ.one
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        vectors.append(v)
    return Subspace.span(vectors, cols) if vectors else Subspace.zero(cols)


def rank_kernel(m):
    """
    Rank and right kernel of a rational matrix

    Args:
        m: DomainMatrix over QQ or nested list of rows

    Returns:
        tuple: (rank, Subspace kernel of x -> m x)
    """
    if isinstance(m, DomainMatrix):
        rows, cols = m.shape
        data = matrix_rows(m) if rows and cols else []
    else:
        data = [[to_scalar(x) for x in row] for row in m]
        cols = len(data[0]) if data else 0
    if not data:
        return 0, Subspace.full(cols)
    reduced, pivots = rref(data, cols)
    return len(pivots), kernel_from_rref(reduced, pivots, cols)


def left_kernel(rows):
    """Kernel of x -> x m, i.e. linear relations among the rows."""
    return rank_kernel(transpose(rows))[1]


def subspace_intersect(u, w):
    """
    Intersection of two subspaces

    Solves a·U = b·W through the kernel of the stacked matrix [U^T | -W^T].
    """
    if u.ambient != w.ambient:
        raise AmbientMismatchError(f"Ambient dimensions differ: {u.ambient} != {w.ambient}")
    if not u.dim or not w.dim:
        return Subspace.zero(u.ambient)
    stacked = transpose(u.basis() + [[-x for x in row] for row in w.rows])
    _, relations = rank_kernel(stacked)
    vectors = [u.combination(rel[:u.dim]) for rel in relations.rows]
    return Subspace.span(vectors, u.ambient) if vectors else Subspace.zero(u.ambient)


def solve_linear(m, b):
    """
    One solution x of m x = b, or None when the system is inconsistent

    Args:
        m (list): Rows of the coefficient matrix
        b (list): Right-hand side

    Returns:
        list or None: A particular solution (free variables set to zero)
    """
    cols = len(m[0])
    augmented = [list(row) + [to_scalar(rhs)] for row, rhs in zip(m, b)]
    reduced, pivots = rref(augmented, cols + 1)
    if cols in pivots:
        return None
    x = [QQ.zero] * cols
    for row, p in zip(reduced, pivots):
        x[p] = row[cols]
    return x


def inverse(rows):
    """Inverse of a square rational matrix given by rows."""
    return matrix_rows(qq_matrix(rows).inv())


def determinant(rows):
    if not rows:
        return QQ.one
    return qq_matrix(rows).det()


@dataclass(frozen=True)
class ModularRank:
    """Ranks of one matrix over several prime fields."""

    rank: int
    ranks: dict
    unlucky: tuple
    exact_rank: int | None = None

    @property
    def certified(self):
        return not self.unlucky and (self.exact_rank is None or self.exact_rank == self.rank)


def _reduce_entry(x, p):
    den = denominator(x)
    if den % p == 0:
        raise DenominatorError(f"Prime {p} divides the denominator {den}")
    return numerator(x) * pow(den, -1, p) % p


def rank_mod_p(rows, p):
    """Rank of a rational matrix over GF(p)."""
    if not rows or not rows[0]:
        return 0
    field_ = GF(p)
    data = [[field_(_reduce_entry(to_scalar(x), p)) for x in row] for row in rows]
    return DomainMatrix(data, (len(data), len(data[0])), field_).rank()


def modular_rank(m, primes=None, exact=False):
    """
    Rank of a rational matrix over several residue fields

    A prime is flagged as unlucky when its rank falls below the largest modular
    rank (or below the exact rank, when that is also computed).

    Args:
        m: DomainMatrix or nested rows over QQ
        primes (list, optional): Primes to use; defaults to the configured ones
        exact (bool): Also compute the exact rational rank

    Returns:
        ModularRank: Ranks per prime with the unlucky primes flagged

    Raises:
        DenominatorError: If a prime divides some entry denominator
    """
    rows = matrix_rows(m) if isinstance(m, DomainMatrix) else m
    primes = tuple(primes or get_settings().primes)
    ranks = {p: rank_mod_p(rows, p) for p in primes}
    best = max(ranks.values())
    exact_rank = None
    if exact:
        exact_rank = rank(rows) if rows else 0
        if exact_rank < best:
            raise MathematicalFailure(f"Exact rank {exact_rank} below modular rank {best}")
        best_reference = exact_rank
    else:
        best_reference = best
    unlucky = tuple(p for p in primes if ranks[p] < best_reference)
    if unlucky:
        _logger.warning(f"Rank drops modulo {list(unlucky)}: {ranks}")
    return ModularRank(rank=best, ranks=ranks, unlucky=unlucky, exact_rank=exact_rank)
