# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

"""
Linear spaces on quadrics

A quadric of rank r and corank c in P^{m-1} is a cone with vertex P(K),
K the kernel, over a smooth quadric of the core V/K. A projective k-space
P(W) on it meets the vertex in j = dim(W ∩ K) dimensions and maps to an
isotropic s-space of the core, s + j = k + 1.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from sympy import QQ, factorint

from epwlab.config.settings import get_settings
from epwlab.exceptions import EpwLabInputError
from epwlab.modules.finite_fields import det_ff, get_field, kernel_ff, rank_ff
from epwlab.modules.linalg import determinant, rank_kernel, to_scalar
from epwlab.utils.fixtures import load_fixture
from epwlab.utils.parallel import ordered_map

_logger = logging.getLogger(__name__)


class QuadricError(EpwLabInputError):
    """Exception raised for malformed or unsupported quadratic forms"""
    pass


class EnumerationTooLarge(EpwLabInputError):
    """Exception raised when an enumeration exceeds the configured work guard"""
    pass


def _integer(x):
    if isinstance(x, int):
        return x
    x = to_scalar(x)
    if QQ.denom(x) != 1:
        raise QuadricError(f"Entry {x} is not an integer")
    return int(QQ.numer(x))


@dataclass(frozen=True)
class QuadraticForm:
    """
    A symmetric Gram matrix over ℚ (p is None) or over F_{p^degree}

    Over F₂ the upper triangle of the grid gives the coefficients of the
    quadratic form Σ_{i≤j} g_ij x_i x_j.
    """

    gram: tuple
    p: int | None = None
    degree: int = 1

    def __post_init__(self):
        grid = tuple(tuple(row) for row in self.gram)
        if any(len(row) != len(grid) for row in grid):
            raise QuadricError("Gram matrix must be square")
        if self.p is None:
            grid = tuple(tuple(to_scalar(x) for x in row) for row in grid)
        else:
            grid = tuple(tuple(_integer(x) for x in row) for row in grid)
            if self.p == 2 and self.degree != 1:
                raise QuadricError("Extensions of F₂ are not supported")
        object.__setattr__(self, "gram", grid)
        if self.p is None or self.p != 2:
            entries = self.entries()
            if any(entries[i][j] != entries[j][i] for i in range(self.m) for j in range(i)):
                raise QuadricError("Gram matrix must be symmetric")

    @classmethod
    def from_json(cls, payload, degree=1):
        """Build from {"p": prime or "Q", "gram": grid}."""
        p = payload.get("p", "Q")
        if "gram" not in payload:
            raise QuadricError("Quadric payload needs a 'gram' grid")
        return cls(tuple(tuple(row) for row in payload["gram"]), None if p in ("Q", None) else int(p), degree)

    @property
    def m(self):
        return len(self.gram)

    @property
    def field(self):
        return None if self.p is None else get_field(self.p, self.degree)

    def over(self, p, degree=1):
        """The same integer Gram matrix read over another finite field."""
        return QuadraticForm(tuple(tuple(_integer(x) for x in row) for row in self.gram), p, degree)

    def entries(self):
        if self.p is None:
            return self.gram
        field_ = self.field
        return tuple(tuple(field_.embed(x) for x in row) for row in self.gram)

    def value(self, x):
        """Q(x)."""
        g, field_ = self.entries(), self.field
        if field_.p == 2:
            total = 0
            for i in range(self.m):
                for j in range(i, self.m):
                    if g[i][j] and x[i] and x[j]:
                        total = field_.add(total, field_.mul(g[i][j], field_.mul(x[i], x[j])))
            return total
        return self.polar(x, x)

    def polar(self, x, y):
        """B(x, y); over F₂ the polarisation Q(x+y) − Q(x) − Q(y)."""
        g, field_ = self.entries(), self.field
        total = 0
        for i in range(self.m):
            if not x[i]:
                continue
            for j in range(self.m):
                if not y[j] or (field_.p == 2 and i == j):
                    continue
                if field_.p == 2:
                    coefficient = g[min(i, j)][max(i, j)]
                    if not coefficient:
                        continue
                    total = field_.add(total, field_.mul(coefficient, field_.mul(x[i], y[j])))
                elif g[i][j]:
                    total = field_.add(total, field_.mul(g[i][j], field_.mul(x[i], y[j])))
        return total

    def radical(self):
        """Kernel of the form over the finite field (the singular radical over F₂)."""
        field_ = self.field
        if field_.p != 2:
            return kernel_ff(field_, [list(row) for row in self.entries()], self.m)
        g = self.entries()
        polar = [[0 if i == j else g[min(i, j)][max(i, j)] for j in range(self.m)] for i in range(self.m)]
        rad = kernel_ff(field_, polar, self.m)
        values = [self.value(b) for b in rad]
        relations = kernel_ff(field_, [values], len(rad)) if rad else []
        result = []
        for rel in relations:
            vector = [0] * self.m
            for c, b in zip(rel, rad):
                if c:
                    vector = [field_.add(x, field_.mul(c, y)) for x, y in zip(vector, b)]
            result.append(tuple(vector))
        return result

    def corank(self):
        if self.p is None:
            return rank_kernel([list(row) for row in self.gram])[1].dim
        return len(self.radical())

    def rank(self):
        return self.m - self.corank()

    def discriminant(self):
        if self.p is None:
            return determinant([list(row) for row in self.gram])
        return det_ff(self.field, self.entries())

    def square_class(self):
        """
        Square class of the discriminant

        Returns:
            Over ℚ the signed squarefree part of det (0 when degenerate);
            over a finite field 1 for a nonzero square, −1 otherwise, 0 when degenerate
        """
        det = self.discriminant()
        if self.p is None:
            if not det:
                return 0
            value = int(QQ.numer(det)) * int(QQ.denom(det))
            part = 1
            for prime, exponent in factorint(abs(value)).items():
                if exponent % 2:
                    part *= prime
            return part if value > 0 else -part
        if not det:
            return 0
        return 1 if self.field.is_square(det) else -1


def corank(q):
    """dim ker of the Gram matrix."""
    return q.corank()


def hilbert_dimension(m, r, k):
    """
    Dimension of the variety of projective k-spaces on a rank-r quadric in P^{m-1}

    Args:
        m (int): Ambient vector dimension
        r (int): Rank, 1 ≤ r ≤ m
        k (int): 1 (lines) or 2 (planes)

    Returns:
        int or None: The dimension, None when no k-space exists

    Raises:
        QuadricError: For other k or out-of-range rank
    """
    if k not in (1, 2):
        raise QuadricError(f"hilbert_dimension supports k = 1, 2, got {k}")
    if not 1 <= r <= m:
        raise QuadricError(f"Rank must satisfy 1 <= r <= m, got r={r}, m={m}")
    if k == 1:
        value = 2 * m - 7 if r >= 3 else 2 * m - 6
    elif r >= 5:
        value = 3 * m - 15
    elif r >= 3:
        value = 3 * m - 14
    else:
        value = 3 * m - 12
    return value if value >= 0 and strata_descriptor(m, m - r, k).structure is not FamilyStructure.EMPTY else None


class FamilyStructure(str, enum.Enum):
    EMPTY = "empty"
    SINGLE = "single family"
    TWO_FAMILIES = "two families"
    TWO_COMPONENTS = "two meeting components"
    DOUBLE = "one component of multiplicity 2"
    FULL = "full"


@dataclass(frozen=True)
class FamilyDescriptor:
    k: int
    structure: FamilyStructure
    dim: int | None
    components: int
    reduced: bool = True
    meeting: bool = False
    source: str = "strata"
    note: str = ""


def stratum_dimension(r, c, s, j):
    """Dimension of the k-spaces meeting the vertex in j dimensions with s-dimensional core image."""
    return s * (2 * r - 3 * s - 1) // 2 + j * (c - j) + s * (c - j)


def strata_descriptor(m, c, k):
    """Family structure of k-spaces on a corank-c quadric in P^{m-1} from its top stratum."""
    r = m - c
    size = k + 1
    if size > m or c < 0 or r < 0:
        return FamilyDescriptor(k, FamilyStructure.EMPTY, None, 0)
    if r == 0:
        return FamilyDescriptor(k, FamilyStructure.FULL, size * (m - size), 1)
    s_top = min(size, r // 2)
    j_top = size - s_top
    if j_top > c:
        return FamilyDescriptor(k, FamilyStructure.EMPTY, None, 0)
    dim = stratum_dimension(r, c, s_top, j_top)
    expected = size * (m - size) - size * (size + 1) // 2 + j_top * (j_top + 1) // 2
    reduced = dim == expected
    if r % 2 == 0 and s_top == r // 2:
        meeting = c >= j_top + 1
        structure = FamilyStructure.TWO_COMPONENTS if meeting else FamilyStructure.TWO_FAMILIES
        return FamilyDescriptor(k, structure, dim, 2, reduced, meeting)
    structure = FamilyStructure.SINGLE if reduced else FamilyStructure.DOUBLE
    return FamilyDescriptor(k, structure, dim, 1, reduced)


@lru_cache(maxsize=1)
def quoted_cases():
    table = {}
    for case in load_fixture("quadric_cases"):
        structure = FamilyStructure[case["structure"]]
        table[(case["m"], case["c"], case["k"])] = FamilyDescriptor(
            k=case["k"],
            structure=structure,
            dim=case["dim"],
            components=case["components"],
            reduced=structure is not FamilyStructure.DOUBLE,
            meeting=structure is FamilyStructure.TWO_COMPONENTS,
            source="table",
            note=case.get("note", ""),
        )
    return table


def classify_linear_families(m, c, k):
    """
    Family structure of projective k-spaces on a corank-c quadric in P^{m-1}

    The stored case table is consulted first; everything else goes through
    the top-stratum rule.
    """
    quoted = quoted_cases().get((m, c, k))
    if quoted is not None:
        return quoted
    return strata_descriptor(m, c, k)


@dataclass(frozen=True)
class LinearSpaceEnumeration:
    """Totally singular (k+1)-spaces of a quadric over a finite field, grouped into families."""

    p: int
    degree: int
    k: int
    count: int
    families: int
    corank: int
    top_stratum: int | None
    spaces: tuple = field(repr=False, default=())

    @property
    def order(self):
        return self.p ** self.degree


def gaussian_binomial(n, k, q):
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    numerator = denominator = 1
    for i in range(k):
        numerator *= q ** (n - i) - 1
        denominator *= q ** (i + 1) - 1
    return numerator // denominator


def _pattern_spaces(form, pivots):
    """Totally singular spaces in echelon form with the given pivot columns, built row by row."""
    field_, m = form.field, form.m
    pivot_set = set(pivots)
    found = []

    def extend(prefix, i):
        if i == len(pivots):
            found.append(tuple(prefix))
            return
        free = [c for c in range(pivots[i] + 1, m) if c not in pivot_set]
        for values in product(field_.elements(), repeat=len(free)):
            row = [0] * m
            row[pivots[i]] = 1
            for c, x in zip(free, values):
                row[c] = x
            if form.value(row):
                continue
            if any(form.polar(row, earlier) for earlier in prefix):
                continue
            extend(prefix + [tuple(row)], i + 1)

    extend([], 0)
    return found


def _group_families(form, spaces, radical):
    field_ = form.field
    c = len(radical)
    r = form.m - c
    size = len(spaces[0]) if spaces else 0
    strata = [size - (size + c - rank_ff(field_, list(w) + list(radical))) for w in spaces]
    s_max = max(strata) if strata else None
    if not spaces:
        return 0, None
    if not (r >= 2 and r % 2 == 0 and s_max == r // 2):
        return 1, s_max
    representatives = []
    for w, s in zip(spaces, strata):
        if s != s_max:
            continue
        for rep in representatives:
            meet = 2 * s + c - rank_ff(field_, list(w) + list(rep) + list(radical))
            if meet % 2 == s % 2:
                break
        else:
            representatives.append(w)
    return len(representatives), s_max


def enumerate_linear_spaces_ff(form, k, settings=None, threads=None):
    """
    All totally singular (k+1)-dimensional subspaces of a quadric over F_q

    Spaces are enumerated in echelon form, one pivot pattern per task. Families
    are classes of the top stratum under the parity of core intersections when
    the core is split of maximal index, and a single class otherwise.

    Args:
        form (QuadraticForm): Over a finite field with q ≤ 25 and m ≤ 6
        k (int): Projective dimension, at most 3

    Returns:
        LinearSpaceEnumeration: Count, family count and the spaces

    Raises:
        EnumerationTooLarge: When the subspace count exceeds the work guard
    """
    settings = settings or get_settings()
    if form.p is None:
        raise QuadricError("Enumeration needs a quadric over a finite field")
    if form.m > 6 or k > 3 or k < 0:
        raise QuadricError(f"Enumeration supports m <= 6 and k <= 3, got m={form.m}, k={k}")
    size = k + 1
    order = form.p ** form.degree
    work = gaussian_binomial(form.m, size, order)
    if work > settings.max_enumeration:
        raise EnumerationTooLarge(
            f"{work} candidate subspaces over F_{order} exceed the guard {settings.max_enumeration}"
        )
    patterns = list(combinations(range(form.m), size))
    spaces = [w for chunk in ordered_map(lambda p: _pattern_spaces(form, p), patterns, threads) for w in chunk]
    radical = form.radical()
    families, top = _group_families(form, spaces, radical)
    _logger.info(f"F_{order}, m={form.m}, k={k}: {len(spaces)} spaces in {families} families")
    return LinearSpaceEnumeration(form.p, form.degree, k, len(spaces), families, len(radical), top, tuple(spaces))


def cone_decomposition_holds(form, enumeration):
    """Every enumerated space has core image of dimension at most ⌊r/2⌋."""
    radical = form.radical()
    r = form.m - len(radical)
    size = enumeration.k + 1
    for w in enumeration.spaces:
        j = size + len(radical) - rank_ff(form.field, list(w) + list(radical))
        if size - j > r // 2:
            return False
    return True


def split_form(m, c):
    """Integer Gram matrix of a split quadric of corank c in P^{m-1} (odd characteristic)."""
    r = m - c
    gram = [[0] * m for _ in range(m)]
    for i in range(r // 2):
        gram[2 * i][2 * i + 1] = gram[2 * i + 1][2 * i] = 1
    if r % 2:
        gram[r - 1][r - 1] = 1
    return gram


def growth_dimension(gram, k, settings=None):
    """
    Dimension estimate round(log(N₅/N₃)/log(5/3)) from counts over F₃ and F₅

    Returns:
        int or None: None when either count is zero
    """
    counts = [enumerate_linear_spaces_ff(QuadraticForm(tuple(map(tuple, gram)), p), k, settings).count
              for p in (3, 5)]
    if not all(counts):
        return None
    return round(math.log(counts[1] / counts[0]) / math.log(5 / 3))


@dataclass(frozen=True)
class DiscriminantReport:
    """Rulings of a smooth quadric surface over F_p against the square class of its discriminant."""

    p: int
    families: int
    square: bool
    families_over_extension: int
    note: str = "finite-field analogy of the splitting of the double cover of rulings"

    @property
    def consistent(self):
        return (self.families == 2) == self.square and self.families_over_extension == 2


def family_count_vs_discriminant(form, settings=None):
    """
    Compare the F_p ruling count of a smooth quadric in P³ with (−1)^{m/2}·det

    Raises:
        QuadricError: Unless m = 4, corank 0, p odd
    """
    if form.p is None or form.p == 2 or form.degree != 1:
        raise QuadricError("Discriminant comparison needs a prime field of odd characteristic")
    if form.m != 4 or form.corank():
        raise QuadricError("Discriminant comparison needs a smooth quadric in P³")
    field_ = form.field
    discriminant = form.discriminant()
    signed = discriminant if (form.m // 2) % 2 == 0 else field_.neg(discriminant)
    square = field_.is_square(signed)
    families = enumerate_linear_spaces_ff(form, 1, settings).families
    extension = enumerate_linear_spaces_ff(form.over(form.p, 2), 1, settings).families
    report = DiscriminantReport(form.p, families, square, extension)
    if not report.consistent:
        _logger.warning(f"Ruling count {families} disagrees with discriminant square class over F_{form.p}")
    return report
