# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

"""
Exterior algebra of a fixed six-dimensional space V₆

Basis k-vectors are indexed by ascending k-subsets of {0, ..., 5} in
lexicographic order; ⋀⁶V₆ is identified with scalars through e₀∧...∧e₅ and
⋀⁵V₆ with V₆^∨ through u ↦ [u∧x].
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from sympy import QQ

from epwlab.exceptions import EpwLabInputError
from epwlab.modules.linalg import Subspace, rank_kernel, to_scalar, transpose

_logger = logging.getLogger(__name__)

DIM = 6


class GradeError(EpwLabInputError):
    """Exception raised for grade mismatches or overflow"""
    pass


class ZeroVectorError(EpwLabInputError):
    """Exception raised when a nonzero vector or covector is required"""
    pass


class ContainmentError(EpwLabInputError):
    """Exception raised when a required containment of subspaces fails"""
    pass


class MissingArgumentError(EpwLabInputError):
    """Exception raised when a construction is called without the data it needs"""
    pass


@lru_cache(maxsize=None)
def basis_index(k):
    """Ascending k-subsets of {0..5} in lexicographic order."""
    return tuple(combinations(range(DIM), k))


@lru_cache(maxsize=None)
def index_of(k):
    return {subset: i for i, subset in enumerate(basis_index(k))}


def sort_sign(indices):
    """(sign, sorted tuple) for the wedge of e_i in the given order; sign 0 on repeats."""
    if len(set(indices)) != len(indices):
        return 0, None
    inversions = sum(1 for i in range(len(indices)) for j in range(i + 1, len(indices))
                     if indices[i] > indices[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


@dataclass(frozen=True)
class KVector:
    """An element of ⋀^k V₆ (or ⋀^k V₆^∨ when dual is set) with exact coordinates."""

    grade: int
    coords: tuple
    dual: bool = False

    def __post_init__(self):
        if not 0 <= self.grade <= DIM:
            raise GradeError(f"Grade {self.grade} outside 0..{DIM}")
        coords = tuple(to_scalar(c) for c in self.coords)
        if len(coords) != comb(DIM, self.grade):
            raise GradeError(f"Grade {self.grade} needs {comb(DIM, self.grade)} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, grade, dual=False):
        return cls(grade, (0,) * comb(DIM, grade), dual)

    @classmethod
    def basis(cls, *indices, dual=False):
        """e_{i₁}∧...∧e_{i_k} for 0-based indices in any order."""
        sign, subset = sort_sign(indices)
        result = [QQ.zero] * comb(DIM, len(indices))
        if sign:
            result[index_of(len(indices))[subset]] = QQ(sign)
        return cls(len(indices), tuple(result), dual)

    @classmethod
    def vector(cls, coords):
        return cls(1, tuple(coords))

    @classmethod
    def covector(cls, coords):
        return cls(1, tuple(coords), dual=True)

    def is_zero(self):
        return not any(self.coords)

    def support(self):
        """Nonzero coordinates keyed by index subsets."""
        return {subset: c for subset, c in zip(basis_index(self.grade), self.coords) if c}

    def _check(self, other):
        if self.grade != other.grade or self.dual != other.dual:
            raise GradeError("Cannot combine k-vectors of different grade or variance")

    def __add__(self, other):
        self._check(other)
        return KVector(self.grade, tuple(a + b for a, b in zip(self.coords, other.coords)), self.dual)

    def __sub__(self, other):
        self._check(other)
        return KVector(self.grade, tuple(a - b for a, b in zip(self.coords, other.coords)), self.dual)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = to_scalar(c)
        return KVector(self.grade, tuple(c * a for a in self.coords), self.dual)

    def __rmul__(self, c):
        return self.scale(c)

    def __xor__(self, other):
        return wedge(self, other)


def as_kvector(value, grade=1, dual=False):
    if isinstance(value, KVector):
        return value
    return KVector(grade, tuple(value), dual)


def combine(vectors, coefficients):
    """Linear combination of same-grade k-vectors."""
    vectors = list(vectors)
    result = KVector.zero(vectors[0].grade, vectors[0].dual)
    for c, v in zip(coefficients, vectors):
        if to_scalar(c):
            result = result + v.scale(c)
    return result


def wedge(a, b):
    """
    Wedge product of two k-vectors of the same variance

    Raises:
        GradeError: If the grades sum past 6 or the variances differ
    """
    if a.dual != b.dual:
        raise GradeError("Cannot wedge a vector with a covector")
    grade = a.grade + b.grade
    if grade > DIM:
        raise GradeError(f"Grade overflow: {a.grade} + {b.grade} > {DIM}")
    result = [QQ.zero] * comb(DIM, grade)
    target = index_of(grade)
    for left, x in a.support().items():
        for right, y in b.support().items():
            sign, subset = sort_sign(left + right)
            if sign:
                result[target[subset]] += sign * x * y
    return KVector(grade, tuple(result), a.dual)


def wedge_all(vectors):
    vectors = [as_kvector(v) for v in vectors]
    result = KVector(0, (1,), vectors[0].dual if vectors else False)
    for v in vectors:
        result = wedge(result, v)
    return result


def top_coefficient(x):
    """Coefficient of a grade-6 k-vector on e₀∧...∧e₅."""
    if x.grade != DIM:
        raise GradeError(f"Expected grade {DIM}, got {x.grade}")
    return x.coords[0]


def symplectic_form(a, b):
    """ω(a, b): the coefficient of a∧b on the volume form, for trivectors."""
    if a.grade != 3 or b.grade != 3:
        raise GradeError(f"Symplectic form needs trivectors, got grades {a.grade}, {b.grade}")
    return top_coefficient(wedge(a, b))


@lru_cache(maxsize=1)
def symplectic_gram():
    """Gram matrix of ω on the 20 basis trivectors."""
    basis = [KVector.basis(*subset) for subset in basis_index(3)]
    return tuple(tuple(symplectic_form(x, y) for y in basis) for x in basis)


def omega(x, y):
    """ω on coordinate lists of ⋀³V₆."""
    gram = symplectic_gram()
    total = QQ.zero
    for i, xi in enumerate(x):
        if xi:
            row = gram[i]
            for j, yj in enumerate(y):
                if yj and row[j]:
                    total += xi * row[j] * yj
    return total


def wedge_map_matrix(v, grade=3):
    """
    Matrix of a ↦ v∧a from ⋀^grade V₆ to ⋀^(grade+1) V₆

    Args:
        v: Nonzero vector (KVector of grade 1 or coordinate list)

    Returns:
        list: comb(6, grade+1) × comb(6, grade) rows
    """
    v = as_kvector(v)
    if v.is_zero():
        raise ZeroVectorError("Wedge map of the zero vector")
    columns = [wedge(v, KVector.basis(*subset)).coords for subset in basis_index(grade)]
    return transpose(columns)


def contraction(f, a):
    """ι_f a for a covector f and a k-vector a (k ≥ 1)."""
    f = as_kvector(f, dual=True)
    if not f.dual or f.grade != 1:
        raise GradeError("Contraction needs a covector")
    if a.dual or a.grade == 0:
        raise GradeError("Contraction needs a vector-valued k-vector of positive grade")
    result = [QQ.zero] * comb(DIM, a.grade - 1)
    target = index_of(a.grade - 1)
    for subset, x in a.support().items():
        for position, i in enumerate(subset):
            if f.coords[i]:
                sign = -1 if position % 2 else 1
                rest = subset[:position] + subset[position + 1:]
                result[target[rest]] += sign * f.coords[i] * x
    return KVector(a.grade - 1, tuple(result))


def contraction_matrix(f, grade=3):
    """Matrix of ι_f from ⋀^grade V₆ to ⋀^(grade-1) V₆."""
    f = as_kvector(f, dual=True)
    if f.is_zero():
        raise ZeroVectorError("Contraction by the zero covector")
    columns = [contraction(f, KVector.basis(*subset)).coords for subset in basis_index(grade)]
    return transpose(columns)


def five_vector_to_covector(x):
    """The covector u ↦ [u∧x] attached to x ∈ ⋀⁵V₆."""
    if x.grade != 5 or x.dual:
        raise GradeError("Expected a 5-vector")
    return KVector.covector([top_coefficient(wedge(KVector.basis(i), x)) for i in range(DIM)])


def pairing(a, phi):
    """Natural pairing of ⋀^k V₆ with ⋀^k V₆^∨."""
    if a.grade != phi.grade or a.dual or not phi.dual:
        raise GradeError("Pairing needs a k-vector and a dual k-vector of equal grade")
    return sum((x * y for x, y in zip(a.coords, phi.coords)), QQ.zero)


def induced_action(g, k):
    """
    Matrix of ⋀^k g in the lexicographic basis

    Args:
        g (list): 6×6 matrix (rows), acting on column vectors
        k (int): Grade

    Returns:
        list: comb(6,k) × comb(6,k) rows; column J is g e_{J₁}∧...∧g e_{J_k}
    """
    columns_of_g = transpose([[to_scalar(x) for x in row] for row in g])
    columns = []
    for subset in basis_index(k):
        image = wedge_all([KVector.vector(columns_of_g[j]) for j in subset]) if subset else KVector(0, (1,))
        columns.append(image.coords)
    return transpose(columns)


class Decomposability(str, enum.Enum):
    DECOMPOSABLE = "decomposable"
    PARTIAL = "v0 wedge rank-4 form"
    GENERAL = "not decomposable"


@dataclass(frozen=True)
class DecomposabilityReport:
    kdim: int
    classification: Decomposability
    annihilator: Subspace

    @property
    def decomposable(self):
        return self.classification is Decomposability.DECOMPOSABLE


def decomposable_rank(a):
    """
    Dimension of {v : v∧a = 0} for a nonzero trivector, with its classification

    kdim is 3 exactly for decomposable a, 1 for a = v₀∧β with β of rank 4,
    and 0 otherwise.
    """
    if a.grade != 3:
        raise GradeError(f"Expected a trivector, got grade {a.grade}")
    if a.is_zero():
        raise ZeroVectorError("decomposable_rank of the zero trivector")
    columns = [wedge(KVector.basis(i), a).coords for i in range(DIM)]
    _, annihilator = rank_kernel(transpose(columns))
    kdim = annihilator.dim
    if kdim == 3:
        classification = Decomposability.DECOMPOSABLE
    elif kdim == 1:
        classification = Decomposability.PARTIAL
    else:
        classification = Decomposability.GENERAL
    return DecomposabilityReport(kdim, classification, annihilator)


def hyperplane_basis(f):
    """Echelon basis (5 vectors) of ker f for a nonzero covector f."""
    f = as_kvector(f, dual=True)
    if f.is_zero():
        raise ZeroVectorError("Hyperplane of the zero covector")
    return rank_kernel([list(f.coords)])[1].basis()


def annihilator_basis(vectors):
    """Covectors spanning the annihilator of the span of the vectors."""
    return [KVector.covector(row) for row in rank_kernel([list(as_kvector(v).coords) for v in vectors])[1].rows]


def span_dimension(vectors):
    return Subspace.span([list(as_kvector(v).coords) for v in vectors], DIM).dim


@dataclass(frozen=True)
class SkewForm5:
    """A skew form on V₅ in the coordinates of a chosen basis of V₅ ⊂ V₆."""

    matrix: tuple
    basis: tuple

    def rank(self):
        return 5 - rank_kernel([list(row) for row in self.matrix])[1].dim

    def kernel(self):
        """Kernel as a subspace of V₅ coordinates."""
        return rank_kernel([list(row) for row in self.matrix])[1]

    def to_v6(self, coordinates):
        """The vector of V₆ with the given V₅ coordinates."""
        result = [QQ.zero] * DIM
        for c, u in zip(coordinates, self.basis):
            result = [r + to_scalar(c) * x for r, x in zip(result, u)]
        return result

    def kernel_vectors(self):
        return [self.to_v6(row) for row in self.kernel().rows]

    def value(self, x, y):
        return sum((to_scalar(x[i]) * self.matrix[i][j] * to_scalar(y[j])
                    for i in range(5) for j in range(5)), QQ.zero)


def pfaffian4(m, indices):
    a, b, c, d = indices
    return m[a][b] * m[c][d] - m[a][c] * m[b][d] + m[a][d] * m[b][c]


def pfaffian_kernel(form):
    """
    Kernel vector of a 5×5 skew form from its signed 4×4 sub-Pfaffians

    The coordinates are quadratic in the form's entries and vanish
    simultaneously exactly when the rank drops below 4.
    """
    m = form.matrix if isinstance(form, SkewForm5) else form
    return [(-1) ** i * pfaffian4(m, [j for j in range(5) if j != i]) for i in range(5)]


def trivector_span_of(basis):
    """Span of the wedges of triples from a basis, as a Subspace of ⋀³V₆."""
    vectors = [wedge_all([basis[i] for i in triple]).coords for triple in combinations(range(len(basis)), 3)]
    return Subspace.span([list(v) for v in vectors], comb(DIM, 3))


def two_form_of_trivector(a, v5basis):
    """
    The skew form κ_a(u, w) = [u∧w∧a] / vol(V₅) for a ∈ ⋀³V₅

    Args:
        a (KVector): Trivector in ⋀³V₅
        v5basis (list): Five vectors spanning the hyperplane V₅

    Returns:
        SkewForm5: κ_a in the coordinates of v5basis

    Raises:
        ContainmentError: If a does not lie in ⋀³V₅
    """
    basis = [list(as_kvector(u).coords) for u in v5basis]
    if len(basis) != 5 or span_dimension(basis) != 5:
        raise ContainmentError("V₅ basis must consist of five independent vectors")
    if not trivector_span_of(basis).contains(list(a.coords)):
        raise ContainmentError("Trivector does not lie in ⋀³V₅")
    volume = wedge_all(basis)
    pivot = next(i for i, c in enumerate(volume.coords) if c)
    vectors = [KVector.vector(u) for u in basis]
    matrix = [[QQ.zero] * 5 for _ in range(5)]
    for i in range(5):
        for j in range(i + 1, 5):
            value = wedge(wedge(vectors[i], vectors[j]), a).coords[pivot] / volume.coords[pivot]
            matrix[i][j], matrix[j][i] = value, -value
    return SkewForm5(tuple(tuple(row) for row in matrix), tuple(tuple(u) for u in basis))


class InducedKind(str, enum.Enum):
    F_V = "v_wedge_2"
    W_U3 = "w_u3"
    WEDGE3_V5 = "wedge3_v5"
    W2U3_V5 = "w2u3_v5"
    V_WEDGE2_V5 = "v_wedge2_v5"


EXPECTED_DIMENSION = {
    InducedKind.F_V: 10,
    InducedKind.W_U3: 10,
    InducedKind.WEDGE3_V5: 10,
    InducedKind.W2U3_V5: 7,
    InducedKind.V_WEDGE2_V5: 6,
}

# Arguments each construction reads
REQUIRED_ARGUMENTS = {
    InducedKind.F_V: ("v",),
    InducedKind.W_U3: ("u3",),
    InducedKind.WEDGE3_V5: ("v5",),
    InducedKind.W2U3_V5: ("u3", "v5"),
    InducedKind.V_WEDGE2_V5: ("v", "v5"),
}


@dataclass(frozen=True)
class InducedSubspace:
    kind: InducedKind
    data: dict
    span: Subspace


def _wedge_span(prefixes, factors):
    vectors = [wedge(p, f).coords for p in prefixes for f in factors]
    return Subspace.span([list(v) for v in vectors], comb(DIM, 3))


def _check_contained(vectors, basis, message):
    space = Subspace.span([list(as_kvector(b).coords) for b in basis], DIM)
    if not all(space.contains(list(as_kvector(v).coords)) for v in vectors):
        raise ContainmentError(message)


def induced_subspace(kind, v=None, u3=None, v5=None):
    """
    Build one of the canonical subspaces of ⋀³V₆

    Args:
        kind (InducedKind): Which construction
        v: Vector for F_v and v∧⋀²V₅
        u3 (list): Three vectors for ⋀²U₃∧V₆ and ⋀²U₃∧V₅
        v5 (list): Five vectors spanning V₅ (or a covector with V₅ = ker f)

    Returns:
        InducedSubspace: The echelonized span

    Raises:
        ContainmentError: If the required containments fail
        MissingArgumentError: If an argument the construction reads is None
    """
    kind = InducedKind(kind)
    given = {"v": v, "u3": u3, "v5": v5}
    missing = [name for name in REQUIRED_ARGUMENTS[kind] if given[name] is None]
    if missing:
        raise MissingArgumentError(f"{kind.value} needs {', '.join(missing)}")
    if v5 is not None and isinstance(v5, KVector):
        v5 = hyperplane_basis(v5)
    if v5 is not None:
        v5 = [KVector.vector(u) if not isinstance(u, KVector) else u for u in v5]
        if span_dimension(v5) != 5:
            raise ContainmentError("V₅ must be five-dimensional")
    if u3 is not None:
        u3 = [KVector.vector(u) if not isinstance(u, KVector) else u for u in u3]
        if span_dimension(u3) != 3:
            raise ContainmentError("U₃ must be three-dimensional")
    if v is not None:
        v = as_kvector(v)
        if v.is_zero():
            raise ZeroVectorError("Induced subspace of the zero vector")

    everything = [KVector.basis(i) for i in range(DIM)]
    if kind is InducedKind.F_V:
        span = _wedge_span([v], [KVector.basis(*pair) for pair in basis_index(2)])
        data = {"v": v}
    elif kind is InducedKind.W_U3:
        span = _wedge_span([wedge(u3[i], u3[j]) for i, j in combinations(range(3), 2)], everything)
        data = {"u3": u3}
    elif kind is InducedKind.WEDGE3_V5:
        span = trivector_span_of([list(u.coords) for u in v5])
        data = {"v5": v5}
    elif kind is InducedKind.W2U3_V5:
        _check_contained(u3, v5, "U₃ is not contained in V₅")
        span = _wedge_span([wedge(u3[i], u3[j]) for i, j in combinations(range(3), 2)], v5)
        data = {"u3": u3, "v5": v5}
    else:
        _check_contained([v], v5, "v is not contained in V₅")
        span = _wedge_span([v], [wedge(v5[i], v5[j]) for i, j in combinations(range(5), 2)])
        data = {"v": v, "v5": v5}

    if span.dim != EXPECTED_DIMENSION[kind]:
        raise ContainmentError(f"{kind.value} has dimension {span.dim}, expected {EXPECTED_DIMENSION[kind]}")
    return InducedSubspace(kind, data, span)
