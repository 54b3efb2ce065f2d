# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

"""
Lagrangian subspaces of (⋀³V₆, ω)

The graph generator fixes V₅ = ⟨e₀..e₄⟩ and the Lagrangian complement
e₅∧⋀²V₅ of ⋀³V₅; a symmetric 10×10 matrix q gives the graph
A = {a + q̃(a)}, with dim(A ∩ ⋀³V₅) = dim ker q.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from sympy import QQ

from epwlab.config.settings import get_settings
from epwlab.exceptions import EpwLabInputError
from epwlab.modules import exterior
from epwlab.modules.exterior import InducedKind, KVector, induced_subspace
from epwlab.modules.linalg import (
    Subspace,
    determinant,
    rank_kernel,
    solve_linear,
    subspace_intersect,
    to_scalar,
    transpose,
)
from epwlab.modules.polynomials import det_poly, linear_entry, poly_gcd, rational_roots
from epwlab.utils.rng import random_int, random_int_matrix, random_int_vector

_logger = logging.getLogger(__name__)

TRIVECTORS = 20
LAGRANGIAN_DIM = 10
STANDARD_V5 = KVector.covector([0, 0, 0, 0, 0, 1])


class LagrangianError(EpwLabInputError):
    """Exception raised when Lagrangian data is malformed"""
    pass


class NotSymmetricError(LagrangianError):
    """Exception raised when a graph matrix is not symmetric"""
    pass


class NotIsotropicError(LagrangianError):
    """Exception raised when a subspace is required to be isotropic but is not"""
    pass


class ReductionError(LagrangianError):
    """Exception raised when an isotropic reduction is not defined"""
    pass


class PencilError(LagrangianError):
    """Exception raised when two Lagrangians do not span a pencil"""
    pass


def hyperplane_stratum(A, f):
    """dim(A ∩ ⋀³ker f)."""
    wedge3 = induced_subspace(InducedKind.WEDGE3_V5, v5=exterior.as_kvector(f, dual=True)).span
    return subspace_intersect(A, wedge3).dim


@dataclass(frozen=True)
class LagrangianData:
    """
    A Lagrangian A ⊂ ⋀³V₆ with an optional hyperplane V₅ = ker f

    ell caches dim(A ∩ ⋀³V₅) when a hyperplane is present.
    """

    A: Subspace
    v5: KVector | None = None
    seed: int | None = None
    generator: str = "manual"
    ell: int | None = None
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.A.ambient != TRIVECTORS:
            raise LagrangianError(f"A must live in ⋀³V₆ (ambient {TRIVECTORS}), got {self.A.ambient}")
        if self.A.dim != LAGRANGIAN_DIM:
            raise LagrangianError(f"A must be {LAGRANGIAN_DIM}-dimensional, got {self.A.dim}")
        if self.v5 is not None:
            computed = hyperplane_stratum(self.A, self.v5)
            if self.ell is None:
                object.__setattr__(self, "ell", computed)
            elif self.ell != computed:
                raise LagrangianError(f"Cached ell {self.ell} disagrees with recomputed {computed}")

    def with_hyperplane(self, f):
        return LagrangianData(self.A, exterior.as_kvector(f, dual=True), self.seed, self.generator,
                              metadata=dict(self.metadata))


@dataclass(frozen=True)
class LagrangianCheck:
    ok: bool
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_lagrangian(A):
    """
    Check that A is a 10-dimensional isotropic subspace of ⋀³V₆

    Returns:
        LagrangianCheck: ok, or the first basis pair (i, j) with ω ≠ 0
    """
    if A.ambient != TRIVECTORS:
        return LagrangianCheck(False, reason=f"ambient {A.ambient}")
    isotropic = isotropy_witness(A)
    if isotropic is not None:
        return LagrangianCheck(False, witness=isotropic, reason="omega does not vanish")
    if A.dim != LAGRANGIAN_DIM:
        return LagrangianCheck(False, reason=f"dimension {A.dim}")
    return LagrangianCheck(True)


def isotropy_witness(S):
    rows = S.rows
    for i, j in combinations(range(len(rows)), 2):
        if exterior.omega(rows[i], rows[j]):
            return (i, j)
    return None


def is_isotropic(S):
    return isotropy_witness(S) is None


def symplectic_complement(S):
    """S^⊥ for ω."""
    gram = exterior.symplectic_gram()
    if not S.dim:
        return Subspace.full(TRIVECTORS)
    forms = [[sum((x * gram[i][j] for i, x in enumerate(row) if x), QQ.zero) for j in range(TRIVECTORS)]
             for row in S.rows]
    return rank_kernel(forms)[1]


def _graph_pairs():
    """Bases a_I of ⋀³V₅ and b_I of e₅∧⋀²V₅ with ω(a_I, b_J) = δ_IJ."""
    pairs = []
    for subset in combinations(range(5), 3):
        complement = tuple(i for i in range(5) if i not in subset)
        a = KVector.basis(*subset)
        b = KVector.basis(5, *complement)
        b = b.scale(1 / exterior.symplectic_form(a, b))
        pairs.append((a, b))
    return pairs


def graph_subspace(q):
    """Span of a_I + Σ_J q[I][J] b_J; Lagrangian exactly when q is symmetric."""
    q = [[to_scalar(x) for x in row] for row in q]
    if len(q) != 10 or any(len(row) != 10 for row in q):
        raise LagrangianError("Graph matrix must be 10×10")
    pairs = _graph_pairs()
    rows = []
    for i, (a, _) in enumerate(pairs):
        vector = a
        for j, (_, b) in enumerate(pairs):
            if q[i][j]:
                vector = vector + b.scale(q[i][j])
        rows.append(list(vector.coords))
    return Subspace.span(rows, TRIVECTORS)


def _complete_basis(vectors):
    """Extend independent vectors of V₆ by standard basis vectors to a basis."""
    basis = [list(v) for v in vectors]
    for i in range(exterior.DIM):
        e = [QQ.one if j == i else QQ.zero for j in range(exterior.DIM)]
        if Subspace.span(basis + [e], exterior.DIM).dim > len(basis):
            basis.append(e)
    return basis


def transform_subspace(A, g):
    """Image of a subspace of ⋀³V₆ under ⋀³g."""
    action = exterior.induced_action(g, 3)
    images = [[sum((action[i][j] * x for j, x in enumerate(row) if x), QQ.zero) for i in range(TRIVECTORS)]
              for row in A.rows]
    return Subspace.span(images, TRIVECTORS)


def from_graph(q, v5basis=None, seed=None):
    """
    Graph Lagrangian of a symmetric 10×10 matrix

    Args:
        q (list): Symmetric matrix indexed by 3-subsets of V₅'s basis
        v5basis (list, optional): Five vectors spanning the hyperplane; the
            standard ⟨e₀..e₄⟩ when omitted
        seed (int, optional): Provenance

    Returns:
        LagrangianData: A with its hyperplane and ell = dim ker q

    Raises:
        NotSymmetricError: If q is not symmetric
    """
    q = [[to_scalar(x) for x in row] for row in q]
    if any(q[i][j] != q[j][i] for i in range(len(q)) for j in range(i)):
        raise NotSymmetricError("Graph matrix must be symmetric")
    A = graph_subspace(q)
    f = STANDARD_V5
    if v5basis is not None:
        columns = _complete_basis(v5basis)
        if len(columns) != exterior.DIM or Subspace.span(columns[:5], exterior.DIM).dim != 5:
            raise LagrangianError("v5basis must span a hyperplane")
        g = transpose(columns)
        A = transform_subspace(A, g)
        f = exterior.annihilator_basis(columns[:5])[0]
    return LagrangianData(A, f, seed=seed, generator="graph")


def extend_isotropic_to_lagrangian(s, rng, v5=None, seed=None, generator="isotropic-extension"):
    """
    Randomly complete an isotropic subspace to a Lagrangian

    Repeatedly adds a random vector of s^⊥ outside s.

    Raises:
        NotIsotropicError: If s is not isotropic
    """
    if not is_isotropic(s):
        raise NotIsotropicError("Cannot extend a non-isotropic subspace")
    current = s
    while current.dim < LAGRANGIAN_DIM:
        perp = symplectic_complement(current)
        candidate = perp.combination(random_int_vector(rng, perp.dim, nonzero=True))
        if not current.contains(candidate):
            current = current + Subspace.span([candidate], TRIVECTORS)
    _logger.debug(f"Extended isotropic subspace of dim {s.dim} to a Lagrangian")
    return LagrangianData(current, v5, seed=seed, generator=generator)


@dataclass(frozen=True)
class DecomposableSearch:
    vector: KVector | None
    pencils_tried: int
    budget: int

    @property
    def found(self):
        return self.vector is not None

    @property
    def message(self):
        if self.found:
            return "decomposable vector found"
        return f"none found within budget {self.budget}"


def _pencil_minor_gcd(x, y, rng, minors=4):
    """gcd of random 4×4 minors of v ↦ v∧(x + t y) restricted to a pencil."""
    columns = [[linear_entry(p, q) for p, q in zip(exterior.wedge(KVector.basis(i), x).coords,
                                                   exterior.wedge(KVector.basis(i), y).coords)]
               for i in range(exterior.DIM)]
    matrix = transpose(columns)
    polys = []
    for _ in range(minors):
        rows = sorted(rng.sample(range(len(matrix)), 4))
        cols = sorted(rng.sample(range(exterior.DIM), 4))
        polys.append(det_poly([[matrix[r][c] for c in cols] for r in rows]))
        current = poly_gcd(polys)
        if not current.is_zero and current.degree() == 0:
            return current
    return poly_gcd(polys)


def find_decomposable(A, budget=None, rng=None):
    """
    Search A for a decomposable trivector

    Basis vectors are tested first, then random pencils x + t·y, whose
    decomposable members are roots of the gcd of 4×4 minors of the wedge map.
    A miss is reported, never taken as proof of absence.

    Returns:
        DecomposableSearch: The verified vector, if any, and the work done
    """
    budget = budget or get_settings().search_budget
    candidates = [KVector(3, row) for row in A.rows]
    for candidate in candidates:
        if exterior.decomposable_rank(candidate).decomposable:
            return DecomposableSearch(candidate, 0, budget)
    if rng is None:
        return DecomposableSearch(None, 0, budget)
    for attempt in range(1, budget + 1):
        x = exterior.combine(candidates, random_int_vector(rng, A.dim, nonzero=True))
        y = exterior.combine(candidates, random_int_vector(rng, A.dim, nonzero=True))
        if x.is_zero() or y.is_zero():
            continue
        common = _pencil_minor_gcd(x, y, rng)
        points = [x] if common.is_zero else [x + y.scale(r) for r in rational_roots(common)]
        for point in points + [y]:
            if not point.is_zero() and exterior.decomposable_rank(point).decomposable:
                _logger.info(f"Decomposable vector found after {attempt} pencils")
                return DecomposableSearch(point, attempt, budget)
    return DecomposableSearch(None, budget, budget)


def dual_lagrangian(A):
    """Annihilator of A in ⋀³V₆^∨ (coordinates in the dual lexicographic basis)."""
    return rank_kernel([list(row) for row in A.rows])[1]


def dual_stratum_via_annihilator(A, f):
    """dim(A^⊥ ∩ f∧⋀²V₆^∨), equal to dim(A ∩ ⋀³ker f) for Lagrangian A."""
    f = exterior.as_kvector(f, dual=True)
    span = Subspace.span(
        [list(exterior.wedge(f, KVector.basis(*pair, dual=True)).coords) for pair in exterior.basis_index(2)],
        TRIVECTORS,
    )
    return subspace_intersect(dual_lagrangian(A), span).dim


@dataclass(frozen=True)
class SymplecticReduction:
    """
    The symplectic space B^⊥/B with a chosen complement C of B in B^⊥

    Quotient coordinates are the C-coefficients of a vector of B^⊥.
    """

    B: Subspace
    complement: tuple
    gram: tuple

    @property
    def dim(self):
        return len(self.complement)

    def coordinates(self, x):
        columns = transpose(list(self.B.rows) + list(self.complement))
        solution = solve_linear(columns, x)
        if solution is None:
            raise ReductionError("Vector does not lie in B^⊥")
        return solution[self.B.dim:]

    def reduce(self, S):
        """Image of S ∩ B^⊥ in the quotient."""
        if not self.dim:
            return Subspace.zero(0)
        perp = Subspace.span(list(self.B.rows) + list(self.complement), TRIVECTORS)
        inside = subspace_intersect(S, perp)
        images = [self.coordinates(row) for row in inside.rows]
        return Subspace.span(images, self.dim) if images else Subspace.zero(self.dim)

    def lift(self, coordinates):
        result = [QQ.zero] * TRIVECTORS
        for c, row in zip(coordinates, self.complement):
            c = to_scalar(c)
            if c:
                result = [r + c * x for r, x in zip(result, row)]
        return result

    def form(self, x, y):
        return sum((to_scalar(x[i]) * self.gram[i][j] * to_scalar(y[j])
                    for i in range(self.dim) for j in range(self.dim) if self.gram[i][j]), QQ.zero)

    def is_lagrangian(self, image):
        if 2 * image.dim != self.dim:
            return False
        return all(not self.form(image.rows[i], image.rows[j])
                   for i, j in combinations(range(image.dim), 2))


def symplectic_reduction(B):
    if not is_isotropic(B):
        raise NotIsotropicError("Reduction needs an isotropic subspace")
    perp = symplectic_complement(B)
    complement = []
    current = B
    for row in perp.rows:
        if not current.contains(row):
            complement.append(tuple(row))
            current = current + Subspace.span([row], TRIVECTORS)
    gram = tuple(tuple(exterior.omega(x, y) for y in complement) for x in complement)
    return SymplecticReduction(B, tuple(complement), gram)


def isotropic_reduction(A, B):
    """
    The reduction Ā = (A ∩ B^⊥)/B inside B^⊥/B

    Args:
        A (Subspace): Lagrangian
        B (Subspace): Isotropic subspace of A

    Returns:
        tuple: (SymplecticReduction, Subspace Ā in quotient coordinates)

    Raises:
        ReductionError: If B ⊄ A
        NotIsotropicError: If B is not isotropic
    """
    if not A.contains_subspace(B):
        raise ReductionError("B is not contained in A")
    reduction = symplectic_reduction(B)
    return reduction, reduction.reduce(A)


@dataclass(frozen=True)
class LagrangianPencil:
    """
    The Lagrangians A(t) = B + ⟨x(t), y(t)⟩ containing B = A₁ ∩ A₂

    x(t) = x₀ + t·x₁ runs over P(Ā₁) (t = None is x₁), y(t) is the point of
    P(Ā₂) orthogonal to x(t).
    """

    B: Subspace
    reduction: SymplecticReduction
    first: Subspace
    second: Subspace
    domain: str = "t in QQ, None for the point at infinity"

    def x(self, t):
        x0, x1 = self.first.rows
        if t is None:
            return list(x1)
        t = to_scalar(t)
        return [a + t * b for a, b in zip(x0, x1)]

    def y(self, t):
        x = self.x(t)
        y0, y1 = self.second.rows
        a, b = self.reduction.form(x, y1), self.reduction.form(x, y0)
        return [a * p - b * q for p, q in zip(y0, y1)]

    def member(self, t):
        """A(t) as a subspace of ⋀³V₆."""
        lifts = [self.reduction.lift(self.x(t)), self.reduction.lift(self.y(t))]
        return self.B + Subspace.span(lifts, TRIVECTORS)

    def parameter_of(self, A):
        """Pencil parameter of a Lagrangian A ⊇ B (None for the point at infinity)."""
        if not A.contains_subspace(self.B):
            raise PencilError("Lagrangian does not contain the base B")
        meet = subspace_intersect(self.reduction.reduce(A), self.first)
        if meet.dim != 1:
            raise PencilError("Lagrangian is not a member of the pencil")
        alpha, beta = self.first.coordinates(meet.rows[0])
        if not alpha:
            return None
        return beta / alpha


def lagrangian_pencil(A1, A2):
    """
    Pencil of Lagrangians through B = A₁ ∩ A₂

    Raises:
        PencilError: If dim(A₁ ∩ A₂) ≠ 8
    """
    A1 = A1.A if isinstance(A1, LagrangianData) else A1
    A2 = A2.A if isinstance(A2, LagrangianData) else A2
    B = subspace_intersect(A1, A2)
    if B.dim != LAGRANGIAN_DIM - 2:
        raise PencilError(f"dim(A₁ ∩ A₂) = {B.dim}, expected {LAGRANGIAN_DIM - 2}")
    reduction = symplectic_reduction(B)
    first, second = reduction.reduce(A1), reduction.reduce(A2)
    if first.dim != 2 or second.dim != 2 or subspace_intersect(first, second).dim:
        raise PencilError("Reduced Lagrangians are not complementary planes")
    return LagrangianPencil(B, reduction, first, second)


def gm_dimensions(data):
    """Dimensions of the ordinary and special GM varieties attached to (V₆, V₅, A)."""
    if data.ell is None:
        raise LagrangianError("Lagrangian data carries no hyperplane")
    if data.ell > 3:
        raise LagrangianError(f"ell = {data.ell} > 3 does not define a GM variety")
    return {"ordinary": 5 - data.ell, "special": 6 - data.ell}


def random_symmetric(rng, rank_):
    """Random symmetric 10×10 integer matrix of the given rank (Mᵀ D M)."""
    while True:
        m = random_int_matrix(rng, 10, 10)
        if determinant(m):
            break
    diagonal = [0] * 10
    for i in range(rank_):
        while not diagonal[i]:
            diagonal[i] = random_int(rng)
    return [[sum(m[k][i] * diagonal[k] * m[k][j] for k in range(10)) for j in range(10)] for i in range(10)]


def random_graph_lagrangian(rng, ell=0, seed=None):
    """Graph Lagrangian with dim(A ∩ ⋀³V₅) = ell."""
    if not 0 <= ell <= 10:
        raise LagrangianError(f"ell must be in 0..10, got {ell}")
    data = from_graph(random_symmetric(rng, 10 - ell), seed=seed)
    return LagrangianData(data.A, data.v5, seed=seed, generator=f"graph:ell={ell}")


def random_two_vector(rng):
    return KVector(2, tuple(random_int_vector(rng, 15, nonzero=True)))


def plant_y2(v, rng, seed=None):
    """Lagrangian containing v∧ξ₁, v∧ξ₂ for random ξ, so that v ∈ Y^{≥2}_A."""
    v = exterior.as_kvector(v)
    while True:
        s = Subspace.span([list(exterior.wedge(v, random_two_vector(rng)).coords) for _ in range(2)], TRIVECTORS)
        if s.dim == 2:
            break
    return extend_isotropic_to_lagrangian(s, rng, v5=STANDARD_V5, seed=seed, generator="plant:y2")


def plant_z1(u3, rng, seed=None):
    """Lagrangian containing a random element of ⋀²U₃∧V₆."""
    span = induced_subspace(InducedKind.W_U3, u3=u3).span
    element = span.combination(random_int_vector(rng, span.dim, nonzero=True))
    s = Subspace.span([element], TRIVECTORS)
    return extend_isotropic_to_lagrangian(s, rng, v5=STANDARD_V5, seed=seed, generator="plant:z1")


@dataclass(frozen=True)
class JointPair:
    """Two Lagrangians meeting in B (dim 8) whose Y-loci share v."""

    first: LagrangianData
    second: LagrangianData
    v: KVector
    joint: Subspace


def plant_joint_pair(v, rng, degenerate=False):
    """
    Build A₁, A₂ with dim(A₁ ∩ A₂) = 8 and v ∈ Y_{A₁} ∩ Y_{A₂}

    a_i = v∧ξ_i lie in A_i; B is a random isotropic 8-space orthogonal to
    ⟨a₁, a₂⟩ with B ∩ F_v = 0 (or ≠ 0 when degenerate is set), and
    B + ⟨a₁, a₂⟩ is the joint member of the pencil.
    """
    v = exterior.as_kvector(v)
    f_v = induced_subspace(InducedKind.F_V, v=v).span
    while True:
        a1, a2 = (exterior.wedge(v, random_two_vector(rng)) for _ in range(2))
        S = Subspace.span([list(a1.coords), list(a2.coords)], TRIVECTORS)
        if S.dim != 2:
            continue
        B = Subspace.zero(TRIVECTORS)
        if degenerate:
            B = Subspace.span([list(exterior.wedge(v, random_two_vector(rng)).coords)], TRIVECTORS)
            if (B + S).dim != 3:
                continue
        while B.dim < LAGRANGIAN_DIM - 2:
            perp = symplectic_complement(B + S)
            candidate = perp.combination(random_int_vector(rng, perp.dim, nonzero=True))
            if not (B + S).contains(candidate):
                B = B + Subspace.span([candidate], TRIVECTORS)
        if not degenerate and subspace_intersect(B, f_v).dim:
            continue
        members = []
        for a in (a1, a2):
            base = B + Subspace.span([list(a.coords)], TRIVECTORS)
            perp = symplectic_complement(base)
            while True:
                extra = perp.combination(random_int_vector(rng, perp.dim, nonzero=True))
                if not (B + S).contains(extra) and not base.contains(extra):
                    break
            members.append(base + Subspace.span([extra], TRIVECTORS))
        if subspace_intersect(members[0], members[1]).dim != LAGRANGIAN_DIM - 2:
            continue
        first = LagrangianData(members[0], generator="plant:joint")
        second = LagrangianData(members[1], generator="plant:joint")
        return JointPair(first, second, v, B + S)
