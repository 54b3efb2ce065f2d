# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

"""
EPW strata of a Lagrangian A ⊂ ⋀³V₆

Pointwise strata are kernel dimensions of linear maps restricted to A:
    Y      ℓ(v)  = dim(A ∩ v∧⋀²V₆)        a ↦ v∧a
    Ydual  ℓ(f)  = dim(A ∩ ⋀³ker f)        a ↦ ι_f a
    Z      ℓ(U₃) = dim(A ∩ ⋀²U₃∧V₆)       a ↦ (ι_g ι_f a) for f, g ∈ U₃^⊥
Degrees of the loci are read off along lines as the gcd of maximal minors.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from sympy import QQ

from epwlab.config.settings import get_settings
from epwlab.exceptions import EpwLabInputError, MathematicalFailure
from epwlab.modules import exterior
from epwlab.modules.exterior import InducedKind, KVector, induced_subspace
from epwlab.modules.lagrangian import (
    LagrangianData,
    LagrangianPencil,
    is_lagrangian,
)
from epwlab.modules.linalg import (
    Subspace,
    inverse,
    rank,
    rank_kernel,
    solve_linear,
    subspace_intersect,
    to_scalar,
    transpose,
)
from epwlab.modules.polynomials import (
    det_poly,
    gcd_degree_mod,
    is_squarefree,
    poly_gcd,
    root_multiplicity,
    upoly,
)
from epwlab.utils.parallel import ordered_map
from epwlab.utils.rng import random_int_vector

_logger = logging.getLogger(__name__)

EXPECTED_DEGREE = {"Y": 6, "Ydual": 6, "Z": 4}
STRATUM_BOUND = {"Y": 3, "Z": 4}


class StratumError(EpwLabInputError):
    """Exception raised when a point or subspace does not meet a stratum precondition"""
    pass


class DecomposableVectorError(EpwLabInputError):
    """Exception raised when a decomposable trivector appears where none is allowed"""
    pass


class JointStratumError(EpwLabInputError):
    """Exception raised when a joint stratum witness is not uniquely determined"""
    pass


class UnstableDegreeError(MathematicalFailure):
    """Exception raised when minor gcd degrees disagree after all retries"""
    pass


class StratumBoundViolation(MathematicalFailure):
    """Exception raised when a sampled stratum exceeds its emptiness bound"""
    pass


class HatPointError(MathematicalFailure):
    """Exception raised when a triple (a, v, f) fails the incidence conditions"""
    pass


def _space(A):
    return A.A if isinstance(A, LagrangianData) else A


@dataclass(frozen=True)
class StratumReport:
    """
    Result of a pointwise stratum query

    ell is the dimension of the witness space; flagged marks degenerate
    inputs whose ℓ exceeds the bound of a general Lagrangian.
    """

    kind: str
    point: tuple
    ell: int
    witness: Subspace
    flagged: bool = False


def _kernel_report(kind, point, A, columns, bound=None):
    A = _space(A)
    _, relations = rank_kernel(transpose(columns)) if columns else (0, Subspace.zero(0))
    vectors = [A.combination(rel) for rel in relations.rows]
    witness = Subspace.span(vectors, A.ambient) if vectors else Subspace.zero(A.ambient)
    flagged = bound is not None and witness.dim > bound
    if flagged:
        _logger.warning(f"{kind} stratum {witness.dim} exceeds {bound}: degenerate input accepted")
    return StratumReport(kind, point, witness.dim, witness, flagged)


def y_stratum(A, v):
    """
    ℓ = dim(A ∩ F_v)

    Args:
        A: Lagrangian (Subspace or LagrangianData)
        v: Nonzero vector of V₆

    Returns:
        StratumReport: kind "Y" with A ∩ F_v as witness

    Raises:
        ZeroVectorError: If v = 0
    """
    v = exterior.as_kvector(v)
    if v.is_zero():
        raise exterior.ZeroVectorError("Y stratum of the zero vector")
    columns = [exterior.wedge(v, KVector(3, row)).coords for row in _space(A).rows]
    return _kernel_report("Y", v.coords, A, columns, STRATUM_BOUND["Y"])


def y_dual_stratum(A, f):
    """ℓ = dim(A ∩ ⋀³ker f), the kernel of a ↦ ι_f a on A."""
    f = exterior.as_kvector(f, dual=True)
    if f.is_zero():
        raise exterior.ZeroVectorError("Dual stratum of the zero covector")
    columns = [exterior.contraction(f, KVector(3, row)).coords for row in _space(A).rows]
    return _kernel_report("Ydual", f.coords, A, columns, STRATUM_BOUND["Y"])


def _u3_vectors(u3):
    vectors = [list(exterior.as_kvector(u).coords) for u in u3]
    if len(vectors) != 3 or Subspace.span(vectors, exterior.DIM).dim != 3:
        raise StratumError("U₃ must be spanned by three independent vectors")
    return vectors


def z_stratum(A, u3):
    """ℓ = dim(A ∩ ⋀²U₃∧V₆) by stacked-basis intersection."""
    vectors = _u3_vectors(u3)
    span = induced_subspace(InducedKind.W_U3, u3=vectors).span
    witness = subspace_intersect(_space(A), span)
    flagged = witness.dim > STRATUM_BOUND["Z"]
    if flagged:
        _logger.warning(f"Z stratum {witness.dim} exceeds {STRATUM_BOUND['Z']}: degenerate input accepted")
    return StratumReport("Z", tuple(tuple(v) for v in vectors), witness.dim, witness, flagged)


def double_contraction_rows(a, covectors):
    """Coordinates of ι_g ι_f a for the pairs f < g of the given covectors."""
    rows = []
    for f, g in combinations(covectors, 2):
        rows.extend(exterior.contraction(g, exterior.contraction(f, a)).coords)
    return rows


def z_stratum_by_contraction(A, u3):
    """The same ℓ from a ∈ ⋀²U₃∧V₆ ⇔ ι_g ι_f a = 0 for all f, g ∈ U₃^⊥."""
    vectors = _u3_vectors(u3)
    covectors = exterior.annihilator_basis(vectors)
    columns = [double_contraction_rows(KVector(3, row), covectors) for row in _space(A).rows]
    return _kernel_report("Z", tuple(tuple(v) for v in vectors), A, columns, STRATUM_BOUND["Z"])


@dataclass(frozen=True)
class DegreeProbeResult:
    """
    Restricted equation of a stratum along a random line

    Every minor that entered the gcd is divisible by poly. modular_agreement
    is False when the gcd degree differs modulo one of the configured primes.
    """

    which: str
    line: dict
    poly: object
    degree: int
    minors_used: int
    retries: int
    modular_degrees: dict = field(default_factory=dict)
    squarefree: bool = False
    multiplicity_at_zero: int | None = None
    modular_agreement: bool = True

    @property
    def expected(self):
        return EXPECTED_DEGREE[self.which]


def _line_columns(which, A, rng, through=None):
    """Constant and linear coefficient matrices (rows × dim A) of the degeneracy map along a line."""
    rows = [KVector(3, row) for row in _space(A).rows]
    if which == "Y":
        p0 = exterior.as_kvector(through) if through is not None else None
        p0 = p0 or KVector.vector(random_int_vector(rng, 6, nonzero=True))
        p1 = KVector.vector(random_int_vector(rng, 6, nonzero=True))
        parts = [[exterior.wedge(p, a).coords for a in rows] for p in (p0, p1)]
        line = {"base": p0, "direction": p1}
    elif which == "Ydual":
        p0 = exterior.as_kvector(through, dual=True) if through is not None else None
        p0 = p0 or KVector.covector(random_int_vector(rng, 6, nonzero=True))
        p1 = KVector.covector(random_int_vector(rng, 6, nonzero=True))
        parts = [[exterior.contraction(p, a).coords for a in rows] for p in (p0, p1)]
        line = {"base": p0, "direction": p1}
    elif which == "Z":
        while True:
            frame = [random_int_vector(rng, 6) for _ in range(6)]
            if rank(frame) == 6:
                break
        dual = inverse(transpose(frame))
        u = [KVector.vector(x) for x in frame]
        c5, c6 = KVector.covector(dual[4]), KVector.covector(dual[5])
        u3_star, u4_star = KVector.covector(dual[2]), KVector.covector(dual[3])
        # U₃(t) = ⟨u₁, u₂, u₃ + t·u₄⟩ has annihilator ⟨c₅*, c₆*, u₄* − t·u₃*⟩
        constant = [double_contraction_rows(a, [c5, c6, u4_star]) for a in rows]
        linear = [[QQ.zero] * 6 + [-x for x in double_contraction_rows(a, [c5, c6, u3_star])[6:]]
                  for a in rows]
        parts = [constant, linear]
        line = {"u": u[:4]}
    else:
        raise EpwLabInputError(f"Unknown probe kind {which!r}; expected one of {sorted(EXPECTED_DEGREE)}")
    return [transpose(p) for p in parts], line


def _line_matrix(parts):
    constant, linear = parts
    return [[upoly([c, l]) for c, l in zip(row0, row1)] for row0, row1 in zip(constant, linear)]


def _minor(matrix, rows):
    return det_poly([matrix[r] for r in rows])


def _minor_batch(matrix, rng, count):
    size = len(matrix[0])
    subsets = [sorted(rng.sample(range(len(matrix)), size)) for _ in range(count)]
    return ordered_map(lambda rows: _minor(matrix, rows), subsets)


def degree_probe(A, which, rng, through=None, settings=None):
    """
    Degree of Y_A, Y_{A⊥} or Z_A along a random line

    Two independent batches of maximal minors are drawn; the gcd of each batch
    must have the same degree as their common gcd. Otherwise the batches grow
    and the probe retries, up to the configured bound.

    Args:
        A: Lagrangian
        which (str): "Y", "Ydual" or "Z"
        rng (random.Random): Source of the line and of the row subsets
        through: Optional base point of the line (Y, Ydual), placed at t = 0

    Returns:
        DegreeProbeResult: The restricted equation and its degree

    Raises:
        UnstableDegreeError: If the degree never stabilises
    """
    settings = settings or get_settings()
    count = settings.minors_per_batch
    retries = 0
    while True:
        parts, line = _line_columns(which, A, rng, through)
        matrix = _line_matrix(parts)
        first = _minor_batch(matrix, rng, count)
        second = _minor_batch(matrix, rng, count)
        g1, g2 = poly_gcd(first), poly_gcd(second)
        if g1.is_zero and g2.is_zero:
            if through is not None:
                raise StratumError("Every maximal minor vanishes on the line through the given point")
            _logger.info(f"{which} probe: line lies in the locus, resampling")
            continue
        common = poly_gcd([g1, g2])
        if not g1.is_zero and not g2.is_zero and g1.degree() == g2.degree() == common.degree():
            break
        retries += 1
        _logger.warning(f"{which} probe: unstable gcd degrees, retry {retries}/{settings.probe_retries}")
        if retries > settings.probe_retries:
            raise UnstableDegreeError(
                f"{which} probe: gcd degree unstable after {settings.probe_retries} retries"
            )
        count += settings.minors_per_batch
    used = first + second
    modular = {p: gcd_degree_mod(used, p) for p in settings.primes}
    disagreeing = sorted(p for p, d in modular.items() if d != common.degree())
    if disagreeing:
        _logger.warning(f"{which} probe: degree {common.degree()} over QQ differs modulo {disagreeing}: {modular}")
    multiplicity = root_multiplicity(common, 0) if through is not None else None
    result = DegreeProbeResult(
        which=which,
        line=line,
        poly=common,
        degree=common.degree(),
        minors_used=len(used),
        retries=retries,
        modular_degrees=modular,
        squarefree=is_squarefree(common),
        multiplicity_at_zero=multiplicity,
        modular_agreement=not disagreeing,
    )
    _logger.info(f"{which} probe: degree {result.degree} from {result.minors_used} minors")
    return result


@dataclass(frozen=True)
class KernelPoint:
    a: KVector
    v0: KVector
    y_ell: int


@dataclass(frozen=True)
class KernelLocus:
    """Kernel points v₀(a) = ker κ_a for a ∈ A ∩ ⋀³V₅, with the Veronese checks."""

    ell: int
    points: tuple
    span_rank: int
    on_conic: bool | None = None
    avoids_hyperplanes: bool | None = None


def _kernel_point(A, a, v5basis):
    form = exterior.two_form_of_trivector(a, v5basis)
    form_rank = form.rank()
    if form_rank != 4:
        raise DecomposableVectorError(f"κ_a has rank {form_rank}: the trivector is decomposable")
    coordinates = exterior.pfaffian_kernel(form)
    v0 = KVector.vector(form.to_v6(coordinates))
    if not form.kernel().contains(coordinates):
        raise MathematicalFailure("Pfaffian kernel disagrees with the rank kernel of κ_a")
    inside = induced_subspace(InducedKind.V_WEDGE2_V5, v=v0, v5=v5basis).span
    if not inside.contains(list(a.coords)):
        raise MathematicalFailure("a does not lie in v₀∧⋀²V₅")
    y_ell = y_stratum(A, v0).ell
    if y_ell < 1:
        raise MathematicalFailure("Kernel point lies off Y_A")
    return KernelPoint(a, v0, y_ell)


def _conic_rank(points):
    """Rank of the 6-monomial matrix of plane points (given in a basis of their span)."""
    return rank([[x * x, y * y, z * z, x * y, x * z, y * z] for x, y, z in points])


def kernel_locus(A, f, rng, samples=None):
    """
    Σ₁ points: the kernel line of κ_a for a ∈ P(A ∩ ⋀³V₅)

    For ℓ = 1 the single point v₀ is returned. For ℓ = 2 the sampled points
    must span a plane and lie on a conic there; for ℓ = 3 they must not lie
    in a hyperplane of P(V₅).

    Raises:
        StratumError: If ℓ = 0
        DecomposableVectorError: If some sampled a is decomposable
    """
    report = y_dual_stratum(A, f)
    if report.ell == 0:
        raise StratumError("A ∩ ⋀³V₅ = 0: the kernel locus is empty")
    v5basis = exterior.hyperplane_basis(f)
    basis = [KVector(3, row) for row in report.witness.rows]
    if report.ell == 1:
        elements = basis
    else:
        count = samples or (6 if report.ell == 2 else 8)
        elements = []
        while len(elements) < count:
            a = exterior.combine(basis, random_int_vector(rng, len(basis), nonzero=True))
            if not a.is_zero():
                elements.append(a)
    points = tuple(_kernel_point(A, a, v5basis) for a in elements)
    vectors = [list(p.v0.coords) for p in points]
    span = Subspace.span(vectors, exterior.DIM)
    on_conic = avoids = None
    if report.ell == 2:
        plane = [span.coordinates(v) for v in vectors]
        on_conic = span.dim == 3 and _conic_rank(plane) <= 5
    elif report.ell == 3:
        avoids = span.dim == 5
    return KernelLocus(report.ell, points, span.dim, on_conic, avoids)


@dataclass(frozen=True)
class IsotropicMembership:
    k: int
    witness: Subspace
    expected_max: int = 2

    @property
    def within_expectation(self):
        return self.k <= self.expected_max


def isotropic_locus_membership(A, f, u3):
    """k = dim(A ∩ ⋀²U₃∧V₅) for U₃ ⊂ V₅ = ker f; k ≤ 2 is expected without decomposable vectors."""
    span = induced_subspace(InducedKind.W2U3_V5, u3=_u3_vectors(u3), v5=exterior.as_kvector(f, dual=True)).span
    witness = subspace_intersect(_space(A), span)
    return IsotropicMembership(witness.dim, witness)


@dataclass(frozen=True)
class FiberSamples:
    a0: KVector
    kernel: KVector
    samples: tuple
    memberships: tuple
    tangent_dimension: int


def _isotropic_tangent_dimension(form, u):
    """dim of the tangent space at U of the κ-isotropic 3-spaces, inside Hom(U, V₅/U)."""
    complement = []
    current = Subspace.span(u, 5)
    for i in range(5):
        e = [QQ.one if j == i else QQ.zero for j in range(5)]
        if not current.contains(e):
            complement.append(e)
            current = current + Subspace.span([e], 5)
    # unknowns X[i][s]: φ(u_i) = Σ_s X[i][s] c_s
    equations = []
    for i, j in combinations(range(3), 2):
        row = [QQ.zero] * 6
        for s, c in enumerate(complement):
            row[2 * i + s] += form.value(c, u[j])
            row[2 * j + s] += form.value(u[i], c)
        equations.append(row)
    return 6 - rank(equations)


def prz2_fiber_samples(A, f, count, rng):
    """
    Sample the κ_{a₀}-isotropic 3-spaces U₃ ⊂ V₅ in the ℓ = 1 regime

    Each sample contains ker κ_{a₀}; each must have isotropic membership ≥ 1.
    The tangent dimension at the first sample measures the family dimension.

    Raises:
        StratumError: If ℓ ≠ 1
        DecomposableVectorError: If κ_{a₀} does not have rank 4
    """
    report = y_dual_stratum(A, f)
    if report.ell != 1:
        raise StratumError(f"Fiber sampling needs ℓ = 1, got {report.ell}")
    v5basis = exterior.hyperplane_basis(f)
    a0 = KVector(3, report.witness.rows[0])
    form = exterior.two_form_of_trivector(a0, v5basis)
    if form.rank() != 4:
        raise DecomposableVectorError(f"κ_a₀ has rank {form.rank()}, expected 4")
    k0 = list(form.kernel().rows[0])
    samples, memberships, local = [], [], []
    while len(samples) < count:
        w1 = random_int_vector(rng, 5, nonzero=True)
        orthogonal = rank_kernel([[form.value(w1, e) for e in _unit_vectors(5)]])[1]
        w2 = orthogonal.combination(random_int_vector(rng, orthogonal.dim, nonzero=True))
        u = [k0, [to_scalar(x) for x in w1], w2]
        if Subspace.span(u, 5).dim != 3:
            continue
        u3 = [form.to_v6(x) for x in u]
        samples.append(tuple(KVector.vector(x) for x in u3))
        memberships.append(isotropic_locus_membership(A, f, u3).k)
        local.append(u)
    tangent = _isotropic_tangent_dimension(form, local[0]) if local else 0
    return FiberSamples(a0, KVector.vector(form.to_v6(k0)), tuple(samples), tuple(memberships), tangent)


def _unit_vectors(n):
    return [[QQ.one if i == j else QQ.zero for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class HatPoint:
    """A point (a, v, f) with a ∈ A ∩ v∧⋀²V₆ ∩ ⋀³ker f."""

    a: KVector
    v: KVector
    f: KVector

    def validate(self, A):
        if not _space(A).contains(list(self.a.coords)):
            raise HatPointError("a is not in A")
        if not exterior.wedge(self.v, self.a).is_zero():
            raise HatPointError("v∧a ≠ 0")
        if exterior.pairing(self.v, self.f):
            raise HatPointError("f(v) ≠ 0")
        if not exterior.contraction(self.f, self.a).is_zero():
            raise HatPointError("a is not in ⋀³ker f")
        return True


@dataclass(frozen=True)
class ContactReport:
    points: tuple
    dual_strata: tuple
    skipped: int


def _solve_xi(v, a):
    xi = solve_linear(exterior.wedge_map_matrix(v, grade=2), list(a.coords))
    if xi is None:
        raise MathematicalFailure("Witness trivector is not divisible by v")
    return KVector(2, tuple(xi))


def contact_hyperplanes(A, v, rng, samples=5):
    """
    Covectors f = v∧ξ∧ξ for ξ in the pencil with A ∩ F_v = v∧⟨ξ₁, ξ₂⟩

    Members whose covector vanishes are skipped and counted.

    Raises:
        StratumError: If y_stratum(A, v) ≠ 2
    """
    v = exterior.as_kvector(v)
    report = y_stratum(A, v)
    if report.ell != 2:
        raise StratumError(f"Contact hyperplanes need y_stratum = 2, got {report.ell}")
    witnesses = [KVector(3, row) for row in report.witness.rows]
    xis = [_solve_xi(v, a) for a in witnesses]
    points, strata, skipped = [], [], 0
    while len(points) < samples:
        coefficients = random_int_vector(rng, 2, nonzero=True)
        xi = exterior.combine(xis, coefficients)
        a = exterior.wedge(v, xi)
        f = exterior.five_vector_to_covector(exterior.wedge(a, xi))
        if f.is_zero() or a.is_zero():
            skipped += 1
            if skipped > 10 * samples:
                raise MathematicalFailure("Every sampled contact covector vanishes")
            continue
        point = HatPoint(a, v, f)
        point.validate(A)
        ell = y_dual_stratum(A, f).ell
        if ell < 1:
            raise MathematicalFailure("Contact hyperplane lies off Y_{A⊥}")
        points.append(point)
        strata.append(ell)
    return ContactReport(tuple(points), tuple(strata), skipped)


@dataclass(frozen=True)
class JointWitness:
    """Parameter t of B + ⟨a₁, a₂⟩ on the pencil and y_stratum at t and elsewhere."""

    t: object
    ell_at_t: int
    others: dict


def _pencil_end(pencil, plane):
    lifts = [pencil.reduction.lift(row) for row in plane.rows]
    return pencil.B + Subspace.span(lifts, pencil.B.ambient)


def joint_stratum_witness(pencil, v, rng, samples=5):
    """
    Locate the member A(t) with v ∈ Y^{≥2}_{A(t)}

    A(t) = B + ⟨a₁, a₂⟩ where a_i spans A_i ∩ F_v.

    Raises:
        JointStratumError: If B ∩ F_v ≠ 0 or a₁, a₂ are dependent modulo B
        StratumError: If v ∉ Y_{A₁} ∩ Y_{A₂}
    """
    if not isinstance(pencil, LagrangianPencil):
        raise EpwLabInputError("joint_stratum_witness needs a LagrangianPencil")
    v = exterior.as_kvector(v)
    f_v = induced_subspace(InducedKind.F_V, v=v).span
    if subspace_intersect(pencil.B, f_v).dim:
        raise JointStratumError("v ∈ Y_B: the witness member is not unique")
    generators = []
    for plane in (pencil.first, pencil.second):
        report = y_stratum(_pencil_end(pencil, plane), v)
        if report.ell < 1:
            raise StratumError("v is not in Y_{A_i} for both ends of the pencil")
        generators.append(list(report.witness.rows[0]))
    joint = pencil.B + Subspace.span(generators, pencil.B.ambient)
    if joint.dim != pencil.B.dim + 2:
        raise JointStratumError("a₁, a₂ are dependent modulo B")
    if not is_lagrangian(joint):
        raise MathematicalFailure("B + ⟨a₁, a₂⟩ is not Lagrangian")
    t = pencil.parameter_of(joint)
    member = pencil.member(t)
    if member != joint:
        raise MathematicalFailure("Pencil member at the located parameter differs from B + ⟨a₁, a₂⟩")
    ell = y_stratum(member, v).ell
    if ell < 2:
        raise MathematicalFailure(f"y_stratum at the joint member is {ell}, expected ≥ 2")
    others = {}
    while len(others) < samples:
        s = to_scalar(rng.randint(-50, 50))
        if s == t or s in others:
            continue
        others[s] = y_stratum(pencil.member(s), v).ell
    return JointWitness(t, ell, others)


@dataclass(frozen=True)
class BoundSample:
    max_y: int
    max_z: int
    max_z_in_v5: int | None
    points: int
    spaces: int
    constructed: int = 0


def _isotropic_three_space(form, rng):
    """Random 3-space of V₅ on which the skew form vanishes, in V₆ coordinates."""
    chosen = []
    while len(chosen) < 3:
        rows = [[sum((u[i] * form.matrix[i][j] for i in range(5)), QQ.zero) for j in range(5)] for u in chosen]
        room = rank_kernel(rows)[1] if rows else Subspace.full(5)
        x = room.combination(random_int_vector(rng, room.dim, nonzero=True))
        if rank(chosen + [x]) == len(chosen) + 1:
            chosen.append(x)
    return [form.to_v6(u) for u in chosen]


def constructed_u3_candidates(A, rng, covectors, per_hyperplane=2):
    """
    3-spaces U₃ ⊂ ker g with A ∩ ⋀²U₃∧V₆ ≠ 0, one batch per covector g

    For a ∈ ⋀³ker g, a lies in ⋀²U₃∧ker g exactly when κ_a vanishes on U₃,
    so an isotropic 3-space of κ_a for a ∈ A ∩ ⋀³ker g is a point of Z_A.
    Covectors with A ∩ ⋀³ker g = 0 contribute nothing.
    """
    candidates = []
    for g in covectors:
        report = y_dual_stratum(A, g)
        if report.ell == 0:
            continue
        v5basis = exterior.hyperplane_basis(g)
        basis = [KVector(3, row) for row in report.witness.rows]
        for _ in range(per_hyperplane):
            a = exterior.combine(basis, random_int_vector(rng, len(basis), nonzero=True))
            if not a.is_zero():
                candidates.append(_isotropic_three_space(exterior.two_form_of_trivector(a, v5basis), rng))
    return candidates


def sample_stratum_bounds(A, rng, points=40, spaces=40, f=None, candidates=()):
    """
    Sampled check of Y^{≥4}_A = ∅ and Z^{≥5}_A = ∅

    Random U₃ are joined by constructed ones (isotropic spaces of κ_a over
    the coordinate hyperplanes and ker f) and by the given candidates. When
    f is given and A ∩ ⋀³ker f = 0, every 3-space inside ker f must also
    stay below z_stratum 4.

    Raises:
        StratumBoundViolation: On any violation
    """
    max_y = max(y_stratum(A, random_int_vector(rng, 6, nonzero=True)).ell for _ in range(points))
    covectors = [KVector.basis(i, dual=True) for i in range(6)]
    if f is not None:
        covectors.insert(0, exterior.as_kvector(f, dual=True))
    hyperplanes = {}
    for g in covectors:
        hyperplanes.setdefault(g.coords, g)
    constructed = constructed_u3_candidates(A, rng, list(hyperplanes.values()))
    constructed += [[list(exterior.as_kvector(u).coords) for u in u3] for u3 in candidates]
    max_z = max((z_stratum(A, u3).ell for u3 in constructed), default=0)
    for _ in range(spaces):
        u3 = [random_int_vector(rng, 6) for _ in range(3)]
        if rank(u3) == 3:
            max_z = max(max_z, z_stratum(A, u3).ell)
    if max_y > STRATUM_BOUND["Y"] or max_z > STRATUM_BOUND["Z"]:
        raise StratumBoundViolation(f"Sampled strata exceed bounds: y {max_y}, z {max_z}")
    max_in_v5 = None
    if f is not None and y_dual_stratum(A, f).ell == 0:
        v5basis = exterior.hyperplane_basis(f)
        v5 = Subspace.span(v5basis, exterior.DIM)
        inside = [u3 for u3 in constructed if all(v5.contains(u) for u in u3)]
        for _ in range(spaces):
            u3 = [exterior.combine([KVector.vector(b) for b in v5basis], random_int_vector(rng, 5))
                  for _ in range(3)]
            if exterior.span_dimension(u3) == 3:
                inside.append(u3)
        max_in_v5 = max(z_stratum(A, u3).ell for u3 in inside) if inside else 0
        if max_in_v5 >= 4:
            raise StratumBoundViolation("z_stratum 4 attained by U₃ ⊂ V₅ although A ∩ ⋀³V₅ = 0")
    return BoundSample(max_y, max_z, max_in_v5, points, spaces, len(constructed))
