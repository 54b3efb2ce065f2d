# Copyright (c) 2025, EPW Lab contributors
# See license.txt

import unittest

from epwlab.modules import exterior
from epwlab.modules.exterior import InducedKind, KVector, induced_subspace
from epwlab.modules.lagrangian import (
    LAGRANGIAN_DIM,
    STANDARD_V5,
    TRIVECTORS,
    LagrangianData,
    LagrangianError,
    NotIsotropicError,
    NotSymmetricError,
    PencilError,
    ReductionError,
    dual_lagrangian,
    dual_stratum_via_annihilator,
    extend_isotropic_to_lagrangian,
    find_decomposable,
    from_graph,
    gm_dimensions,
    graph_subspace,
    hyperplane_stratum,
    is_lagrangian,
    isotropic_reduction,
    lagrangian_pencil,
    plant_joint_pair,
    plant_y2,
    random_graph_lagrangian,
    random_symmetric,
    symplectic_complement,
)
from epwlab.modules.linalg import Subspace, subspace_intersect, to_scalar
from epwlab.utils.rng import make_rng, random_int_vector

V5 = [[1 if i == j else 0 for j in range(6)] for i in range(5)]
WEDGE3_V5 = induced_subspace(InducedKind.WEDGE3_V5, v5=V5).span
ZERO = [[0] * 10 for _ in range(10)]


def rank_two_update(q, rng):
    r, s = random_int_vector(rng, 10, nonzero=True), random_int_vector(rng, 10, nonzero=True)
    return [[q[i][j] + r[i] * r[j] + s[i] * s[j] for j in range(10)] for i in range(10)]


class TestGraphGenerator(unittest.TestCase):
    def test_zero_graph_is_wedge3_v5(self):
        data = from_graph(ZERO)
        self.assertEqual(data.A, WEDGE3_V5)
        self.assertEqual(data.ell, 10)

    def test_ell_is_kernel_dimension(self):
        rng = make_rng(1, "graph")
        for ell in (0, 1, 2, 3):
            data = random_graph_lagrangian(rng, ell)
            self.assertTrue(is_lagrangian(data.A).ok)
            self.assertEqual(data.ell, ell)
            self.assertEqual(hyperplane_stratum(data.A, STANDARD_V5), ell)

    def test_asymmetric_graph(self):
        q = [row[:] for row in ZERO]
        q[0][1] = 1
        with self.assertRaises(NotSymmetricError):
            from_graph(q)
        self.assertFalse(is_lagrangian(graph_subspace(q)).ok)

    def test_custom_hyperplane(self):
        rng = make_rng(1, "hyperplane")
        basis = [random_int_vector(rng, 6) for _ in range(5)]
        data = from_graph(random_symmetric(rng, 9), v5basis=basis)
        self.assertTrue(is_lagrangian(data.A).ok)
        self.assertEqual(data.ell, 1)

    def test_cached_ell_is_rechecked(self):
        with self.assertRaises(LagrangianError):
            LagrangianData(WEDGE3_V5, STANDARD_V5, ell=3)

    def test_gm_dimensions(self):
        data = random_graph_lagrangian(make_rng(2, "gm"), 1)
        self.assertEqual(gm_dimensions(data), {"ordinary": 4, "special": 5})
        with self.assertRaises(LagrangianError):
            gm_dimensions(from_graph(ZERO))


class TestIsLagrangian(unittest.TestCase):
    def test_standard_examples(self):
        self.assertTrue(is_lagrangian(WEDGE3_V5).ok)
        self.assertTrue(is_lagrangian(induced_subspace(InducedKind.F_V, v=V5[0]).span).ok)

    def test_witness(self):
        rng = make_rng(3, "witness")
        rows = [list(KVector.basis(0, 1, 2).coords), list(KVector.basis(3, 4, 5).coords)]
        rows += [random_int_vector(rng, TRIVECTORS) for _ in range(8)]
        check = is_lagrangian(Subspace.span(rows, TRIVECTORS))
        self.assertFalse(check)
        i, j = check.witness
        space = Subspace.span(rows, TRIVECTORS)
        self.assertNotEqual(exterior.omega(space.rows[i], space.rows[j]), 0)


class TestExtension(unittest.TestCase):
    def test_from_zero(self):
        data = extend_isotropic_to_lagrangian(Subspace.zero(TRIVECTORS), make_rng(4, "zero"))
        self.assertTrue(is_lagrangian(data.A).ok)

    def test_fixed_point(self):
        data = extend_isotropic_to_lagrangian(WEDGE3_V5, make_rng(4, "fixed"))
        self.assertEqual(data.A, WEDGE3_V5)

    def test_planted_contains_seed(self):
        data = plant_y2(V5[0], make_rng(4, "plant"))
        f_v = induced_subspace(InducedKind.F_V, v=V5[0]).span
        self.assertGreaterEqual(subspace_intersect(data.A, f_v).dim, 2)

    def test_rejects_non_isotropic(self):
        s = Subspace.span([list(KVector.basis(0, 1, 2).coords), list(KVector.basis(3, 4, 5).coords)])
        with self.assertRaises(NotIsotropicError):
            extend_isotropic_to_lagrangian(s, make_rng(4, "bad"))


class TestFindDecomposable(unittest.TestCase):
    def test_found_immediately(self):
        for A in (WEDGE3_V5, induced_subspace(InducedKind.F_V, v=V5[0]).span):
            search = find_decomposable(A, budget=1)
            self.assertTrue(search.found)
            self.assertTrue(exterior.decomposable_rank(search.vector).decomposable)
            self.assertEqual(search.pencils_tried, 0)

    def test_generic_graph_reports_a_miss(self):
        rng = make_rng(5, "generic")
        data = random_graph_lagrangian(rng, 0)
        search = find_decomposable(data.A, budget=2, rng=rng)
        self.assertFalse(search.found)
        self.assertEqual(search.message, "none found within budget 2")


class TestDuality(unittest.TestCase):
    def test_annihilator_of_wedge3_v5(self):
        expected = Subspace.span(
            [list(KVector.basis(*s, dual=True).coords) for s in exterior.basis_index(3) if 5 in s],
            TRIVECTORS,
        )
        self.assertEqual(dual_lagrangian(WEDGE3_V5), expected)

    def test_involution(self):
        data = random_graph_lagrangian(make_rng(6, "dual"), 2)
        self.assertEqual(dual_lagrangian(dual_lagrangian(data.A)), data.A)

    def test_strata_agree(self):
        data = random_graph_lagrangian(make_rng(6, "strata"), 2)
        self.assertEqual(dual_stratum_via_annihilator(data.A, STANDARD_V5), 2)


class TestIsotropicReduction(unittest.TestCase):
    def setUp(self):
        self.data = random_graph_lagrangian(make_rng(7, "reduction"), 0)

    def test_trivial_and_full(self):
        reduction, image = isotropic_reduction(self.data.A, Subspace.zero(TRIVECTORS))
        self.assertEqual(reduction.dim, TRIVECTORS)
        self.assertEqual(image.dim, LAGRANGIAN_DIM)
        reduction, image = isotropic_reduction(self.data.A, self.data.A)
        self.assertEqual((reduction.dim, image.dim), (0, 0))

    def test_reductions_are_lagrangian(self):
        for k in (1, 4, 8):
            B = Subspace.span(self.data.A.basis()[:k], TRIVECTORS)
            reduction, image = isotropic_reduction(self.data.A, B)
            self.assertEqual(reduction.dim, TRIVECTORS - 2 * k)
            self.assertTrue(reduction.is_lagrangian(image))

    def test_base_outside(self):
        with self.assertRaises(ReductionError):
            isotropic_reduction(self.data.A, Subspace.span([list(KVector.basis(0, 1, 5).coords)]))


class TestPencil(unittest.TestCase):
    def setUp(self):
        rng = make_rng(8, "pencil")
        q = random_symmetric(rng, 10)
        self.first = from_graph(q)
        self.second = from_graph(rank_two_update(q, rng))
        self.pencil = lagrangian_pencil(self.first, self.second)

    def test_members_are_lagrangian(self):
        self.assertEqual(self.pencil.B.dim, 8)
        for t in (0, 1, -1, "1/2", None):
            member = self.pencil.member(t)
            self.assertTrue(is_lagrangian(member).ok)
            self.assertEqual(self.pencil.parameter_of(member), None if t is None else to_scalar(t))

    def test_members_meet_in_the_base(self):
        for s, t in ((0, 1), (2, None), (-1, "3/2")):
            meet = subspace_intersect(self.pencil.member(s), self.pencil.member(t))
            self.assertEqual(meet, self.pencil.B)

    def test_needs_codimension_two(self):
        with self.assertRaises(PencilError):
            lagrangian_pencil(self.first, self.first)

    def test_joint_pair(self):
        pair = plant_joint_pair(V5[0], make_rng(8, "joint"))
        pencil = lagrangian_pencil(pair.first, pair.second)
        self.assertTrue(is_lagrangian(pair.joint).ok)
        self.assertTrue(pair.joint.contains_subspace(pencil.B))
        f_v = induced_subspace(InducedKind.F_V, v=V5[0]).span
        self.assertEqual(subspace_intersect(pencil.B, f_v).dim, 0)


class TestSymplecticComplement(unittest.TestCase):
    def test_lagrangians_are_their_own_complement(self):
        self.assertEqual(symplectic_complement(WEDGE3_V5), WEDGE3_V5)
        f_v = induced_subspace(InducedKind.F_V, v=V5[2]).span
        self.assertEqual(symplectic_complement(f_v), f_v)

    def test_dimensions(self):
        self.assertEqual(symplectic_complement(Subspace.zero(TRIVECTORS)).dim, TRIVECTORS)
        rng = make_rng(8, "complement")
        S = Subspace.span([random_int_vector(rng, TRIVECTORS, nonzero=True) for _ in range(3)], TRIVECTORS)
        self.assertEqual(symplectic_complement(S).dim, TRIVECTORS - S.dim)
