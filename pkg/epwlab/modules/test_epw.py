# Copyright (c) 2025, EPW Lab contributors
# See license.txt

import unittest
from unittest import mock

from epwlab.exceptions import EpwLabInputError
from epwlab.modules import exterior
from epwlab.modules.epw import (
    JointStratumError,
    StratumError,
    constructed_u3_candidates,
    contact_hyperplanes,
    degree_probe,
    isotropic_locus_membership,
    joint_stratum_witness,
    kernel_locus,
    prz2_fiber_samples,
    sample_stratum_bounds,
    y_dual_stratum,
    y_stratum,
    z_stratum,
    z_stratum_by_contraction,
)
from epwlab.modules.exterior import InducedKind, KVector, induced_subspace, wedge
from epwlab.modules.lagrangian import (
    STANDARD_V5,
    TRIVECTORS,
    extend_isotropic_to_lagrangian,
    from_graph,
    lagrangian_pencil,
    plant_joint_pair,
    plant_y2,
    plant_z1,
    random_graph_lagrangian,
    random_symmetric,
)
from epwlab.modules.linalg import Subspace
from epwlab.utils.rng import make_rng, random_int_vector

V5 = [[1 if i == j else 0 for j in range(6)] for i in range(5)]
E = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
WEDGE3_V5 = induced_subspace(InducedKind.WEDGE3_V5, v5=V5).span
A0 = wedge(KVector.basis(0), KVector.basis(1, 2) + KVector.basis(3, 4))


def with_planted_generator(seed):
    """A Lagrangian with A ∩ ⋀³V₅ = ⟨e₀∧(e₁∧e₂ + e₃∧e₄)⟩."""
    rng = make_rng(seed, "planted-a0")
    while True:
        data = extend_isotropic_to_lagrangian(Subspace.span([list(A0.coords)], TRIVECTORS), rng, v5=STANDARD_V5)
        if data.ell == 1:
            return data


class TestPointwiseStrata(unittest.TestCase):
    def test_y_stratum_on_wedge3_v5(self):
        self.assertEqual(y_stratum(WEDGE3_V5, E[0]).ell, 6)
        self.assertTrue(y_stratum(WEDGE3_V5, E[0]).flagged)
        self.assertEqual(y_stratum(WEDGE3_V5, E[5]).ell, 0)

    def test_y_stratum_is_scale_invariant(self):
        data = plant_y2(E[1], make_rng(1, "plant"))
        report = y_stratum(data, E[1])
        self.assertGreaterEqual(report.ell, 2)
        self.assertEqual(y_stratum(data, [0, -3, 0, 0, 0, 0]).ell, report.ell)

    def test_zero_vector(self):
        with self.assertRaises(exterior.ZeroVectorError):
            y_stratum(WEDGE3_V5, [0] * 6)

    def test_y_dual_stratum(self):
        rng = make_rng(2, "dual")
        self.assertEqual(y_dual_stratum(from_graph(random_symmetric(rng, 9)), STANDARD_V5).ell, 1)
        degenerate = y_dual_stratum(WEDGE3_V5, STANDARD_V5)
        self.assertEqual(degenerate.ell, 10)
        self.assertTrue(degenerate.flagged)
        generic = random_graph_lagrangian(rng, 0)
        self.assertEqual(y_dual_stratum(generic, random_int_vector(rng, 6, nonzero=True)).ell, 0)

    def test_z_stratum(self):
        report = z_stratum(WEDGE3_V5, V5[:3])
        self.assertEqual(report.ell, 7)
        self.assertTrue(report.flagged)
        rng = make_rng(3, "z")
        u3 = [random_int_vector(rng, 6) for _ in range(3)]
        self.assertGreaterEqual(z_stratum(plant_z1(u3, rng), u3).ell, 1)
        generic = random_graph_lagrangian(rng, 0)
        self.assertEqual(z_stratum(generic, [random_int_vector(rng, 6) for _ in range(3)]).ell, 0)

    def test_z_formulations_agree(self):
        rng = make_rng(4, "z-agree")
        data = plant_z1(V5[:3], rng)
        samples = [V5[:3]] + [[random_int_vector(rng, 6) for _ in range(3)] for _ in range(5)]
        for u3 in samples:
            self.assertEqual(z_stratum(data, u3).ell, z_stratum_by_contraction(data, u3).ell)

    def test_z_needs_three_dimensions(self):
        with self.assertRaises(StratumError):
            z_stratum(WEDGE3_V5, [V5[0], V5[1], V5[0]])


class TestDegreeProbe(unittest.TestCase):
    def setUp(self):
        self.data = random_graph_lagrangian(make_rng(5, "probe"), 0)

    def test_y_has_degree_six(self):
        result = degree_probe(self.data, "Y", make_rng(5, "line-y"))
        self.assertEqual(result.degree, 6)
        self.assertEqual(result.expected, 6)
        self.assertGreaterEqual(result.minors_used, 10)
        self.assertEqual(set(result.modular_degrees.values()), {6})
        self.assertTrue(result.modular_agreement)

    def test_y_dual_has_degree_six(self):
        result = degree_probe(self.data, "Ydual", make_rng(5, "line-yd"))
        self.assertEqual(result.degree, 6)
        self.assertEqual(set(result.modular_degrees.values()), {6})
        self.assertTrue(result.modular_agreement)

    def test_z_has_degree_four(self):
        result = degree_probe(self.data, "Z", make_rng(5, "line-z"))
        self.assertEqual(result.degree, 4)
        self.assertEqual(set(result.modular_degrees.values()), {4})
        self.assertTrue(result.modular_agreement)

    def test_random_lines_have_simple_roots(self):
        for which, seed in (("Y", "simple-y"), ("Ydual", "simple-yd")):
            result = degree_probe(self.data, which, make_rng(5, seed))
            self.assertEqual(result.degree, 6)
            self.assertTrue(result.squarefree)
            self.assertIsNone(result.multiplicity_at_zero)

    def test_ell_one_degrees(self):
        data = random_graph_lagrangian(make_rng(8, "ell-one"), 1)
        self.assertEqual(y_dual_stratum(data, STANDARD_V5).ell, 1)
        for which, expected in (("Y", 6), ("Ydual", 6), ("Z", 4)):
            result = degree_probe(data, which, make_rng(8, f"line-{which}"))
            self.assertEqual(result.degree, expected)
            self.assertTrue(result.modular_agreement)

    def test_modular_disagreement_is_flagged(self):
        with mock.patch("epwlab.modules.epw.gcd_degree_mod", return_value=5):
            with self.assertLogs("epwlab.modules.epw", level="WARNING") as logs:
                result = degree_probe(self.data, "Y", make_rng(5, "line-y"))
        self.assertEqual(result.degree, 6)
        self.assertFalse(result.modular_agreement)
        self.assertTrue(any("differs modulo" in line for line in logs.output))

    def test_singular_point_has_double_root(self):
        v = [1, 2, 0, -1, 3, 1]
        data = plant_y2(v, make_rng(6, "singular"))
        result = degree_probe(data, "Y", make_rng(6, "line"), through=v)
        self.assertGreaterEqual(result.multiplicity_at_zero, 2)

    def test_unknown_kind(self):
        with self.assertRaises(EpwLabInputError):
            degree_probe(self.data, "W", make_rng(5, "bad"))


class TestKernelLocus(unittest.TestCase):
    def test_single_point(self):
        data = from_graph(random_symmetric(make_rng(7, "ell1"), 9))
        locus = kernel_locus(data, STANDARD_V5, make_rng(7, "locus"))
        self.assertEqual(locus.ell, 1)
        self.assertEqual(len(locus.points), 1)
        self.assertGreaterEqual(locus.points[0].y_ell, 1)

    def test_planted_generator_gives_e0(self):
        locus = kernel_locus(with_planted_generator(8), STANDARD_V5, make_rng(8, "locus"))
        self.assertEqual(Subspace.span([list(locus.points[0].v0.coords)]), Subspace.span([E[0]]))

    def test_conic_for_ell_two(self):
        data = from_graph(random_symmetric(make_rng(9, "ell2"), 8))
        locus = kernel_locus(data, STANDARD_V5, make_rng(9, "locus"), samples=6)
        self.assertEqual(locus.ell, 2)
        self.assertEqual(locus.span_rank, 3)
        self.assertTrue(locus.on_conic)

    def test_empty_locus(self):
        data = random_graph_lagrangian(make_rng(10, "ell0"), 0)
        with self.assertRaises(StratumError):
            kernel_locus(data, STANDARD_V5, make_rng(10, "locus"))


class TestIsotropicFamilies(unittest.TestCase):
    def setUp(self):
        self.data = with_planted_generator(11)

    def test_isotropic_u3_meets_a(self):
        self.assertGreaterEqual(isotropic_locus_membership(self.data, STANDARD_V5, [E[0], E[1], E[3]]).k, 1)

    def test_non_isotropic_u3_misses_a(self):
        membership = isotropic_locus_membership(self.data, STANDARD_V5, [E[1], E[2], E[3]])
        self.assertEqual(membership.k, 0)
        self.assertTrue(membership.within_expectation)

    def test_fiber_samples(self):
        fibers = prz2_fiber_samples(self.data, STANDARD_V5, 5, make_rng(11, "fibers"))
        self.assertEqual(len(fibers.samples), 5)
        self.assertTrue(all(k >= 1 for k in fibers.memberships))
        self.assertEqual(fibers.tangent_dimension, 3)
        self.assertEqual(Subspace.span([list(fibers.kernel.coords)]), Subspace.span([E[0]]))

    def test_fiber_samples_need_ell_one(self):
        data = random_graph_lagrangian(make_rng(11, "ell0"), 0)
        with self.assertRaises(StratumError):
            prz2_fiber_samples(data, STANDARD_V5, 1, make_rng(11, "fibers"))


class TestContactAndJoint(unittest.TestCase):
    def test_contact_hyperplanes(self):
        v = [0, 1, 1, 0, 2, -1]
        data = plant_y2(v, make_rng(12, "contact"))
        report = contact_hyperplanes(data, v, make_rng(12, "xi"))
        self.assertEqual(len(report.points), 5)
        for point, ell in zip(report.points, report.dual_strata):
            self.assertEqual(exterior.pairing(point.v, point.f), 0)
            self.assertGreaterEqual(ell, 1)
            self.assertTrue(point.validate(data))

    def test_contact_needs_stratum_two(self):
        data = random_graph_lagrangian(make_rng(12, "generic"), 0)
        with self.assertRaises(StratumError):
            contact_hyperplanes(data, E[0], make_rng(12, "xi"))

    def test_joint_witness(self):
        v = [1, 0, 2, 0, -1, 1]
        pair = plant_joint_pair(v, make_rng(13, "joint"))
        pencil = lagrangian_pencil(pair.first, pair.second)
        witness = joint_stratum_witness(pencil, v, make_rng(13, "others"), samples=3)
        self.assertGreaterEqual(witness.ell_at_t, 2)
        self.assertEqual(pencil.member(witness.t), pair.joint)
        self.assertTrue(all(ell <= 1 for ell in witness.others.values()))

    def test_joint_witness_degenerate_base(self):
        v = [1, 0, 2, 0, -1, 1]
        pair = plant_joint_pair(v, make_rng(14, "joint"), degenerate=True)
        pencil = lagrangian_pencil(pair.first, pair.second)
        with self.assertRaises(JointStratumError):
            joint_stratum_witness(pencil, v, make_rng(14, "others"))


class TestStratumBounds(unittest.TestCase):
    def test_sampled_bounds_hold(self):
        rng = make_rng(15, "bounds")
        data = random_graph_lagrangian(rng, 0)
        sample = sample_stratum_bounds(data, rng, points=10, spaces=10, f=STANDARD_V5)
        self.assertLessEqual(sample.max_y, 3)
        self.assertLessEqual(sample.max_z, 4)
        self.assertLess(sample.max_z_in_v5, 4)

    def test_constructed_spaces_meet_z(self):
        rng = make_rng(16, "constructed")
        data = random_graph_lagrangian(rng, 1)
        candidates = constructed_u3_candidates(data, rng, [STANDARD_V5])
        self.assertEqual(len(candidates), 2)
        inside = Subspace.span(V5, 6)
        for u3 in candidates:
            self.assertTrue(all(inside.contains(u) for u in u3))
            self.assertEqual(Subspace.span(u3, 6).dim, 3)
            ell = z_stratum(data, u3).ell
            self.assertGreaterEqual(ell, 1)
            self.assertEqual(ell, z_stratum_by_contraction(data, u3).ell)
        sample = sample_stratum_bounds(data, rng, points=5, spaces=5, f=STANDARD_V5)
        self.assertGreaterEqual(sample.constructed, 2)
        self.assertGreaterEqual(sample.max_z, 1)
        self.assertLessEqual(sample.max_z, 4)
        self.assertIsNone(sample.max_z_in_v5)

    def test_planted_space_inside_v5(self):
        u3 = V5[:3]
        data = plant_z1(u3, make_rng(17, "plant"))
        self.assertEqual(y_dual_stratum(data, STANDARD_V5).ell, 0)
        sample = sample_stratum_bounds(data, make_rng(17, "bounds"), points=5, spaces=5, f=STANDARD_V5,
                                       candidates=[u3])
        self.assertGreaterEqual(sample.max_z_in_v5, 1)
        self.assertLess(sample.max_z_in_v5, 4)
        self.assertGreaterEqual(sample.max_z, 1)
