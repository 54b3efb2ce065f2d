# Copyright (c) 2025, EPW Lab contributors
# See license.txt

import unittest

from sympy import QQ

from epwlab.config.settings import get_settings
from epwlab.modules.quadrics import (
    EnumerationTooLarge,
    FamilyStructure,
    QuadraticForm,
    QuadricError,
    classify_linear_families,
    cone_decomposition_holds,
    corank,
    enumerate_linear_spaces_ff,
    family_count_vs_discriminant,
    gaussian_binomial,
    growth_dimension,
    hilbert_dimension,
    split_form,
    strata_descriptor,
)


def diagonal(*values):
    return tuple(tuple(v if i == j else 0 for j in range(len(values))) for i, v in enumerate(values))


class TestForms(unittest.TestCase):
    def test_corank(self):
        self.assertEqual(corank(QuadraticForm(diagonal(1, 1, 1, 1, 1))), 0)
        self.assertEqual(corank(QuadraticForm(diagonal(0, 0, 0, 0, 0))), 5)
        self.assertEqual(corank(QuadraticForm(diagonal(1, 1, 1, 0, 0))), 2)
        self.assertEqual(QuadraticForm(diagonal(1, 1, 1, 0, 0), 3).corank(), 2)

    def test_square_class(self):
        self.assertEqual(QuadraticForm(diagonal(1, 1, 1, 2)).square_class(), 2)
        self.assertEqual(QuadraticForm(((0, 1), (1, 0))).square_class(), -1)
        self.assertEqual(QuadraticForm(diagonal("1/2", 8)).square_class(), 1)
        self.assertEqual(QuadraticForm(diagonal(1, 0)).square_class(), 0)
        self.assertEqual(QuadraticForm(diagonal(1, 1, 1, 2), 5).square_class(), -1)

    def test_rejects_bad_grids(self):
        with self.assertRaises(QuadricError):
            QuadraticForm(((0, 1), (2, 0)))
        with self.assertRaises(QuadricError):
            QuadraticForm(((1, 0),))
        with self.assertRaises(QuadricError):
            QuadraticForm(((1, "1/2"), ("1/2", 1)), 3)

    def test_from_json(self):
        form = QuadraticForm.from_json({"p": 3, "gram": [[1, 0], [0, -1]]})
        self.assertEqual(form.p, 3)
        self.assertEqual(form.entries(), ((1, 0), (0, 2)))
        self.assertIsNone(QuadraticForm.from_json({"p": "Q", "gram": [[1]]}).p)
        self.assertEqual(QuadraticForm.from_json({"gram": [[2]]}).gram, ((QQ(2),),))

    def test_characteristic_two_uses_upper_triangle(self):
        form = QuadraticForm(((0, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 0, 0)), 2)
        self.assertEqual(form.value((1, 1, 0, 0)), 1)
        self.assertEqual(form.value((1, 0, 1, 0)), 0)
        self.assertEqual(form.polar((1, 0, 0, 0), (0, 1, 0, 0)), 1)
        self.assertEqual(form.corank(), 0)


class TestDimensions(unittest.TestCase):
    def test_closed_forms(self):
        self.assertEqual(hilbert_dimension(5, 3, 1), 3)
        self.assertEqual(hilbert_dimension(4, 2, 1), 2)
        self.assertEqual(hilbert_dimension(6, 5, 2), 3)
        self.assertIsNone(hilbert_dimension(5, 5, 2))

    def test_unsupported(self):
        with self.assertRaises(QuadricError):
            hilbert_dimension(5, 5, 3)
        with self.assertRaises(QuadricError):
            hilbert_dimension(5, 6, 1)

    def test_gaussian_binomial(self):
        self.assertEqual(gaussian_binomial(4, 2, 3), 130)
        self.assertEqual(gaussian_binomial(3, 4, 3), 0)


class TestClassification(unittest.TestCase):
    def test_quoted_cases(self):
        planes = classify_linear_families(5, 1, 2)
        self.assertIs(planes.structure, FamilyStructure.TWO_FAMILIES)
        self.assertEqual((planes.dim, planes.components), (1, 2))
        self.assertEqual(planes.source, "table")
        spaces = classify_linear_families(5, 3, 3)
        self.assertEqual((spaces.structure, spaces.dim, spaces.components), (FamilyStructure.TWO_FAMILIES, 0, 2))
        rulings = classify_linear_families(4, 0, 1)
        self.assertEqual((rulings.structure, rulings.dim), (FamilyStructure.TWO_FAMILIES, 1))

    def test_fallback(self):
        planes = classify_linear_families(6, 0, 2)
        self.assertEqual(planes.source, "strata")
        self.assertEqual((planes.structure, planes.dim), (FamilyStructure.TWO_FAMILIES, 3))
        self.assertIs(strata_descriptor(3, 0, 2).structure, FamilyStructure.EMPTY)

    def test_table_agrees_with_top_stratum_rule(self):
        for (m, c, k) in [(5, 1, 2), (4, 0, 1), (5, 0, 1), (4, 1, 1), (3, 1, 1)]:
            quoted, derived = classify_linear_families(m, c, k), strata_descriptor(m, c, k)
            self.assertEqual((quoted.structure, quoted.dim), (derived.structure, derived.dim), (m, c, k))


class TestEnumeration(unittest.TestCase):
    def test_split_quadric_surface(self):
        result = enumerate_linear_spaces_ff(QuadraticForm(split_form(4, 0), 3), 1)
        self.assertEqual(result.count, 8)
        self.assertEqual(result.families, 2)
        self.assertEqual(result.order, 3)

    def test_quadric_cone(self):
        form = QuadraticForm(split_form(4, 1), 3)
        result = enumerate_linear_spaces_ff(form, 1)
        self.assertEqual(result.count, 4)
        self.assertEqual(result.families, 1)
        self.assertTrue(cone_decomposition_holds(form, result))

    def test_characteristic_two(self):
        form = QuadraticForm(((0, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 0, 0)), 2)
        result = enumerate_linear_spaces_ff(form, 1)
        self.assertEqual((result.count, result.families), (6, 2))

    def test_component_counts_match_classification(self):
        for m in (3, 4, 5):
            for c in range(0, min(3, m) + 1):
                for k in (1, 2):
                    if k + 1 > m:
                        continue
                    form = QuadraticForm(split_form(m, c), 3)
                    result = enumerate_linear_spaces_ff(form, k)
                    expected = classify_linear_families(m, c, k).components
                    self.assertEqual(result.families, expected, (m, c, k))
                    self.assertTrue(cone_decomposition_holds(form, result))

    def test_growth_matches_hilbert_dimension(self):
        self.assertEqual(growth_dimension(split_form(5, 0), 1), hilbert_dimension(5, 5, 1))
        self.assertEqual(growth_dimension(split_form(4, 1), 1), hilbert_dimension(4, 3, 1))

    def test_guard(self):
        settings = get_settings().with_overrides(max_enumeration=10)
        with self.assertRaises(EnumerationTooLarge):
            enumerate_linear_spaces_ff(QuadraticForm(split_form(4, 0), 3), 1, settings)

    def test_rational_forms_are_not_enumerated(self):
        with self.assertRaises(QuadricError):
            enumerate_linear_spaces_ff(QuadraticForm(split_form(4, 0)), 1)


class TestDiscriminant(unittest.TestCase):
    def test_split(self):
        report = family_count_vs_discriminant(QuadraticForm(diagonal(1, 1, 1, 1), 5))
        self.assertEqual(report.families, 2)
        self.assertTrue(report.square)
        self.assertTrue(report.consistent)
        self.assertTrue(family_count_vs_discriminant(QuadraticForm(diagonal(1, -1, 1, -1), 3)).consistent)

    def test_conjugate_rulings(self):
        report = family_count_vs_discriminant(QuadraticForm(diagonal(1, 1, 1, 2), 5))
        self.assertEqual(report.families, 0)
        self.assertFalse(report.square)
        self.assertEqual(report.families_over_extension, 2)
        self.assertTrue(report.consistent)

    def test_degenerate(self):
        with self.assertRaises(QuadricError):
            family_count_vs_discriminant(QuadraticForm(diagonal(1, 1, 1, 0), 5))
