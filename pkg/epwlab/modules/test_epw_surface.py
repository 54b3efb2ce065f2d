# Copyright (c) 2025, EPW Lab contributors
# See license.txt

import copy
import unittest
from unittest import mock

from sympy import QQ

from epwlab.modules.bbw import CohomologyEntry
from epwlab.modules.epw_surface import (
    CohomologyMismatchError,
    ideal_cohomology,
    quadric_section_vanishing,
    resolve,
    sextic_hilbert_polynomial,
    y2_cohomology_row,
    y2_cohomology_table,
    y2_euler_characteristic,
    y2_hilbert_polynomial,
)
from epwlab.modules.polynomials import coefficients
from epwlab.utils.fixtures import load_fixture


class TestResolve(unittest.TestCase):
    def test_cancelling_pair(self):
        entries = [CohomologyEntry(0, 0, 3), CohomologyEntry(1, 0, 3)]
        result = resolve(entries, 2)
        self.assertEqual(result.h, {0: 0, 1: 0, 2: 0})
        self.assertTrue(result.decided)

    def test_two_degrees_in_range(self):
        result = resolve([CohomologyEntry(1, 2, 1), CohomologyEntry(0, 2, 1)], 2)
        self.assertEqual(len(result.ambiguous), 1)
        self.assertFalse(result.decided)

    def test_out_of_range_must_cancel(self):
        result = resolve([CohomologyEntry(0, 4, 1)], 2)
        self.assertEqual(len(result.inconsistent), 1)


class TestSurfaceCohomology(unittest.TestCase):
    def test_table_reproduced(self):
        table = y2_cohomology_table()
        self.assertTrue(table.matches)
        self.assertEqual([row.t for row in table.rows], list(range(7)))

    def test_rows(self):
        row = y2_cohomology_row(0)
        self.assertFalse(row.ambiguous)
        self.assertEqual(row.h, (1, 0, 45))
        self.assertEqual(y2_cohomology_row(6).h, (406, 0, 0))
        self.assertEqual(y2_cohomology_row(3, (56, 10, 0)).euler, 46)

    def test_tampered_table(self):
        fixture = copy.deepcopy(load_fixture("y2_cohomology"))
        fixture["table"][1]["h"] = [7, 0, 0]
        with mock.patch("epwlab.modules.epw_surface.load_fixture", return_value=fixture):
            with self.assertRaises(CohomologyMismatchError):
                y2_cohomology_table()
            table = y2_cohomology_table(strict=False)
        self.assertFalse(table.matches)
        self.assertFalse(table.rows[1].matches)


class TestIdealSheaf(unittest.TestCase):
    def test_quadrics_and_linear_forms(self):
        two = ideal_cohomology(2)
        self.assertTrue(two.decided)
        self.assertEqual((two.h[0], two.h[1], two.h[2]), (0, 0, 15))
        one = ideal_cohomology(1)
        self.assertEqual(set(one.h.values()), {0})

    def test_no_quadric_through_surface(self):
        report = quadric_section_vanishing()
        self.assertTrue(report.passed)
        self.assertEqual(report.h0_ideal_2, 0)
        self.assertTrue(all(report.chase.values()))


class TestHilbertPolynomials(unittest.TestCase):
    def test_surface(self):
        result = y2_hilbert_polynomial()
        self.assertEqual(coefficients(result.poly), [QQ(46), QQ(-60), QQ(20)])
        self.assertEqual((result.dimension, result.degree), (2, 40))
        self.assertTrue(result.matches)
        self.assertEqual(y2_euler_characteristic(5), 246)

    def test_sextic(self):
        result = sextic_hilbert_polynomial()
        self.assertEqual((result.dimension, result.degree), (4, 6))
        self.assertTrue(result.matches)
