# Copyright (c) 2025, EPW Lab contributors
# See license.txt

import copy
import unittest
from unittest import mock

from epwlab.exceptions import EpwLabInputError
from epwlab.modules.pushforwards import (
    PushforwardRangeError,
    TableMismatchError,
    assemble_pushforward,
    verify_prop_a1,
    verify_prop_a2,
    verify_pushforward,
)
from epwlab.utils.fixtures import load_fixture


class TestLines(unittest.TestCase):
    def test_range_matches_table(self):
        for m in range(3, 7):
            self.assertTrue(verify_prop_a1(m).matches, m)

    def test_smallest_ambient_rank(self):
        report = verify_prop_a1(3)
        self.assertEqual(report.by_degree(), {0: ["L det E*", "O"], -1: ["L^2 det E", "L^3 det^2"]})
        self.assertEqual(report.rank_by_degree(), {0: 4, -1: 4})
        kinds = sorted((c.source, c.kind) for c in report.connecting)
        self.assertEqual(kinds, [("L^2 det E", "alpha1"), ("L^3 det^2", "det alpha1")])

    def test_stable_range(self):
        self.assertEqual(verify_prop_a1(4).by_degree(), {0: ["L^2 det", "O"]})
        self.assertEqual(verify_prop_a1(6).by_degree(), {0: ["O"]})
        self.assertEqual(assemble_pushforward(2, 6)[0].label, "O")

    def test_below_range(self):
        with self.assertRaises(PushforwardRangeError):
            verify_prop_a1(2)


class TestPlanes(unittest.TestCase):
    def test_range_matches_table(self):
        for m in range(4, 8):
            self.assertTrue(verify_prop_a2(m).matches, m)

    def test_four_degrees_at_smallest_rank(self):
        report = verify_prop_a2(4)
        self.assertEqual(sorted(report.by_degree()), [-3, -2, -1, 0])
        self.assertEqual(report.by_degree()[0], ["L W2E", "O"])
        self.assertTrue(report.note)
        maps = {c.kind: c for c in report.connecting}
        self.assertEqual(sorted(maps), ["alpha0", "alpha1"])
        self.assertEqual((maps["alpha1"].source, maps["alpha1"].target), ("L^2 det adj", "L W2E"))
        self.assertEqual((maps["alpha1"].rank, maps["alpha1"].cokernel), (15, "C2"))
        self.assertEqual((maps["alpha0"].source, maps["alpha0"].target), ("L^3 det^2 S2E*", "O"))
        self.assertEqual((maps["alpha0"].rank, maps["alpha0"].cokernel), (10, "O_D2"))

    def test_missing_connecting_map_is_a_mismatch(self):
        table = copy.deepcopy(load_fixture("planes_pushforward"))
        del table["connecting"]["4"]
        with mock.patch("epwlab.modules.pushforwards.load_fixture", return_value=table):
            report = verify_prop_a2(4, strict=False)
        self.assertFalse(report.matches)
        self.assertIn("connecting maps", report.mismatches[0])

    def test_connecting_maps(self):
        report = verify_prop_a2(5)
        self.assertEqual({c.target: c.rank for c in report.connecting}, {"L^2 det E*": 5, "O": 1})
        self.assertEqual(report.as_dict()["pushforward"]["-1"], ["L^3 det E", "L^5 det^2"])
        self.assertEqual(verify_prop_a2(6).by_degree(), {0: ["L^3 det", "O"]})

    def test_below_range(self):
        with self.assertRaises(PushforwardRangeError):
            verify_prop_a2(3)


class TestTableComparison(unittest.TestCase):
    def test_unknown_table(self):
        with self.assertRaises(EpwLabInputError):
            verify_pushforward("a3", 4)

    def test_tampered_table(self):
        table = copy.deepcopy(load_fixture("lines_pushforward"))
        table["pushforward"]["4"]["0"] = ["O"]
        with mock.patch("epwlab.modules.pushforwards.load_fixture", return_value=table):
            with self.assertRaises(TableMismatchError):
                verify_prop_a1(4)
            report = verify_prop_a1(4, strict=False)
        self.assertFalse(report.matches)
        self.assertIn("assembled", report.mismatches[0])
