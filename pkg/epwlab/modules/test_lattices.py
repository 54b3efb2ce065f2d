# Copyright (c) 2025, EPW Lab contributors
# See license.txt

import unittest

from epwlab.modules.lattices import (
    DegenerateLatticeError,
    IntegerLattice,
    IsometryError,
    LatticeError,
    UNIQUENESS_NOTE,
    catalog,
    characteristic_orthogonal_evenness,
    e8,
    gm_embedding_report,
    invariants,
    is_characteristic,
    make_lattice,
    signature,
    stable_orthogonal_member,
)
from epwlab.modules.normalforms import identity, int_mat_mul
from epwlab.utils.rng import make_rng


def random_unimodular(rng, n, steps=12):
    g = identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        g = [row[:] for row in g]
        for row in g:
            row[i] += c * row[j]
    return g


def change_basis(lattice, g):
    transposed = [list(col) for col in zip(*g)]
    return IntegerLattice(tuple(map(tuple, int_mat_mul(int_mat_mul(transposed, lattice.gram), g))))


class TestConstruction(unittest.TestCase):
    def test_named_atoms(self):
        self.assertEqual(make_lattice("U").gram, ((0, 1), (1, 0)))
        self.assertEqual(make_lattice("I_{2,0}(2)").gram, ((2, 0), (0, 2)))
        self.assertEqual(make_lattice("Gamma6").rank, 24)
        self.assertEqual(make_lattice("Lambda").rank, 22)
        self.assertEqual(make_lattice("E8 ⊕ U").rank, 10)

    def test_e8_is_even_unimodular(self):
        self.assertEqual(e8().determinant(), 1)
        self.assertEqual(invariants(e8()).as_dict(), {
            "rank": 8, "signature": [8, 0], "parity": "even", "unimodular": True, "discriminant_group": [],
        })

    def test_malformed(self):
        with self.assertRaises(LatticeError):
            make_lattice("E7")
        with self.assertRaises(LatticeError):
            make_lattice("")
        with self.assertRaises(DegenerateLatticeError):
            IntegerLattice(((1, 1), (1, 1)))
        with self.assertRaises(LatticeError):
            IntegerLattice(((1, 2), (0, 1)))


class TestInvariants(unittest.TestCase):
    def test_named_lattices(self):
        lam = invariants(make_lattice("Lambda"))
        self.assertEqual((lam.rank, lam.signature, lam.even, lam.unimodular, lam.discriminant),
                         (22, (20, 2), True, False, (2, 2)))
        gamma4 = invariants(make_lattice("Gamma4"))
        self.assertEqual((gamma4.rank, gamma4.signature, gamma4.even, gamma4.unimodular, gamma4.discriminant),
                         (24, (22, 2), False, True, ()))
        gamma6 = invariants(make_lattice("Gamma6"))
        self.assertEqual((gamma6.signature, gamma6.even, gamma6.unimodular), ((4, 20), True, True))

    def test_rescaling(self):
        u = make_lattice("U")
        self.assertEqual(signature(u.rescale(3)), (1, 1))
        self.assertEqual(invariants(u.rescale(3)).discriminant, (3, 3))
        self.assertEqual(signature(e8().rescale(-1)), (0, 8))
        self.assertEqual(e8().rescale(-1).name, "E8(-1)")

    def test_unimodular_change_of_basis(self):
        rng = make_rng(1, "lattice-basis")
        for name in ("U", "E8", "I_{2,0}(2)", "Lambda"):
            lattice = make_lattice(name)
            for _ in range(3):
                moved = change_basis(lattice, random_unimodular(rng, lattice.rank))
                self.assertEqual(invariants(moved), invariants(lattice), name)

    def test_catalog(self):
        table = catalog()
        self.assertEqual(set(table), {"U", "E8", "I_{2,0}(2)", "Gamma4", "Gamma6", "Lambda"})
        self.assertEqual(table["I_{2,0}(2)"]["discriminant_group"], [2, 2])


class TestCharacteristic(unittest.TestCase):
    def test_examples(self):
        gamma4 = make_lattice("Gamma4")
        self.assertTrue(is_characteristic([1] * 22 + [3, 3], gamma4))
        self.assertFalse(is_characteristic([1, 1] + [0] * 22, gamma4))
        self.assertTrue(is_characteristic([0] * 8, e8()))

    def test_orthogonal_vectors_are_even(self):
        report = gm_embedding_report(4)
        gamma4 = make_lattice("Gamma4")
        total = [a + b for a, b in zip(report.e1, report.e2)]
        rng = make_rng(2, "even")
        vectors = []
        for _ in range(20):
            coefficients = [rng.randint(-3, 3) for _ in report.complement_basis]
            vectors.append([sum(c * b[i] for c, b in zip(coefficients, report.complement_basis)) for i in range(24)])
        self.assertTrue(characteristic_orthogonal_evenness(gamma4, total, vectors))


class TestEmbeddings(unittest.TestCase):
    def test_sixfold(self):
        report = gm_embedding_report(6)
        self.assertEqual(report.gram_e, ((2, 0), (0, 2)))
        self.assertEqual(report.complement.signature, (2, 20))
        self.assertEqual(report.complement.discriminant, (2, 2))
        self.assertTrue(report.complement.even)
        self.assertTrue(report.isometry)
        self.assertTrue(report.passed)

    def test_fourfold(self):
        report = gm_embedding_report(4)
        self.assertTrue(report.characteristic)
        self.assertEqual(report.characteristic_square, 4)
        self.assertEqual(report.complement.signature, (20, 2))
        self.assertTrue(report.matches)
        self.assertEqual(report.note, UNIQUENESS_NOTE)
        self.assertTrue(report.passed)

    def test_complements_are_primitive(self):
        for n in (4, 6):
            factors = gm_embedding_report(n).inclusion_factors
            self.assertEqual(factors, (1,) * 22 + (2, 2))

    def test_unsupported_dimension(self):
        with self.assertRaises(LatticeError):
            gm_embedding_report(5)


class TestStableOrthogonalGroup(unittest.TestCase):
    def setUp(self):
        self.lattice = make_lattice("I_{2,0}(2)")

    def test_examples(self):
        self.assertTrue(stable_orthogonal_member(identity(2), self.lattice))
        self.assertTrue(stable_orthogonal_member([[-1, 0], [0, -1]], self.lattice))
        self.assertFalse(stable_orthogonal_member([[0, 1], [1, 0]], self.lattice))

    def test_unimodular_lattice_has_no_discriminant(self):
        self.assertTrue(stable_orthogonal_member([[0, 1], [1, 0]], make_lattice("U")))

    def test_not_an_isometry(self):
        with self.assertRaises(IsometryError):
            stable_orthogonal_member([[2, 0], [0, 1]], self.lattice)
        with self.assertRaises(IsometryError):
            stable_orthogonal_member([[1]], self.lattice)
