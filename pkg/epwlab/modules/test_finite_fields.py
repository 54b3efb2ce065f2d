# Copyright (c) 2025, EPW Lab contributors
# See license.txt

import unittest
import warnings

from epwlab.modules.finite_fields import FieldError, FiniteField, det_ff, get_field, kernel_ff, rank_ff


class TestFiniteField(unittest.TestCase):
    def test_prime_field(self):
        f = get_field(5)
        self.assertEqual(f.add(3, 4), 2)
        self.assertEqual(f.sub(1, 3), 3)
        self.assertEqual(f.mul(3, 4), 2)
        self.assertEqual(f.inv(2), 3)
        self.assertEqual(f.embed(-1), 4)
        self.assertEqual([x for x in f.elements() if x and f.is_square(x)], [1, 4])

    def test_quadratic_extensions(self):
        for p in (2, 3, 5):
            f = get_field(p, 2)
            self.assertEqual(f.order, p * p)
            for x in range(1, f.order):
                self.assertEqual(f.mul(x, f.inv(x)), 1)
            squares = [x for x in range(1, f.order) if f.is_square(x)]
            expected = f.order - 1 if p == 2 else (f.order - 1) // 2
            self.assertEqual(len(squares), expected)

    def test_extension_without_deprecation_warnings(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            f = FiniteField(7, 2)
        self.assertEqual(f.theta_square, (3, 0))

    def test_theta_over_f2(self):
        f = get_field(2, 2)
        # θ² = θ + 1, with θ encoded as 2
        self.assertEqual(f.mul(2, 2), 3)

    def test_every_prime_field_element_is_a_square_in_the_extension(self):
        f = get_field(5, 2)
        self.assertTrue(all(f.is_square(f.embed(n)) for n in range(5)))

    def test_unsupported(self):
        with self.assertRaises(FieldError):
            FiniteField(4)
        with self.assertRaises(FieldError):
            FiniteField(3, 3)
        with self.assertRaises(ZeroDivisionError):
            get_field(3).inv(0)


class TestLinearAlgebra(unittest.TestCase):
    def test_rank_kernel_det(self):
        f = get_field(5)
        m = [[1, 2, 3], [2, 4, 0]]
        self.assertEqual(rank_ff(f, m), 2)
        kernel = kernel_ff(f, m, 3)
        self.assertEqual(len(kernel), 1)
        self.assertTrue(all(f.dot(row, kernel[0]) == 0 for row in m))
        self.assertEqual(det_ff(f, [[1, 2], [3, 4]]), f.embed(-2))
        self.assertEqual(det_ff(f, [[1, 2], [2, 4]]), 0)
        self.assertEqual(det_ff(f, [[0, 1], [1, 0]]), 4)
