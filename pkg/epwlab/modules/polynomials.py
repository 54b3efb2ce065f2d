# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

from __future__ import annotations

import logging

from sympy import Matrix, Poly, QQ, Symbol, interpolate

from epwlab.modules.linalg import determinant, to_scalar

_logger = logging.getLogger(__name__)

T = Symbol("t")


def upoly(coefficients):
    """Polynomial in t from ascending rational coefficients."""
    coefficients = [QQ.to_sympy(to_scalar(c)) for c in coefficients]
    return Poly(list(reversed(coefficients)) or [0], T, domain=QQ)


def coefficients(p):
    """Ascending coefficients of p as QQ elements, trailing zeros trimmed."""
    return [to_scalar(c) for c in reversed(p.all_coeffs())] if not p.is_zero else []


def degree(p):
    """Degree of p; None for the zero polynomial."""
    return None if p.is_zero else p.degree()


def linear_entry(a, b):
    """The polynomial a + b t."""
    return upoly([a, b])


def evaluate(p, x):
    return to_scalar(p.eval(QQ.to_sympy(to_scalar(x))))


def _entry_degree(entry):
    if isinstance(entry, Poly):
        return max(entry.degree(), 0)
    return 0


def _entry_value(entry, x):
    if isinstance(entry, Poly):
        return evaluate(entry, x)
    return to_scalar(entry)


def det_poly(entries):
    """
    Determinant of a square matrix of polynomials in t

    Evaluates at D + 1 rational points, D the sum of row degree bounds, and
    interpolates.

    Args:
        entries (list): Square grid of Poly (in t) or scalars

    Returns:
        Poly: The determinant
    """
    n = len(entries)
    bound = sum(max((_entry_degree(e) for e in row), default=0) for row in entries)
    points = list(range(bound + 1))
    values = [determinant([[_entry_value(e, x) for e in row] for row in entries]) for x in points]
    if not any(values):
        return Poly(0, T, domain=QQ)
    data = [(x, QQ.to_sympy(v)) for x, v in zip(points, values)]
    if len(data) == 1:
        return Poly(data[0][1], T, domain=QQ)
    result = Poly(interpolate(data, T), T, domain=QQ)
    _logger.debug(f"det_poly: size {n}, degree bound {bound}, degree {degree(result)}")
    return result


def cofactor_det(entries):
    """Determinant by symbolic expansion; the oracle for det_poly at small sizes."""
    grid = Matrix([[e.as_expr() if isinstance(e, Poly) else QQ.to_sympy(to_scalar(e)) for e in row]
                   for row in entries])
    return Poly(grid.det(method="berkowitz"), T, domain=QQ)


def poly_gcd(polys):
    """
    Monic gcd of a list of polynomials over QQ

    Zero polynomials are neutral; the gcd of only zeros is zero.
    """
    result = Poly(0, T, domain=QQ)
    for p in polys:
        if p.is_zero:
            continue
        result = p if result.is_zero else result.gcd(p)
    return result.monic() if not result.is_zero else result


def root_multiplicity(p, root):
    """Order of vanishing of a nonzero polynomial at a rational point."""
    if p.is_zero:
        raise ValueError("The zero polynomial vanishes to infinite order")
    factor = Poly(T - QQ.to_sympy(to_scalar(root)), T, domain=QQ)
    count = 0
    while True:
        quotient, remainder = p.div(factor)
        if not remainder.is_zero:
            return count
        count += 1
        p = quotient


def is_squarefree(p):
    """True when p has no repeated factor over an algebraic closure."""
    if p.is_zero or p.degree() <= 0:
        return not p.is_zero
    return p.gcd(p.diff(T)).degree() == 0


def rational_roots(p):
    """Distinct rational roots of p."""
    if p.is_zero or p.degree() <= 0:
        return []
    return sorted(to_scalar(r) for r in p.ground_roots())


def reduce_mod(p, prime):
    """Image of a rational polynomial in GF(prime)[t]; None if a denominator vanishes."""
    coeffs = []
    for c in p.all_coeffs():
        c = to_scalar(c)
        den = int(QQ.denom(c))
        if den % prime == 0:
            return None
        coeffs.append(int(QQ.numer(c)) * pow(den, -1, prime) % prime)
    return Poly(coeffs, T, modulus=prime)


def gcd_degree_mod(polys, prime):
    """Degree of the gcd of the reductions of polys modulo prime."""
    result = None
    for p in polys:
        if p.is_zero:
            continue
        reduced = reduce_mod(p, prime)
        if reduced is None or reduced.is_zero:
            continue
        result = reduced if result is None else result.gcd(reduced)
    return None if result is None else result.degree()
