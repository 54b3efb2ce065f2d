# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

"""
Bott's algorithm on (relative) Grassmannians

A bundle on Gr(k, ℰ), ℰ of rank m, is recorded by a weight on the
tautological sub-bundle 𝒰 (length k) and one on the quotient 𝒬 (length m−k).
Weights are concatenated quotient block first, then ρ = (m−1, …, 0) is added.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from epwlab.exceptions import EpwLabInputError

_logger = logging.getLogger(__name__)


class WeightError(EpwLabInputError):
    """Exception raised for weights of the wrong length or shape"""
    pass


def is_dominant(weight):
    return all(a >= b for a, b in zip(weight, weight[1:]))


def twist(weight, a):
    """Tensor by det^a: shift every entry by a."""
    return tuple(x + a for x in weight)


def dual(weight):
    return tuple(-x for x in reversed(weight))


@dataclass(frozen=True)
class SheafTerm:
    """
    Σ^sub 𝒰 ⊗ Σ^quotient 𝒬 on Gr(k, m), with an external multiplicity

    `label` names the multiplicity space (for example "A^∨") and
    `multiplicity` its dimension; `ell` is the power of the line bundle ℒ
    the term carries in a Koszul complex.
    """

    k: int
    m: int
    sub: tuple
    quotient: tuple = None
    label: str = ""
    multiplicity: int = 1
    ell: int = 0

    def __post_init__(self):
        sub = tuple(int(x) for x in self.sub)
        quotient = tuple(int(x) for x in self.quotient) if self.quotient is not None else (0,) * (self.m - self.k)
        if not 0 < self.k < self.m:
            raise WeightError(f"Need 0 < k < m, got k={self.k}, m={self.m}")
        if len(sub) != self.k or len(quotient) != self.m - self.k:
            raise WeightError(f"Weight lengths must be {self.k} and {self.m - self.k}")
        if not (is_dominant(sub) and is_dominant(quotient)):
            raise WeightError(f"Weights must be weakly decreasing: {sub} | {quotient}")
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "quotient", quotient)

    @property
    def weight(self):
        return self.quotient + self.sub

    def on(self, m):
        """The same sub weight on Gr(k, m) for another ambient rank."""
        return SheafTerm(self.k, m, self.sub, None, self.label, self.multiplicity, self.ell)


@dataclass(frozen=True)
class BottResult:
    vanishes: bool
    degree: int | None = None
    weight: tuple | None = None

    def dimension(self):
        return 0 if self.vanishes else weyl_dimension(self.weight)

    def as_dict(self):
        if self.vanishes:
            return {"vanishes": True}
        return {"vanishes": False, "degree": self.degree, "weight": list(self.weight),
                "dimension": self.dimension()}


def bott_pushforward(term):
    """
    Derived pushforward of a homogeneous bundle to the base

    Args:
        term (SheafTerm): Bundle on Gr(k, ℰ)

    Returns:
        BottResult: Vanishing, or the single degree i and the weight of R^i on ℰ
    """
    m = term.m
    shifted = [w + (m - 1 - p) for p, w in enumerate(term.weight)]
    if len(set(shifted)) < m:
        return BottResult(vanishes=True)
    degree = sum(1 for p, q in combinations(range(m), 2) if shifted[p] < shifted[q])
    ordered = sorted(shifted, reverse=True)
    weight = tuple(x - (m - 1 - p) for p, x in enumerate(ordered))
    return BottResult(vanishes=False, degree=degree, weight=weight)


def weyl_dimension(weight, n=None):
    """Dimension of the GL_n representation with highest weight λ."""
    weight = tuple(weight)
    n = n if n is not None else len(weight)
    if len(weight) != n or not is_dominant(weight):
        raise WeightError(f"Not a dominant weight of length {n}: {weight}")
    value = Fraction(1)
    for p, q in combinations(range(n), 2):
        value *= Fraction(weight[p] - weight[q] + q - p, q - p)
    return int(value)


def euler_characteristic(term):
    """χ of a term, multiplicity included."""
    result = bott_pushforward(term)
    if result.vanishes:
        return 0
    return (-1) ** result.degree * result.dimension() * term.multiplicity


def relative_dimension(term):
    return term.k * (term.m - term.k)


def serre_dual_term(term):
    """The dual bundle tensored with det(𝒰)^m, the relative canonical bundle up to det(ℰ)^{−k}."""
    return SheafTerm(
        term.k,
        term.m,
        twist(dual(term.sub), term.m),
        dual(term.quotient),
        f"dual of {term.label}" if term.label else "",
        term.multiplicity,
        -term.ell,
    )


def check_serre_duality(term):
    """
    Compare Bott on a term and on its Serre dual

    The dual must land in degree k(m−k) − i with weight k − reversed(output).
    """
    result = bott_pushforward(term)
    other = bott_pushforward(serre_dual_term(term))
    if result.vanishes or other.vanishes:
        return result.vanishes and other.vanishes
    expected_weight = twist(dual(result.weight), term.k)
    return other.degree == relative_dimension(term) - result.degree and other.weight == expected_weight


# ⋀^j Sym²𝒰 for rk 𝒰 = 2 and 3, as sums of Schur weights
_KOSZUL_WEIGHTS = {
    2: [[(0, 0)], [(2, 0)], [(3, 1)], [(3, 3)]],
    3: [
        [(0, 0, 0)],
        [(2, 0, 0)],
        [(3, 1, 0)],
        [(4, 1, 1), (3, 3, 0)],
        [(4, 3, 1)],
        [(4, 4, 2)],
        [(4, 4, 4)],
    ],
}


@dataclass(frozen=True)
class KoszulTerm:
    j: int
    weight: tuple
    label: str


def koszul_terms(rank):
    """
    Terms ℒ^j ⊗ ⋀^j Sym²𝒰 of the Koszul complex cutting out linear spaces in a quadric

    Args:
        rank (int): rk 𝒰, 2 for lines and 3 for planes

    Returns:
        list: KoszulTerm entries in order of j
    """
    if rank not in _KOSZUL_WEIGHTS:
        raise WeightError(f"Koszul decompositions are stored for ranks 2 and 3, got {rank}")
    return [
        KoszulTerm(j, weight, "Sigma" + "".join(str(x) for x in weight))
        for j, summands in enumerate(_KOSZUL_WEIGHTS[rank])
        for weight in summands
    ]


# Named bundles on ℰ, tried in order when labelling an output weight
def _templates(m):
    zero = (0,) * m

    def at(*pairs):
        w = list(zero)
        for index, value in pairs:
            w[index] = value
        return tuple(w)

    return [
        ("", zero),
        ("E", at((0, 1))),
        ("E*", at((m - 1, -1))),
        ("S2E", at((0, 2))),
        ("S2E*", at((m - 1, -2))),
        ("adj", at((0, 1), (m - 1, -1))),
        ("W2E", at((0, 1), (1, 1))),
        ("W2E*", at((m - 2, -1), (m - 1, -1))),
    ]


def bundle_label(weight, ell=0):
    """
    Human-readable name of ℒ^ell ⊗ Σ^weight ℰ, e.g. "L^3 det^2 S2E*"

    Falls back to "Sigma(...)" when no stored bundle matches up to det.
    """
    m = len(weight)
    name = None
    for candidate, template in _templates(m):
        shifts = {w - t for w, t in zip(weight, template)}
        if len(shifts) == 1:
            a = shifts.pop()
            det = "" if a == 0 else ("det" if a == 1 else f"det^{a}")
            name = " ".join(part for part in (det, candidate) if part)
            break
    if name is None:
        name = "Sigma(" + ",".join(str(x) for x in weight) + ")"
    power = "" if ell == 0 else ("L" if ell == 1 else f"L^{ell}")
    return " ".join(part for part in (power, name) if part) or "O"


@dataclass(frozen=True)
class CohomologyEntry:
    """H^q of the p-th term of a resolution, placed in total degree q − p."""

    p: int
    q: int
    dimension: int
    weight: tuple = field(default=None, compare=False)

    @property
    def total_degree(self):
        return self.q - self.p


# Projective space P⁵ = Gr(1, 6), 𝒪(1) = 𝒰^∨, T = 𝒰^∨ ⊗ 𝒬
P5 = 6


def p5_term(quotient, t, multiplicity=1, label=""):
    """Σ^quotient 𝒬 ⊗ 𝒪(t) on P⁵."""
    return SheafTerm(1, P5, (-t,), tuple(quotient), label, multiplicity)


def p5_cohomology(quotient, t, multiplicity=1):
    """
    Cohomology of Σ^quotient 𝒬 ⊗ 𝒪(t) on P⁵

    Returns:
        tuple: (degree, dimension), with degree None when everything vanishes
    """
    result = bott_pushforward(p5_term(quotient, t, multiplicity))
    if result.vanishes:
        return None, 0
    return result.degree, result.dimension() * multiplicity
