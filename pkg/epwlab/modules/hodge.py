# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from epwlab.exceptions import EpwLabInputError, MathematicalFailure
from epwlab.modules.lattices import invariants, make_lattice
from epwlab.utils.fixtures import load_fixture

_logger = logging.getLogger(__name__)

EULER_GM4 = 28
EULER_GM5 = -12
EULER_HYPERPLANE_SECTION = 8


class HodgeError(EpwLabInputError):
    """Exception raised for a GM dimension outside 1..6"""
    pass


@dataclass(frozen=True)
class HodgeDiamond:
    n: int
    h: tuple
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(tuple(int(x) for x in row) for row in self.h))

    def number(self, p, q):
        return self.h[p][q]

    def betti(self, k):
        return sum(self.h[p][k - p] for p in range(self.n + 1) if 0 <= k - p <= self.n)

    def betti_numbers(self):
        return [self.betti(k) for k in range(2 * self.n + 1)]

    def euler_characteristic(self):
        return sum((-1) ** k * b for k, b in enumerate(self.betti_numbers()))

    def middle_row(self):
        return [self.h[p][self.n - p] for p in range(self.n, -1, -1)]

    def hodge_symmetric(self):
        return all(self.h[p][q] == self.h[q][p] for p in range(self.n + 1) for q in range(self.n + 1))

    def serre_symmetric(self):
        n = self.n
        return all(self.h[p][q] == self.h[n - p][n - q] for p in range(n + 1) for q in range(n + 1))

    def as_dict(self):
        return {"n": self.n, "h": [list(row) for row in self.h], "middle_row": self.middle_row(),
                "betti": self.betti_numbers(), "euler": self.euler_characteristic()}


def diamond(n):
    """The stored Hodge diamond of a smooth GM variety of dimension n."""
    for entry in load_fixture("hodge_diamonds")["diamonds"]:
        if entry["n"] == n:
            return HodgeDiamond(n, entry["h"], entry.get("note", ""))
    raise HodgeError(f"GM dimension must be in 1..6, got {n}")


def grassmannian_betti():
    return list(load_fixture("hodge_diamonds")["grassmannian"]["betti"])


def lefschetz_holds(d):
    """b_k(GM_n) = b_k(Gr(2,5)) for k < n; the Grassmannian is of Tate type."""
    if d.n < 3:
        return True
    betti = grassmannian_betti()
    for p in range(d.n + 1):
        for q in range(d.n + 1):
            if p + q < d.n:
                expected = betti[2 * p] if p == q else 0
                if d.h[p][q] != expected:
                    return False
    return True


def hyperplane_section_euler():
    """
    χ of a smooth hyperplane section M′ of Gr(2,5)

    Betti numbers below the middle come from Gr(2,5) by Lefschetz, the upper
    half by Poincaré duality; the middle one vanishes.
    """
    betti = grassmannian_betti()
    lower = [betti[k] for k in range(5)]
    return sum((-1) ** k * b for k, b in enumerate(lower)) * 2


def gm5_middle_hodge_number():
    """
    h^{2,3}(GM5) from the double cover of M′ branched along a GM fourfold

    χ(GM5) = 2·χ(M′) − χ(GM4); all even Betti numbers of GM5 are those of
    Gr(2,5) by Lefschetz and duality, so h^{2,3} = (Σ b_even − χ)/2.
    """
    euler = 2 * hyperplane_section_euler() - diamond(4).euler_characteristic()
    betti = grassmannian_betti()
    even = 2 * sum(betti[k] for k in range(0, 5, 2))
    return euler, (even - euler) // 2


def dimensions_for(n):
    """ℓ for which an ordinary (n = 5 − ℓ) or special (n = 6 − ℓ) GM variety of dimension n exists."""
    return {kind: ell for kind, ell in (("ordinary", 5 - n), ("special", 6 - n)) if 0 <= ell <= 3}


@dataclass
class HodgeReport:
    diamond: HodgeDiamond
    checks: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())

    def as_dict(self):
        return {"diamond": self.diamond.as_dict(), "checks": dict(self.checks), "derived": dict(self.derived),
                "ell": dimensions_for(self.diamond.n), "passed": self.passed}


def hodge_numerology(n, strict=True):
    """
    Load the diamond of GM_n and run its consistency checks

    Args:
        n (int): GM dimension, 1..6
        strict (bool): Raise when a check fails

    Raises:
        HodgeError: If n is out of range
        MathematicalFailure: If strict and a check fails
    """
    d = diamond(n)
    report = HodgeReport(d)
    report.checks["hodge_symmetry"] = d.hodge_symmetric()
    report.checks["serre_symmetry"] = d.serre_symmetric()
    report.checks["lefschetz"] = lefschetz_holds(d)
    if n == 4:
        report.checks["euler"] = d.euler_characteristic() == EULER_GM4
    if n == 5:
        euler, h23 = gm5_middle_hodge_number()
        report.derived.update({"euler_hyperplane_section": hyperplane_section_euler(), "euler": euler, "h23": h23})
        report.checks["euler"] = d.euler_characteristic() == euler == EULER_GM5
        report.checks["h23"] = d.number(2, 3) == h23
    if n in (4, 6):
        middle = d.betti(n)
        vanishing = middle - 2
        report.derived.update({"middle_betti": middle, "vanishing_rank": vanishing})
        report.checks["middle_betti"] = middle == 24
        report.checks["vanishing_rank"] = vanishing == invariants(make_lattice("Lambda")).rank
    if strict and not report.passed:
        failed = [name for name, ok in report.checks.items() if not ok]
        _logger.error(f"Hodge checks failed for n={n}: {failed}")
        raise MathematicalFailure(f"Hodge diamond checks failed for n={n}: {', '.join(failed)}")
    _logger.info(f"Hodge numerology n={n}: {report.checks}")
    return report
