# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

"""
Pushforwards of the structure sheaves of relative Fano schemes of lines
and planes in a family of quadrics, assembled term by term from the
Koszul complex and compared with the stored tables
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import asdict, dataclass, field

from epwlab.exceptions import EpwLabInputError, MathematicalFailure
from epwlab.modules.bbw import SheafTerm, bott_pushforward, bundle_label, koszul_terms, weyl_dimension
from epwlab.utils.fixtures import load_fixture

_logger = logging.getLogger(__name__)

TABLES = {"a1": "lines_pushforward", "a2": "planes_pushforward"}


class TableMismatchError(MathematicalFailure):
    """Exception raised when an assembled pushforward disagrees with the stored table"""
    pass


class PushforwardRangeError(EpwLabInputError):
    """Exception raised when the ambient rank is below the table's range"""
    pass


@dataclass(frozen=True)
class PushforwardEntry:
    """ℒ^ell ⊗ Σ^weight ℰ contributed by R^i of the j-th Koszul term, in degree i − j."""

    j: int
    sub: tuple
    term_degree: int
    weight: tuple
    label: str

    @property
    def degree(self):
        return self.term_degree - self.j

    @property
    def rank(self):
        return weyl_dimension(self.weight)


@dataclass(frozen=True)
class ConnectingMap:
    source: str
    target: str
    kind: str
    rank: int
    cokernel: str


@dataclass
class PushforwardReport:
    which: str
    m: int
    entries: list = field(default_factory=list)
    expected: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)
    connecting: list = field(default_factory=list)
    note: str = ""

    @property
    def matches(self):
        return not self.mismatches

    def by_degree(self):
        grouped = defaultdict(list)
        for entry in self.entries:
            grouped[entry.degree].append(entry.label)
        return {degree: sorted(labels) for degree, labels in sorted(grouped.items(), reverse=True)}

    def rank_by_degree(self):
        ranks = defaultdict(int)
        for entry in self.entries:
            ranks[entry.degree] += entry.rank
        return dict(sorted(ranks.items(), reverse=True))

    def as_dict(self):
        return {
            "which": self.which,
            "m": self.m,
            "pushforward": {str(d): labels for d, labels in self.by_degree().items()},
            "ranks": {str(d): r for d, r in self.rank_by_degree().items()},
            "connecting": [asdict(c) for c in self.connecting],
            "matches": self.matches,
            "mismatches": list(self.mismatches),
            "note": self.note,
        }


def assemble_pushforward(rank, m):
    """Run Bott on every Koszul term ℒ^j ⊗ ⋀^j Sym²𝒰 over Gr(rank, m)."""
    entries = []
    for term in koszul_terms(rank):
        result = bott_pushforward(SheafTerm(rank, m, term.weight, ell=term.j))
        if result.vanishes:
            continue
        entries.append(PushforwardEntry(term.j, term.weight, result.degree, result.weight,
                                        bundle_label(result.weight, term.j)))
        _logger.debug(f"Gr({rank},{m}) term j={term.j} {term.weight}: R^{result.degree} = {result.weight}")
    return entries


def _expected(table, m):
    per_term = {
        (row["j"], tuple(row["sub"])): (row["degree"], tuple(row["weight"]))
        for row in table["per_term"]
        if row["m"] == m
    }
    pushforward = table["pushforward"].get(str(m), {"0": ["O"]})
    return per_term, {int(d): sorted(labels) for d, labels in pushforward.items()}


def _connecting_maps(entries, m):
    """
    Pair the degree −1 entries with the degree 0 entries they map to

    ℒ^a det^b ℰ → ℒ^{a−1} det^b ℰ^∨ is a twist of the quadric α₁ : ℰ → ℰ^∨ ⊗ ℒ;
    ℒ^m det² → 𝒪 is a twist of its determinant. On Gr(3, 4) the traceless
    endomorphisms ℒ det (ℰ⊗ℰ^∨)/𝒪 map onto ⋀²ℰ ≅ det ⋀²ℰ^∨ with cokernel 𝒞₂,
    and ℒ³ Sym²(⋀³ℰ) maps to 𝒪 with cokernel 𝒪_{D₂}. Equal-rank maps are
    generically isomorphisms; the Gr(3, 4) maps are generically surjective.
    """
    sources = [e for e in entries if e.degree == -1]
    targets = {(e.j, e.weight): e for e in entries if e.degree == 0}
    maps = []
    for source in sources:
        b = source.weight[-1]
        surjective = False
        if source.weight == (b + 1,) + (b,) * (m - 1):
            wanted = (source.j - 1, (b,) * (m - 1) + (b - 1,))
            kind, cokernel = "alpha1", "C ⊗ " + bundle_label((b,) * m, source.j - 1)
        elif source.weight == (2,) * m and source.j == m:
            wanted = (0, (0,) * m)
            kind, cokernel = "det alpha1", "O_D1"
        elif m == 4 and source.j == 2 and source.weight == (b + 2, b + 1, b + 1, b):
            wanted = (1, (b + 1, b + 1, b, b))
            kind, cokernel, surjective = "alpha1", "C2", True
        elif m == 4 and source.j == 3 and source.weight == (2, 2, 2, 0):
            wanted = (0, (0,) * m)
            kind, cokernel, surjective = "alpha0", "O_D2", True
        else:
            continue
        target = targets.get(wanted)
        if target is None:
            continue
        if target.rank == source.rank or (surjective and source.rank > target.rank):
            maps.append(ConnectingMap(source.label, target.label, kind, source.rank, cokernel))
    return maps


def verify_pushforward(which, m, strict=True):
    """
    Assemble φ_*𝒪 for lines (a1) or planes (a2) and compare with the stored table

    Each Koszul term contributes in at most one degree; per-term results and the
    assembled list of (degree, bundle) are compared exactly. Where two degrees
    are joined by a connecting map, the map is identified at dimension level.

    Raises:
        PushforwardRangeError: If m is below the table's range
        TableMismatchError: On any disagreement, when strict
    """
    key = TABLES.get(which)
    if key is None:
        raise EpwLabInputError(f"Unknown pushforward table {which!r}; expected one of {sorted(TABLES)}")
    table = load_fixture(key)
    if m < table["min_m"]:
        raise PushforwardRangeError(f"{which} needs m >= {table['min_m']}, got {m}")
    entries = assemble_pushforward(table["rank"], m)
    per_term, pushforward = _expected(table, m)
    report = PushforwardReport(which, m, entries, {str(d): v for d, v in pushforward.items()})

    found = {(e.j, e.sub): (e.term_degree, e.weight) for e in entries if e.j > 0}
    for key_ in sorted(k for k in per_term.keys() | found.keys() if per_term.get(k) != found.get(k)):
        report.mismatches.append(f"term j={key_[0]} {list(key_[1])}: table {per_term.get(key_)}, computed {found.get(key_)}")
    assembled = report.by_degree()
    if assembled != pushforward:
        report.mismatches.append(f"assembled {assembled} != table {pushforward}")

    report.connecting = _connecting_maps(entries, m)
    expected_maps = table.get("connecting", {}).get(str(m), [])
    got = sorted((c.source, c.target, c.kind) for c in report.connecting)
    want = sorted((c["source"], c["target"], c["kind"]) for c in expected_maps)
    if got != want:
        report.mismatches.append(f"connecting maps {got} != table {want}")
    if len(pushforward) > 2:
        report.note = "several degrees interact; identified at dimension level only"

    if report.mismatches:
        _logger.error(f"{which} m={m} mismatches: {report.mismatches}")
        if strict:
            raise TableMismatchError(f"{which} m={m}: {report.mismatches[0]}")
    else:
        _logger.info(f"{which} m={m} matches the stored table")
    return report


def verify_prop_a1(m, strict=True):
    return verify_pushforward("a1", m, strict)


def verify_prop_a2(m, strict=True):
    return verify_pushforward("a2", m, strict)
