# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

"""
Integral quadratic lattices: named constructions, invariants, complements
and the embeddings of I_{2,0}(2) into the middle cohomology lattices of
GM fourfolds and sixfolds
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from sympy import Matrix, QQ

from epwlab.exceptions import EpwLabInputError, MathematicalFailure
from epwlab.modules.linalg import determinant, inverse, numerator, solve_linear
from epwlab.modules.normalforms import int_mat_mul, integer_kernel, smith_normal_form

_logger = logging.getLogger(__name__)

# E8 Dynkin diagram: chain 0-1-...-6 with node 7 attached to node 4
E8_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7))

NAMED_LATTICES = {
    "Gamma6": "E8(-1)^2 + U^4",
    "Gamma4": "I_{22,2}",
    "Lambda": "E8^2 + U^2 + I_{2,0}(2)",
}

UNIQUENESS_NOTE = "an even lattice of this rank, signature and discriminant form is unique up to isometry"


class LatticeError(EpwLabInputError):
    """Exception raised for malformed lattice input"""
    pass


class DegenerateLatticeError(LatticeError):
    """Exception raised when a Gram matrix is singular"""
    pass


class IsometryError(LatticeError):
    """Exception raised when a matrix does not preserve the Gram matrix"""
    pass


@dataclass(frozen=True)
class IntegerLattice:
    gram: tuple
    name: str = ""

    def __post_init__(self):
        grid = tuple(tuple(int(x) for x in row) for row in self.gram)
        if any(len(row) != len(grid) for row in grid):
            raise LatticeError("Gram matrix must be square")
        if any(grid[i][j] != grid[j][i] for i in range(len(grid)) for j in range(i)):
            raise LatticeError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", grid)
        if self.determinant() == 0:
            raise DegenerateLatticeError(f"Degenerate Gram matrix{' for ' + self.name if self.name else ''}")

    @property
    def rank(self):
        return len(self.gram)

    def determinant(self):
        return numerator(determinant([list(row) for row in self.gram]))

    def dot(self, x, y):
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(self.rank) if x[i]
                   for j in range(self.rank) if y[j])

    def direct_sum(self, other, name=""):
        n, m = self.rank, other.rank
        grid = [[0] * (n + m) for _ in range(n + m)]
        for i in range(n):
            grid[i][:n] = self.gram[i]
        for i in range(m):
            grid[n + i][n:] = other.gram[i]
        return IntegerLattice(tuple(map(tuple, grid)), name or f"{self.name} + {other.name}")

    def rescale(self, m):
        """L(m): the same group with the form multiplied by m."""
        if m == 0:
            raise DegenerateLatticeError("Rescaling by 0")
        return IntegerLattice(tuple(tuple(m * x for x in row) for row in self.gram), f"{self.name}({m})")

    def sublattice(self, basis, name=""):
        """The lattice spanned by integer vectors, with Gram Bᵀ G B."""
        grid = [[self.dot(u, w) for w in basis] for u in basis]
        return IntegerLattice(tuple(map(tuple, grid)), name)


def hyperbolic():
    return IntegerLattice(((0, 1), (1, 0)), "U")


def diagonal_lattice(r, s):
    """I_{r,s} = diag(1^r, (−1)^s)."""
    size = r + s
    return IntegerLattice(
        tuple(tuple((1 if i < r else -1) if i == j else 0 for j in range(size)) for i in range(size)),
        f"I_{{{r},{s}}}",
    )


def e8():
    grid = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in E8_EDGES:
        grid[i][j] = grid[j][i] = -1
    return IntegerLattice(tuple(map(tuple, grid)), "E8")


_TERM = re.compile(
    r"^(?P<atom>U|E8|I_?\{?(?P<r>\d+),(?P<s>\d+)\}?|Gamma4|Gamma6|Lambda)"
    r"(?:\((?P<scale>[+-]?\d+)\))?(?:\^(?P<power>\d+))?$"
)


def make_lattice(expression):
    """
    Build a lattice from an expression such as "E8(-1)^2 + U^4"

    Terms are joined by "+" (or "⊕"); each is U, E8, I_{r,s}, or one of the
    names Gamma4, Gamma6, Lambda, optionally rescaled "(m)" and repeated "^k".

    Raises:
        LatticeError: On a malformed expression
    """
    text = expression.replace("⊕", "+").replace(" ", "")
    if not text:
        raise LatticeError("Empty lattice expression")
    result = None
    for term in text.split("+"):
        match = _TERM.match(term)
        if match is None:
            raise LatticeError(f"Cannot parse lattice term {term!r}")
        atom = match.group("atom")
        if atom == "U":
            lattice = hyperbolic()
        elif atom == "E8":
            lattice = e8()
        elif atom in NAMED_LATTICES:
            lattice = make_lattice(NAMED_LATTICES[atom])
        else:
            lattice = diagonal_lattice(int(match.group("r")), int(match.group("s")))
        if match.group("scale"):
            lattice = lattice.rescale(int(match.group("scale")))
        for _ in range(int(match.group("power") or 1)):
            result = lattice if result is None else result.direct_sum(lattice)
    return IntegerLattice(result.gram, expression)


def _sign_changes(coefficients):
    signs = [c > 0 for c in coefficients if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(lattice):
    """
    (s₊, s₋) from the characteristic polynomial

    Its roots are real, so Descartes' rule counts them exactly: positive roots
    are the sign changes of p(x), negative roots those of p(−x).
    """
    coefficients = [int(c) for c in Matrix(lattice.gram).charpoly().all_coeffs()]
    degree = len(coefficients) - 1
    positive = _sign_changes(coefficients)
    negative = _sign_changes([c * (-1) ** (degree - i) for i, c in enumerate(coefficients)])
    return positive, negative


@dataclass(frozen=True)
class LatticeInvariants:
    rank: int
    signature: tuple
    even: bool
    unimodular: bool
    discriminant: tuple

    def as_dict(self):
        return {
            "rank": self.rank,
            "signature": list(self.signature),
            "parity": "even" if self.even else "odd",
            "unimodular": self.unimodular,
            "discriminant_group": list(self.discriminant),
        }


def invariants(lattice):
    """Rank, signature, parity, unimodularity and the invariant factors of D(L)."""
    return LatticeInvariants(
        rank=lattice.rank,
        signature=signature(lattice),
        even=all(lattice.gram[i][i] % 2 == 0 for i in range(lattice.rank)),
        unimodular=abs(lattice.determinant()) == 1,
        discriminant=smith_normal_form(lattice.gram).nontrivial(),
    )


def is_characteristic(x, lattice):
    """λ·e_i ≡ e_i·e_i (mod 2) for every basis vector e_i."""
    return all((sum(x[j] * lattice.gram[j][i] for j in range(lattice.rank)) - lattice.gram[i][i]) % 2 == 0
               for i in range(lattice.rank))


def orthogonal_complement(lattice, vectors, name=""):
    """
    The sublattice orthogonal to the given vectors

    Returns:
        tuple: (IntegerLattice, basis) with the basis a saturated integer kernel
    """
    forms = [[sum(v[j] * lattice.gram[j][i] for j in range(lattice.rank)) for i in range(lattice.rank)]
             for v in vectors]
    basis = integer_kernel(forms)
    return lattice.sublattice(basis, name), basis


def _unit(n, i):
    return [1 if j == i else 0 for j in range(n)]


def _change_of_basis_unimodular(basis, other):
    """True when two bases span the same lattice."""
    columns = [list(col) for col in zip(*basis)]
    coordinates = []
    for vector in other:
        solution = solve_linear(columns, vector)
        if solution is None or any(QQ.denom(x) != 1 for x in solution):
            return False
        coordinates.append([int(QQ.numer(x)) for x in solution])
    return abs(numerator(determinant(coordinates))) == 1


@dataclass(frozen=True)
class EmbeddingReport:
    """The embedding ⟨e₁, e₂⟩ ≅ I_{2,0}(2) ⊂ Γ_n and its orthogonal complement."""

    n: int
    e1: tuple
    e2: tuple
    gram_e: tuple
    characteristic: bool | None
    characteristic_square: int | None
    complement: LatticeInvariants
    target: LatticeInvariants
    inclusion_factors: tuple
    isometry: bool | None = None
    note: str = UNIQUENESS_NOTE
    complement_basis: tuple = field(default=(), repr=False)

    @property
    def matches(self):
        return self.complement == self.target

    @property
    def passed(self):
        checks = [self.matches, self.gram_e == ((2, 0), (0, 2)), self.inclusion_factors[-2:] == (2, 2)]
        if self.characteristic is not None:
            checks.append(self.characteristic)
        if self.isometry is not None:
            checks.append(self.isometry)
        return all(checks)


def _gamma6_isometry(lattice, basis):
    """Explicit basis of the complement with Gram E8(−1)² ⊕ U² ⊕ diag(−2, −2)."""
    explicit = [_unit(24, i) for i in range(16)] + [_unit(24, i) for i in range(20, 24)]
    for f in (16, 18):
        vector = _unit(24, f)
        vector[f + 1] = -1
        explicit.append(vector)
    model = make_lattice("E8(-1)^2 + U^2 + I_{0,2}(2)")
    if lattice.sublattice(explicit).gram != model.gram:
        return False
    return _change_of_basis_unimodular(basis, explicit)


def gm_embedding_report(n):
    """
    Embed I_{2,0}(2) into Γ₄ or Γ₆ and identify the orthogonal complement

    In Γ₆ the generators are f + g in the first two hyperbolic planes; in
    Γ₄ = I_{22,2} they are (1,1,0,…;0,0) and (0,0,1,…,1;3,3), whose sum is
    characteristic of square 4.

    Raises:
        LatticeError: For n other than 4 and 6
    """
    if n == 6:
        lattice = make_lattice("Gamma6")
        e1, e2 = _unit(24, 16), _unit(24, 18)
        e1[17] = e2[19] = 1
        target = invariants(make_lattice("Lambda").rescale(-1))
    elif n == 4:
        lattice = make_lattice("Gamma4")
        e1 = [1, 1] + [0] * 22
        e2 = [0, 0] + [1] * 20 + [3, 3]
        target = invariants(make_lattice("Lambda"))
    else:
        raise LatticeError(f"Embeddings are defined for n = 4 and n = 6, got {n}")
    gram_e = tuple(tuple(lattice.dot(u, w) for w in (e1, e2)) for u in (e1, e2))
    complement, basis = orthogonal_complement(lattice, [e1, e2], name=f"complement in Gamma{n}")
    inclusion = smith_normal_form([e1, e2] + basis).factors
    characteristic = square = None
    if n == 4:
        total = [a + b for a, b in zip(e1, e2)]
        characteristic = is_characteristic(total, lattice)
        square = lattice.dot(total, total)
    isometry = _gamma6_isometry(lattice, basis) if n == 6 else None
    report = EmbeddingReport(
        n=n,
        e1=tuple(e1),
        e2=tuple(e2),
        gram_e=gram_e,
        characteristic=characteristic,
        characteristic_square=square,
        complement=invariants(complement),
        target=target,
        inclusion_factors=tuple(abs(d) for d in inclusion),
        isometry=isometry,
        complement_basis=tuple(tuple(v) for v in basis),
    )
    _logger.info(f"Gamma{n} embedding: complement {report.complement.as_dict()}, passed={report.passed}")
    return report


def stable_orthogonal_member(g, lattice):
    """
    Whether an isometry acts trivially on D(L) = L^∨/L

    The dual basis vectors x* are the columns of G⁻¹; g is in the stable
    orthogonal group iff g·x* − x* has integer coordinates for all of them.

    Raises:
        IsometryError: If g is not integral or does not preserve the Gram matrix
    """
    n = lattice.rank
    try:
        g = [[int(x) for x in row] for row in g]
    except (TypeError, ValueError):
        raise IsometryError("Isometry must be an integer matrix")
    if len(g) != n or any(len(row) != n for row in g):
        raise IsometryError(f"Isometry must be {n}×{n}")
    transposed = [list(col) for col in zip(*g)]
    if int_mat_mul(int_mat_mul(transposed, [list(r) for r in lattice.gram]), g) != [list(r) for r in lattice.gram]:
        raise IsometryError("Matrix does not preserve the Gram matrix")
    dual = inverse([list(row) for row in lattice.gram])
    for i in range(n):
        x = [dual[j][i] for j in range(n)]
        image = [sum((g[r][j] * x[j] for j in range(n)), QQ.zero) for r in range(n)]
        if any(QQ.denom(a - b) != 1 for a, b in zip(image, x)):
            return False
    return True


def catalog():
    """Invariants of every named lattice."""
    names = ["U", "E8", "I_{2,0}(2)", "Gamma4", "Gamma6", "Lambda"]
    return {name: invariants(make_lattice(name)).as_dict() for name in names}


def characteristic_orthogonal_evenness(lattice, characteristic, vectors):
    """x·x is even for each x orthogonal to a characteristic vector."""
    for x in vectors:
        if lattice.dot(x, characteristic):
            raise MathematicalFailure("Vector is not orthogonal to the characteristic vector")
        if lattice.dot(x, x) % 2:
            return False
    return True
