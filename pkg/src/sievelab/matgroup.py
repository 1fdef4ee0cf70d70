"""Exact arithmetic for the ambient groups.

Three element kinds: integer matrices with determinant 1 (the SL_n walks),
integer exponent vectors (the additive demo Z and the rank-2 multiplicative
lattice), and monic integer polynomials (characteristic polynomials).
Everything is immutable and arbitrary precision; no rounding ever occurs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

from .errors import (
    DegreeUnsupported,
    DimensionMismatch,
    DomainError,
    MissingIdentity,
    NotSymmetric,
)

Entries = Tuple[Tuple[int, ...], ...]


def _det_bareiss(rows) -> int:
    # fraction-free elimination; every intermediate division is exact
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial; coefficients stored constant term first."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) < 1 or self.coefficients[-1] != 1:
            raise DomainError("polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative_coefficients(self) -> Tuple[int, ...]:
        return tuple(i * c for i, c in enumerate(self.coefficients))[1:]

    def discriminant(self) -> int:
        """Discriminant, degrees 2 and 3 only (all the oracles need)."""
        if self.degree == 2:
            c, b, _ = self.coefficients
            return b * b - 4 * c
        if self.degree == 3:
            d, c, b, _ = self.coefficients
            return 18 * b * c * d - 4 * b ** 3 * d + b * b * c * c - 4 * c ** 3 - 27 * d * d
        raise DegreeUnsupported("discriminant implemented for degrees 2 and 3")

    def to_json_obj(self):
        return [str(c) for c in self.coefficients]

    @classmethod
    def from_json_obj(cls, arr) -> "IntPolynomial":
        return cls(tuple(int(s) for s in arr))


@dataclass(frozen=True)
class MatrixElement:
    """Square integer matrix with determinant exactly 1."""

    entries: Entries

    def __post_init__(self):
        n = len(self.entries)
        if n == 0 or any(len(r) != n for r in self.entries):
            raise DimensionMismatch("entries must form a square matrix")
        if _det_bareiss(self.entries) != 1:
            raise DomainError("determinant must equal 1")

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int) -> "MatrixElement":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def is_identity(self) -> bool:
        return self == MatrixElement.identity(self.dimension)

    def __mul__(self, other: "MatrixElement") -> "MatrixElement":
        return compose(self, other)

    def inverse(self) -> "MatrixElement":
        """Exact inverse: the adjugate, since det = 1."""
        n = self.dimension
        e = self.entries
        adj = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [
                    [e[r][c] for c in range(n) if c != i]
                    for r in range(n) if r != j
                ]
                cof = _det_bareiss(minor) if n > 1 else 1
                row.append(cof if (i + j) % 2 == 0 else -cof)
            adj.append(tuple(row))
        return MatrixElement(tuple(adj))

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.dimension))

    def shifted_det(self, shift: int) -> int:
        """det(g + shift*I), exact."""
        n = self.dimension
        rows = [
            [self.entries[i][j] + (shift if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        return _det_bareiss(rows)

    def flat(self) -> Tuple[int, ...]:
        return tuple(x for row in self.entries for x in row)

    def max_entry_bits(self) -> int:
        return max(abs(x).bit_length() for row in self.entries for x in row)

    def to_json_obj(self):
        return [str(x) for x in self.flat()]

    @classmethod
    def from_json_obj(cls, arr) -> "MatrixElement":
        vals = [int(s) for s in arr]
        n = round(len(vals) ** 0.5)
        if n * n != len(vals):
            raise DimensionMismatch("entry count is not a perfect square")
        return cls(tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n)))


@dataclass(frozen=True)
class AbelianElement:
    """Exponent vector in Z^r; the group law is component-wise addition."""

    exponents: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @classmethod
    def identity(cls, rank: int) -> "AbelianElement":
        return cls((0,) * rank)

    def is_identity(self) -> bool:
        return all(x == 0 for x in self.exponents)

    def __mul__(self, other: "AbelianElement") -> "AbelianElement":
        return compose(self, other)

    def inverse(self) -> "AbelianElement":
        return AbelianElement(tuple(-x for x in self.exponents))

    def flat(self) -> Tuple[int, ...]:
        return self.exponents

    def to_json_obj(self):
        return [str(x) for x in self.exponents]

    @classmethod
    def from_json_obj(cls, arr) -> "AbelianElement":
        return cls(tuple(int(s) for s in arr))


GroupElement = Union[MatrixElement, AbelianElement]


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    """Group law: exact matrix product, or exponent addition."""
    if isinstance(a, AbelianElement) and isinstance(b, AbelianElement):
        if a.rank != b.rank:
            raise DimensionMismatch(f"ranks differ: {a.rank} vs {b.rank}")
        return AbelianElement(tuple(x + y for x, y in zip(a.exponents, b.exponents)))
    if isinstance(a, MatrixElement) and isinstance(b, MatrixElement):
        n = a.dimension
        if n != b.dimension:
            raise DimensionMismatch(f"dimensions differ: {n} vs {b.dimension}")
        bt = tuple(zip(*b.entries))  # columns of b
        return MatrixElement(tuple(
            tuple(sum(ra[k] * cb[k] for k in range(n)) for cb in bt)
            for ra in a.entries
        ))
    raise DimensionMismatch("cannot compose elements of different kinds")


def charpoly_coefficients(flat: Sequence[int], dimension: int) -> Tuple[int, ...]:
    """Coefficients of det(X*I - a), constant term first, for any square
    integer matrix given as a flat row-major tuple.

    Exact trace recursion; every division by k comes out even.
    """
    n = dimension
    if len(flat) != n * n:
        raise DimensionMismatch("flat entry count must be dimension squared")
    a = [[flat[i * n + j] for j in range(n)] for i in range(n)]
    coeffs_desc = [1]  # X^n downward
    m = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # m <- a @ (m + c*I)
        for i in range(n):
            m[i][i] += c
        m = [
            [sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        tr = sum(m[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0
        c = q
        coeffs_desc.append(c)
    return tuple(reversed(coeffs_desc))


def char_poly(g: MatrixElement) -> IntPolynomial:
    """det(X*I - g) as a monic integer polynomial."""
    return IntPolynomial(charpoly_coefficients(g.flat(), g.dimension))


@dataclass(frozen=True)
class GeneratorMultiset:
    """Symmetric generator multiset containing the identity.

    pairs holds (element, multiplicity); size counts with multiplicity.
    tag is a stable name for the built-in families, used by the walk
    engines to pick a specialized step kernel.
    """

    pairs: Tuple[Tuple[GroupElement, int], ...]
    tag: str = ""

    @property
    def size(self) -> int:
        return sum(m for _, m in self.pairs)

    @property
    def support(self) -> Tuple[GroupElement, ...]:
        return tuple(g for g, _ in self.pairs)

    def draw_table(self) -> Tuple[GroupElement, ...]:
        """Expansion with multiplicity; a uniform index draw picks a step."""
        out = []
        for g, m in self.pairs:
            out.extend([g] * m)
        return tuple(out)

    def identity_element(self) -> GroupElement:
        g = self.pairs[0][0]
        if isinstance(g, AbelianElement):
            return AbelianElement.identity(g.rank)
        return MatrixElement.identity(g.dimension)


def validate_generators(raw: Iterable[GroupElement], tag: str = "") -> GeneratorMultiset:
    """Check symmetry and identity presence; collate multiplicities.

    raw is a multiset given as an iterable with repetition.
    """
    counts: dict = {}
    order = []
    for g in raw:
        if g not in counts:
            counts[g] = 0
            order.append(g)
        counts[g] += 1
    if not order:
        raise DomainError("empty generator multiset")
    if not any(g.is_identity() for g in order):
        raise MissingIdentity("generator multiset must contain the identity")
    for g in order:
        inv = g.inverse()
        if counts.get(inv, 0) != counts[g]:
            raise NotSymmetric(f"multiplicity of an element differs from its inverse: {g}")
    return GeneratorMultiset(tuple((g, counts[g]) for g in order), tag=tag)


# ----- built-in generator families -----

def sl2_st_generators() -> GeneratorMultiset:
    """{I, S, S^-1, T, T^-1} with S = [[0,1],[-1,0]], T = [[1,1],[0,1]]."""
    I = MatrixElement.identity(2)
    S = MatrixElement(((0, 1), (-1, 0)))
    T = MatrixElement(((1, 1), (0, 1)))
    return validate_generators([I, S, S.inverse(), T, T.inverse()], tag="sl2_st")


def elementary_generators(n: int) -> GeneratorMultiset:
    """Identity plus all elementary matrices E_ij(+-1), i != j."""
    if n < 2:
        raise DomainError("need n >= 2")
    gens = [MatrixElement.identity(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for c in (1, -1):
                rows = [[1 if r == s else 0 for s in range(n)] for r in range(n)]
                rows[i][j] = c
                gens.append(MatrixElement(tuple(tuple(r) for r in rows)))
    return validate_generators(gens, tag=f"sl{n}_elementary")


def z_generators() -> GeneratorMultiset:
    """Gamma = Z with steps {0, +1, -1}."""
    return validate_generators(
        [AbelianElement((0,)), AbelianElement((1,)), AbelianElement((-1,))],
        tag="z_steps",
    )


def torus_generators() -> GeneratorMultiset:
    """Exponent lattice of <2,3> in Q*: rank 2, steps {0, +-e1, +-e2}."""
    return validate_generators(
        [
            AbelianElement((0, 0)),
            AbelianElement((1, 0)),
            AbelianElement((-1, 0)),
            AbelianElement((0, 1)),
            AbelianElement((0, -1)),
        ],
        tag="torus_steps",
    )
