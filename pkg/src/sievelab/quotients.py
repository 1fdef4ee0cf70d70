"""Finite quotients of the ambient group and closures of generator images.

A matrix quotient is SL_dim(Z/p) for a prime p, or the direct product
over a pair of distinct primes. Elements are tuples of flat row-major
entry tuples, one block per prime. Abelian quotients are (Z/q)^rank
with componentwise addition.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .errors import (
    BudgetExceeded,
    CompositeModulus,
    DomainError,
    EnumerationUnavailable,
)
from .matgroup import AbelianElement, GeneratorMultiset, MatrixElement, elementary_generators

DEFAULT_ENUM_BUDGET = 10_000_000

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for all n below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def group_order(dimension: int, modulus: int) -> int:
    """|SL_dim(Z/p)| = p^(d(d-1)/2) * prod_{k=2}^{d} (p^k - 1)."""
    if not is_prime(modulus):
        raise CompositeModulus(f"modulus {modulus} is not prime")
    if dimension < 2:
        raise DomainError("dimension must be at least 2")
    p = modulus
    order = p ** (dimension * (dimension - 1) // 2)
    for k in range(2, dimension + 1):
        order *= p ** k - 1
    return order


@dataclass(frozen=True)
class PrimeSchedule:
    """First t primes of norm >= min_norm, with a growth sanity flag.

    growth_ok[i] checks p_{i+1} <= growth_constant * (i+1)^2, the shape
    of schedule the sieve analysis expects; a False is reported, not
    fatal, since small t with a huge min_norm trips it legitimately.
    """

    primes: Tuple[int, ...]
    min_norm: int
    growth_constant: int = 100
    growth_ok: Tuple[bool, ...] = field(init=False)

    def __post_init__(self):
        flags = tuple(
            p <= self.growth_constant * (i + 1) ** 2
            for i, p in enumerate(self.primes)
        )
        object.__setattr__(self, "growth_ok", flags)

    @property
    def all_growth_ok(self) -> bool:
        return all(self.growth_ok)

    def to_json_obj(self):
        return {
            "primes": list(self.primes),
            "min_norm": self.min_norm,
            "growth_constant": self.growth_constant,
            "growth_ok": list(self.growth_ok),
        }


def prime_schedule(t: int, min_norm: int, growth_constant: int = 100) -> PrimeSchedule:
    """The t smallest primes >= min_norm, in increasing order."""
    if t < 1 or min_norm < 2:
        raise DomainError("need t >= 1 and min_norm >= 2")
    primes: List[int] = []
    p = min_norm
    while len(primes) < t:
        if is_prime(p):
            primes.append(p)
        p += 1
    return PrimeSchedule(tuple(primes), min_norm, growth_constant)


def _matmul_flat(x: Tuple[int, ...], y: Tuple[int, ...], dim: int, p: int) -> Tuple[int, ...]:
    idx = range(dim)
    return tuple(
        sum(x[i * dim + t] * y[t * dim + j] for t in idx) % p
        for i in idx for j in idx
    )


@dataclass(frozen=True)
class MatrixQuotient:
    """SL_dim over one prime, or the direct product over a pair."""

    dimension: int
    moduli: Tuple[int, ...]

    def __post_init__(self):
        if self.dimension < 2:
            raise DomainError("dimension must be at least 2")
        if not 1 <= len(self.moduli) <= 2:
            raise DomainError("moduli must be one prime or a pair")
        if len(set(self.moduli)) != len(self.moduli):
            raise DomainError("pair moduli must be distinct")
        for p in self.moduli:
            if not is_prime(p):
                raise CompositeModulus(f"modulus {p} is not prime")

    @property
    def label(self) -> str:
        return "x".join(str(p) for p in self.moduli)

    def order(self) -> int:
        total = 1
        for p in self.moduli:
            total *= group_order(self.dimension, p)
        return total

    def identity(self) -> Tuple[Tuple[int, ...], ...]:
        dim = self.dimension
        block = tuple(1 if i == j else 0 for i in range(dim) for j in range(dim))
        return tuple(block for _ in self.moduli)

    def reduce(self, g: MatrixElement) -> Tuple[Tuple[int, ...], ...]:
        if g.dimension != self.dimension:
            raise DomainError(
                f"element dimension {g.dimension} != quotient dimension {self.dimension}")
        flat = g.flat()
        return tuple(tuple(e % p for e in flat) for p in self.moduli)

    def multiply(self, x, y):
        dim = self.dimension
        return tuple(
            _matmul_flat(xb, yb, dim, p)
            for xb, yb, p in zip(x, y, self.moduli)
        )

    def enumerate_elements(self, budget: int = DEFAULT_ENUM_BUDGET) -> List:
        """All elements, as a list; raises when the order exceeds budget."""
        total = self.order()
        if total > budget:
            raise EnumerationUnavailable(
                f"order {total} of quotient {self.label} exceeds budget {budget}")
        blocks = []
        for p in self.moduli:
            single = MatrixQuotient(self.dimension, (p,))
            gens = [single.reduce(g)[0]
                    for g in elementary_generators(self.dimension).support]
            seen = {single.identity()[0]}
            queue = deque(seen)
            while queue:
                x = queue.popleft()
                for g in gens:
                    y = _matmul_flat(x, g, self.dimension, p)
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            want = group_order(self.dimension, p)
            assert len(seen) == want, (len(seen), want)
            blocks.append(sorted(seen))
        if len(blocks) == 1:
            return [(b,) for b in blocks[0]]
        return [(b0, b1) for b0 in blocks[0] for b1 in blocks[1]]


@dataclass(frozen=True)
class AbelianQuotient:
    """(Z/modulus)^rank with componentwise addition."""

    rank: int
    modulus: int

    def __post_init__(self):
        if self.rank < 1 or self.modulus < 2:
            raise DomainError("need rank >= 1 and modulus >= 2")

    @property
    def label(self) -> str:
        return f"{self.modulus}^{self.rank}"

    def order(self) -> int:
        return self.modulus ** self.rank

    def identity(self) -> Tuple[int, ...]:
        return (0,) * self.rank

    def reduce(self, g: AbelianElement) -> Tuple[int, ...]:
        if g.rank != self.rank:
            raise DomainError(f"element rank {g.rank} != quotient rank {self.rank}")
        return tuple(e % self.modulus for e in g.exponents)

    def multiply(self, x, y):
        m = self.modulus
        return tuple((a + b) % m for a, b in zip(x, y))

    def enumerate_elements(self, budget: int = DEFAULT_ENUM_BUDGET) -> List:
        total = self.order()
        if total > budget:
            raise EnumerationUnavailable(
                f"order {total} of quotient {self.label} exceeds budget {budget}")
        elems = [()]
        for _ in range(self.rank):
            elems = [e + (v,) for e in elems for v in range(self.modulus)]
        return elems


@dataclass(frozen=True)
class ClosureReport:
    """BFS closure of reduced generators inside a finite quotient."""

    quotient_label: str
    generator_tag: str
    size: int
    order: int

    @property
    def surjective(self) -> bool:
        return self.size == self.order

    def to_json_obj(self):
        return {
            "quotient": self.quotient_label,
            "generators": self.generator_tag,
            "closure_size": self.size,
            "group_order": self.order,
            "surjective": self.surjective,
        }


def bfs_closure(A: GeneratorMultiset, quotient, budget: int = DEFAULT_ENUM_BUDGET) -> ClosureReport:
    """Subgroup generated by the image of A (A is symmetric, so the
    reachable set under right multiplication is already the subgroup)."""
    gens = []
    seen_g = set()
    for g in A.support:
        r = quotient.reduce(g)
        if r not in seen_g:
            seen_g.add(r)
            gens.append(r)
    start = quotient.identity()
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = quotient.multiply(x, g)
            if y not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded(
                        f"closure in {quotient.label} exceeded budget {budget}")
                seen.add(y)
                queue.append(y)
    return ClosureReport(quotient.label, A.tag, len(seen), quotient.order())


def find_excluded_primes(A: GeneratorMultiset, primes: Sequence[int],
                         budget: int = DEFAULT_ENUM_BUDGET) -> List[int]:
    """Primes in the list where the image of A fails to be all of SL_dim."""
    dim = A.support[0].dimension
    bad = []
    for p in primes:
        report = bfs_closure(A, MatrixQuotient(dim, (p,)), budget)
        if not report.surjective:
            bad.append(p)
    return bad
