"""Membership oracles for the concrete thin sets the walks are sieved against.

Six kinds: reducible characteristic polynomial, non-generic Galois group,
rational fixed flag (eigenvalue +-1 with a rational eigenvector), proper
k-th powers, closed subvarieties cut out by entry polynomials, and the
squares in a rank-2 multiplicative lattice.

Every oracle answers three ways:
  * global_verdict(g): exact IN/OUT over the ambient group where
    decidable, with a checkable certificate; UNKNOWN carries a reason.
  * residual_contains(x, quotient): a mod-p test that contains the
    reduction of the global set (never excludes a genuine member).
  * hit_raw(state): the global test on a raw flat state, for the Monte
    Carlo inner loop; None where undecided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from . import gfpoly, prng
from .errors import (
    ArityMismatch,
    DegreeUnsupported,
    DomainError,
    InseparableResidue,
)
from .matgroup import (
    AbelianElement,
    GeneratorMultiset,
    MatrixElement,
    charpoly_coefficients,
    _det_bareiss,
)
from .quotients import (
    AbelianQuotient,
    MatrixQuotient,
    PrimeSchedule,
    is_prime,
    prime_schedule,
)

IN = "IN"
OUT = "OUT"
UNKNOWN = "UNKNOWN"


def is_perfect_square(n: int) -> bool:
    """Exact integer test; never touches floats."""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


@dataclass(frozen=True)
class OracleVerdict:
    """IN/OUT with a witness, or UNKNOWN with the reason."""

    status: str
    certificate: Optional[dict] = None
    reason: str = ""

    def __post_init__(self):
        if self.status not in (IN, OUT, UNKNOWN):
            raise DomainError(f"bad verdict status {self.status!r}")
        if self.status != UNKNOWN and self.certificate is None:
            raise DomainError("IN/OUT verdicts require a certificate")

    def to_json_obj(self):
        out = {"status": self.status}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.reason:
            out["reason"] = self.reason
        return out


# ----- small exact linear algebra helpers -----

def _synthetic_division(coeffs: Sequence[int], root: int) -> Tuple[int, ...]:
    """Divide a monic polynomial (constant first) by (X - root) exactly."""
    desc = list(reversed(coeffs))
    out = [desc[0]]
    for c in desc[1:-1]:
        out.append(c + root * out[-1])
    rem = desc[-1] + root * out[-1]
    assert rem == 0, "root did not divide"
    return tuple(reversed(out))


def _kernel_vector(flat: Sequence[int], dim: int, eigenvalue: int) -> Tuple[int, ...]:
    """Primitive integer vector v with (g - eigenvalue*I) v = 0.

    Gaussian elimination over exact rationals; the caller guarantees the
    kernel is nontrivial (the shifted determinant vanishes).
    """
    rows = [
        [Fraction(flat[i * dim + j] - (eigenvalue if i == j else 0))
         for j in range(dim)]
        for i in range(dim)
    ]
    piv_cols = []
    r = 0
    for c in range(dim):
        pr = None
        for i in range(r, dim):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(dim):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(dim) if c not in piv_cols]
    assert free, "kernel is trivial"
    fc = free[0]
    v = [Fraction(0)] * dim
    v[fc] = Fraction(1)
    for i, c in enumerate(piv_cols):
        v[c] = -rows[i][fc]
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    check = [
        sum((flat[i * dim + j] - (eigenvalue if i == j else 0)) * ints[j]
            for j in range(dim))
        for i in range(dim)
    ]
    assert all(x == 0 for x in check)
    return tuple(ints)


def _det_flat_shifted_mod(block: Sequence[int], dim: int, shift: int, p: int) -> int:
    rows = [
        [block[i * dim + j] + (shift if i == j else 0) for j in range(dim)]
        for i in range(dim)
    ]
    return _det_bareiss(rows) % p


def _cycle_pattern_mod(coeffs: Sequence[int], p: int):
    """Factor degrees of a monic integer polynomial mod p; the pattern is
    the cycle type of Frobenius when the reduction is squarefree."""
    f = gfpoly.from_int_coeffs(coeffs, p)
    if not gfpoly.is_squarefree(f, p):
        raise InseparableResidue(f"not squarefree mod {p}")
    return gfpoly.degree_pattern(f, p)


_DEFAULT_WITNESS_PRIMES = prime_schedule(25, 2).primes


def _reducible_quartic_factor(coeffs: Sequence[int]):
    """Monic quadratic factor pair of a rootless monic quartic with
    constant term 1, or None.

    X^4+aX^3+bX^2+cX+1 = (X^2+pX+q)(X^2+rX+s) forces qs = 1, so
    q = s = 1 (needs c = a) or q = s = -1 (needs c = -a); in either case
    p and r are the integer roots of y^2 - ay + (b -+ 2). Linear factors
    are excluded beforehand, so this search is complete over Z.
    """
    one, c, b, a, lead = coeffs
    assert lead == 1 and one == 1
    for q, need in ((1, c == a), (-1, c == -a)):
        if not need:
            continue
        disc = a * a - 4 * (b - 2 * q)
        if not is_perfect_square(disc):
            continue
        r = math.isqrt(disc)
        if (a + r) % 2 != 0:
            continue
        pp = (a + r) // 2
        rr = (a - r) // 2
        return (q, pp, 1), (q, rr, 1)
    return None


# ----- oracle classes -----

class ReducibleCharpolyOracle:
    """Thin set {g : char poly of g factors nontrivially over Q}."""

    kind = "REDUCIBLE_CHARPOLY"

    def __init__(self, dimension: int, complexity: Optional[int] = None):
        if dimension < 2:
            raise DomainError("dimension must be at least 2")
        self.dimension = dimension
        self.complexity = dimension if complexity is None else complexity

    @property
    def name(self) -> str:
        return f"reducible_charpoly(dim={self.dimension})"

    def quotient_for_prime(self, p: int) -> MatrixQuotient:
        return MatrixQuotient(self.dimension, (p,))

    def global_verdict(self, g: MatrixElement) -> OracleVerdict:
        coeffs = charpoly_coefficients(g.flat(), g.dimension)
        return self._verdict_from_coeffs(coeffs)

    def _verdict_from_coeffs(self, coeffs) -> OracleVerdict:
        deg = len(coeffs) - 1
        # rational roots of a monic integer poly divide the constant +-1
        for r in (1, -1):
            if sum(c * r ** i for i, c in enumerate(coeffs)) == 0:
                cof = _synthetic_division(coeffs, r)
                return OracleVerdict(IN, {
                    "rational_root": r,
                    "cofactor": list(cof),
                    "witness": f"(X - ({r})) divides the characteristic polynomial",
                })
        if deg == 2:
            disc = coeffs[1] ** 2 - 4 * coeffs[0]
            return OracleVerdict(OUT, {
                "discriminant": disc,
                "witness": f"no rational root; discriminant {disc} is not a square",
            })
        if deg == 3:
            return OracleVerdict(OUT, {
                "witness": "monic cubic with constant term -1 and no root at +-1",
            })
        if deg == 4:
            pair = _reducible_quartic_factor(coeffs)
            if pair is not None:
                (q1, p1, _), (q2, p2, _) = pair
                return OracleVerdict(IN, {
                    "quadratic_factor": [q1, p1, 1],
                    "cofactor": [q2, p2, 1],
                    "witness": "product of two monic integer quadratics",
                })
            return OracleVerdict(OUT, {
                "witness": "no root at +-1 and no monic quadratic factor pair",
            })
        for p in _DEFAULT_WITNESS_PRIMES:
            f = gfpoly.from_int_coeffs(coeffs, p)
            if gfpoly.is_irreducible(f, p):
                return OracleVerdict(OUT, {
                    "irreducible_mod": p,
                    "witness": f"irreducible mod {p}, hence irreducible over Q",
                })
        return OracleVerdict(
            UNKNOWN, reason=f"degree {deg} > 4 and no mod-p irreducibility witness")

    def residual_contains(self, x, quotient) -> bool:
        for block, p in zip(x, quotient.moduli):
            f = gfpoly.from_int_coeffs(
                charpoly_coefficients(block, quotient.dimension), p)
            if gfpoly.is_irreducible(f, p):
                return False
        return True

    def hit_raw(self, flat):
        d = self.dimension
        if d == 2:
            t = flat[0] + flat[3]
            return t == 2 or t == -2
        if d == 3:
            t = flat[0] + flat[4] + flat[8]
            s = (flat[0] * flat[4] - flat[1] * flat[3]
                 + flat[0] * flat[8] - flat[2] * flat[6]
                 + flat[4] * flat[8] - flat[5] * flat[7])
            return s == t or s == -t - 2
        v = self._verdict_from_coeffs(charpoly_coefficients(flat, d))
        if v.status == UNKNOWN:
            return None
        return v.status == IN

    def to_json_obj(self):
        return {"kind": self.kind, "dimension": self.dimension,
                "complexity": self.complexity}


class NongenericGaloisOracle:
    """Thin set {g : Galois group of char poly is not the full S_dim}.

    IN means NON-generic. Degree 2: discriminant a perfect square.
    Degree 3: reducible or square discriminant. Degree 4 and up:
    reducibility gives IN; genericity is certified by factor patterns
    mod sampled primes (an n-cycle, a p-cycle for a prime p > n/2
    fixing the rest, and for odd n an odd pattern), else UNKNOWN.
    """

    kind = "NONGENERIC_GALOIS"

    def __init__(self, dimension: int, expected: Optional[str] = None,
                 witness_primes: Optional[Sequence[int]] = None,
                 complexity: Optional[int] = None):
        if dimension < 2:
            raise DomainError("dimension must be at least 2")
        self.dimension = dimension
        self.expected = expected if expected is not None else f"S{dimension}"
        if self.expected != f"S{dimension}":
            raise DomainError(
                f"only the full symmetric group S{dimension} is certifiable")
        self.witness_primes = tuple(
            witness_primes if witness_primes is not None else _DEFAULT_WITNESS_PRIMES)
        self.complexity = dimension if complexity is None else complexity

    @property
    def name(self) -> str:
        return f"nongeneric_galois(dim={self.dimension})"

    def quotient_for_prime(self, p: int) -> MatrixQuotient:
        return MatrixQuotient(self.dimension, (p,))

    def global_verdict(self, g: MatrixElement) -> OracleVerdict:
        coeffs = charpoly_coefficients(g.flat(), g.dimension)
        deg = len(coeffs) - 1
        if deg == 2:
            disc = coeffs[1] ** 2 - 4 * coeffs[0]
            if is_perfect_square(disc):
                return OracleVerdict(IN, {
                    "square_discriminant": disc,
                    "sqrt": math.isqrt(disc),
                    "witness": f"discriminant {disc} is a perfect square",
                })
            return OracleVerdict(OUT, {
                "galois_group": "S2",
                "discriminant": disc,
                "witness": f"discriminant {disc} is not a perfect square",
            })
        if deg == 3:
            red = ReducibleCharpolyOracle(3)._verdict_from_coeffs(coeffs)
            if red.status == IN:
                return OracleVerdict(IN, {
                    "degeneracy": "reducible",
                    "rational_root": red.certificate["rational_root"],
                    "witness": "characteristic polynomial has a rational root",
                })
            d, c, b, _ = coeffs
            disc = 18 * b * c * d - 4 * b ** 3 * d + b * b * c * c - 4 * c ** 3 - 27 * d * d
            if is_perfect_square(disc):
                return OracleVerdict(IN, {
                    "degeneracy": "square_discriminant",
                    "square_discriminant": disc,
                    "witness": f"irreducible with square discriminant {disc}: group A3",
                })
            return OracleVerdict(OUT, {
                "galois_group": "S3",
                "discriminant": disc,
                "witness": "irreducible cubic with non-square discriminant",
            })
        red = ReducibleCharpolyOracle(deg)._verdict_from_coeffs(coeffs)
        if red.status == IN:
            return OracleVerdict(IN, {
                "degeneracy": "reducible",
                "witness": "reducible characteristic polynomial: group not transitive",
            })
        witnesses = self._jordan_witnesses(coeffs, deg)
        if witnesses is not None:
            return OracleVerdict(OUT, {
                "galois_group": f"S{deg}",
                "witness_patterns": witnesses,
                "witness": "factor patterns mod witnessing primes generate S_n",
            })
        return OracleVerdict(
            UNKNOWN,
            reason=f"no full witness set among primes up to {self.witness_primes[-1]}")

    def _jordan_witnesses(self, coeffs, n):
        half_primes = [q for q in range(n // 2 + 1, n) if is_prime(q)]
        need_odd = n % 2 == 1  # an n-cycle is an even permutation then
        found: Dict[str, list] = {}
        for p in self.witness_primes:
            try:
                pat = _cycle_pattern_mod(coeffs, p)
            except InseparableResidue:
                continue
            if "n_cycle" not in found and pat == [n]:
                found["n_cycle"] = [p, pat]
            if "p_cycle" not in found:
                big = [c for c in pat if c > 1]
                if len(big) == 1 and big[0] in half_primes:
                    found["p_cycle"] = [p, pat]
            if need_odd and "odd_pattern" not in found:
                if (n - len(pat)) % 2 == 1:
                    found["odd_pattern"] = [p, pat]
            if "n_cycle" in found and "p_cycle" in found and (
                    not need_odd or "odd_pattern" in found):
                return found
        return None

    def residual_contains(self, x, quotient) -> bool:
        if self.dimension > 3:
            raise DegreeUnsupported(
                "residual test implemented for dimensions 2 and 3")
        for block, p in zip(x, quotient.moduli):
            coeffs = charpoly_coefficients(block, quotient.dimension)
            f = gfpoly.from_int_coeffs(coeffs, p)
            if not gfpoly.is_irreducible(f, p):
                return True
            if quotient.dimension == 2:
                disc = coeffs[1] ** 2 - 4 * coeffs[0]
            else:
                d, c, b, _ = coeffs
                disc = (18 * b * c * d - 4 * b ** 3 * d + b * b * c * c
                        - 4 * c ** 3 - 27 * d * d)
            # squares persist under reduction; Euler criterion, 0 counts
            if p == 2 or pow(disc % p, (p - 1) // 2, p) <= 1:
                return True
        return False

    def hit_raw(self, flat):
        d = self.dimension
        if d == 2:
            t = flat[0] + flat[3]
            # over Z, t^2 - 4 a square forces t = +-2
            return t == 2 or t == -2
        if d == 3:
            t = flat[0] + flat[4] + flat[8]
            s = (flat[0] * flat[4] - flat[1] * flat[3]
                 + flat[0] * flat[8] - flat[2] * flat[6]
                 + flat[4] * flat[8] - flat[5] * flat[7])
            if s == t or s == -t - 2:
                return True
            disc = (18 * t * s - 4 * t ** 3 + t * t * s * s - 4 * s ** 3 - 27)
            return is_perfect_square(disc)
        return None

    def to_json_obj(self):
        return {"kind": self.kind, "dimension": self.dimension,
                "expected": self.expected, "complexity": self.complexity}


class RationalFixedFlagOracle:
    """Thin set {g : g fixes a rational line}, i.e. g has an eigenvector
    over Q. The eigenvalue is an integer dividing det(g) = 1, so the test
    is det(g - I) = 0 or det(g + I) = 0, any dimension."""

    kind = "RATIONAL_FIXED_FLAG"

    def __init__(self, dimension: int, complexity: Optional[int] = None):
        if dimension < 2:
            raise DomainError("dimension must be at least 2")
        self.dimension = dimension
        self.complexity = dimension if complexity is None else complexity

    @property
    def name(self) -> str:
        return f"rational_fixed_flag(dim={self.dimension})"

    def quotient_for_prime(self, p: int) -> MatrixQuotient:
        return MatrixQuotient(self.dimension, (p,))

    def global_verdict(self, g: MatrixElement) -> OracleVerdict:
        d_minus = g.shifted_det(-1)
        if d_minus == 0:
            v = _kernel_vector(g.flat(), g.dimension, 1)
            return OracleVerdict(IN, {
                "eigenvalue": 1,
                "fixed_vector": list(v),
                "witness": f"g fixes the line through {list(v)}",
            })
        d_plus = g.shifted_det(1)
        if d_plus == 0:
            v = _kernel_vector(g.flat(), g.dimension, -1)
            return OracleVerdict(IN, {
                "eigenvalue": -1,
                "fixed_vector": list(v),
                "witness": f"g maps the line through {list(v)} to itself (eigenvalue -1)",
            })
        return OracleVerdict(OUT, {
            "det_g_minus_identity": d_minus,
            "det_g_plus_identity": d_plus,
            "witness": "neither +1 nor -1 is an eigenvalue",
        })

    def residual_contains(self, x, quotient) -> bool:
        dim = quotient.dimension
        for block, p in zip(x, quotient.moduli):
            if (_det_flat_shifted_mod(block, dim, -1, p) != 0
                    and _det_flat_shifted_mod(block, dim, 1, p) != 0):
                return False
        return True

    def hit_raw(self, flat):
        d = self.dimension
        if d == 2:
            t = flat[0] + flat[3]
            return t == 2 or t == -2
        coeffs = charpoly_coefficients(flat, d)
        at_one = sum(coeffs)
        at_minus_one = sum(c if i % 2 == 0 else -c for i, c in enumerate(coeffs))
        return at_one == 0 or at_minus_one == 0

    def to_json_obj(self):
        return {"kind": self.kind, "dimension": self.dimension,
                "complexity": self.complexity}


class ProperPowerOracle:
    """Thin set {g : g = h^k for some h in the ambient group}.

    Exact both ways on abelian elements. On matrices: IN by a bounded
    ball search for an explicit root, OUT by a non-power certificate in
    some scheduled finite quotient, UNKNOWN otherwise.
    """

    kind_base = "PROPER_POWER"

    def __init__(self, k: int, generators: Optional[GeneratorMultiset] = None,
                 schedule: Optional[PrimeSchedule] = None,
                 search_depth: int = 3, search_budget: int = 20000,
                 complexity: Optional[int] = None):
        if k < 2:
            raise DomainError("k must be at least 2")
        self.k = k
        self.generators = generators
        self.schedule = schedule if schedule is not None else prime_schedule(3, 2)
        self.search_depth = search_depth
        self.search_budget = search_budget
        self.complexity = k if complexity is None else complexity
        self._power_sets: Dict[str, frozenset] = {}

    @property
    def kind(self) -> str:
        return f"{self.kind_base}({self.k})"

    @property
    def name(self) -> str:
        return f"proper_power(k={self.k})"

    def quotient_for_prime(self, p: int):
        if self.generators is None:
            raise DomainError("proper_power needs generators to build quotients")
        first = self.generators.support[0]
        if isinstance(first, MatrixElement):
            return MatrixQuotient(first.dimension, (p,))
        return AbelianQuotient(first.rank, p)

    def _ball(self):
        assert self.generators is not None
        ident = self.generators.identity_element()
        seen = {ident}
        frontier = [ident]
        for _ in range(self.search_depth):
            nxt = []
            for x in frontier:
                for h in self.generators.support:
                    y = x * h
                    if y not in seen:
                        if len(seen) >= self.search_budget:
                            return seen
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def _quotient_power_set(self, quotient) -> frozenset:
        key = quotient.label
        cached = self._power_sets.get(key)
        if cached is not None:
            return cached
        powers = set()
        for x in quotient.enumerate_elements():
            y = quotient.identity()
            base = x
            e = self.k
            while e:
                if e & 1:
                    y = quotient.multiply(y, base)
                base = quotient.multiply(base, base)
                e >>= 1
            powers.add(y)
        out = frozenset(powers)
        self._power_sets[key] = out
        return out

    def global_verdict(self, g) -> OracleVerdict:
        k = self.k
        if isinstance(g, AbelianElement):
            if all(e % k == 0 for e in g.exponents):
                root = tuple(e // k for e in g.exponents)
                return OracleVerdict(IN, {
                    "root_exponents": list(root),
                    "witness": f"exponents are all multiples of {k}",
                })
            i = next(i for i, e in enumerate(g.exponents) if e % k != 0)
            return OracleVerdict(OUT, {
                "coordinate": i,
                "value": g.exponents[i],
                "witness": f"exponent {g.exponents[i]} is not a multiple of {k}",
            })
        if g.is_identity():
            return OracleVerdict(IN, {
                "root": g.to_json_obj(),
                "witness": "identity is its own k-th root",
            })
        if self.generators is not None:
            for h in self._ball():
                acc = h
                for _ in range(k - 1):
                    acc = acc * h
                if acc == g:
                    return OracleVerdict(IN, {
                        "root": h.to_json_obj(),
                        "witness": f"explicit {k}-th root found in a generator ball",
                    })
        for p in self.schedule.primes:
            quotient = MatrixQuotient(g.dimension, (p,))
            powers = self._quotient_power_set(quotient)
            if quotient.reduce(g) not in powers:
                return OracleVerdict(OUT, {
                    "non_power_mod": p,
                    "witness": f"reduction mod {p} is not a {k}-th power there",
                })
        return OracleVerdict(
            UNKNOWN,
            reason=f"no root in the search ball and every scheduled quotient "
                   f"reduction is a {k}-th power")

    def residual_contains(self, x, quotient) -> bool:
        if isinstance(quotient, AbelianQuotient):
            d = math.gcd(self.k, quotient.modulus)
            return all(e % d == 0 for e in x)
        return x in self._quotient_power_set(quotient)

    def hit_raw(self, state):
        if self.generators is not None and isinstance(
                self.generators.support[0], AbelianElement):
            return all(e % self.k == 0 for e in state)
        return None  # matrix state: no cheap global decision

    def to_json_obj(self):
        return {"kind": self.kind, "k": self.k,
                "schedule": list(self.schedule.primes),
                "complexity": self.complexity}


@dataclass(frozen=True)
class EntryPolynomial:
    """Integer polynomial in the flattened entry coordinates x_0..x_{arity-1}.

    monomials holds (coefficient, exponent tuple) terms; the empty tuple
    is the zero polynomial."""

    arity: int
    monomials: Tuple[Tuple[int, Tuple[int, ...]], ...]

    def __post_init__(self):
        for _, exps in self.monomials:
            if len(exps) != self.arity:
                raise ArityMismatch("monomial exponent tuple has wrong length")

    @property
    def total_degree(self) -> int:
        return max((sum(e) for _, e in self.monomials), default=0)

    def evaluate(self, values: Sequence[int], modulus: Optional[int] = None) -> int:
        if len(values) != self.arity:
            raise ArityMismatch(
                f"expected {self.arity} coordinates, got {len(values)}")
        total = 0
        for coeff, exps in self.monomials:
            term = coeff
            for v, e in zip(values, exps):
                if e:
                    term *= v ** e
            total += term
        return total % modulus if modulus is not None else total

    def evaluate_batch(self, coords):
        total = None
        for coeff, exps in self.monomials:
            term = np.full_like(coords[0], coeff)
            for arr, e in zip(coords, exps):
                for _ in range(e):
                    term = term * arr
            total = term if total is None else total + term
        if total is None:
            return np.zeros_like(coords[0])
        return total

    def __str__(self):
        if not self.monomials:
            return "0"
        parts = []
        for coeff, exps in self.monomials:
            vars_ = "*".join(
                f"x{i}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps) if e)
            if vars_:
                parts.append(f"{coeff}*{vars_}" if coeff != 1 else vars_)
            else:
                parts.append(str(coeff))
        return " + ".join(parts)

    def to_json_obj(self):
        return {"arity": self.arity,
                "monomials": [[c, list(e)] for c, e in self.monomials]}

    @classmethod
    def from_json_obj(cls, obj) -> "EntryPolynomial":
        return cls(obj["arity"],
                   tuple((int(c), tuple(int(x) for x in e))
                         for c, e in obj["monomials"]))


def zero_polynomial(arity: int) -> EntryPolynomial:
    return EntryPolynomial(arity, ())


def trace_polynomial(dimension: int, shift: int = 0) -> EntryPolynomial:
    """trace - shift, in the dim^2 matrix entry coordinates."""
    arity = dimension * dimension
    unit = [0] * arity
    mons = []
    for i in range(dimension):
        e = list(unit)
        e[i * dimension + i] = 1
        mons.append((1, tuple(e)))
    if shift:
        mons.append((-shift, tuple(unit)))
    return EntryPolynomial(arity, tuple(mons))


def coordinate_polynomial(arity: int, index: int, shift: int = 0) -> EntryPolynomial:
    """x_index - shift."""
    e = [0] * arity
    e[index] = 1
    mons = [(1, tuple(e))]
    if shift:
        mons.append((-shift, tuple([0] * arity)))
    return EntryPolynomial(arity, tuple(mons))


class SubvarietyOracle:
    """Thin set cut out by the simultaneous vanishing of entry polynomials."""

    kind = "SUBVARIETY"

    def __init__(self, polys: Sequence[EntryPolynomial], domain: str = "matrix",
                 complexity: Optional[int] = None):
        polys = tuple(polys)
        if not polys:
            raise DomainError("polynomial list must be non-empty")
        if domain not in ("matrix", "abelian"):
            raise DomainError("domain must be 'matrix' or 'abelian'")
        arities = {q.arity for q in polys}
        if len(arities) != 1:
            raise ArityMismatch("all polynomials must share one arity")
        self.polys = polys
        self.arity = polys[0].arity
        self.domain = domain
        if domain == "matrix":
            d = math.isqrt(self.arity)
            if d * d != self.arity or d < 2:
                raise ArityMismatch(
                    f"arity {self.arity} is not a square of a dimension >= 2")
            self.dimension = d
        else:
            self.dimension = None
        self.complexity = (max(q.total_degree for q in polys)
                           if complexity is None else complexity)

    @property
    def name(self) -> str:
        return f"subvariety(arity={self.arity}, polys={len(self.polys)})"

    def quotient_for_prime(self, p: int):
        if self.domain == "matrix":
            return MatrixQuotient(self.dimension, (p,))
        return AbelianQuotient(self.arity, p)

    def _values(self, g):
        if isinstance(g, MatrixElement):
            values = g.flat()
        elif isinstance(g, AbelianElement):
            values = g.exponents
        else:
            values = tuple(g)
        if len(values) != self.arity:
            raise ArityMismatch(
                f"element has {len(values)} coordinates, oracle wants {self.arity}")
        return values

    def global_verdict(self, g) -> OracleVerdict:
        values = self._values(g)
        for i, q in enumerate(self.polys):
            v = q.evaluate(values)
            if v != 0:
                return OracleVerdict(OUT, {
                    "poly_index": i,
                    "poly": str(q),
                    "value": v,
                    "witness": f"polynomial {i} evaluates to {v} != 0",
                })
        return OracleVerdict(IN, {
            "witness": f"all {len(self.polys)} polynomials vanish on the entries",
        })

    def residual_contains(self, x, quotient) -> bool:
        if isinstance(quotient, AbelianQuotient):
            return all(q.evaluate(x, quotient.modulus) == 0 for q in self.polys)
        for block, p in zip(x, quotient.moduli):
            if not all(q.evaluate(block, p) == 0 for q in self.polys):
                return False
        return True

    def hit_raw(self, state):
        return all(q.evaluate(state) == 0 for q in self.polys)

    def hit_raw_batch(self, coords):
        out = None
        for q in self.polys:
            z = q.evaluate_batch(coords) == 0
            out = z if out is None else (out & z)
        return out

    def to_json_obj(self):
        return {"kind": self.kind, "domain": self.domain,
                "polys": [q.to_json_obj() for q in self.polys],
                "complexity": self.complexity}


class TorusSquaresOracle:
    """Squares in the rank-2 multiplicative lattice: all exponents even."""

    kind = "TORUS_SQUARES"

    def __init__(self, rank: int = 2, complexity: int = 2):
        if rank < 1:
            raise DomainError("rank must be at least 1")
        self.rank = rank
        self.complexity = complexity

    @property
    def name(self) -> str:
        return f"torus_squares(rank={self.rank})"

    def quotient_for_prime(self, p: int) -> AbelianQuotient:
        return AbelianQuotient(self.rank, p)

    def global_verdict(self, g: AbelianElement) -> OracleVerdict:
        if g.rank != self.rank:
            raise ArityMismatch(f"element rank {g.rank} != oracle rank {self.rank}")
        if all(e % 2 == 0 for e in g.exponents):
            return OracleVerdict(IN, {
                "root_exponents": [e // 2 for e in g.exponents],
                "witness": "all exponents even: the element is a square",
            })
        i = next(i for i, e in enumerate(g.exponents) if e % 2 != 0)
        return OracleVerdict(OUT, {
            "odd_coordinate": i,
            "witness": f"exponent {g.exponents[i]} at coordinate {i} is odd",
        })

    def residual_contains(self, x, quotient: AbelianQuotient) -> bool:
        # the image of doubling in Z/q is everything for odd q, evens else
        if quotient.modulus % 2 == 1:
            return True
        return all(e % 2 == 0 for e in x)

    def hit_raw(self, state):
        return all(e % 2 == 0 for e in state)

    def hit_raw_batch(self, coords):
        out = None
        for arr in coords:
            z = arr % 2 == 0
            out = z if out is None else (out & z)
        return out

    def to_json_obj(self):
        return {"kind": self.kind, "rank": self.rank, "complexity": self.complexity}


# ----- one-shot operation wrappers -----

def reducible_charpoly(g: MatrixElement) -> OracleVerdict:
    return ReducibleCharpolyOracle(g.dimension).global_verdict(g)


def generic_galois(g: MatrixElement, expected: Optional[str] = None) -> OracleVerdict:
    return NongenericGaloisOracle(g.dimension, expected).global_verdict(g)


def rational_fixed_flag(g: MatrixElement) -> OracleVerdict:
    return RationalFixedFlagOracle(g.dimension).global_verdict(g)


def proper_power(g, k: int, schedule: Optional[PrimeSchedule] = None,
                 generators: Optional[GeneratorMultiset] = None) -> OracleVerdict:
    return ProperPowerOracle(k, generators=generators,
                             schedule=schedule).global_verdict(g)


def subvariety(g, polys: Sequence[EntryPolynomial]) -> OracleVerdict:
    domain = "matrix" if isinstance(g, MatrixElement) else "abelian"
    return SubvarietyOracle(polys, domain=domain).global_verdict(g)


# ----- residual set measurement -----

@dataclass(frozen=True)
class ResidualReport:
    """Size and density of an oracle's residual set in one quotient."""

    quotient_label: str
    mode: str
    checked: int
    hits: int
    density: object  # Fraction when enumerated, float when sampled
    halfwidth: Optional[float]

    def to_json_obj(self):
        return {
            "quotient": self.quotient_label,
            "mode": self.mode,
            "checked": self.checked,
            "hits": self.hits,
            "density": str(self.density),
            "halfwidth": self.halfwidth,
        }


def _sample_matrix_block(p: int, dim: int, seed: int, trial: int) -> Tuple[int, ...]:
    """Uniform element of SL_dim(F_p): uniform invertible matrix, first
    row rescaled by the inverse determinant."""
    need = dim * dim
    for attempt in range(64):
        entries = tuple(prng.draw_indices(seed, trial, need, p, start=attempt * need))
        rows = [[entries[i * dim + j] for j in range(dim)] for i in range(dim)]
        det = _det_bareiss(rows) % p
        if det == 0:
            continue
        inv = pow(det, p - 2, p)
        scaled = tuple((x * inv) % p for x in entries[:dim]) + entries[dim:]
        return scaled
    raise DomainError(f"could not sample an invertible matrix mod {p}")


def sample_element(quotient, seed: int, trial: int):
    """One uniform element of the quotient, deterministic in (seed, trial)."""
    if isinstance(quotient, AbelianQuotient):
        return tuple(prng.draw_indices(seed, trial, quotient.rank, quotient.modulus))
    blocks = []
    for bi, p in enumerate(quotient.moduli):
        # separate counter lanes per block via the trial index
        blocks.append(_sample_matrix_block(p, quotient.dimension,
                                           seed + 1000003 * bi, trial))
    return tuple(blocks)


def residual(oracle, quotient, mode: str = "enumerate",
             budget: int = 10_000_000, samples: int = 100_000,
             seed: int = 0) -> ResidualReport:
    """Residual-set size and density, exactly or by uniform sampling."""
    if mode == "enumerate":
        elems = quotient.enumerate_elements(budget)
        hits = sum(1 for x in elems if oracle.residual_contains(x, quotient))
        return ResidualReport(quotient.label, mode, len(elems), hits,
                              Fraction(hits, len(elems)), None)
    if mode != "sample":
        raise DomainError("mode must be 'enumerate' or 'sample'")
    if samples < 1:
        raise DomainError("samples must be positive")
    hits = 0
    for trial in range(samples):
        x = sample_element(quotient, seed, trial)
        if oracle.residual_contains(x, quotient):
            hits += 1
    est = hits / samples
    hw = 1.96 * math.sqrt(est * (1.0 - est) / samples)
    return ResidualReport(quotient.label, mode, samples, hits, est, hw)
