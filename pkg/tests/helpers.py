"""Independent brute-force oracles for cross-checking, sympy-backed."""

import math

from sympy import Poly, Symbol
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor_sqf, gf_irreducible_p

from sievelab import prng
from sievelab.matgroup import MatrixElement, elementary_generators, sl2_st_generators

_X = Symbol("x")

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
                 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
                 191, 193, 197, 199, 211, 223, 227, 229]


def to_poly(coeffs):
    """constant-first integer coefficients -> sympy Poly."""
    return Poly(sum(int(c) * _X ** i for i, c in enumerate(coeffs)), _X)


def brute_reducible(coeffs):
    """Factors nontrivially over Q (monic integer input)."""
    poly = to_poly(coeffs)
    factors = poly.factor_list()[1]
    if len(factors) != 1:
        return True
    base, mult = factors[0]
    return mult != 1 or base.degree() != poly.degree()


def brute_irreducible_witness_mod_p(coeffs):
    """First prime among 50 where the reduction is irreducible, else None."""
    for p in _SMALL_PRIMES:
        rev = [c % p for c in reversed(coeffs)]
        while rev and rev[0] == 0:
            rev.pop(0)
        if len(rev) != len(coeffs):
            continue  # degree dropped: cannot witness
        if gf_irreducible_p([ZZ(c) for c in rev], p, ZZ):
            return p
    return None


def brute_disc_is_square(coeffs):
    disc = int(to_poly(coeffs).discriminant())
    return disc >= 0 and math.isqrt(disc) ** 2 == disc


def brute_nongeneric(coeffs):
    """Degrees 2-3: Galois group smaller than the full symmetric group."""
    deg = len(coeffs) - 1
    assert deg in (2, 3)
    if brute_reducible(coeffs):
        return True
    return brute_disc_is_square(coeffs)


def brute_cycle_pattern(coeffs, p):
    """Sorted factor-degree multiset mod p; None when not squarefree."""
    rev = [ZZ(c % p) for c in reversed(coeffs)]
    _, factors = gf_factor_sqf(rev, p, ZZ)
    degs = sorted(len(f) - 1 for f in factors)
    if sum(degs) != len(coeffs) - 1:
        return None  # a repeated factor was dropped: not squarefree
    return degs


def sl2_walk_elements(count, seed, length=14):
    """Endpoints of independent S/T walks; deterministic in seed."""
    table = sl2_st_generators().draw_table()
    out = []
    for trial in range(count):
        g = MatrixElement.identity(2)
        for idx in prng.draw_indices(seed, trial, length, len(table)):
            step = table[idx]
            if not step.is_identity():
                g = g * step
        out.append(g)
    return out


def sl3_walk_elements(count, seed, length=14):
    table = elementary_generators(3).draw_table()
    out = []
    for trial in range(count):
        g = MatrixElement.identity(3)
        for idx in prng.draw_indices(seed, trial, length, len(table)):
            step = table[idx]
            if not step.is_identity():
                g = g * step
        out.append(g)
    return out


def sl4_walk_elements(count, seed, length=12):
    table = elementary_generators(4).draw_table()
    out = []
    for trial in range(count):
        g = MatrixElement.identity(4)
        for idx in prng.draw_indices(seed, trial, length, len(table)):
            step = table[idx]
            if not step.is_identity():
                g = g * step
        out.append(g)
    return out
