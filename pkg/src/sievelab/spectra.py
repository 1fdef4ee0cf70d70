"""Spectral gaps of finite quotient walks and the resulting mixing bounds.

The walk operator P acts on functions on the quotient group by
(Pv)(x) = sum_g (mult_g/|A|) v(x g). A symmetric multiset makes P
self-adjoint, so its spectrum is real: 1 = lambda_1 >= lambda_2 >= ...
pi_1 is lambda_2, pi_min the bottom eigenvalue, pi_star the largest
modulus away from the top eigenvector.

Small quotients get a dense symmetric eigensolver; past the threshold
a deflated power iteration on (I+P)/2 and (I-P)/2 extracts the two
extremes with a certified residual. Consumers add the residual before
comparing against thresholds, so rounding always errs conservative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import ConvergenceFailure, DomainError, MissingIdentity, NotSymmetric
from .matgroup import GeneratorMultiset
from .walker import convolve_counts

DENSE_THRESHOLD = 4000
_POWER_TOL = 1e-9
_POWER_MAX_ITER = 200_000


@dataclass(frozen=True)
class AdjacencySpectrum:
    """Extreme eigenvalues of one quotient walk operator."""

    quotient_label: str
    order: int
    a_size: int
    pi_1: float
    pi_min: float
    method: str
    residual: float

    @property
    def pi_star(self) -> float:
        return max(abs(self.pi_1), abs(self.pi_min))

    def to_json_obj(self):
        return {
            "modulus": self.quotient_label,
            "order": self.order,
            "a_size": self.a_size,
            "pi_1": self.pi_1,
            "pi_min": self.pi_min,
            "pi_star": self.pi_star,
            "method": self.method,
            "residual": self.residual,
        }


def _reduced_pairs(source, quotient) -> List[Tuple[object, int]]:
    """Reduce a multiset into the quotient, merging collisions."""
    if isinstance(source, GeneratorMultiset):
        raw = [(quotient.reduce(g), m) for g, m in source.pairs]
    else:
        raw = [(g, int(m)) for g, m in source]
    merged: Dict = {}
    for r, m in raw:
        merged[r] = merged.get(r, 0) + m
    pairs = list(merged.items())
    ident = quotient.identity()
    if not any(r == ident for r, _ in pairs):
        raise MissingIdentity("reduced multiset must contain the identity")
    # symmetry: every block must pair with an inverse of equal weight
    for r, m in pairs:
        inv = None
        for s, _ in pairs:
            if quotient.multiply(r, s) == ident:
                inv = s
                break
        if inv is None or merged[inv] != m:
            raise NotSymmetric("reduced multiset is not symmetric")
    return pairs


def _neighbor_maps(pairs, quotient, budget):
    elems = quotient.enumerate_elements(budget)
    index = {e: i for i, e in enumerate(elems)}
    size = sum(m for _, m in pairs)
    maps = []
    for g, m in pairs:
        perm = np.empty(len(elems), dtype=np.int64)
        for i, x in enumerate(elems):
            perm[i] = index[quotient.multiply(x, g)]
        maps.append((perm, m / size))
    return elems, maps, size


def _power_top(matvec, dim: int, deflate: np.ndarray):
    """Largest eigenvalue of a PSD-shifted operator, u-deflated.

    Returns (rayleigh, residual_inf); residual bounds the distance to
    a true eigenvalue for self-adjoint operators.
    """
    rng = np.random.default_rng(987654321)
    v = rng.standard_normal(dim)
    v -= (deflate @ v) * deflate
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ConvergenceFailure("degenerate start vector")
    v /= nrm
    mu = 0.0
    for _ in range(_POWER_MAX_ITER):
        w = matvec(v)
        w -= (deflate @ w) * deflate
        mu = float(v @ w)
        res = float(np.max(np.abs(w - mu * v)))
        if res <= _POWER_TOL:
            return mu, res
        nrm = np.linalg.norm(w)
        if nrm == 0:
            return 0.0, 0.0
        v = w / nrm
    raise ConvergenceFailure(
        f"power iteration residual {res:.3e} after {_POWER_MAX_ITER} iterations")


def second_eigenvalue(source, quotient, dense_threshold: int = DENSE_THRESHOLD,
                      budget: int = 10_000_000) -> AdjacencySpectrum:
    """pi_1, pi_min, pi_star of the walk operator on the quotient.

    source is a GeneratorMultiset (reduced here) or pre-reduced
    (element, multiplicity) pairs.
    """
    pairs = _reduced_pairs(source, quotient)
    elems, maps, a_size = _neighbor_maps(pairs, quotient, budget)
    ell = len(elems)
    if ell < 2:
        raise DomainError("quotient must have at least 2 elements")
    if ell <= dense_threshold:
        P = np.zeros((ell, ell))
        for perm, w in maps:
            P[np.arange(ell), perm] += w
        eig = np.linalg.eigvalsh(P)
        return AdjacencySpectrum(quotient.label, ell, a_size,
                                 pi_1=float(eig[-2]), pi_min=float(eig[0]),
                                 method="dense", residual=0.0)

    def matvec_p(v):
        out = np.zeros_like(v)
        for perm, w in maps:
            out += w * v[perm]
        return out

    u = np.full(ell, 1.0 / np.sqrt(ell))
    mu_plus, res_plus = _power_top(lambda v: 0.5 * (v + matvec_p(v)), ell, u)
    mu_minus, res_minus = _power_top(lambda v: 0.5 * (v - matvec_p(v)), ell, u)
    pi_1 = 2.0 * mu_plus - 1.0
    pi_min = 1.0 - 2.0 * mu_minus
    residual = 2.0 * max(res_plus, res_minus)
    return AdjacencySpectrum(quotient.label, ell, a_size,
                             pi_1=pi_1, pi_min=pi_min,
                             method="iterative", residual=residual)


def expander_certify(source, quotient, eps: float,
                     dense_threshold: int = DENSE_THRESHOLD) -> bool:
    """Whether pi_1 <= 1 - eps, conservatively (residual counts against)."""
    if not 0 < eps < 1:
        raise DomainError("eps must be in (0, 1)")
    spec = second_eigenvalue(source, quotient, dense_threshold)
    return spec.pi_1 + spec.residual <= 1.0 - eps


# ----- mixing bounds -----

def mixing_rate(order: int, a_size: int) -> Fraction:
    """Worst-case contraction rate 1 - 1/(|A| |G|^2) of the quotient walk."""
    if order < 1 or a_size < 1:
        raise DomainError("order and a_size must be positive")
    return 1 - Fraction(1, a_size * order * order)


def mixing_bound(order: int, a_size: int, n: int, rate: float = None) -> float:
    """sqrt(|G|) * rate^n, bounding max_g |P(omega_n = g) - 1/|G||.

    rate defaults to the worst-case mixing_rate; pass a measured
    pi_star (plus its residual) for the sharp version.
    """
    r = float(mixing_rate(order, a_size)) if rate is None else rate
    if not 0 <= r <= 1:
        raise DomainError("rate must be in [0, 1]")
    return order ** 0.5 * r ** n


def mixing_bound_squared(order: int, a_size: int, n: int) -> Fraction:
    """Exact square |G| * rate^(2n) of the worst-case mixing bound.

    Comparing dev^2 <= this avoids the irrational sqrt(|G|).
    """
    return order * mixing_rate(order, a_size) ** (2 * n)


def exact_deviation_sweep(source, quotient, grid: Sequence[int],
                          budget: int = 10_000_000) -> Dict[int, Fraction]:
    """max_g |P(omega_n = g) - 1/|G|| exactly, for each n in the grid.

    Convolves integer path counts on the quotient; requires the walk to
    reach the whole group eventually but is correct regardless.
    """
    pairs = _reduced_pairs(source, quotient)
    a_size = sum(m for _, m in pairs)
    ell = quotient.order()
    grid = sorted(set(grid))
    if not grid or grid[0] < 0:
        raise DomainError("grid must be non-empty with n >= 0")
    out: Dict[int, Fraction] = {}

    def snap(k, counts):
        if k in out_keys:
            total = a_size ** k
            worst = max(
                abs(Fraction(c, total) - Fraction(1, ell)) for c in counts.values())
            # elements never reached deviate by exactly 1/ell
            if len(counts) < ell:
                worst = max(worst, Fraction(1, ell))
            out[k] = worst

    out_keys = set(grid)
    convolve_counts(quotient.identity(), pairs, grid[-1], quotient.multiply,
                    budget, on_snapshot=snap)
    return out


def spectrum_csv(spectra: Sequence[AdjacencySpectrum]) -> str:
    """CSV table of spectra, one row per quotient."""
    lines = ["modulus,order,a_size,pi_1,pi_min,pi_star,method,residual"]
    for s in spectra:
        lines.append(
            f"{s.quotient_label},{s.order},{s.a_size},{s.pi_1!r},"
            f"{s.pi_min!r},{s.pi_star!r},{s.method},{s.residual!r}")
    return "\n".join(lines) + "\n"
