"""Explicit sieve bounds for P(walk hits a thin set).

The chain: a Chebyshev-type bound on the intersection of t near-pairwise-
independent events, fed with the mixing estimate on each finite quotient,
gives the polynomial-regime threshold and bound

    n >= 10 |A| C^5 t^{5D} / alpha   =>   P(omega_n in Z) <= 3/(alpha t),

with delta = 3 C^3 t^{3D} (1 - 1/(|A| C^4 t^{4D}))^n and beta = alpha/2
inside. Everything here is exact rational arithmetic (Fractions in,
Fractions out); floats only appear in the single-prime convenience form
and the exponential envelope, which are reporting surfaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import DomainError
from .quotients import PrimeSchedule
from .spectra import mixing_rate
from .thinsets import residual

Rational = Union[int, Fraction]


def _frac(x, name: str) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a rational number, got {x!r}")


def _check_int_exponent(D) -> int:
    d = _frac(D, "D")
    if d.denominator != 1 or d < 1:
        raise DomainError("growth exponent D must be a positive integer")
    return int(d)


@dataclass(frozen=True)
class SievePlan:
    """A sieving setup: t quotients of order at most C*t^D each."""

    t: int
    D: int
    C: Fraction
    alpha: Fraction
    a_size: int
    schedule: Optional[PrimeSchedule] = None
    quotient_orders: Optional[Tuple[int, ...]] = None
    eps: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "C", _frac(self.C, "C"))
        object.__setattr__(self, "alpha", _frac(self.alpha, "alpha"))
        object.__setattr__(self, "D", _check_int_exponent(self.D))
        if self.t < 1:
            raise DomainError("t must be at least 1")
        if not 0 < self.alpha < 1:
            raise DomainError("alpha must lie strictly between 0 and 1")
        if self.a_size < 1:
            raise DomainError("a_size must be positive")
        if self.C <= 0:
            raise DomainError("C must be positive")
        if self.quotient_orders is not None:
            cap = self.C * self.t ** self.D
            for order in self.quotient_orders:
                if order > cap:
                    raise DomainError(
                        f"quotient order {order} exceeds C*t^D = {cap}")

    def to_json_obj(self):
        out = {
            "t": self.t, "D": self.D, "C": str(self.C),
            "alpha": str(self.alpha), "a_size": self.a_size,
        }
        if self.schedule is not None:
            out["schedule"] = self.schedule.to_json_obj()
        if self.quotient_orders is not None:
            out["quotient_orders"] = list(self.quotient_orders)
        if self.eps is not None:
            out["eps"] = self.eps
        return out


@dataclass(frozen=True)
class SieveBound:
    """A threshold n_min and the bound valid for n >= n_min."""

    n_min: Fraction
    bound: object  # Fraction for exact regimes, float for exponential
    regime: str
    t: int
    inputs: dict = field(default_factory=dict)

    @property
    def n_min_int(self) -> int:
        return math.ceil(self.n_min)

    @property
    def bound_float(self) -> float:
        return float(self.bound)

    def to_json_obj(self):
        return {
            "n_min": str(self.n_min),
            "bound": str(self.bound),
            "bound_float": self.bound_float,
            "regime": self.regime,
            "t": self.t,
            "inputs": {k: str(v) for k, v in self.inputs.items()},
        }


def chebyshev_bound(beta: Rational, delta: Rational, t: int) -> Fraction:
    """(delta + beta/t) / beta^2, the t-event intersection bound."""
    beta = _frac(beta, "beta")
    delta = _frac(delta, "delta")
    if not 0 < beta <= 1:
        raise DomainError("beta must lie in (0, 1]")
    if delta < 0:
        raise DomainError("delta must be nonnegative")
    if t < 1:
        raise DomainError("t must be at least 1")
    return (delta + beta / t) / beta ** 2


def pairwise_delta(a_size: int, C: Rational, D: int, t: int, n: int) -> Fraction:
    """The pairwise-correlation term 3 C^3 t^{3D} (1 - 1/(|A| C^4 t^{4D}))^n."""
    C = _frac(C, "C")
    D = _check_int_exponent(D)
    if a_size < 1 or t < 1 or n < 0:
        raise DomainError("need a_size >= 1, t >= 1, n >= 0")
    denom = a_size * C ** 4 * t ** (4 * D)
    if denom < 1:
        raise DomainError("|A| C^4 t^{4D} must be at least 1")
    rate = 1 - 1 / denom
    return 3 * C ** 3 * t ** (3 * D) * rate ** n


def intersection_bound(a_size: int, C: Rational, D: int, alpha: Rational,
                       t: int, n: int) -> Fraction:
    """The full chain at one (t, n): chebyshev with the pairwise delta and
    beta = alpha/2. Exact; not clamped."""
    alpha = _frac(alpha, "alpha")
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie strictly between 0 and 1")
    delta = pairwise_delta(a_size, C, D, t, n)
    return chebyshev_bound(alpha / 2, delta, t)


def sieve_threshold_and_bound(a_size: int, C: Rational, D: int,
                              alpha: Rational, t: int) -> SieveBound:
    """Threshold n_min = 10|A|C^5 t^{5D}/alpha and bound 3/(alpha t)."""
    C = _frac(C, "C")
    alpha = _frac(alpha, "alpha")
    D = _check_int_exponent(D)
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie strictly between 0 and 1")
    if t < 1 or a_size < 1:
        raise DomainError("need t >= 1 and a_size >= 1")
    if C <= 0:
        raise DomainError("C must be positive")
    n_min = 10 * a_size * C ** 5 * t ** (5 * D) / alpha
    bound = min(Fraction(1), 3 / (alpha * t))
    return SieveBound(n_min=n_min, bound=bound, regime="polynomial", t=t,
                      inputs={"a_size": a_size, "C": C, "D": D, "alpha": alpha})


def _floor_root(x: Fraction, k: int) -> int:
    """Largest integer r >= 0 with r^k <= x."""
    if x < 1:
        return 0
    hi = 1
    while Fraction(hi) ** k <= x:
        hi *= 2
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if Fraction(mid) ** k <= x:
            lo = mid
        else:
            hi = mid
    return lo


def plan_for_n(n: int, a_size: int, C: Rational, D: int,
               alpha: Rational) -> SieveBound:
    """Pick t ~ n^{1/(5D)} so the threshold holds at this n, and return
    the resulting bound. For n below the t = 2 threshold, t = 1."""
    C = _frac(C, "C")
    alpha = _frac(alpha, "alpha")
    D = _check_int_exponent(D)
    if n < 1:
        raise DomainError("n must be at least 1")
    x = n * alpha / (10 * a_size * C ** 5)
    t = max(1, _floor_root(x, 5 * D))
    return sieve_threshold_and_bound(a_size, C, D, alpha, t)


def single_prime_bound(order: int, residual_density, a_size: int, n: int,
                       pi_star: Optional[float] = None) -> float:
    """P(omega_n in Z) <= density + count * sqrt(order) * rate^n, with
    count = density*order and rate the mixing rate (or a measured pi_star).
    Clamped to [0, 1]."""
    d = float(residual_density)
    if not 0 <= d <= 1:
        raise DomainError("residual_density must lie in [0, 1]")
    if n < 0:
        raise DomainError("n must be nonnegative")
    if pi_star is None:
        rate = float(mixing_rate(order, a_size))
    else:
        rate = pi_star
        if not 0 <= rate <= 1:
            raise DomainError("pi_star must lie in [0, 1]")
    val = d + (d * order) * math.sqrt(order) * rate ** n
    return min(1.0, max(0.0, val))


def single_prime_bound_exact(order: int, residual_density: Rational,
                             a_size: int, n: int) -> Fraction:
    """Exact rational upper form of single_prime_bound: sqrt(order) is
    rounded up to an integer, which only weakens (never breaks) the bound."""
    d = _frac(residual_density, "residual_density")
    if not 0 <= d <= 1:
        raise DomainError("residual_density must lie in [0, 1]")
    s = math.isqrt(order)
    if s * s < order:
        s += 1
    val = d + d * order * s * mixing_rate(order, a_size) ** n
    return min(Fraction(1), val)


def exponential_bound(n: int, c2: float) -> SieveBound:
    """Envelope e^{-n/C2} for the expander regime; C2 is fitted, not derived."""
    if c2 <= 0:
        raise DomainError("C2 must be positive")
    val = min(1.0, math.exp(-n / c2))
    return SieveBound(n_min=Fraction(0), bound=val, regime="exponential",
                      t=1, inputs={"C2": c2})


@dataclass(frozen=True)
class AlphaEstimate:
    """alpha = 1 - worst residual density across the schedule."""

    alpha: object  # Fraction (enumerate) or float (sample)
    mode: str
    densities: Tuple[Tuple[int, object], ...]  # (prime, density) pairs

    def to_json_obj(self):
        return {
            "alpha": str(self.alpha),
            "mode": self.mode,
            "densities": {str(p): str(d) for p, d in self.densities},
        }


def estimate_alpha(oracle, schedule: PrimeSchedule, mode: str = "enumerate",
                   budget: int = 10_000_000, samples: int = 100_000,
                   seed: int = 0) -> AlphaEstimate:
    """Worst-case residual density over the schedule, turned into alpha.

    Sampling mode is widened by the confidence half-width so alpha errs
    on the small (safe) side.
    """
    densities = []
    worst = None
    for p in schedule.primes:
        q = oracle.quotient_for_prime(p)
        rep = residual(oracle, q, mode=mode, budget=budget,
                       samples=samples, seed=seed)
        d = rep.density
        if mode == "sample":
            d = min(1.0, d + rep.halfwidth)
        densities.append((p, d))
        if worst is None or d > worst:
            worst = d
    alpha = 1 - worst
    return AlphaEstimate(alpha=alpha, mode=mode, densities=tuple(densities))
