"""The uniform random walk on Cay(Gamma, A) and its exact small-n law.

Walk states are exact: big-integer matrix entries or exponent vectors.
Monte Carlo estimation runs on raw flat states through per-family step
kernels; the generic kernels work for any multiset, and the built-in
families get specialized inner loops. Exact distributions are integer
path counts with implicit denominator |A|^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import prng
from .errors import BudgetExceeded, DomainError, UndecidedMembership, UnknownRateExceeded
from .matgroup import AbelianElement, GeneratorMultiset, GroupElement

DEFAULT_EXACT_BUDGET = 5_000_000


@dataclass(frozen=True)
class WalkConfig:
    """Parameters of one Monte Carlo walk experiment."""

    generators: GeneratorMultiset
    n: int
    m: int = 1
    seed: int = 0
    exact_budget: int = DEFAULT_EXACT_BUDGET

    def __post_init__(self):
        if self.n < 0 or self.m < 1 or self.exact_budget < 1:
            raise DomainError("need n >= 0, m >= 1, exact_budget >= 1")


def run_walk(config: WalkConfig, trial_index: int) -> List[GroupElement]:
    """Trajectory omega_0..omega_n, deterministic in (seed, trial_index)."""
    if trial_index >= config.m:
        raise DomainError("trial_index must be < m")
    table = config.generators.draw_table()
    draws = prng.draw_indices(config.seed, trial_index, config.n, len(table))
    state = config.generators.identity_element()
    traj = [state]
    for d in draws:
        g = table[d]
        if not g.is_identity():
            state = state * g
        traj.append(state)
    return traj


# ----- exact distributions -----

def convolve_counts(identity, step_pairs, n: int, compose: Callable,
                    budget: int = DEFAULT_EXACT_BUDGET,
                    on_snapshot: Optional[Callable] = None) -> Dict:
    """Integer path counts of the walk law after each of n steps.

    step_pairs is a sequence of (element, multiplicity). on_snapshot(k,
    counts) fires after step k when given (counts must not be mutated).
    """
    counts = {identity: 1}
    if on_snapshot:
        on_snapshot(0, counts)
    for k in range(1, n + 1):
        nxt: Dict = {}
        for state, c in counts.items():
            for g, mult in step_pairs:
                t = compose(state, g)
                nxt[t] = nxt.get(t, 0) + c * mult
        if len(nxt) > budget:
            raise BudgetExceeded(f"distinct states {len(nxt)} exceed budget {budget}")
        counts = nxt
        if on_snapshot:
            on_snapshot(k, counts)
    return counts


@dataclass(frozen=True)
class WalkDistribution:
    """Exact law of omega_n: path counts over |A|^n."""

    counts: Tuple[Tuple[GroupElement, int], ...]
    a_size: int
    n: int

    def probability(self, g: GroupElement) -> Fraction:
        total = self.a_size ** self.n
        for e, c in self.counts:
            if e == g:
                return Fraction(c, total)
        return Fraction(0)

    def masses(self) -> Dict[GroupElement, Fraction]:
        total = self.a_size ** self.n
        return {e: Fraction(c, total) for e, c in self.counts}

    def support(self) -> Tuple[GroupElement, ...]:
        return tuple(e for e, _ in self.counts)

    def to_json_obj(self):
        total = self.a_size ** self.n
        return [
            {"element": e.to_json_obj(), "probability": f"{c}/{total}"}
            for e, c in self.counts
        ]


def exact_distribution(A: GeneratorMultiset, n: int,
                       budget: int = DEFAULT_EXACT_BUDGET) -> WalkDistribution:
    """Exact convolution of n uniform steps from A."""
    identity = A.identity_element()
    counts = convolve_counts(identity, A.pairs, n, lambda a, b: a * b, budget)
    return WalkDistribution(tuple(counts.items()), A.size, n)


def hit_probability_exact(A: GeneratorMultiset, n: int, oracle,
                          budget: int = DEFAULT_EXACT_BUDGET) -> Fraction:
    """P(omega_n in Z) as an exact rational; errors on UNKNOWN verdicts."""
    dist = exact_distribution(A, n, budget)
    total = A.size ** n
    hit = 0
    for e, c in dist.counts:
        v = oracle.global_verdict(e)
        if v.status == "UNKNOWN":
            raise UndecidedMembership(f"oracle undecided on {e}: {v.reason}")
        if v.status == "IN":
            hit += c
    return Fraction(hit, total)


def exact_origin_scan_z(grid: Sequence[int]) -> Dict[int, Fraction]:
    """P(omega_n = 0) for Gamma = Z, A = {0,+1,-1}, at each grid n.

    Dense line convolution with integer counts; one pass to max(grid).
    """
    grid = sorted(set(grid))
    nmax = grid[-1] if grid else 0
    out: Dict[int, Fraction] = {}
    counts = [1]  # positions -k..k after k steps
    if 0 in grid:
        out[0] = Fraction(1)
    for k in range(1, nmax + 1):
        prev = counts
        width = 2 * k + 1
        counts = [0] * width
        # prev index i is position i-(k-1); new index j is position j-k
        for i, c in enumerate(prev):
            if c:
                j = i + 1
                counts[j - 1] += c
                counts[j] += c
                counts[j + 1] += c
        if k in grid:
            out[k] = Fraction(counts[k], 3 ** k)
    return out


# ----- Monte Carlo -----

@dataclass(frozen=True)
class MCEstimate:
    """One Monte Carlo row: hits and UNKNOWNs over m trials at length n."""

    n: int
    trials: int
    hits: int
    unknown: int

    @property
    def estimate(self) -> float:
        return self.hits / self.trials

    @property
    def halfwidth(self) -> float:
        p = self.estimate
        return 1.96 * math.sqrt(p * (1.0 - p) / self.trials)

    @property
    def unknown_rate(self) -> float:
        return self.unknown / self.trials


_CHUNK = 1 << 14


def _sweep_sl2_st(oracle, grid, m, seed):
    # draw_table order: 0=I, 1=S, 2=S^-1, 3=T, 4=T^-1 (right multiplication)
    hits = {n: 0 for n in grid}
    unknown = {n: 0 for n in grid}
    cps = sorted(grid)
    nmax = cps[-1]
    hit_raw = oracle.hit_raw
    for t0 in range(0, m, _CHUNK):
        cnt = min(_CHUNK, m - t0)
        rows = prng.draw_block(seed, t0, cnt, nmax, 5).tobytes()
        for r in range(cnt):
            base = r * nmax
            a, b, c, d = 1, 0, 0, 1
            k = 0
            for cp in cps:
                for g in rows[base + k:base + cp]:
                    if g == 3:
                        b += a
                        d += c
                    elif g == 4:
                        b -= a
                        d -= c
                    elif g == 1:
                        a, b = -b, a
                        c, d = -d, c
                    elif g == 2:
                        a, b = b, -a
                        c, d = d, -c
                k = cp
                v = hit_raw((a, b, c, d))
                if v is None:
                    unknown[cp] += 1
                elif v:
                    hits[cp] += 1
    return hits, unknown


def _sweep_sl2_elementary(oracle, grid, m, seed):
    # draw_table order: 0=I, 1=E12(+1), 2=E12(-1), 3=E21(+1), 4=E21(-1)
    hits = {n: 0 for n in grid}
    unknown = {n: 0 for n in grid}
    cps = sorted(grid)
    nmax = cps[-1]
    hit_raw = oracle.hit_raw
    for t0 in range(0, m, _CHUNK):
        cnt = min(_CHUNK, m - t0)
        rows = prng.draw_block(seed, t0, cnt, nmax, 5).tobytes()
        for r in range(cnt):
            base = r * nmax
            a, b, c, d = 1, 0, 0, 1
            k = 0
            for cp in cps:
                for g in rows[base + k:base + cp]:
                    if g == 1:
                        b += a
                        d += c
                    elif g == 2:
                        b -= a
                        d -= c
                    elif g == 3:
                        a += b
                        c += d
                    elif g == 4:
                        a -= b
                        c -= d
                k = cp
                v = hit_raw((a, b, c, d))
                if v is None:
                    unknown[cp] += 1
                elif v:
                    hits[cp] += 1
    return hits, unknown


def _sweep_matrix_generic(A, oracle, grid, m, seed):
    table = [g.flat() for g in A.draw_table()]
    dim = A.draw_table()[0].dimension
    ident = tuple(1 if i == j else 0 for i in range(dim) for j in range(dim))
    idx = range(dim)
    hits = {n: 0 for n in grid}
    unknown = {n: 0 for n in grid}
    cps = sorted(grid)
    nmax = cps[-1]
    hit_raw = oracle.hit_raw
    is_ident = [g.is_identity() for g in A.draw_table()]
    for t0 in range(0, m, _CHUNK):
        cnt = min(_CHUNK, m - t0)
        rows = prng.draw_block(seed, t0, cnt, nmax, len(table)).tobytes()
        for r in range(cnt):
            base = r * nmax
            st = ident
            k = 0
            for cp in cps:
                for g in rows[base + k:base + cp]:
                    if is_ident[g]:
                        continue
                    gg = table[g]
                    st = tuple(
                        sum(st[i * dim + t] * gg[t * dim + j] for t in idx)
                        for i in idx for j in idx
                    )
                k = cp
                v = hit_raw(st)
                if v is None:
                    unknown[cp] += 1
                elif v:
                    hits[cp] += 1
    return hits, unknown


def _sweep_abelian(A, oracle, grid, m, seed):
    """Abelian walks. Vectorized when the oracle supports batch verdicts.

    The int64 lanes are exact: increments are -1/0/+1 and the guard
    nmax < 2^62 cannot overflow partial sums.
    """
    table = [g.exponents for g in A.draw_table()]
    rank = len(table[0])
    cps = sorted(grid)
    nmax = cps[-1]
    hits = {n: 0 for n in grid}
    unknown = {n: 0 for n in grid}
    batch = getattr(oracle, "hit_raw_batch", None)
    if batch is not None and nmax * max(abs(x) for t in table for x in t) < 2 ** 62:
        inc = [np.array([t[r] for t in table], dtype=np.int64) for r in range(rank)]
        chunk = max(1, min(_CHUNK, (1 << 22) // max(1, nmax)))
        for t0 in range(0, m, chunk):
            cnt = min(chunk, m - t0)
            draws = prng.draw_block(seed, t0, cnt, nmax, len(table))
            coords = [np.cumsum(inc[r][draws], axis=1, dtype=np.int64) for r in range(rank)]
            for cp in cps:
                state = tuple(coords[r][:, cp - 1] for r in range(rank))
                verdict = batch(state)
                hits[cp] += int(np.count_nonzero(verdict))
        return hits, unknown
    hit_raw = oracle.hit_raw
    for t0 in range(0, m, _CHUNK):
        cnt = min(_CHUNK, m - t0)
        rows = prng.draw_block(seed, t0, cnt, nmax, len(table)).tobytes()
        for r in range(cnt):
            base = r * nmax
            st = [0] * rank
            k = 0
            for cp in cps:
                for g in rows[base + k:base + cp]:
                    t = table[g]
                    for i in range(rank):
                        st[i] += t[i]
                k = cp
                v = hit_raw(tuple(st))
                if v is None:
                    unknown[cp] += 1
                elif v:
                    hits[cp] += 1
    return hits, unknown


def mc_sweep(A: GeneratorMultiset, oracle, grid: Sequence[int], m: int, seed: int,
             unknown_cap: Optional[float] = None) -> List[MCEstimate]:
    """Monte Carlo estimates of P(omega_n in Z) at every n in grid.

    One pass over trials with checkpoints: identical to calling
    hit_probability_mc per n, because draws are counter-based.
    """
    if not grid or min(grid) < 1 or m < 1:
        raise DomainError("grid must be non-empty with n >= 1 and m >= 1")
    grid = sorted(set(grid))
    first = A.draw_table()[0]
    if A.tag == "sl2_st":
        hits, unknown = _sweep_sl2_st(oracle, grid, m, seed)
    elif A.tag == "sl2_elementary":
        hits, unknown = _sweep_sl2_elementary(oracle, grid, m, seed)
    elif isinstance(first, AbelianElement):
        hits, unknown = _sweep_abelian(A, oracle, grid, m, seed)
    else:
        hits, unknown = _sweep_matrix_generic(A, oracle, grid, m, seed)
    out = []
    for n in grid:
        est = MCEstimate(n=n, trials=m, hits=hits[n], unknown=unknown[n])
        if unknown_cap is not None and est.unknown_rate > unknown_cap:
            raise UnknownRateExceeded(
                f"UNKNOWN rate {est.unknown_rate:.3g} at n={n} above cap {unknown_cap}")
        out.append(est)
    return out


def hit_probability_mc(A: GeneratorMultiset, n: int, oracle, m: int,
                       seed: int) -> MCEstimate:
    """Estimate and 95% half-width for P(omega_n in Z)."""
    if n == 0:
        ident = A.identity_element()
        v = oracle.global_verdict(ident)
        hits = m if v.status == "IN" else 0
        unk = m if v.status == "UNKNOWN" else 0
        return MCEstimate(n=0, trials=m, hits=hits, unknown=unk)
    return mc_sweep(A, oracle, [n], m, seed)[0]
