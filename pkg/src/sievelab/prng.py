"""Counter-based pseudorandom draws keyed by (master seed, trial, step).

Every draw is a pure function of its key, so trials are reproducible under
any execution order and a walk prefix never depends on how many further
steps will be taken. The mixer is the standard splitmix64 finalizer; the
same stream is exposed scalar (Python ints) and vectorized (numpy uint64),
and the two are tested to agree bit for bit.
"""

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MUL1) & _MASK
    z = ((z ^ (z >> 27)) * _MUL2) & _MASK
    return z ^ (z >> 31)


def trial_key(seed: int, trial: int) -> int:
    """Per-trial stream key; injective in trial for a fixed seed."""
    return mix64((seed + (trial + 1) * _GAMMA) & _MASK)


def draw(seed: int, trial: int, step: int) -> int:
    """The raw 64-bit value for one (seed, trial, step) coordinate."""
    return mix64((trial_key(seed, trial) + (step + 1) * _GAMMA) & _MASK)


def draw_indices(seed: int, trial: int, n: int, bound: int, start: int = 0) -> list:
    """n draws uniform on [0, bound), for steps start..start+n-1."""
    key = trial_key(seed, trial)
    out = []
    for s in range(start, start + n):
        out.append(mix64((key + (s + 1) * _GAMMA) & _MASK) % bound)
    return out


def _mix64_np(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MUL1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MUL2)
    return z ^ (z >> np.uint64(31))


def draw_block(seed: int, trial0: int, ntrials: int, nsteps: int, bound: int):
    """(ntrials, nsteps) uint8 array of draws in [0, bound), trials trial0...

    Row t equals draw_indices(seed, trial0+t, nsteps, bound). bound must
    fit a uint8 (all generator multisets here are tiny).
    """
    if not 1 <= bound <= 255:
        raise ValueError("bound must be in [1, 255]")
    trials = np.arange(trial0, trial0 + ntrials, dtype=np.uint64)
    keys = _mix64_np(np.uint64(seed & _MASK) + (trials + np.uint64(1)) * np.uint64(_GAMMA))
    steps = (np.arange(nsteps, dtype=np.uint64) + np.uint64(1)) * np.uint64(_GAMMA)
    vals = _mix64_np(keys[:, None] + steps[None, :])
    return (vals % np.uint64(bound)).astype(np.uint8)
