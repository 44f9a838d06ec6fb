"""Seeded trajectory simulation.

Random numbers come from SplitMix64 (Steele, Lea & Flood 2014), pinned
here so golden outputs never drift:

    state += 0x9E3779B97F4A7C15                      (mod 2**64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9         (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB         (mod 2**64)
    output z ^ (z >> 31)

A uniform in [0, 1) is ``(output >> 11) * 2**-53``.

Per-trial seeds are ``mix(mix(mix(seed) ^ start) ^ trial)`` where ``mix``
is one SplitMix64 step taken from the given state.  Each trial then
runs its own SplitMix64 stream, so trials are independent of the order
in which they are evaluated.

Transitions use the inverse CDF of the current row, columns in
ascending order.  Entries below zero (allowed within tolerance) count
as zero, and the last positive column absorbs whatever mass rounding
leaves over.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .core import MarkovChain
from .errors import DegenerateRow

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MUL1 = 0xBF58476D1CE4E5B9
MUL2 = 0x94D049BB133111EB
TWO_M53 = 2.0 ** -53


def mix(x: int) -> int:
    """One SplitMix64 output from state ``x``."""
    z = (x + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * MUL1) & MASK64
    z = ((z ^ (z >> 27)) * MUL2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, start: int, trial: int) -> int:
    return mix(mix(mix(seed & MASK64) ^ start) ^ trial)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        out = mix(self.state)
        self.state = (self.state + GOLDEN) & MASK64
        return out

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * TWO_M53


def _mix_array(x: np.ndarray) -> np.ndarray:
    # uint64 arithmetic in numpy wraps modulo 2**64
    z = x + np.uint64(GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MUL1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MUL2)
    return z ^ (z >> np.uint64(31))


class _Sampler:
    """Cumulative rows for inverse-CDF sampling."""

    def __init__(self, chain: MarkovChain):
        p = np.clip(chain.matrix.entries, 0.0, None)
        self.n = chain.n
        self.cum = np.cumsum(p, axis=1)
        self.last = np.zeros(self.n, dtype=np.int64)
        self.degenerate = np.zeros(self.n, dtype=bool)
        for i in range(self.n):
            pos = np.flatnonzero(p[i] > 0)
            if pos.size == 0 or self.cum[i, -1] <= chain.tol:
                self.degenerate[i] = True
            else:
                self.last[i] = pos[-1]

    def check(self, i: int) -> None:
        if self.degenerate[i]:
            raise DegenerateRow(i)

    def draw(self, i: int, u: float) -> int:
        j = int(np.searchsorted(self.cum[i], u, side="right"))
        return min(j, int(self.last[i]))

    def draw_many(self, states: np.ndarray, u: np.ndarray) -> np.ndarray:
        out = np.empty_like(states)
        for i in np.unique(states):
            sel = states == i
            self.check(int(i))
            j = np.searchsorted(self.cum[i], u[sel], side="right")
            out[sel] = np.minimum(j, self.last[i])
        return out


def _start_index(chain: MarkovChain, start) -> int:
    return chain.matrix.index(start)


@dataclass(frozen=True)
class Trajectory:
    seed: int
    start: int
    states: tuple[int, ...]


@dataclass(frozen=True)
class EmpiricalEstimate:
    value: float
    trials: int
    stderr: float

    @classmethod
    def from_count(cls, hits: int, trials: int) -> "EmpiricalEstimate":
        value = hits / trials
        return cls(value, trials, sqrt(value * (1.0 - value) / trials))


def simulate(chain: MarkovChain, start, steps: int, seed: int) -> Trajectory:
    """Sample ``steps`` transitions from ``start`` with the raw seed ``seed``."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    i = _start_index(chain, start)
    sampler = _Sampler(chain)
    rng = SplitMix64(seed)
    states = [i]
    for _ in range(steps):
        sampler.check(states[-1])
        states.append(sampler.draw(states[-1], rng.uniform()))
    return Trajectory(seed, i, tuple(states))


def _batch_states(start: int, trials: int, seed: int) -> np.ndarray:
    """Generator state arrays for ``trials`` independent runs from ``start``."""
    t = np.arange(trials, dtype=np.uint64)
    base = np.uint64(mix(mix(seed & MASK64) ^ start))
    return _mix_array(base ^ t)


def _advance(rng_state: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    u = (_mix_array(rng_state) >> np.uint64(11)).astype(np.float64) * TWO_M53
    return rng_state + np.uint64(GOLDEN), u


@dataclass(frozen=True)
class TransitionEstimate:
    """Empirical ``m``-step transition matrix built from hit counts."""

    counts: np.ndarray
    trials: int
    m: int

    @property
    def value(self) -> np.ndarray:
        return self.counts / self.trials

    @property
    def stderr(self) -> np.ndarray:
        v = self.value
        return np.sqrt(v * (1.0 - v) / self.trials)

    def __getitem__(self, ij) -> EmpiricalEstimate:
        i, j = ij
        return EmpiricalEstimate.from_count(int(self.counts[i, j]), self.trials)

    def rows(self) -> list[list[EmpiricalEstimate]]:
        n = self.counts.shape[0]
        return [[self[i, j] for j in range(n)] for i in range(n)]


def empirical_transition(chain: MarkovChain, m: int, trials: int, seed: int) -> TransitionEstimate:
    """Fraction of runs from each ``i`` found at ``j`` after ``m`` steps.

    Run ``t`` from ``i`` uses generator seed ``derive_seed(seed, i, t)``,
    so it reproduces ``simulate(chain, i, m, derive_seed(seed, i, t))``.
    """
    if m < 1 or trials < 1:
        raise ValueError("m and trials must be positive")
    sampler = _Sampler(chain)
    counts = np.zeros((chain.n, chain.n), dtype=np.int64)
    with np.errstate(over="ignore"):
        for i in range(chain.n):
            rng = _batch_states(i, trials, seed)
            states = np.full(trials, i, dtype=np.int64)
            for _ in range(m):
                rng, u = _advance(rng)
                states = sampler.draw_many(states, u)
            counts[i] = np.bincount(states, minlength=chain.n)
    return TransitionEstimate(counts, trials, m)


def estimate_return_frequency(
    chain: MarkovChain, j, horizon: int, trials: int, seed: int
) -> EmpiricalEstimate:
    """Share of runs from ``j`` that revisit ``j`` within ``horizon`` steps.

    A lower bound on the return probability; runs stop at first return.
    """
    if horizon < 1 or trials < 1:
        raise ValueError("horizon and trials must be positive")
    j = _start_index(chain, j)
    sampler = _Sampler(chain)
    with np.errstate(over="ignore"):
        rng = _batch_states(j, trials, seed)
        states = np.full(trials, j, dtype=np.int64)
        returned = np.zeros(trials, dtype=bool)
        for _ in range(horizon):
            live = ~returned
            if not live.any():
                break
            rng_live, u = _advance(rng[live])
            rng[live] = rng_live
            states[live] = sampler.draw_many(states[live], u)
            returned |= states == j
    return EmpiricalEstimate.from_count(int(returned.sum()), trials)
