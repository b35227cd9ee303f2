"""Deterministic labeled random streams and population sampling.

Every run owns a set of `RandomStream` objects keyed by (seed, label).
The backing generator is Philox, a counter-based generator whose output
is reproducible bit-for-bit across runs and platforms.  Distinct labels
("matching", "toss", "preferences", ...) give statistically independent
streams, so consuming draws for one purpose never shifts another.

Draw-order contract: each stream is consumed element-sequentially, and
numpy's Philox generation is invariant to how a sequence of draws is
split across calls.  Runners therefore draw in chunks without affecting
trajectories (pinned by a regression test).
"""

import hashlib

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

from .errors import ConfigError, ContractError


def _label_words(label: str) -> tuple[int, int]:
    """Hash a stream label to two stable 64-bit words."""
    digest = hashlib.blake2b(label.encode("utf-8"), digest_size=16).digest()
    return (
        int.from_bytes(digest[:8], "little"),
        int.from_bytes(digest[8:], "little"),
    )


class RandomStream:
    """One labeled deterministic uniform stream."""

    def __init__(self, seed: int, label: str):
        if not 0 <= int(seed) < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = int(seed)
        self.label = label
        self._gen = Generator(Philox(SeedSequence([self.seed, *_label_words(label)])))

    def random(self, size=None):
        """Uniform draws on [0, 1)."""
        return self._gen.random(size)

    def uniform(self, lo: float, hi: float, size=None):
        """Uniform draws on [lo, hi)."""
        return draw_uniform(self, lo, hi, size)

    def integers(self, lo: int, hi: int, size=None):
        """Uniform integer draws on [lo, hi)."""
        return self._gen.integers(lo, hi, size=size)

    def permutation(self, n: int) -> np.ndarray:
        """Uniform random permutation of range(n)."""
        return self._gen.permutation(n)


def draw_uniform(stream: RandomStream, lo: float, hi: float, size=None):
    """Uniform draws on [lo, hi) from `stream`.

    lo < hi is a caller contract, not a user-input condition.
    """
    if not lo < hi:
        raise ContractError(f"draw_uniform requires lo < hi, got [{lo}, {hi})")
    u = stream.random(size)
    v = lo + (hi - lo) * u
    # guard the half-open upper bound against rounding on huge intervals
    return np.minimum(v, np.nextafter(hi, lo))


def sample_single_pairs(stream: RandomStream, n_agents: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Sample `count` pairs of distinct agent indices, each unordered pair
    equiprobable.

    Consumes 2*count integer draws from `stream`: first the block of first
    indices, then the block of second indices.
    """
    if n_agents < 2:
        raise ConfigError(f"need at least 2 agents to form a pair, got {n_agents}")
    first = stream.integers(0, n_agents, size=count)
    second = stream.integers(0, n_agents - 1, size=count)
    second = second + (second >= first)
    return first, second


def sample_single_pair(stream: RandomStream, n_agents: int) -> tuple[int, int]:
    """Sample one pair of distinct agent indices, uniform over unordered pairs."""
    first, second = sample_single_pairs(stream, n_agents, 1)
    return int(first[0]), int(second[0])


def sample_full_matching(stream: RandomStream, n_agents: int) -> np.ndarray:
    """Sample a uniform random (near-)perfect matching.

    Returns an (n_agents // 2, 2) index array of disjoint pairs.  For odd
    populations one uniformly chosen agent sits the round out.
    """
    if n_agents < 2:
        raise ConfigError(f"need at least 2 agents to form a matching, got {n_agents}")
    perm = stream.permutation(n_agents)
    m = n_agents // 2
    return perm[: 2 * m].reshape(m, 2)


def flag_fraction(stream: RandomStream, n_agents: int, fraction: float) -> np.ndarray:
    """Flag exactly round(fraction * n_agents) agents, chosen uniformly.

    Rounding is half-up so the configured fraction is honored exactly.
    The returned boolean vector is meant to stay fixed for a whole run.
    The permutation is drawn even for fraction 0 or 1, so runs with
    different fractions consume streams identically.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ConfigError(f"fraction must lie in [0, 1], got {fraction}")
    k = int(np.floor(fraction * n_agents + 0.5))
    perm = stream.permutation(n_agents)
    flags = np.zeros(n_agents, dtype=bool)
    flags[perm[:k]] = True
    return flags


def partition_monopolists(stream: RandomStream, n_agents: int, fraction: float) -> np.ndarray:
    """Choose the fixed monopolist set: exactly round(fraction * n_agents) agents."""
    return flag_fraction(stream, n_agents, fraction)
