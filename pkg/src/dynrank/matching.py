"""Maximum matching size under edge insertions and deletions (randomized).

For an undirected graph on ``n`` nodes and a weight ``w(i, j)`` per node
pair, ``B_{G,w}`` is the skew-symmetric matrix with ``2**w(i, j)`` at
``(i, j)`` and ``-2**w(i, j)`` at ``(j, i)`` for each edge ``i < j``.  Its
rank never exceeds twice the maximum matching size, and equals it when some
maximum matching is the unique one of minimum weight.

Weights are drawn uniformly from ``[1, 4 * n(n-1)/2]``, so a single weight
assignment isolates a minimum-weight maximum matching with probability at
least 3/4; taking the best of ``trials`` independent assignments fails with
probability at most ``4**-trials``.  The error is one-sided: the reported
size is never larger than the truth.

``B_{G,w}`` is never built over the integers.  Each (trial, prime) pair keeps
an A-good basis of ``B_{G,w} mod p``, with ``2**w mod p`` read from a table
of powers of two; the primes are chosen so that any nonzero minor of
``B_{G,w}`` survives modulo one of them.  The prime 2 is skipped because
every entry is even.
"""

from __future__ import annotations

from typing import Set, Tuple

import numpy as np

from .errors import InvariantError
from .modp import ceil_log2, primes_exceeding
from .rank_core import GoodBasisStack


def weight_bound(n: int) -> int:
    """Largest edge weight: four times the number of node pairs."""
    return max(4 * (n * (n - 1) // 2), 1)


def matching_prime_bits(n: int) -> int:
    """Bits of a bound on any minor of B_{G,w}: ``k! * 2**(W k) <= 2**(n log n + n W)``."""
    return n * weight_bound(n) + n * ceil_log2(max(n, 1)) + 1


class MatchingTracker:
    def __init__(self, n: int, trials: int = 20, seed: int = 0, backend: str | None = None):
        if n < 1 or trials < 1:
            raise ValueError("n and trials must be positive")
        self.n, self.trials, self.seed = n, trials, seed
        self.edges: Set[Tuple[int, int]] = set()
        rng = np.random.default_rng(seed)
        # weights[t, i, j] for i < j (0-based); the lower triangle is unused
        wmax = weight_bound(n)
        self.weights = np.triu(rng.integers(1, wmax + 1, size=(trials, n, n)), k=1)
        self.primes = primes_exceeding(matching_prime_bits(n), exclude=(2,))
        P = len(self.primes)
        self.per_prime = GoodBasisStack(n, n, self.primes * trials, backend)
        self._slot_primes = np.array(self.primes * trials, dtype=np.int64)
        self._slot_trial = np.repeat(np.arange(trials), P)
        self._slot_prime_idx = np.tile(np.arange(P), trials)
        # pow2[q, e] = 2**e mod primes[q]
        self._pow2 = np.ones((P, wmax + 1), dtype=np.int64)
        pr = np.array(self.primes, dtype=np.int64)
        for e in range(1, wmax + 1):
            self._pow2[:, e] = self._pow2[:, e - 1] * 2 % pr

    def weight(self, trial: int, i: int, j: int) -> int:
        i, j = min(i, j), max(i, j)
        return int(self.weights[trial, i - 1, j - 1])

    def _residues(self, i: int, j: int) -> np.ndarray:
        """``2**w(i, j) mod p`` for every (trial, prime) slot."""
        w = self.weights[self._slot_trial, i - 1, j - 1]
        return self._pow2[self._slot_prime_idx, w]

    def _check_pair(self, i: int, j: int) -> Tuple[int, int]:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"edge ({i}, {j}) outside 1..{self.n}")
        if i == j:
            raise ValueError("self-loops excluded")
        return min(i, j), max(i, j)

    def insert_edge(self, i: int, j: int) -> None:
        i, j = self._check_pair(i, j)
        if (i, j) in self.edges:
            return
        self.edges.add((i, j))
        x = self._residues(i, j)
        self.per_prime.set_entry(i, j, x)
        self.per_prime.set_entry(j, i, (self._slot_primes - x) % self._slot_primes)

    def delete_edge(self, i: int, j: int) -> None:
        i, j = self._check_pair(i, j)
        if (i, j) not in self.edges:
            return
        self.edges.discard((i, j))
        self.per_prime.set_entry(i, j, 0)
        self.per_prime.set_entry(j, i, 0)

    def trial_ranks(self) -> np.ndarray:
        """Rank of B_{G,w} over Q for each trial (max over primes)."""
        ranks = self.per_prime.ranks().reshape(self.trials, len(self.primes)).max(axis=1)
        if (ranks % 2).any():
            raise InvariantError(f"odd rank of a skew-symmetric matrix: {ranks.tolist()}")
        return ranks

    def max_matching_size(self) -> int:
        return int(self.trial_ranks().max()) // 2

    def has_perfect_matching(self) -> bool:
        return self.n % 2 == 0 and self.max_matching_size() == self.n // 2
