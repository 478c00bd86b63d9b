"""Rank over Q of signed-integer matrices, maintained modulo a sound prime set."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .modp import PrimeMode, PrimeSet, select_prime_set
from .rank_core import GoodBasisStack


class IntMatrixTracker:
    """Integer ``n x m`` matrices with entries bounded by ``N`` in absolute value.

    Every change is fanned out to one A-good basis per prime; the rational
    rank is the maximum of the per-prime ranks.  ``copies`` independent
    matrices of the same shape can share one tracker (they are updated at
    the same position in lockstep, possibly with different values); this is
    what the all-pairs reachability tracker uses.

    Indices are 1-based.
    """

    def __init__(
        self,
        n: int,
        m: int,
        N: int,
        mode: PrimeMode | str = PrimeMode.PRODUCT,
        *,
        copies: int = 1,
        primes: PrimeSet | Sequence[int] | None = None,
        backend: str | None = None,
    ):
        if copies < 1:
            raise ValueError("copies must be positive")
        self.n, self.m, self.N = n, m, N
        self.copies = copies
        if primes is None:
            primes = select_prime_set(n, m, N, mode)
        self.prime_set = primes
        self.primes = [int(q) for q in primes]
        self.entries = np.zeros((copies, n, m), dtype=np.int64)
        self.per_prime = GoodBasisStack(n, m, self.primes * copies, backend)
        self.entry_updates = 0

    def set_entry_int(self, i: int, j: int, value) -> None:
        """Set entry ``(i, j)`` to ``value`` (an int, or one int per copy)."""
        vals = np.broadcast_to(np.asarray(value, dtype=np.int64), (self.copies,))
        if np.abs(vals).max() > self.N:
            raise ValueError(f"entry exceeds declared bound N={self.N}")
        if not (1 <= i <= self.n and 1 <= j <= self.m):
            raise IndexError(f"entry ({i}, {j}) outside {self.n}x{self.m} matrix")
        self.entries[:, i - 1, j - 1] = vals
        # slot order is copy-major: slot = copy * P + prime index
        self.per_prime.set_entry(i, j, np.repeat(vals, len(self.primes)))
        self.entry_updates += 1

    def prime_ranks(self) -> np.ndarray:
        """``(copies, P)`` array of ranks modulo each prime."""
        return self.per_prime.ranks().reshape(self.copies, len(self.primes))

    def ranks(self) -> np.ndarray:
        return self.prime_ranks().max(axis=1)

    def rank_int(self, copy: int = 0) -> int:
        if not 0 <= copy < self.copies:
            raise IndexError(f"copy {copy} outside 0..{self.copies - 1}")
        P = len(self.primes)
        colnz = self.per_prime._colnz[copy * P : (copy + 1) * P]
        return int(self.per_prime.m - (colnz == 0).sum(axis=1).min())

    def matrix(self, copy: int = 0) -> np.ndarray:
        return self.entries[copy].copy()
