"""Prime enumeration, arithmetic in Z_p, and prime sets for integer-rank lifting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Sequence

import numpy as np

# residues are int64; products of two residues must not overflow
MAX_PRIME = 1 << 31


class PrimeMode(str, Enum):
    """How many primes to track.

    ``product``: the shortest run of primes whose product clears the
    determinant bound.  ``paper``: every prime up to ``max(k, log2 N)**3``,
    a much larger set kept for comparison.
    """

    PRODUCT = "product"
    PAPER = "paper"


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple
    mode: PrimeMode
    bit_bound: int

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def product(self) -> int:
        return math.prod(self.primes)


def sieve_primes(limit: int) -> List[int]:
    """Return all primes <= limit in ascending order."""
    if limit < 2:
        return []
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if flags[q]:
            flags[q * q :: q] = False
    return [int(q) for q in np.flatnonzero(flags)]


def mod_inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ValueError(f"no inverse: 0 mod {p}")
    return pow(a, -1, p)


def ceil_log2(x: int) -> int:
    """Smallest e with 2**e >= x, for integer x >= 1."""
    return (x - 1).bit_length()


def determinant_bits(k: int, max_abs: int) -> int:
    """Bit bound for any k x k minor with entries in [-max_abs, max_abs].

    ``ceil(log2 k!) + k * ceil(log2 max(N, 2)) + 1``; the log of N is
    clamped at 1 so that 0/1 matrices still get a usable bound.
    """
    return ceil_log2(math.factorial(k)) + k * ceil_log2(max(max_abs, 2)) + 1


def primes_exceeding(bit_bound: int, exclude: Iterable[int] = ()) -> List[int]:
    """Shortest ascending run of primes whose product exceeds ``2**bit_bound``."""
    skip = set(exclude)
    target = 1 << bit_bound
    # sum of log p over primes <= x is ~x, so a limit of 2*bits*ln2 + slack suffices
    limit = max(16, int(2 * bit_bound * math.log(2)) + 16)
    while True:
        chosen: List[int] = []
        prod = 1
        for q in sieve_primes(limit):
            if q in skip:
                continue
            chosen.append(q)
            prod *= q
            if prod > target:
                return chosen
        limit *= 2


def select_prime_set(n: int, m: int, max_abs: int, mode: PrimeMode | str = PrimeMode.PRODUCT) -> PrimeSet:
    """Choose primes so that max-over-primes rank mod p equals the rational rank.

    Any nonzero minor of an ``n x m`` integer matrix with entries bounded by
    ``max_abs`` stays nonzero modulo at least one prime of the returned set.
    """
    if min(n, m, max_abs) < 1:
        raise ValueError("n, m and N must be positive")
    mode = PrimeMode(mode)
    k = min(n, m)
    bits = determinant_bits(k, max_abs)
    if mode is PrimeMode.PRODUCT:
        return PrimeSet(tuple(primes_exceeding(bits)), mode, bits)
    # 1x1 matrices with N <= 2 would otherwise get an empty (unsound) set
    limit = max(max(k, ceil_log2(max(max_abs, 2))) ** 3, 3)
    return PrimeSet(tuple(sieve_primes(limit)), mode, bits)


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank of a dense matrix over Z_p by row reduction (vectorized per pivot)."""
    work = np.array(matrix, dtype=np.int64) % p
    rows, cols = work.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(work[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            work[[rank, piv]] = work[[piv, rank]]
        inv = pow(int(work[rank, c]), -1, p)
        work[rank] = work[rank] * inv % p
        below = work[rank + 1 :, c].copy()
        if below.any():
            work[rank + 1 :] = (work[rank + 1 :] - below[:, None] * work[rank]) % p
        rank += 1
    return rank


class InverseTable:
    """Vectorized modular inverses for a fixed collection of primes.

    Small primes use a lookup table; if any prime is large the table would
    be too big, so inverses fall back to square-and-multiply by Fermat.
    """

    TABLE_LIMIT = 1 << 16

    def __init__(self, primes: Sequence[int]):
        self.primes = np.asarray(primes, dtype=np.int64)
        distinct = sorted(set(int(q) for q in primes))
        pmax = distinct[-1] if distinct else 2
        self.table = None
        if pmax <= self.TABLE_LIMIT:
            index = {q: r for r, q in enumerate(distinct)}
            self.row = np.array([index[int(q)] for q in primes], dtype=np.int64)
            self.table = np.zeros((len(distinct), pmax), dtype=np.int64)
            for r, q in enumerate(distinct):
                vals = np.arange(1, q, dtype=np.int64)
                self.table[r, 1:q] = [pow(int(x), -1, q) for x in vals]

    def __call__(self, values: np.ndarray, slots: np.ndarray) -> np.ndarray:
        """Inverse of ``values[k]`` modulo the prime of slot ``slots[k]`` (0 maps to 0)."""
        if self.table is not None:
            return self.table[self.row[slots], values]
        mods = self.primes[slots]
        return _pow_mod(values, mods - 2, mods)


def _pow_mod(base: np.ndarray, exp: np.ndarray, mod: np.ndarray) -> np.ndarray:
    result = np.ones_like(base)
    base = base % mod
    exp = exp.copy()
    while exp.any():
        odd = (exp & 1).astype(bool)
        result = np.where(odd, result * base % mod, result)
        base = base * base % mod
        exp >>= 1
    return result
