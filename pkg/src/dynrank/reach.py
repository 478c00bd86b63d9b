"""Directed reachability under edge insertions and deletions, via matrix rank.

For a graph on ``n`` nodes with adjacency matrix ``A`` let ``C = nI - A``.
``C`` is strictly diagonally dominant, hence invertible, and its inverse is
``(1/n) * sum_k (A/n)^k``: entry ``(s, t)`` is nonzero exactly when ``t`` is
reachable from ``s`` (every node reaches itself through the ``k = 0`` term).

Append a row ``e_s`` and a column ``e_t`` (bottom-right entry 0) to get the
``(n+1) x (n+1)`` matrix ``M``.  The system ``C x = e_t, x_s = 0`` is
solvable iff ``(C^-1)_{s,t} = 0``, so ``rank(M) = n + 1`` iff ``s`` reaches
``t``.  An edge change touches exactly one entry of ``M``.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np

from .errors import InvariantError
from .modp import PrimeMode
from .rank_multi import IntMatrixTracker

Pair = Tuple[int, int]


class AllPairsReach:
    """Reachability for a list of ``(s, t)`` pairs (all ordered pairs by default).

    One matrix ``M`` per pair; all of them share the edge set, so an edge
    change is a single lockstep entry update across every pair.
    """

    def __init__(
        self,
        n: int,
        pairs: Optional[Iterable[Pair]] = None,
        mode: PrimeMode | str = PrimeMode.PRODUCT,
        backend: str | None = None,
    ):
        if n < 1:
            raise ValueError("graph needs at least one node")
        if pairs is None:
            pairs = [(s, t) for s in range(1, n + 1) for t in range(1, n + 1)]
        self.pairs: List[Pair] = list(pairs)
        for s, t in self.pairs:
            self._check_node(s, n)
            self._check_node(t, n)
        self.n = n
        self.index: Dict[Pair, int] = {pair: k for k, pair in enumerate(self.pairs)}
        self.edges: Set[Pair] = set()
        self.M = IntMatrixTracker(n + 1, n + 1, n, mode, copies=len(self.pairs), backend=backend)
        self._initialize()

    @staticmethod
    def _check_node(v: int, n: int) -> None:
        if not 1 <= v <= n:
            raise IndexError(f"node {v} outside 1..{n}")

    def _initialize(self) -> None:
        n = self.n
        for r in range(1, n + 1):
            self.M.set_entry_int(r, r, n)
        sources = np.array([s for s, _ in self.pairs])
        targets = np.array([t for _, t in self.pairs])
        for c in range(1, n + 1):
            if (sources == c).any():
                self.M.set_entry_int(n + 1, c, (sources == c).astype(np.int64))
        for r in range(1, n + 1):
            if (targets == r).any():
                self.M.set_entry_int(r, n + 1, (targets == r).astype(np.int64))

    def insert_edge(self, u: int, v: int) -> None:
        self._check_node(u, self.n)
        self._check_node(v, self.n)
        if u == v:
            raise ValueError("self-loops excluded")
        if (u, v) in self.edges:
            return
        self.edges.add((u, v))
        self.M.set_entry_int(u, v, -1)

    def delete_edge(self, u: int, v: int) -> None:
        if (u, v) not in self.edges:
            return
        self.edges.discard((u, v))
        self.M.set_entry_int(u, v, 0)

    def ranks(self) -> np.ndarray:
        ranks = self.M.ranks()
        if not np.isin(ranks, (self.n, self.n + 1)).all():
            raise InvariantError(f"rank of (B'|b') outside {{{self.n}, {self.n + 1}}}: {ranks.tolist()}")
        return ranks

    def reachable(self, s: int, t: int) -> bool:
        try:
            k = self.index[(s, t)]
        except KeyError:
            raise KeyError(f"pair ({s}, {t}) is not tracked") from None
        rank = self.M.rank_int(k)
        if rank not in (self.n, self.n + 1):
            raise InvariantError(f"rank of (B'|b') for pair ({s}, {t}) is {rank}, outside {{{self.n}, {self.n + 1}}}")
        return rank == self.n + 1

    def reachability(self) -> Dict[Pair, bool]:
        ranks = self.ranks()
        return {pair: bool(ranks[k] == self.n + 1) for pair, k in self.index.items()}


class ReachTracker(AllPairsReach):
    """Reachability from a fixed ``s`` to a fixed ``t``."""

    def __init__(self, n: int, s: int, t: int, mode: PrimeMode | str = PrimeMode.PRODUCT, backend: str | None = None):
        self.s, self.t = s, t
        super().__init__(n, [(s, t)], mode, backend)

    def reachable(self, s: int | None = None, t: int | None = None) -> bool:
        if s is None and t is None:
            s, t = self.s, self.t
        return super().reachable(s, t)

    def rank(self) -> int:
        return self.M.rank_int(0)
