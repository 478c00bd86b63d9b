"""Brute-force reference implementations.

Everything here is deliberately naive, pure Python, and shares no code with
the incremental trackers: these functions are what the trackers are checked
against.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

INT64_MAX = (1 << 63) - 1


def gaussian_rank_mod_p(matrix: Sequence[Sequence[int]], p: int) -> int:
    """Row-echelon pivot count over Z_p."""
    rows = [[int(x) % p for x in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c] * inv % p
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def gaussian_rank_exact(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Raises OverflowError if an intermediate leaves the signed 64-bit range;
    shrink the instance if that happens.
    """
    a = [[int(x) for x in row] for row in matrix]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        pivot = next((r for r in range(rank, nrows) if a[r][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for r in range(rank + 1, nrows):
            for cc in range(c + 1, ncols):
                val = (a[rank][c] * a[r][cc] - a[r][c] * a[rank][cc]) // prev
                if abs(val) > INT64_MAX:
                    raise OverflowError("Bareiss intermediate exceeds 64 bits")
                a[r][cc] = val
            a[r][c] = 0
        prev = a[rank][c]
        rank += 1
        if rank == nrows:
            break
    return rank


def bfs_reach(n: int, edges: Iterable[Tuple[int, int]], s: int, t: int) -> bool:
    """Directed reachability from s to t; every node reaches itself."""
    adj: Dict[int, List[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].append(v)
    seen = {s}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if x == t:
            return True
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return False


def _lit_node(lit: int, n: int) -> int:
    return lit if lit > 0 else n - lit


def strongly_connected_components(num_nodes: int, adj: Dict[int, List[int]]) -> Dict[int, int]:
    """Kosaraju; returns node -> component id. Nodes are 1..num_nodes."""
    order: List[int] = []
    seen = set()
    for root in range(1, num_nodes + 1):
        if root in seen:
            continue
        seen.add(root)
        stack = [(root, iter(adj.get(root, ())))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                order.append(node)
            elif nxt not in seen:
                seen.add(nxt)
                stack.append((nxt, iter(adj.get(nxt, ()))))
    radj: Dict[int, List[int]] = {}
    for u, vs in adj.items():
        for v in vs:
            radj.setdefault(v, []).append(u)
    comp: Dict[int, int] = {}
    for root in reversed(order):
        if root in comp:
            continue
        comp[root] = root
        stack = [root]
        while stack:
            x = stack.pop()
            for y in radj.get(x, ()):
                if y not in comp:
                    comp[y] = root
                    stack.append(y)
    return comp


def two_sat_scc(n: int, clauses: Iterable[Tuple[int, int]]) -> bool:
    """2-SAT by implication-graph SCCs. Literals are +x / -x for x in 1..n."""
    adj: Dict[int, List[int]] = {}
    for a, b in clauses:
        adj.setdefault(_lit_node(-a, n), []).append(_lit_node(b, n))
        adj.setdefault(_lit_node(-b, n), []).append(_lit_node(a, n))
    comp = strongly_connected_components(2 * n, adj)
    return all(comp[x] != comp[n + x] for x in range(1, n + 1))


def two_sat_truth_table(n: int, clauses: Iterable[Tuple[int, int]]) -> bool:
    clauses = list(clauses)
    for bits in itertools.product((False, True), repeat=n):
        def val(lit):
            return bits[abs(lit) - 1] == (lit > 0)
        if all(val(a) or val(b) for a, b in clauses):
            return True
    return False


def max_matching_exhaustive(n: int, edges: Iterable[Tuple[int, int]]) -> int:
    """Maximum matching size by a DP over vertex subsets (n <= 20)."""
    if n > 20:
        raise ValueError("exhaustive matching oracle is limited to n <= 20")
    nbr = [0] * n
    for i, j in edges:
        nbr[i - 1] |= 1 << (j - 1)
        nbr[j - 1] |= 1 << (i - 1)

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == 0:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        result = best(rest)
        cand = nbr[v] & rest
        while cand:
            low = cand & -cand
            result = max(result, 1 + best(rest & ~low))
            cand ^= low
        return result

    return best((1 << n) - 1)


def maximum_matchings(n: int, edges: Iterable[Tuple[int, int]]) -> List[FrozenSet[Tuple[int, int]]]:
    """Enumerate every matching of maximum size."""
    edge_list = sorted({(min(i, j), max(i, j)) for i, j in edges})
    found: List[FrozenSet[Tuple[int, int]]] = []
    best = 0

    def extend(start: int, used: int, chosen: List[Tuple[int, int]]):
        nonlocal best
        if len(chosen) > best:
            best = len(chosen)
            found.clear()
        if len(chosen) == best:
            found.append(frozenset(chosen))
        for idx in range(start, len(edge_list)):
            i, j = edge_list[idx]
            bits = (1 << i) | (1 << j)
            if used & bits:
                continue
            chosen.append((i, j))
            extend(idx + 1, used | bits, chosen)
            chosen.pop()

    extend(0, 0, [])
    return found


def is_isolated(n: int, edges: Iterable[Tuple[int, int]], w) -> bool:
    """Does ``w`` give a unique minimum-weight maximum matching?

    ``w`` maps an edge ``(i, j)`` with ``i < j`` to its weight (a dict or
    anything indexable that way).
    """
    weights = sorted(sum(w[e] for e in mm) for mm in maximum_matchings(n, edges))
    return len(weights) == 1 or weights[0] != weights[1]


def product_graph_edges(labeled_edges, transitions):
    """Edges of G x M: ((v, q), (v', q')) for (v, a, v') in G and (q, a, q') in M."""
    return {
        ((v, q), (v2, q2))
        for (v, a, v2) in labeled_edges
        for (q, b, q2) in transitions
        if a == b
    }


def rpq_product_bfs(labeled_edges, transitions, s, t, initial, accepting) -> bool:
    """Regular path query answered by BFS on the explicitly built product graph."""
    adj: Dict[tuple, List[tuple]] = {}
    for x, y in product_graph_edges(labeled_edges, transitions):
        adj.setdefault(x, []).append(y)
    start = (s, initial)
    goals = {(t, f) for f in accepting}
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x in goals:
            return True
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return False
