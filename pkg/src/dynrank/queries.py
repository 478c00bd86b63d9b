"""Dynamic 2-SAT and regular path queries, both reduced to reachability.

Derived edges (implications, product-graph edges) are reference counted:
several clauses or labeled edges can induce the same derived edge, and the
reachability trackers only see an insertion or deletion when a count moves
between 0 and 1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Set, Tuple

from .modp import PrimeMode
from .reach import AllPairsReach

Clause = Tuple[int, int]


class _RefCountedGraph:
    """Edge multiset in front of a reachability tracker."""

    def __init__(self, tracker: AllPairsReach):
        self.tracker = tracker
        self.counts: Counter = Counter()

    def adjust(self, edge: Tuple[int, int], delta: int) -> None:
        before = self.counts[edge]
        after = before + delta
        if after < 0:
            raise ValueError(f"refcount of {edge} would become negative")
        if after:
            self.counts[edge] = after
        else:
            del self.counts[edge]
        u, v = edge
        # self-loops never change reachability
        if u == v:
            return
        if before == 0 and after > 0:
            self.tracker.insert_edge(u, v)
        elif before > 0 and after == 0:
            self.tracker.delete_edge(u, v)


class TwoSatTracker:
    """Satisfiability of a 2-CNF formula under clause insertions and deletions.

    Literals are nonzero ints: ``+x`` for variable ``x``, ``-x`` for its
    negation (``1 <= x <= n``).  In the implication graph literal ``x`` is
    node ``x`` and ``-x`` is node ``n + x``; a clause ``(a or b)`` contributes
    the edges ``-a -> b`` and ``-b -> a``.
    """

    def __init__(self, n: int, mode: PrimeMode | str = PrimeMode.PRODUCT, backend: str | None = None):
        if n < 1:
            raise ValueError("need at least one variable")
        self.n = n
        self.clauses: Set[Clause] = set()
        pairs = [(x, n + x) for x in range(1, n + 1)] + [(n + x, x) for x in range(1, n + 1)]
        self.graph = _RefCountedGraph(AllPairsReach(2 * n, pairs, mode, backend))

    def node(self, lit: int) -> int:
        if lit == 0 or abs(lit) > self.n:
            raise ValueError(f"literal {lit} outside +-1..{self.n}")
        return lit if lit > 0 else self.n - lit

    def _implications(self, a: int, b: int):
        return (self.node(-a), self.node(b)), (self.node(-b), self.node(a))

    @staticmethod
    def _key(a: int, b: int) -> Clause:
        return (a, b) if a <= b else (b, a)

    def add_clause(self, a: int, b: int) -> None:
        edges = self._implications(a, b)
        key = self._key(a, b)
        if key in self.clauses:
            return
        self.clauses.add(key)
        for e in edges:
            self.graph.adjust(e, +1)

    def remove_clause(self, a: int, b: int) -> None:
        edges = self._implications(a, b)
        key = self._key(a, b)
        if key not in self.clauses:
            return
        self.clauses.discard(key)
        for e in edges:
            self.graph.adjust(e, -1)

    @property
    def implication_edges(self) -> Dict[Tuple[int, int], int]:
        return dict(self.graph.counts)

    def satisfiable(self) -> bool:
        reach = self.graph.tracker.reachability()
        n = self.n
        return not any(reach[(x, n + x)] and reach[(n + x, x)] for x in range(1, n + 1))


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton without epsilon moves."""

    states: Tuple[Hashable, ...]
    alphabet: FrozenSet[str]
    transitions: FrozenSet[Tuple[Hashable, str, Hashable]]
    initial: Hashable
    accepting: FrozenSet[Hashable]
    _index: Dict[Hashable, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError(f"initial state {self.initial!r} is not a state")
        if not self.accepting <= set(self.states):
            raise ValueError("accepting states must be states")
        for q, a, q2 in self.transitions:
            if q not in self.states or q2 not in self.states or a not in self.alphabet:
                raise ValueError(f"malformed transition {(q, a, q2)!r}")
        object.__setattr__(self, "_index", {q: k for k, q in enumerate(self.states)})

    @classmethod
    def build(cls, transitions: Iterable[Tuple[Hashable, str, Hashable]], initial, accepting, alphabet=None) -> "Nfa":
        transitions = frozenset(transitions)
        states: List[Hashable] = [initial]
        for q, _, q2 in sorted(transitions, key=repr):
            for s in (q, q2):
                if s not in states:
                    states.append(s)
        for f in accepting:
            if f not in states:
                states.append(f)
        if alphabet is None:
            alphabet = {a for _, a, _ in transitions}
        return cls(tuple(states), frozenset(alphabet), transitions, initial, frozenset(accepting))

    @classmethod
    def parse(cls, text: str) -> "Nfa":
        """Read the line format ``q a q'`` / ``initial q0`` / ``accept f ...`` / ``alphabet a ...``."""
        transitions, initial, accepting, alphabet = [], None, set(), None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            words = line.split()
            if words[0] == "initial" and len(words) == 2:
                initial = words[1]
            elif words[0] == "accept" and len(words) >= 2:
                accepting.update(words[1:])
            elif words[0] == "alphabet":
                alphabet = set(words[1:])
            elif len(words) == 3:
                transitions.append(tuple(words))
            else:
                raise ValueError(f"NFA line {lineno}: cannot parse {raw!r}")
        if initial is None:
            raise ValueError("NFA has no 'initial' line")
        if not accepting:
            raise ValueError("NFA has no 'accept' line")
        return cls.build(transitions, initial, accepting, alphabet)

    def index(self, q) -> int:
        return self._index[q]

    def moves(self, label: str):
        return [(q, q2) for q, a, q2 in self.transitions if a == label]


class RpqTracker:
    """Is there an ``s -> t`` walk in a labeled graph whose label word the NFA accepts?

    Maintains reachability in the product graph on ``V x Q`` from
    ``(s, q0)`` to ``(t, f)``, one tracked pair per accepting state ``f``.
    Graph nodes are ``1..num_nodes``.
    """

    def __init__(
        self,
        num_nodes: int,
        s: int,
        t: int,
        nfa: Nfa,
        mode: PrimeMode | str = PrimeMode.PRODUCT,
        backend: str | None = None,
    ):
        if not (1 <= s <= num_nodes and 1 <= t <= num_nodes):
            raise IndexError("s and t must be graph nodes")
        self.num_nodes, self.s, self.t, self.nfa = num_nodes, s, t, nfa
        self.labeled_edges: Set[Tuple[int, str, int]] = set()
        start = self.node(s, nfa.initial)
        pairs = [(start, self.node(t, f)) for f in sorted(nfa.accepting, key=nfa.index)]
        self.graph = _RefCountedGraph(AllPairsReach(num_nodes * len(nfa.states), pairs, mode, backend))

    def node(self, v: int, q) -> int:
        return (v - 1) * len(self.nfa.states) + self.nfa.index(q) + 1

    def _check(self, u: int, a: str, v: int) -> None:
        if not (1 <= u <= self.num_nodes and 1 <= v <= self.num_nodes):
            raise IndexError(f"edge ({u}, {a}, {v}) has a node outside 1..{self.num_nodes}")
        if a not in self.nfa.alphabet:
            raise ValueError(f"label {a!r} not in the NFA alphabet")

    def insert_labeled_edge(self, u: int, a: str, v: int) -> None:
        self._check(u, a, v)
        if (u, a, v) in self.labeled_edges:
            return
        self.labeled_edges.add((u, a, v))
        for q, q2 in self.nfa.moves(a):
            self.graph.adjust((self.node(u, q), self.node(v, q2)), +1)

    def delete_labeled_edge(self, u: int, a: str, v: int) -> None:
        if (u, a, v) not in self.labeled_edges:
            return
        self.labeled_edges.discard((u, a, v))
        for q, q2 in self.nfa.moves(a):
            self.graph.adjust((self.node(u, q), self.node(v, q2)), -1)

    @property
    def product_edges(self) -> Dict[Tuple[int, int], int]:
        return dict(self.graph.counts)

    def matches(self) -> bool:
        return any(self.graph.tracker.reachability().values())
