"""Change logs: parsing and replay against the trackers.

A log is UTF-8 text, one operation per line, ``#`` starts a comment.  The
first operation is ``init`` with mode-specific parameters:

=========  ====================  ==========================================
mode       init                  operations
=========  ====================  ==========================================
matrix     ``init n m N``        ``set i j v``, ``rank?``
reach      ``init n s t``        ``insert u v``, ``delete u v``, ``reach?``
allpairs   ``init n``            ``insert u v``, ``delete u v``, ``reach? s t``
2sat       ``init n``            ``clause a b``, ``declause a b``, ``sat?``
rpq        ``init n s t``        ``ledge u a v``, ``dledge u a v``, ``match?``
matching   ``init n``            ``edge i j``, ``dedge i j``, ``size?``, ``pm?``
=========  ====================  ==========================================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from . import oracle
from .errors import InvariantError
from .matching import MatchingTracker
from .modp import PrimeMode
from .queries import Nfa, RpqTracker, TwoSatTracker
from .rank_core import GoodBasisStack
from .rank_multi import IntMatrixTracker
from .reach import AllPairsReach, ReachTracker

MODES = ("matrix", "reach", "allpairs", "2sat", "rpq", "matching")


class LogParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ChangeOp:
    op: str
    args: Tuple[Any, ...]
    line: int

    @property
    def is_query(self) -> bool:
        return self.op.endswith("?")


# argument kinds per operation: "i" int, "s" label, "l" signed literal
_SIGNATURES: Dict[str, Tuple[str, ...]] = {
    "set": ("i", "i", "i"),
    "insert": ("i", "i"),
    "delete": ("i", "i"),
    "clause": ("l", "l"),
    "declause": ("l", "l"),
    "ledge": ("i", "s", "i"),
    "dledge": ("i", "s", "i"),
    "edge": ("i", "i"),
    "dedge": ("i", "i"),
    "rank?": (),
    "sat?": (),
    "match?": (),
    "size?": (),
    "pm?": (),
}


def _parse_int(word: str, line: int) -> int:
    try:
        return int(word)
    except ValueError:
        raise LogParseError(line, f"expected an integer, got {word!r}") from None


def parse_log(text: str) -> Tuple[ChangeOp, List[ChangeOp]]:
    """Split a log into its ``init`` header and the following operations."""
    header: Optional[ChangeOp] = None
    ops: List[ChangeOp] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        name, rest = words[0], words[1:]
        if name == "init":
            if header is not None:
                raise LogParseError(lineno, "duplicate init")
            header = ChangeOp("init", tuple(_parse_int(w, lineno) for w in rest), lineno)
            continue
        if header is None:
            raise LogParseError(lineno, "log must start with init")
        if name == "reach?":
            if len(rest) not in (0, 2):
                raise LogParseError(lineno, "reach? takes no arguments or 's t'")
            ops.append(ChangeOp(name, tuple(_parse_int(w, lineno) for w in rest), lineno))
            continue
        kinds = _SIGNATURES.get(name)
        if kinds is None:
            raise LogParseError(lineno, f"unknown operation {name!r}")
        if len(rest) != len(kinds):
            raise LogParseError(lineno, f"{name} takes {len(kinds)} arguments, got {len(rest)}")
        args = []
        for kind, word in zip(kinds, rest):
            if kind == "s":
                args.append(word)
            else:
                val = _parse_int(word, lineno)
                if kind == "l" and val == 0:
                    raise LogParseError(lineno, "literal 0 is not allowed")
                args.append(val)
        ops.append(ChangeOp(name, tuple(args), lineno))
    if header is None:
        raise LogParseError(0, "log has no init line")
    return header, ops


@dataclass
class Options:
    primes: str = PrimeMode.PRODUCT.value
    prime: Optional[int] = None
    seed: int = 0
    trials: int = 20
    nfa: Optional[Nfa] = None
    backend: Optional[str] = None


@dataclass
class Session:
    """A tracker plus the handlers for the operations its mode accepts."""

    mode: str
    tracker: Any
    handlers: Dict[str, Callable[..., Any]]
    check: Callable[[], None]
    stacks: List[GoodBasisStack] = field(default_factory=list)

    def apply(self, op: ChangeOp):
        handler = self.handlers.get(op.op)
        if handler is None:
            raise LogParseError(op.line, f"{op.op} is not valid in {self.mode} mode")
        try:
            return handler(*op.args)
        except (IndexError, ValueError, KeyError) as exc:
            raise LogParseError(op.line, str(exc).strip("'\"")) from None

    def check_invariants(self) -> None:
        for stack in self.stacks:
            if not stack.is_a_good():
                raise InvariantError("basis is not A-good")
        self.check()


def _expect(args: Tuple[int, ...], count: int, mode: str, line: int, usage: str):
    if len(args) != count:
        raise LogParseError(line, f"{mode} mode expects 'init {usage}'")
    if any(a < 1 for a in args):
        raise LogParseError(line, "init parameters must be positive")


def open_session(mode: str, header: ChangeOp, options: Options) -> Session:
    args, line = header.args, header.line
    if mode == "matrix":
        _expect(args, 3, mode, line, "n m N")
        n, m, N = args
        primes = [options.prime] if options.prime else None
        tr = IntMatrixTracker(n, m, N, options.primes, primes=primes, backend=options.backend)

        def check():
            if options.prime:
                expected = oracle.gaussian_rank_mod_p(tr.matrix().tolist(), options.prime)
            else:
                expected = oracle.gaussian_rank_exact(tr.matrix().tolist())
            if tr.rank_int() != expected:
                raise InvariantError(f"rank {tr.rank_int()} but oracle says {expected}")

        handlers = {"set": tr.set_entry_int, "rank?": tr.rank_int}
        return Session(mode, tr, handlers, check, [tr.per_prime])

    if mode in ("reach", "allpairs"):
        if mode == "reach":
            _expect(args, 3, mode, line, "n s t")
            tr = ReachTracker(*args, mode=options.primes, backend=options.backend)
            query = lambda *st: tr.reachable(*st) if st else tr.reachable()  # noqa: E731
        else:
            _expect(args, 1, mode, line, "n")
            tr = AllPairsReach(args[0], mode=options.primes, backend=options.backend)

            def query(*st):
                if len(st) != 2:
                    raise ValueError("allpairs mode needs 'reach? s t'")
                return tr.reachable(*st)

        def check():
            for (s, t), got in tr.reachability().items():
                if got != oracle.bfs_reach(tr.n, tr.edges, s, t):
                    raise InvariantError(f"reach({s}, {t}) disagrees with BFS")

        handlers = {"insert": tr.insert_edge, "delete": tr.delete_edge, "reach?": query}
        return Session(mode, tr, handlers, check, [tr.M.per_prime])

    if mode == "2sat":
        _expect(args, 1, mode, line, "n")
        tr = TwoSatTracker(args[0], options.primes, options.backend)

        def check():
            if tr.satisfiable() != oracle.two_sat_scc(tr.n, tr.clauses):
                raise InvariantError("satisfiability disagrees with the SCC oracle")

        handlers = {"clause": tr.add_clause, "declause": tr.remove_clause, "sat?": tr.satisfiable}
        return Session(mode, tr, handlers, check, [tr.graph.tracker.M.per_prime])

    if mode == "rpq":
        _expect(args, 3, mode, line, "n s t")
        if options.nfa is None:
            raise LogParseError(line, "rpq mode needs --nfa")
        nfa = options.nfa
        tr = RpqTracker(*args, nfa, options.primes, options.backend)

        def check():
            expected = oracle.rpq_product_bfs(
                tr.labeled_edges, nfa.transitions, tr.s, tr.t, nfa.initial, nfa.accepting
            )
            if tr.matches() != expected:
                raise InvariantError("regular path query disagrees with product BFS")

        handlers = {
            "ledge": tr.insert_labeled_edge,
            "dledge": tr.delete_labeled_edge,
            "match?": tr.matches,
        }
        return Session(mode, tr, handlers, check, [tr.graph.tracker.M.per_prime])

    if mode == "matching":
        _expect(args, 1, mode, line, "n")
        tr = MatchingTracker(args[0], options.trials, options.seed, options.backend)

        def check():
            size = tr.max_matching_size()
            best = oracle.max_matching_exhaustive(tr.n, tr.edges)
            if size > best:
                raise InvariantError(f"matching size {size} exceeds the true maximum {best}")

        handlers = {
            "edge": tr.insert_edge,
            "dedge": tr.delete_edge,
            "size?": tr.max_matching_size,
            "pm?": tr.has_perfect_matching,
        }
        return Session(mode, tr, handlers, check, [tr.per_prime])

    raise ValueError(f"unknown mode {mode!r}")


def format_result(op: ChangeOp, result) -> str:
    if op.op == "rank?":
        return f"rank {result}"
    if op.op == "size?":
        return f"size {result}"
    return "true" if result else "false"
