import pytest
from hypothesis import given, settings, strategies as st

from dynrank import oracle
from dynrank.queries import Nfa, RpqTracker, TwoSatTracker

literal = st.integers(1, 4).flatmap(lambda x: st.sampled_from([x, -x]))


def test_two_sat_examples():
    t = TwoSatTracker(2)
    assert t.satisfiable()
    t.add_clause(1, 1)
    t.add_clause(-1, -1)
    assert not t.satisfiable()
    t.remove_clause(-1, -1)
    assert t.satisfiable()


def test_two_sat_refcounts_shared_implications():
    t = TwoSatTracker(2)
    t.add_clause(1, 2)
    t.add_clause(2, 1)  # same clause
    assert len(t.clauses) == 1
    t.add_clause(1, 1)
    # (x1 or x1) yields -1 -> 1 twice
    assert t.implication_edges[(t.node(-1), t.node(1))] == 2
    t.remove_clause(1, 1)
    assert (t.node(-1), t.node(1)) not in t.implication_edges


def test_two_sat_literal_range():
    t = TwoSatTracker(2)
    with pytest.raises(ValueError):
        t.add_clause(3, 1)
    with pytest.raises(ValueError):
        t.add_clause(0, 1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(literal, literal), max_size=30))
def test_two_sat_random(ops):
    t = TwoSatTracker(4)
    for a, b in ops:
        if t._key(a, b) in t.clauses:
            t.remove_clause(a, b)
        else:
            t.add_clause(a, b)
        assert t.satisfiable() == oracle.two_sat_scc(4, t.clauses)


def test_nfa_parse():
    nfa = Nfa.parse("# a then b\ninitial q0\nq0 a q1\nq1 b q2\naccept q2\n")
    assert nfa.initial == "q0"
    assert nfa.accepting == {"q2"}
    assert nfa.alphabet == {"a", "b"}
    assert nfa.moves("a") == [("q0", "q1")]
    with pytest.raises(ValueError):
        Nfa.parse("q0 a q1\naccept q1\n")
    with pytest.raises(ValueError):
        Nfa.parse("initial q0\nq0 a\naccept q0\n")


def test_rpq_two_step(backend):
    nfa = Nfa.build([(0, "a", 1), (1, "b", 2)], 0, {2})
    r = RpqTracker(3, 1, 3, nfa, backend=backend)
    r.insert_labeled_edge(1, "a", 2)
    r.insert_labeled_edge(2, "b", 3)
    assert r.matches()
    r.delete_labeled_edge(2, "b", 3)
    assert not r.matches()


def test_rpq_empty_word():
    star = Nfa.build([(0, "a", 0)], 0, {0})
    assert RpqTracker(2, 1, 1, star).matches()
    assert not RpqTracker(2, 1, 2, star).matches()


def test_rpq_label_checks():
    nfa = Nfa.build([(0, "a", 1)], 0, {1})
    r = RpqTracker(2, 1, 2, nfa)
    with pytest.raises(ValueError):
        r.insert_labeled_edge(1, "z", 2)
    with pytest.raises(IndexError):
        r.insert_labeled_edge(1, "a", 3)


ENDS_IN_A = Nfa.build([(0, "a", 0), (0, "b", 0), (0, "a", 1)], 0, {1})


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 4), st.sampled_from("ab"), st.integers(1, 4)), max_size=25))
def test_rpq_random(ops):
    r = RpqTracker(4, 1, 4, ENDS_IN_A)
    for e in ops:
        if e in r.labeled_edges:
            r.delete_labeled_edge(*e)
        else:
            r.insert_labeled_edge(*e)
        want = oracle.rpq_product_bfs(r.labeled_edges, ENDS_IN_A.transitions, 1, 4, 0, {1})
        assert r.matches() == want
