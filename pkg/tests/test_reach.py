import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dynrank import oracle
from dynrank.reach import AllPairsReach, ReachTracker


def test_initial_states():
    assert not ReachTracker(4, 1, 3).reachable()
    assert ReachTracker(4, 2, 2).reachable()
    assert ReachTracker(1, 1, 1).reachable()


def test_matrix_encoding():
    r = ReachTracker(3, 1, 3)
    r.insert_edge(1, 2)
    M = r.M.matrix()
    expected = np.array([[3, -1, 0, 0], [0, 3, 0, 0], [0, 0, 3, 1], [1, 0, 0, 0]])
    assert np.array_equal(M, expected)
    assert r.rank() in (3, 4)


def test_direct_edge_and_path(backend):
    r = ReachTracker(4, 1, 3, backend=backend)
    r.insert_edge(1, 3)
    assert r.reachable()
    r.delete_edge(1, 3)
    r.insert_edge(1, 2)
    r.insert_edge(2, 3)
    assert r.reachable()
    r.delete_edge(2, 3)
    assert not r.reachable()


def test_edge_validation():
    r = ReachTracker(3, 1, 2)
    with pytest.raises(ValueError):
        r.insert_edge(2, 2)
    with pytest.raises(IndexError):
        r.insert_edge(1, 4)
    r.insert_edge(1, 2)
    r.insert_edge(1, 2)
    r.delete_edge(2, 3)
    assert r.edges == {(1, 2)}


def test_cycle_all_pairs():
    ap = AllPairsReach(4)
    for u in range(1, 5):
        ap.insert_edge(u, u % 4 + 1)
    assert all(ap.reachability().values())
    assert len(ap.reachability()) == 16


def test_empty_all_pairs():
    ap = AllPairsReach(4)
    assert all(v == (s == t) for (s, t), v in ap.reachability().items())


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 5), st.integers(1, 5)), max_size=40))
def test_random_toggles_match_bfs(toggles):
    ap = AllPairsReach(5)
    for u, v in toggles:
        if u == v:
            continue
        if (u, v) in ap.edges:
            ap.delete_edge(u, v)
        else:
            ap.insert_edge(u, v)
        assert set(ap.ranks().tolist()) <= {5, 6}
        for (s, t), got in ap.reachability().items():
            assert got == oracle.bfs_reach(5, ap.edges, s, t)
