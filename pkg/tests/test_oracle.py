from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus_3ec, make_ga, make_k4, make_par
from fourecc.dfs import build_dfs_frame
from fourecc.graph import Multigraph, generate_random_graph
from fourecc.oracle import (
    OracleSizeError,
    brute_3cuts,
    disconnects,
    is_3ec_oracle,
    kecc_partition_oracle,
    pair_edge_connectivity,
    params_from_definitions,
    type2_pairs_by_high,
)


def test_brute_cuts_fixtures():
    assert brute_3cuts(make_ga()) == {(1, 4, 6), (1, 2, 5), (2, 3, 6), (3, 4, 5)}
    assert len(brute_3cuts(make_k4())) == 4
    assert brute_3cuts(make_par(4)) == set()


def test_brute_cuts_minimal_on_3ec_corpus():
    for g in corpus_3ec(60, seed=2):
        for cut in brute_3cuts(g):
            assert disconnects(g, set(cut))
            assert not any(disconnects(g, set(pair)) for pair in combinations(cut, 2))


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 7), st.integers(0, 12), st.integers(0, 2**32))
def test_brute_cuts_agree_with_plain_traversal(n, m, seed):
    g = generate_random_graph(n, m, seed)
    expected = {t for t in combinations(range(1, g.m + 1), 3) if disconnects(g, set(t))}
    assert brute_3cuts(g) == expected


def test_brute_cuts_size_guard():
    with pytest.raises(OracleSizeError):
        brute_3cuts(Multigraph(2, [(1, 2)] * 41))
    with pytest.raises(OracleSizeError):
        brute_3cuts(Multigraph(300, [(1, 2)] * 30))


def test_pair_connectivity_examples():
    assert pair_edge_connectivity(make_par(4), 1, 2, 5) == 4
    assert pair_edge_connectivity(make_k4(), 1, 2, 4) == 3
    assert pair_edge_connectivity(make_ga(), 1, 3, 4) == 3
    assert pair_edge_connectivity(make_par(4), 1, 2, 2) == 2
    with pytest.raises(ValueError):
        pair_edge_connectivity(make_ga(), 2, 2, 3)


def test_pair_connectivity_needs_reverse_flow():
    # taking 1-3-4-2 first would block 1-3-2 and 1-4-2; the answer is still 2
    g = Multigraph(4, [(1, 3), (3, 4), (4, 2), (1, 4), (3, 2)])
    assert pair_edge_connectivity(g, 1, 2, 5) == 2


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 7), st.integers(0, 12), st.integers(0, 2**32))
def test_pair_connectivity_is_min_cut(n, m, seed):
    # Menger: the flow value equals the smallest edge set separating the pair
    g = generate_random_graph(n, m, seed)
    edges = list(g.edge_ids())
    for a, b in [(1, 2), (1, n)] if n > 2 else [(1, 2)]:
        flow = pair_edge_connectivity(g, a, b, 5)
        smallest = 5
        for size in range(0, min(5, g.m + 1)):
            if any(_separates(g, set(s), a, b) for s in combinations(edges, size)):
                smallest = size
                break
        assert flow == smallest


def _separates(g, removed, a, b):
    adj = {v: [] for v in range(1, g.n + 1)}
    for e, (x, y) in enumerate(g.edges, 1):
        if e not in removed:
            adj[x].append(y)
            adj[y].append(x)
    seen, todo = {a}, [a]
    while todo:
        for w in adj[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return b not in seen


def test_kecc_oracle_examples():
    assert len(kecc_partition_oracle(make_k4(), 4)) == 4
    assert kecc_partition_oracle(make_par(4), 4).classes == [[1, 2]]
    assert kecc_partition_oracle(make_ga(), 3).classes == [[1, 2, 3, 4]]
    assert is_3ec_oracle(make_par(3)) and not is_3ec_oracle(make_par(2))


def test_params_oracle_ga():
    g = make_ga()
    p = params_from_definitions(g, build_dfs_frame(g))
    assert p.b_count[2:] == [2, 3, 2]
    assert p.M[2:] == [3, 3, 4]
    assert p.low_m[3] == 2 and p.low_md[3] == {4}
    assert p.high[2:] == [1, 2, 2]


def test_params_oracle_par3_parallel_instances():
    g = make_par(3)
    p = params_from_definitions(g, build_dfs_frame(g))
    assert p.l1[2] == p.l2[2] == 1
    assert len(p.low1_edges[2]) == 2


def test_type2_pairs_by_high_ga():
    g = make_ga()
    p = params_from_definitions(g, build_dfs_frame(g))
    assert type2_pairs_by_high(p, g.n) == {(4, 3)}
