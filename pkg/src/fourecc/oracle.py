"""Brute-force ground truth for tests.

Nothing here reuses the fast path beyond the Multigraph type and the DFS
tree itself (parent pointers and preorder).  Ancestry is decided by walking
parent chains, B(v) sets are materialised, and cuts are found by trying every
edge triple.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .dfs import NIL, DfsFrame
from .graph import Multigraph, Partition


class OracleSizeError(ValueError):
    pass


MAX_TRIPLE_WORK = 40_000_000


def _reach_closure(adj: np.ndarray) -> np.ndarray:
    n = adj.shape[-1]
    reach = adj | np.eye(n, dtype=bool)
    steps = 1
    while steps < n:
        r = reach.astype(np.int32)
        reach = (r @ r) > 0
        steps *= 2
    return reach


def brute_3cuts(g: Multigraph, max_edges: int = 40) -> set[tuple[int, int, int]]:
    """Every edge triple whose removal disconnects ``g`` (sorted id triples)."""
    n, m = g.n, g.m
    if m > max_edges or comb(m, 3) * n * n > MAX_TRIPLE_WORK:
        raise OracleSizeError(f"brute_3cuts refuses m={m}, n={n}")
    if m < 3 or n < 2:
        return set()
    triples = np.array(list(combinations(range(m), 3)), dtype=np.int64)
    ends = np.array(g.edges, dtype=np.int64) - 1
    base = np.zeros((n, n), dtype=np.int64)
    np.add.at(base, (ends[:, 0], ends[:, 1]), 1)
    np.add.at(base, (ends[:, 1], ends[:, 0]), 1)
    counts = np.broadcast_to(base, (len(triples), n, n)).copy()
    rows = np.arange(len(triples))
    for k in range(3):
        a = ends[triples[:, k], 0]
        b = ends[triples[:, k], 1]
        np.add.at(counts, (rows, a, b), -1)
        np.add.at(counts, (rows, b, a), -1)
    reach = _reach_closure(counts > 0)
    cut = ~reach[:, 0, :].all(axis=1)
    return {tuple(int(e) + 1 for e in t) for t in triples[cut]}


def disconnects(g: Multigraph, removed: set[int]) -> bool:
    """Plain traversal check, used to assert minimality of oracle cuts."""
    if g.n <= 1:
        return False
    adj: list[list[int]] = [[] for _ in range(g.n + 1)]
    for eid, (a, b) in enumerate(g.edges, 1):
        if eid not in removed:
            adj[a].append(b)
            adj[b].append(a)
    seen = {1}
    todo = [1]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) < g.n


def pair_edge_connectivity(g: Multigraph, u: int, v: int, cap: int) -> int:
    """min(cap, number of edge-disjoint u-v paths) by BFS augmenting paths."""
    if u == v:
        raise ValueError("u and v must differ")
    # signed flow per undirected edge, |flow| <= 1; positive means a -> b
    flow = [0] * (g.m + 1)
    inc: list[list[tuple[int, int, int]]] = [[] for _ in range(g.n + 1)]
    for eid, (a, b) in enumerate(g.edges, 1):
        if a != b:
            inc[a].append((b, eid, 1))
            inc[b].append((a, eid, -1))
    total = 0
    while total < cap:
        via: dict[int, tuple[int, int, int]] = {u: (0, 0, 0)}
        queue = deque([u])
        while queue and v not in via:
            x = queue.popleft()
            for y, eid, sign in inc[x]:
                if y not in via and sign * flow[eid] < 1:
                    via[y] = (x, eid, sign)
                    queue.append(y)
        if v not in via:
            break
        y = v
        while y != u:
            x, eid, sign = via[y]
            flow[eid] += sign
            y = x
        total += 1
    return total


def kecc_partition_oracle(g: Multigraph, k: int) -> Partition:
    """Classes of the relation "at least k edge-disjoint paths"."""
    label = list(range(g.n + 1))

    def find(x: int) -> int:
        while label[x] != x:
            x = label[x]
        return x

    for a in range(1, g.n + 1):
        for b in range(a + 1, g.n + 1):
            if find(a) == find(b):
                continue
            if pair_edge_connectivity(g, a, b, k) >= k:
                label[find(b)] = find(a)
    return Partition.from_labels([find(v) for v in range(g.n + 1)], g.n)


def is_3ec_oracle(g: Multigraph) -> bool:
    return len(kecc_partition_oracle(g, 3)) == 1


@dataclass
class ParamTableOracle:
    """Definition-level parameters, indexed by preorder like DfsFrame.

    Witness fields are candidate sets: ``*_edges`` hold every back-edge id that
    may legitimately realise the corresponding low point.
    """

    B: list[set[int]]  # back-edge ids
    b_count: list[int]
    nd: list[int]
    l1: list[int]
    l2: list[int]
    low1: list[int]
    low2: list[int]
    low1_edges: list[set[int]]
    low2_edges: list[set[int]]
    high: list[int]
    high_d: list[set[int]]
    children: list[list[int]]
    M: list[int]
    Mt: list[int]
    Mlow1: list[int]
    Mlow2: list[int]
    next_m: list[int]
    prev_m: list[int]
    low_m: list[int]
    low_md: list[set[int]]
    low_md_min: list[int]
    low_m_edges: list[set[int]]


def params_from_definitions(g: Multigraph, frame: DfsFrame) -> ParamTableOracle:
    n = frame.n
    parent = frame.parent
    pre = frame.pre

    anc: list[set[int]] = [set() for _ in range(n + 1)]
    for v in range(1, n + 1):
        z = v
        while z != NIL:
            anc[v].add(z)
            z = parent[z]

    def is_desc(u: int, v: int) -> bool:
        return v in anc[u]

    def nca(xs) -> int:
        common = set.intersection(*(anc[x] for x in xs))
        return max(common, key=lambda z: len(anc[z]))

    tree_ids = {frame.tree_edge[v] for v in range(2, n + 1)}
    back: dict[int, tuple[int, int]] = {}
    for eid, (a, b) in enumerate(g.edges, 1):
        if a == b or eid in tree_ids:
            continue
        x, y = pre[a], pre[b]
        if is_desc(y, x):
            x, y = y, x
        assert is_desc(x, y), "non-tree edge joins unrelated vertices"
        back[eid] = (x, y)

    B = [set() for _ in range(n + 1)]
    for v in range(2, n + 1):
        B[v] = {e for e, (x, y) in back.items() if is_desc(x, v) and y != v and is_desc(v, y)}
    b_count = [len(s) for s in B]
    nd = [sum(1 for u in range(1, n + 1) if is_desc(u, v)) for v in range(n + 1)]

    l1 = list(range(n + 1))
    l2 = list(range(n + 1))
    for v in range(1, n + 1):
        ys = sorted(y for e, (x, y) in back.items() if x == v)
        if ys:
            l1[v] = ys[0]
        if len(ys) > 1:
            l2[v] = ys[1]

    low1 = [NIL] * (n + 1)
    low2 = [NIL] * (n + 1)
    low1_edges = [set() for _ in range(n + 1)]
    low2_edges = [set() for _ in range(n + 1)]
    high = [NIL] * (n + 1)
    high_d = [set() for _ in range(n + 1)]
    for v in range(2, n + 1):
        ys = sorted(back[e][1] for e in B[v])
        if ys:
            low1[v] = ys[0]
            low1_edges[v] = {e for e in B[v] if back[e][1] == ys[0]}
            high[v] = ys[-1]
            high_d[v] = {back[e][0] for e in B[v] if back[e][1] == ys[-1]}
        if len(ys) > 1:
            low2[v] = ys[1]
            low2_edges[v] = {e for e in B[v] if back[e][1] == ys[1]}

    big = n + 1
    children = [
        sorted((c for c in range(2, n + 1) if parent[c] == v), key=lambda c: (low1[c] or big, c))
        for v in range(n + 1)
    ]

    M = [NIL] * (n + 1)
    Mt = [NIL] * (n + 1)
    Mlow1 = [NIL] * (n + 1)
    Mlow2 = [NIL] * (n + 1)
    for v in range(2, n + 1):
        xs = [back[e][0] for e in B[v]]
        if not xs:
            continue
        M[v] = w = nca(xs)
        below = [x for x in xs if x != w]
        if below:
            Mt[v] = nca(below)
        ch = children[w]
        for i, target in ((0, Mlow1), (1, Mlow2)):
            if i < len(ch):
                inside = [x for x in xs if is_desc(x, ch[i])]
                if inside:
                    target[v] = nca(inside)

    next_m = [NIL] * (n + 1)
    prev_m = [NIL] * (n + 1)
    for v in range(2, n + 1):
        if M[v] == NIL:
            continue
        lower = [w for w in range(2, v) if M[w] == M[v]]
        upper = [w for w in range(v + 1, n + 1) if M[w] == M[v]]
        if lower:
            next_m[v] = max(lower)
        if upper:
            prev_m[v] = min(upper)

    low_m = [NIL] * (n + 1)
    low_md = [set() for _ in range(n + 1)]
    low_md_min = [NIL] * (n + 1)
    low_m_edges = [set() for _ in range(n + 1)]
    for v in range(2, n + 1):
        w = next_m[v]
        if w == NIL:
            continue
        diff = B[v] - B[w]
        if not diff:
            continue
        y = min(back[e][1] for e in diff)
        low_m[v] = y
        low_m_edges[v] = {e for e in diff if back[e][1] == y}
        low_md[v] = {back[e][0] for e in low_m_edges[v]}
        low_md_min[v] = min(
            x for e, (x, yy) in back.items() if yy == y and is_desc(x, M[v])
        )

    return ParamTableOracle(
        B=B,
        b_count=b_count,
        nd=nd,
        l1=l1,
        l2=l2,
        low1=low1,
        low2=low2,
        low1_edges=low1_edges,
        low2_edges=low2_edges,
        high=high,
        high_d=high_d,
        children=children,
        M=M,
        Mt=Mt,
        Mlow1=Mlow1,
        Mlow2=Mlow2,
        next_m=next_m,
        prev_m=prev_m,
        low_m=low_m,
        low_md=low_md,
        low_md_min=low_md_min,
        low_m_edges=low_m_edges,
    )


def type2_pairs_by_high(params: ParamTableOracle, n: int) -> set[tuple[int, int]]:
    """(u, v) pairs meeting the high-point criterion for B(v) = B(u) + {e}.

    For each v and each m in {M~(v), M_low1(v), M_low2(v)}, u is the smallest
    member of M^-1(m) above v; the pair counts when high(u) < v and
    b_count(v) = b_count(u) + 1.
    """
    pairs = set()
    for v in range(2, n + 1):
        for m in {params.Mt[v], params.Mlow1[v], params.Mlow2[v]} - {NIL}:
            members = [w for w in range(v + 1, n + 1) if params.M[w] == m]
            if not members:
                continue
            u = min(members)
            if params.high[u] < v and params.b_count[v] == params.b_count[u] + 1:
                pairs.add((u, v))
    return pairs
