"""DFS spanning tree and the per-vertex low-point parameters.

All per-vertex arrays are indexed by preorder number (1..n, slot 0 unused),
so "v is an ancestor of u" implies ``v <= u``.  Back-edges are stored as
``(x, y)`` with ``x`` the descendant end and ``y`` the ancestor end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import depth_first_order

from .graph import Multigraph

NIL = 0  # undefined vertex / edge; never a valid id


class NotConnectedError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    """An internal invariant failed: either a bug or a precondition was not met."""


@dataclass(eq=False)
class DfsFrame:
    graph: Multigraph
    n: int
    root: int  # original vertex id of the root (preorder 1)
    pre: list[int]  # original vertex -> preorder
    vertex: list[int]  # preorder -> original vertex
    parent: list[int]
    tree_edge: list[int]  # edge id of (v, p(v)); NIL at the root
    nd: list[int]
    b_count: list[int]
    l1: list[int]
    l1e: list[int]  # edge id realising l1, NIL when l1(v) = v
    l2: list[int]
    l2e: list[int]
    low1: list[int]  # NIL when B(v) is empty
    low1d: list[int]
    low1e: list[int]
    low2: list[int]  # NIL when |B(v)| < 2
    low2d: list[int]
    low2e: list[int]
    children: list[list[int]]  # sorted by (low1, preorder)
    in_x: list[list[int]]  # In(y): sources x, ascending
    in_e: list[list[int]]  # edge ids parallel to in_x
    back_x: list[int]
    back_y: list[int]
    back_e: list[int]

    @property
    def back_edge_count(self) -> int:
        return len(self.back_e)

    def is_descendant(self, u: int, v: int) -> bool:
        return v <= u < v + self.nd[v]

    def child(self, v: int, i: int) -> int:
        """The ``i``-th child of ``v`` in low1 order (1-based), or NIL."""
        ch = self.children[v]
        return ch[i - 1] if i <= len(ch) else NIL


def is_descendant(frame: DfsFrame, u: int, v: int) -> bool:
    """``u`` in T(v), by the preorder interval test."""
    return v <= u < v + frame.nd[v]


def build_dfs_frame(g: Multigraph, root: int = 1) -> DfsFrame:
    """DFS spanning tree from ``root`` plus every per-vertex parameter.

    The traversal itself is scipy's; among parallel edges the smallest id
    becomes the tree edge.
    """
    n = g.n
    ends = np.array(g.edges, dtype=np.int64).reshape(-1, 2)
    loops = ends[:, 0] == ends[:, 1]
    a, b = ends[~loops, 0] - 1, ends[~loops, 1] - 1
    eids = np.flatnonzero(~loops) + 1
    adj = csr_matrix((np.ones(2 * len(a), dtype=np.int8), (np.r_[a, b], np.r_[b, a])), shape=(n, n))
    order, pred = depth_first_order(adj, root - 1, directed=False, return_predecessors=True)
    if len(order) != n:
        raise NotConnectedError("graph not connected")

    pre_arr = np.zeros(n + 1, dtype=np.int64)
    pre_arr[order + 1] = np.arange(1, n + 1)
    parent_arr = np.zeros(n + 1, dtype=np.int64)
    parent_arr[2:] = pre_arr[pred[order[1:]] + 1]
    pre = pre_arr.tolist()
    vertex = [0, *(order + 1).tolist()]
    parent = parent_arr.tolist()

    nd = [1] * (n + 1)
    for v in range(n, 1, -1):
        nd[parent[v]] += nd[v]

    pa, pb = pre_arr[a + 1], pre_arr[b + 1]
    hi, lo = np.maximum(pa, pb), np.minimum(pa, pb)
    big = n + 1
    # any edge into the child is a valid tree edge; take the smallest id
    tree_arr = np.full(n + 1, len(g.edges) + 1, dtype=np.int64)
    joins_parent = parent_arr[hi] == lo
    np.minimum.at(tree_arr, hi[joins_parent], eids[joins_parent])
    tree_arr[:2] = NIL
    tree_edge = tree_arr.tolist()
    is_back = tree_arr[hi] != eids
    bx, by, be = hi[is_back], lo[is_back], eids[is_back]
    nd_arr = np.asarray(nd, dtype=np.int64)
    if np.any(bx >= by + nd_arr[by]):
        raise InvariantViolation("traversal produced a cross edge; not a DFS tree")

    # grouped by descendant end, lowest ancestor end first (stable on ties)
    order = np.lexsort((by, bx))
    bx, by, be = bx[order], by[order], be[order]
    back_x, back_y, back_e = bx.tolist(), by.tolist(), be.tolist()
    k = len(back_e)
    first = np.flatnonzero(np.r_[True, bx[1:] != bx[:-1]]) if k else np.zeros(0, dtype=np.int64)
    second = first + 1
    second = second[(second < k) & (bx[np.minimum(second, k - 1)] == bx[first])]

    def own(default, idx, values):
        arr = np.array(default, dtype=np.int64)
        arr[bx[idx]] = values[idx]
        return arr.tolist()

    ident = np.arange(n + 1)
    l1, l1e = own(ident, first, by), own(np.zeros(n + 1), first, be)
    l2, l2e = own(ident, second, by), own(np.zeros(n + 1), second, be)
    low1, low1d, low1e = own(np.full(n + 1, big), first, by), own(np.zeros(n + 1), first, bx), l1e[:]
    low2, low2d, low2e = own(np.full(n + 1, big), second, by), own(np.zeros(n + 1), second, bx), l2e[:]

    # In(y), each ascending in x
    order = np.lexsort((bx, by))
    arrivals = np.bincount(by, minlength=n + 1)
    bounds = np.r_[0, np.cumsum(arrivals)].tolist()
    sorted_x, sorted_e = bx[order].tolist(), be[order].tolist()
    in_x = [sorted_x[bounds[y] : bounds[y + 1]] for y in range(n + 1)]
    in_e = [sorted_e[bounds[y] : bounds[y + 1]] for y in range(n + 1)]

    # +1 per back-edge leaving v, -1 per back-edge arriving; subtree sums give b_count
    weight = np.bincount(bx, minlength=n + 1) - arrivals
    prefix = np.r_[0, np.cumsum(weight[1:])]
    v = np.arange(2, n + 1)
    b_count = [0, 0] + (prefix[v + nd_arr[2:] - 1] - prefix[v - 1]).tolist()

    # bottom-up: two lowest back-edges of B(v)
    for v in range(n, 1, -1):
        p = parent[v]
        y = low1[v]
        if y < p:
            if y < low1[p]:
                low2[p], low2d[p], low2e[p] = low1[p], low1d[p], low1e[p]
                low1[p], low1d[p], low1e[p] = y, low1d[v], low1e[v]
            elif y < low2[p]:
                low2[p], low2d[p], low2e[p] = y, low1d[v], low1e[v]
            y = low2[v]
            if y < p:
                if y < low1[p]:
                    low2[p], low2d[p], low2e[p] = low1[p], low1d[p], low1e[p]
                    low1[p], low1d[p], low1e[p] = y, low2d[v], low2e[v]
                elif y < low2[p]:
                    low2[p], low2d[p], low2e[p] = y, low2d[v], low2e[v]
    for v in range(1, n + 1):
        if low1[v] == big:
            low1[v] = NIL
        if low2[v] == big:
            low2[v] = NIL

    # children ordered by (low1, preorder); undefined low1 sorts last
    buckets: list[list[int]] = [[] for _ in range(n + 2)]
    for v in range(2, n + 1):
        buckets[low1[v] or big].append(v)
    children: list[list[int]] = [[] for _ in range(n + 1)]
    for bucket in buckets:
        for v in bucket:
            children[parent[v]].append(v)

    return DfsFrame(
        graph=g,
        n=n,
        root=root,
        pre=pre,
        vertex=vertex,
        parent=parent,
        tree_edge=tree_edge,
        nd=nd,
        b_count=b_count,
        l1=l1,
        l1e=l1e,
        l2=l2,
        l2e=l2e,
        low1=low1,
        low1d=low1d,
        low1e=low1e,
        low2=low2,
        low2d=low2d,
        low2e=low2e,
        children=children,
        in_x=in_x,
        in_e=in_e,
        back_x=back_x,
        back_y=back_y,
        back_e=back_e,
    )


def check_connectivity_necessary(frame: DfsFrame) -> tuple[bool, bool]:
    """``(is 2-edge-connected, passes the |B(v)| > 1 test for 3EC)``."""
    counts = frame.b_count[2:]
    if not counts:
        return True, True
    low = min(counts)
    return low > 0, low > 1
