"""Maximum points M(v), their restricted variants, the nextM chains and lowM.

Every nca needed here is the nca of the upper ends x of back-edges that start
inside some subtree T(c) and reach strictly above a threshold t (a proper
ancestor of c).  A vertex x has such a back-edge iff l1(x) < t, and the nca of
any vertex set equals the nca of its first and last member in preorder.  So
each query reduces to "first and last x in [c, c + ND(c)) with l1(x) < t".
Both are found for all queries at once by binary lifting over a sparse table
of range minima of l1, followed by a batched range-minimum nca lookup.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dfs import NIL, DfsFrame, InvariantViolation


class NotTwoEdgeConnectedError(ValueError):
    pass


class NotThreeEdgeConnectedError(ValueError):
    def __init__(self, witness: tuple[int, ...]):
        self.witness = witness
        if witness:
            what = f"{len(witness)}-cut {{{', '.join(map(str, witness))}}}"
        else:
            what = "graph is disconnected"
        super().__init__(f"not 3-edge-connected: {what}")


@dataclass(eq=False)
class MPointTable:
    M: list[int]
    Mt: list[int]  # M with the upper end M(v) itself excluded
    Mlow1: list[int]
    Mlow2: list[int]
    next_m: list[int]
    prev_m: list[int]
    low_m: list[int] | None = None
    low_md: list[int] | None = None
    low_me: list[int] | None = None  # edge id of (lowMD, lowM)
    cursor_advances: int = 0


def _sparse_min(values: np.ndarray) -> list[np.ndarray]:
    """``levels[k][i]`` = min of ``values[i : i + 2**k]`` (clipped at the end)."""
    levels = [values]
    span = 1
    while 2 * span <= len(values):
        prev = levels[-1]
        cur = prev.copy()
        cur[: len(prev) - span] = np.minimum(prev[: len(prev) - span], prev[span:])
        levels.append(cur)
        span *= 2
    return levels


def _interval_extremes(
    l1_levels: list[np.ndarray], start: np.ndarray, end: np.ndarray, t: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """First and last x in ``[start, end)`` with l1(x) < t, per query (NIL if none)."""
    lo = start.copy()
    hi = end - 1
    for k in range(len(l1_levels) - 1, -1, -1):
        level, step = l1_levels[k], 1 << k
        # skip a whole block of 2^k entries that all have l1 >= t
        fwd = lo + step <= end
        fwd[fwd] = level[lo[fwd]] >= t[fwd]
        lo[fwd] += step
        back = hi - step + 1 >= start
        back[back] = level[hi[back] - step + 1] >= t[back]
        hi[back] -= step
    found = lo < end
    return np.where(found, lo, NIL), np.where(found, hi, NIL)


class _NcaIndex:
    """Batched nca on a DFS tree numbered in preorder.

    For a < b with a not an ancestor of b, the shallowest vertex in (a, b] is a
    child of nca(a, b).
    """

    def __init__(self, frame: DfsFrame):
        n = frame.n
        parent = frame.parent
        depth = [0] * (n + 1)
        for v in range(2, n + 1):
            depth[v] = depth[parent[v]] + 1
        self.scale = n + 1
        key = np.asarray(depth, dtype=np.int64) * self.scale + np.arange(n + 1, dtype=np.int64)
        self.table = np.stack(_sparse_min(key))
        self.parent = np.asarray(parent, dtype=np.int64)
        self.nd = np.asarray(frame.nd, dtype=np.int64)

    def query(self, a: list[int], b: list[int]) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = a.copy()
        if len(a) == 0:
            return out
        hard = b >= a + self.nd[a]
        if hard.any():
            lo = a[hard] + 1
            hi = b[hard]
            k = np.floor(np.log2(hi - lo + 1)).astype(np.int64)
            # float log2 may be off by one at exact powers of two
            k -= (np.left_shift(1, k) > hi - lo + 1).astype(np.int64)
            k += (np.left_shift(1, k + 1) <= hi - lo + 1).astype(np.int64)
            best = np.minimum(self.table[k, lo], self.table[k, hi - np.left_shift(1, k) + 1])
            out[hard] = self.parent[best % self.scale]
        return out


def compute_m_points(frame: DfsFrame) -> MPointTable:
    """M, M~, M_low1, M_low2 and the nextM/prevM chains for every v != root."""
    n = frame.n
    b_count = frame.b_count
    if any(b_count[v] == 0 for v in range(2, n + 1)):
        raise NotTwoEdgeConnectedError("not 2-edge-connected")
    M = [NIL] * (n + 1)
    Mt = [NIL] * (n + 1)
    Mlow1 = [NIL] * (n + 1)
    Mlow2 = [NIL] * (n + 1)
    next_m = [NIL] * (n + 1)
    prev_m = [NIL] * (n + 1)
    if n == 1:
        return MPointTable(M, Mt, Mlow1, Mlow2, next_m, prev_m)
    nca = _NcaIndex(frame)
    nd = np.asarray(frame.nd, dtype=np.int64)
    l1 = np.asarray(frame.l1, dtype=np.int64)
    l1_levels = _sparse_min(l1)

    v = np.arange(2, n + 1, dtype=np.int64)
    first, last = _interval_extremes(l1_levels, v, v + nd[v], v)
    m_arr = np.zeros(n + 1, dtype=np.int64)
    m_arr[2:] = nca.query(first, last)
    M = m_arr.tolist()

    low1 = np.asarray(frame.low1, dtype=np.int64)
    children = frame.children
    nth_child = np.zeros((2, n + 1), dtype=np.int64)
    for w in range(1, n + 1):
        ch = children[w]
        if ch:
            nth_child[0, w] = ch[0]
            if len(ch) > 1:
                nth_child[1, w] = ch[1]
    restricted = []
    for i in (0, 1):
        c = nth_child[i, m_arr[2:]]
        # low1 is NIL (0) for a childless slot, so c = 0 is excluded too
        ask = (c != NIL) & (low1[c] != NIL) & (low1[c] < v)
        out = np.zeros(n + 1, dtype=np.int64)
        if ask.any():
            cs, ts = c[ask], v[ask]
            f, l = _interval_extremes(l1_levels, cs, cs + nd[cs], ts)
            out[v[ask]] = nca.query(f, l)
        restricted.append(out)
    # upper ends below M(v) sit in one low child (M~ = M_low1) or in several (M~ = M)
    mt = np.where(restricted[1] != NIL, m_arr, restricted[0])
    mt[:2] = NIL
    Mlow1, Mlow2, Mt = restricted[0].tolist(), restricted[1].tolist(), mt.tolist()

    latest = [NIL] * (n + 1)
    for v in range(2, n + 1):
        m = M[v]
        w = latest[m]
        if w != NIL:
            next_m[v] = w
            prev_m[w] = v
        latest[m] = v
    return MPointTable(M, Mt, Mlow1, Mlow2, next_m, prev_m)


def compute_low_m(frame: DfsFrame, table: MPointTable) -> MPointTable:
    """Fill lowM / lowMD for every v with nextM(v) defined (in place); needs 3EC.

    Vertices are handled in decreasing order; for v = nextM(u) the tree path
    from v towards u is descended along low1 children, scanning each In[y]
    from a cursor that persists across the whole run.
    """
    n = frame.n
    # a 2-cut would leave lowM(u) undefined for some chain pair and derail later descents
    witness = small_cut_witness(frame, table)
    if witness is not None:
        raise NotThreeEdgeConnectedError(witness)
    M = table.M
    prev_m = table.prev_m
    nd = frame.nd
    in_x = frame.in_x
    in_e = frame.in_e
    children = frame.children
    low_m = [NIL] * (n + 1)
    low_md = [NIL] * (n + 1)
    low_me = [NIL] * (n + 1)
    cursor = [0] * (n + 1)
    advances = 0
    for v in range(n, 0, -1):
        u = prev_m[v]
        if u == NIL:
            continue
        mu = M[u]
        end = mu + nd[mu]
        y = v
        while low_m[u] == NIL:
            xs = in_x[y]
            k = cursor[y]
            while k < len(xs):
                x = xs[k]
                if x < mu:
                    k += 1
                    advances += 1
                else:
                    if x < end:
                        low_m[u], low_md[u], low_me[u] = y, x, in_e[y][k]
                    break
            cursor[y] = k
            if low_m[u] == NIL:
                ch = children[y]
                if not ch:
                    raise InvariantViolation(f"lowM descent fell off the tree below {y}")
                c = ch[0]
                if prev_m[c] == NIL:
                    y = c
                else:
                    y = low_m[prev_m[c]]
                if y == NIL or y >= u:
                    raise InvariantViolation(f"lowM descent for {u} left the path T({u},{v}]")
    if advances > len(frame.back_e):
        raise InvariantViolation("In-list cursors advanced more than the back-edge count")
    table.low_m, table.low_md, table.low_me = low_m, low_md, low_me
    table.cursor_advances = advances
    return table


def small_cut_witness(frame: DfsFrame, table: MPointTable | None = None) -> tuple[int, ...] | None:
    """Edge ids of some 1-cut or 2-cut of a connected graph, or None.

    Bridges are tree edges with B(v) empty; a tree edge plus the single member
    of B(v) is a 2-cut; two tree edges with B(u) = B(v) are a 2-cut, and such
    pairs are consecutive on an M chain with equal b_count.
    """
    n = frame.n
    b_count = frame.b_count
    for v in range(2, n + 1):
        if b_count[v] == 0:
            return (frame.tree_edge[v],)
    for v in range(2, n + 1):
        if b_count[v] == 1:
            return tuple(sorted((frame.tree_edge[v], frame.low1e[v])))
    if table is None:
        table = compute_m_points(frame)
    next_m = table.next_m
    for u in range(2, n + 1):
        w = next_m[u]
        if w != NIL and b_count[w] == b_count[u]:
            return tuple(sorted((frame.tree_edge[u], frame.tree_edge[w])))
    return None
