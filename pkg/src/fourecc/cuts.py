"""Enumeration of all 3-edge cuts of a 3-edge-connected multigraph.

Cuts are classified by how many DFS tree edges they contain.  Type-1 cuts
come straight from b_count; type-2 cuts come from the two chain-walking
procedures below; type-3 cuts are found by contracting every back-edge and
repeating on the (still 3-edge-connected) quotient, whose edges are all tree
edges of the first DFS tree.
"""

from __future__ import annotations

import gc
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from .dfs import NIL, DfsFrame, build_dfs_frame
from .graph import Multigraph, connected_components, contract_classes
from .mpoints import (
    InvariantViolation,
    MPointTable,
    NotThreeEdgeConnectedError,
    compute_low_m,
    compute_m_points,
    small_cut_witness,
)


@dataclass(frozen=True, order=True)
class Cut3:
    edges: tuple[int, int, int]
    cut_type: int = field(compare=False)
    # type 1: (v,); type 2: (u, v, e); type 3: (round,)
    witness: tuple[int, ...] = field(compare=False, default=())


@dataclass
class EnumStats:
    """Timings (seconds) and amortization counters gathered during enumeration."""

    timings: dict[str, float] = field(default_factory=dict)
    walk_steps: dict[str, int] = field(default_factory=dict)  # per pass, max over rounds
    cursor_advances: int = 0
    back_edges: int = 0
    round_vertices: list[int] = field(default_factory=list)

    def add_time(self, phase: str, seconds: float) -> None:
        self.timings[phase] = self.timings.get(phase, 0.0) + seconds

    def note_walk(self, name: str, steps: int) -> None:
        self.walk_steps[name] = max(self.walk_steps.get(name, 0), steps)

    @property
    def rounds(self) -> int:
        return len(self.round_vertices)


def _cut(e1: int, e2: int, e3: int, cut_type: int, witness: tuple[int, ...]) -> Cut3:
    a, b, c = sorted((e1, e2, e3))
    return Cut3((a, b, c), cut_type, witness)


def type1_cuts(frame: DfsFrame) -> list[Cut3]:
    """Cuts with one tree edge: (v, p(v)) together with B(v) when |B(v)| = 2."""
    out = []
    b_count = frame.b_count
    for v in range(2, frame.n + 1):
        if b_count[v] == 2:
            out.append(_cut(frame.tree_edge[v], frame.low1e[v], frame.low2e[v], 1, (frame.vertex[v],)))
    return out


def _walk_down_chain(start: int, v: int, next_m: list[int]) -> tuple[int, int]:
    u = start
    steps = 0
    w = next_m[u]
    while w != NIL and w > v:
        u = w
        w = next_m[u]
        steps += 1
    return u, steps


def type2_cuts_v_side(
    frame: DfsFrame, table: MPointTable, stats: EnumStats | None = None
) -> list[Cut3]:
    """Type-2 cuts {(u,p(u)), (v,p(v)), e} with B(v) = B(u) + {e}, u below v.

    Three passes, one per candidate m in {M~(v), M_low1(v), M_low2(v)}; u is the
    smallest vertex of M^-1(m) above v, located by a per-pass pointer that only
    moves down the chain.
    """
    n = frame.n
    b_count = frame.b_count
    l1, l1e, l2 = frame.l1, frame.l1e, frame.l2
    low1, low2 = frame.low1, frame.low2
    children = frame.children
    tree_edge = frame.tree_edge
    M, next_m = table.M, table.next_m
    out: list[Cut3] = []

    def third_child_ok(w: int, v: int) -> bool:
        ch = children[w]
        return len(ch) < 3 or low1[ch[2]] >= v

    for name, source in (("v_side_mt", table.Mt), ("v_side_mlow1", table.Mlow1), ("v_side_mlow2", table.Mlow2)):
        current = list(range(n + 1))
        steps = 0
        for v in range(n, 0, -1):
            m = source[v]
            if m == NIL:
                continue
            w = M[v]
            if name != "v_side_mt" and l1[w] < v:
                continue
            u, k = _walk_down_chain(current[m], v, next_m)
            steps += k
            current[m] = u
            if b_count[v] != b_count[u] + 1:
                continue
            if name == "v_side_mt":
                ch = children[w]
                if l2[w] >= v and (len(ch) < 2 or low1[ch[1]] >= v):
                    e = l1e[w]
                else:
                    continue
            elif name == "v_side_mlow1":
                z = table.Mlow2[v]
                if low2[z] >= v and third_child_ok(w, v):
                    e = l1e[z]
                else:
                    continue
            else:
                z = table.Mlow1[v]
                if low2[z] >= v and third_child_ok(w, v):
                    e = l1e[z]
                else:
                    continue
            if e == NIL:
                raise InvariantViolation(f"type-2 condition held at v={v} without a back-edge")
            out.append(_cut(tree_edge[u], tree_edge[v], e, 2, (frame.vertex[u], frame.vertex[v], e)))
        if steps > n:
            raise InvariantViolation(f"{name}: {steps} chain steps exceed n={n}")
        if stats is not None:
            stats.note_walk(name, steps)
    return out


def type2_cuts_u_side(
    frame: DfsFrame, table: MPointTable, stats: EnumStats | None = None
) -> list[Cut3]:
    """Type-2 cuts {(u,p(u)), (v,p(v)), e} with B(u) = B(v) + {e}, u below v."""
    n = frame.n
    b_count = frame.b_count
    l1, l1e = frame.l1, frame.l1e
    tree_edge = frame.tree_edge
    M, Mt, Mlow1, Mlow2 = table.M, table.Mt, table.Mlow1, table.Mlow2
    next_m = table.next_m
    if table.low_m is None:
        raise ValueError("lowM not computed; call compute_low_m first")
    low_me = table.low_me
    vertex = frame.vertex
    out: list[Cut3] = []

    # v = nextM(u): the extra back-edge is (lowMD(u), lowM(u))
    for u in range(2, n + 1):
        v = next_m[u]
        if v != NIL and b_count[u] == b_count[v] + 1:
            e = low_me[u]
            out.append(_cut(tree_edge[u], tree_edge[v], e, 2, (vertex[u], vertex[v], e)))

    for name in ("u_side_mt", "u_side_mlow1"):
        current = list(range(n + 1))
        steps = 0
        for u in range(n, 0, -1):
            w = M[u]
            if name == "u_side_mt":
                m = Mt[u]
                if m == NIL or m == w:
                    continue
            else:
                m = Mlow1[u]
                if m == NIL or l1[w] < u:
                    continue
            v = current[m]
            while v != NIL and v >= u:
                v = next_m[v]
                steps += 1
            current[m] = v
            if v == NIL or b_count[u] != b_count[v] + 1:
                continue
            e = l1e[w] if name == "u_side_mt" else l1e[Mlow2[u]]
            if e == NIL:
                raise InvariantViolation(f"type-2 condition held at u={u} without a back-edge")
            out.append(_cut(tree_edge[u], tree_edge[v], e, 2, (vertex[u], vertex[v], e)))
        if steps > n:
            raise InvariantViolation(f"{name}: {steps} chain steps exceed n={n}")
        if stats is not None:
            stats.note_walk(name, steps)
    return out


def _back_edge_classes(frame: DfsFrame) -> list[int]:
    """Original-vertex labels of the components spanned by the back-edges."""
    n = frame.n
    par = list(range(n + 1))
    for x, y in zip(frame.back_x, frame.back_y):
        rx, ry = x, y
        while par[rx] != rx:
            par[rx] = par[par[rx]]
            rx = par[rx]
        while par[ry] != ry:
            par[ry] = par[par[ry]]
            ry = par[ry]
        if rx != ry:
            par[max(rx, ry)] = min(rx, ry)
    labels = [0] * (n + 1)
    vertex = frame.vertex
    for v in range(1, n + 1):
        r = v
        while par[r] != r:
            r = par[r]
        labels[vertex[v]] = r
    return labels


def _round_cuts(frame: DfsFrame, table: MPointTable, stats: EnumStats | None) -> list[Cut3]:
    clock = time.perf_counter
    t0 = clock()
    found = type1_cuts(frame)
    t1 = clock()
    found += type2_cuts_v_side(frame, table, stats)
    t2 = clock()
    found += type2_cuts_u_side(frame, table, stats)
    t3 = clock()
    if stats is not None:
        stats.add_time("type1", t1 - t0)
        stats.add_time("type2_v_side", t2 - t1)
        stats.add_time("type2_u_side", t3 - t2)
    return found


def _prepare(g: Multigraph, stats: EnumStats | None) -> tuple[DfsFrame, MPointTable]:
    clock = time.perf_counter
    t0 = clock()
    frame = build_dfs_frame(g, 1)
    t1 = clock()
    table = compute_m_points(frame)
    t2 = clock()
    if stats is not None:
        stats.add_time("dfs", t1 - t0)
        stats.add_time("m_points", t2 - t1)
    return frame, table


@contextmanager
def _gc_paused():
    # everything allocated here is acyclic; the cyclic collector would only
    # rescan millions of small lists and ints, superlinearly in total
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def _enumerate(g: Multigraph, stats: EnumStats | None = None, check: bool = True) -> tuple[list[Cut3], DfsFrame]:
    """All 3-cuts found over the contraction rounds, tagged by their type with
    respect to the round-0 tree (not deduplicated), plus that round-0 frame."""
    with _gc_paused():
        return _enumerate_rounds(g, stats, check)


def _enumerate_rounds(g: Multigraph, stats: EnumStats | None, check: bool) -> tuple[list[Cut3], DfsFrame]:
    clock = time.perf_counter
    if stats is None:
        stats = EnumStats()
    if g.n == 1:
        frame = build_dfs_frame(g, 1)
        stats.round_vertices.append(1)
        return [], frame

    try:
        frame0, table = _prepare(g, stats)
    except ValueError:
        if check:
            parts = connected_components(g)
            if len(parts) > 1:
                raise NotThreeEdgeConnectedError(()) from None
            frame0 = build_dfs_frame(g, 1)
            raise NotThreeEdgeConnectedError(small_cut_witness(frame0)) from None
        raise
    if check:
        witness = small_cut_witness(frame0, table)
        if witness is not None:
            raise NotThreeEdgeConnectedError(witness)

    cuts: list[Cut3] = []
    graph, frame = g, frame0
    origin = list(range(g.m + 1))  # current edge id -> original edge id
    round_no = 0
    while True:
        stats.round_vertices.append(graph.n)
        t0 = clock()
        compute_low_m(frame, table)
        stats.add_time("low_m", clock() - t0)
        stats.cursor_advances += table.cursor_advances
        stats.back_edges += len(frame.back_e)
        for c in _round_cuts(frame, table, stats):
            a, b, d = (origin[e] for e in c.edges)
            if round_no == 0:
                cuts.append(c)
            else:
                cuts.append(_cut(a, b, d, 3, (round_no,)))

        t0 = clock()
        labels = _back_edge_classes(frame)
        contracted, cmap = contract_classes(graph, labels)
        stats.add_time("contraction", clock() - t0)
        if contracted.n >= graph.n:
            raise InvariantViolation(f"contraction round {round_no} did not shrink the graph")
        origin = [origin[e] for e in cmap.edge_map]
        graph = contracted
        round_no += 1
        if graph.n == 1:
            break
        frame, table = _prepare(graph, stats)
    return cuts, frame0


def type3_cuts(g: Multigraph, stats: EnumStats | None = None) -> list[Cut3]:
    """Every cut found across the contraction rounds (rounds >= 1 give exactly
    the type-3 cuts; round 0 contributes the type-1 and type-2 cuts)."""
    cuts, _ = _enumerate(g, stats, check=False)
    return cuts


def all_3cuts(g: Multigraph, check: bool = True, stats: EnumStats | None = None) -> list[Cut3]:
    """All 3-edge cuts of a 3-edge-connected multigraph, sorted by edge triple.

    Raises NotThreeEdgeConnectedError (with a 0-, 1- or 2-cut witness) unless
    ``check`` is False.
    """
    cuts, _ = _enumerate(g, stats, check)
    return dedup_cuts(cuts)


def dedup_cuts(cuts: list[Cut3]) -> list[Cut3]:
    seen: dict[tuple[int, int, int], Cut3] = {}
    for c in cuts:
        seen.setdefault(c.edges, c)
    return sorted(seen.values(), key=_by_edges)


def _by_edges(c: Cut3) -> tuple[int, int, int]:
    return c.edges
