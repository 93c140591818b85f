"""Edge-connectivity hierarchy: components, 2ECC, 3ECC and 4ECC.

Within a (k-1)-edge-connected piece, the k-edge-connected classes are the
common refinement of the bipartitions cut out by its (k-1)-cuts.  A vertex's
side of a cut is the parity of cut edges on its tree path from the root, so
XOR-ing one random token per cut into the tree edges it contains and taking
prefix XORs down the tree yields labels that agree exactly on the classes
(up to a 2^-128 collision chance).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from .cuts import EnumStats, NotThreeEdgeConnectedError, _enumerate, dedup_cuts
from .dfs import NIL, DfsFrame, NotConnectedError, build_dfs_frame
from .graph import (
    Multigraph,
    Partition,
    connected_components,
    contract_classes,
    induced_subgraph,
)
from .mpoints import InvariantViolation, compute_m_points, small_cut_witness

_TOKEN_SEED = 0x4ECC


@dataclass
class SplitGraph:
    """A 3-edge-connected class together with its stand-in graph.

    Virtual edges replace each chain of 2-cuts leading out of the class, so
    pairs inside the class have the same local edge connectivity here as in
    the original graph.
    """

    graph: Multigraph
    vertices: list[int]  # the class, original ids, ascending
    virtual_edges: set[int] = field(default_factory=set)
    origin_map: list[int] = field(default_factory=list)  # member vertex -> original vertex
    edge_origin: list[int] = field(default_factory=list)  # member edge -> original edge, NIL if virtual


def _parity_labels(frame: DfsFrame, cut_tree_edges: Iterable[Iterable[int]]) -> list[int]:
    """Per-preorder-vertex labels; equal labels <=> same side of every cut.

    Each item of ``cut_tree_edges`` lists the tree edges of one cut, given as
    the preorder number of their lower endpoint.
    """
    rng = random.Random(_TOKEN_SEED)
    mark = [0] * (frame.n + 1)
    for lower_ends in cut_tree_edges:
        token = rng.getrandbits(128)
        for v in lower_ends:
            mark[v] ^= token
    parent = frame.parent
    for v in range(2, frame.n + 1):
        mark[v] ^= mark[parent[v]]
    return mark


def _labels_to_original(frame: DfsFrame, labels: list[int]) -> list:
    out = [None] * (frame.n + 1)
    for v in range(1, frame.n + 1):
        out[frame.vertex[v]] = labels[v]
    return out


def _pieces(g: Multigraph, parts: Partition, skip: set[int] | frozenset = frozenset()):
    for members in parts.classes:
        if len(members) == 1:
            continue
        sub, ov, oe = induced_subgraph(g, members, skip)
        yield members, sub, ov, oe


def two_ecc(g: Multigraph) -> tuple[Partition, list[int]]:
    """2-edge-connected components and the bridges (tree edges with B(v) empty)."""
    bridges: list[int] = []
    for _, sub, _, oe in _pieces(g, connected_components(g)):
        frame = build_dfs_frame(sub, 1)
        for v in range(2, sub.n + 1):
            if frame.b_count[v] == 0:
                bridges.append(oe[frame.tree_edge[v]])
    bridges.sort()
    return connected_components(g, bridges), bridges


def _three_ecc_of_2ec(h: Multigraph) -> tuple[list, DfsFrame]:
    """3ECC labels (by vertex of ``h``) of a connected bridgeless multigraph."""
    frame = build_dfs_frame(h, 1)
    table = compute_m_points(frame)
    b_count, next_m = frame.b_count, table.next_m
    cuts = []
    for v in range(2, frame.n + 1):
        if b_count[v] == 1:
            cuts.append((v,))
        w = next_m[v]
        if w != NIL and b_count[w] == b_count[v]:
            cuts.append((v, w))
    return _labels_to_original(frame, _parity_labels(frame, cuts)), frame


def _split_graphs(h: Multigraph, labels: list, ov: list[int], oe: list[int]) -> list[SplitGraph]:
    """Stand-in graphs for the 3ECCs of a 2-edge-connected ``h``.

    Contracting the classes leaves a cactus: each edge lies on exactly one
    cycle.  A cycle through a class enters and leaves it at two vertices,
    which get joined by a virtual edge.
    """
    quotient, cmap = contract_classes(h, labels)
    members: dict[int, list[int]] = {}
    for v in range(1, h.n + 1):
        members.setdefault(cmap.vertex_map[v], []).append(v)
    virtual: dict[int, list[tuple[int, int]]] = {k: [] for k in members}

    if quotient.n > 1:
        qf = build_dfs_frame(quotient, 1)
        used = [False] * (quotient.m + 1)

        def inside(qeid: int, node: int) -> int:
            a, b = h.endpoints(cmap.edge_map[qeid])
            return a if cmap.vertex_map[a] == node else b

        for x, y, eid in zip(qf.back_x, qf.back_y, qf.back_e):
            cycle = [eid]
            z = x
            while z != y:
                te = qf.tree_edge[z]
                if used[te]:
                    raise InvariantViolation("3ECC quotient is not a cactus")
                used[te] = True
                cycle.append(te)
                z = qf.parent[z]
            # consecutive cycle edges meet at x, p(x), ..., and finally at y
            nodes = []
            z = x
            while z != y:
                nodes.append(z)
                z = qf.parent[z]
            nodes.append(y)
            for i, node in enumerate(nodes):
                e_in, e_out = cycle[i], cycle[(i + 1) % len(cycle)]
                q = qf.vertex[node]
                a, b = inside(e_in, q), inside(e_out, q)
                if a != b:
                    virtual[q].append((a, b))
        if not all(used[qf.tree_edge[v]] for v in range(2, quotient.n + 1)):
            raise InvariantViolation("3ECC quotient has an edge on no cycle")

    out = []
    for k, vs in members.items():
        if len(vs) < 2:
            continue
        sub, sov, soe = induced_subgraph(h, vs)
        local = {v: i for i, v in enumerate(vs, 1)}
        edges = list(sub.edges)
        edge_origin = [NIL] + [oe[e] for e in soe[1:]]
        first_virtual = len(edges) + 1
        for a, b in virtual[k]:
            edges.append((local[a], local[b]))
            edge_origin.append(NIL)
        out.append(
            SplitGraph(
                graph=Multigraph(len(vs), edges),
                vertices=[ov[v] for v in vs],
                virtual_edges=set(range(first_virtual, len(edges) + 1)),
                origin_map=[0] + [ov[v] for v in vs],
                edge_origin=edge_origin,
            )
        )
    return out


def three_ecc(g: Multigraph) -> tuple[Partition, list[SplitGraph]]:
    """3-edge-connected components and one SplitGraph per class of size >= 2."""
    labels: list = [("single", v) for v in range(g.n + 1)]
    splits: list[SplitGraph] = []
    parts, bridges = two_ecc(g)
    for members, h, ov, oe in _pieces(g, parts, set(bridges)):
        local, _ = _three_ecc_of_2ec(h)
        for v in range(1, h.n + 1):
            labels[ov[v]] = (members[0], local[v])
        splits.extend(_split_graphs(h, local, ov, oe))
    splits.sort(key=lambda s: s.vertices[0])
    return Partition.from_labels(labels, g.n), splits


def is_3ec(g: Multigraph) -> tuple[bool, tuple[int, ...] | None]:
    """``(True, None)`` or ``(False, witness)`` where the witness is a 1- or 2-cut
    (empty tuple for a disconnected graph)."""
    try:
        frame = build_dfs_frame(g, 1)
    except NotConnectedError:
        return False, ()
    witness = small_cut_witness(frame)
    return witness is None, witness


def four_ecc_3ec(g: Multigraph, stats: EnumStats | None = None) -> Partition:
    """4ECCs of a 3-edge-connected multigraph from its 3-cuts."""
    if g.n == 1:
        return Partition.singletons(1)
    cuts, frame = _enumerate(g, stats, check=True)
    child_of_edge = {frame.tree_edge[v]: v for v in range(2, frame.n + 1)}
    lower = (
        [child_of_edge[e] for e in c.edges if e in child_of_edge]
        for c in dedup_cuts(cuts)
    )
    labels = _labels_to_original(frame, _parity_labels(frame, lower))
    return Partition.from_labels(labels, g.n)


def four_ecc(g: Multigraph) -> Partition:
    """4-edge-connected components of an arbitrary multigraph."""
    labels: list = [("single", v) for v in range(g.n + 1)]
    for sg in three_ecc(g)[1]:
        part = four_ecc_3ec(sg.graph)
        for i, cls in enumerate(part.classes):
            tag = (sg.vertices[0], i)
            for v in cls:
                labels[sg.origin_map[v]] = tag
    return Partition.from_labels(labels, g.n)


def kecc(g: Multigraph, k: int) -> Partition:
    if k == 1:
        return connected_components(g)
    if k == 2:
        return two_ecc(g)[0]
    if k == 3:
        return three_ecc(g)[0]
    if k == 4:
        return four_ecc(g)
    raise ValueError("k must be in 1..4")


__all__ = [
    "SplitGraph",
    "NotThreeEdgeConnectedError",
    "two_ecc",
    "three_ecc",
    "is_3ec",
    "four_ecc_3ec",
    "four_ecc",
    "kecc",
]
