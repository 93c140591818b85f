"""Multigraph container, text format, generators and contraction.

Vertices are ``1..n``.  Edge ids are dense integers ``1..m`` assigned in
input order; parallel edges and self-loops are kept as separate edges.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Raised for malformed graph files; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Multigraph:
    """Undirected multigraph with stable edge identities."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        self.n = n
        self.edges: list[tuple[int, int]] = [(int(a), int(b)) for a, b in edges]
        for a, b in self.edges:
            if not (1 <= a <= n and 1 <= b <= n):
                raise ValueError(f"endpoint out of range: ({a}, {b}) with n={n}")
        self._adj: list[list[tuple[int, int]]] | None = None

    @classmethod
    def _trusted(cls, n: int, edges: list[tuple[int, int]]) -> "Multigraph":
        """Wrap an edge list already known to be in range, without copying."""
        g = cls.__new__(cls)
        g.n = n
        g.edges = edges
        g._adj = None
        return g

    @property
    def m(self) -> int:
        return len(self.edges)

    def endpoints(self, eid: int) -> tuple[int, int]:
        if not 1 <= eid <= len(self.edges):
            raise KeyError(f"unknown edge id {eid}")
        return self.edges[eid - 1]

    def edge_ids(self) -> range:
        return range(1, len(self.edges) + 1)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex ``(neighbor, edge id)`` lists in edge-id order.

        A self-loop contributes a single incidence.
        """
        if self._adj is None:
            adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n + 1)]
            for i, (a, b) in enumerate(self.edges, 1):
                adj[a].append((b, i))
                if a != b:
                    adj[b].append((a, i))
            self._adj = adj
        return self._adj

    def degree(self, v: int) -> int:
        return sum(1 for w, _ in self.adjacency()[v] if w != v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"


@dataclass
class Partition:
    """Disjoint vertex classes, each sorted, ordered by smallest member."""

    classes: list[list[int]]
    class_of: list[int] = field(repr=False)  # index 0 unused; labels are 1-based

    @classmethod
    def from_labels(cls, labels: Sequence, n: int) -> "Partition":
        """Build from any hashable per-vertex labels (``labels[v]`` for v in 1..n)."""
        groups: dict = {}
        for v in range(1, n + 1):
            groups.setdefault(labels[v], []).append(v)
        classes = sorted(groups.values(), key=lambda c: c[0])
        class_of = [0] * (n + 1)
        for i, members in enumerate(classes, 1):
            for v in members:
                class_of[v] = i
        return cls(classes, class_of)

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[int]], n: int) -> "Partition":
        labels = [0] * (n + 1)
        for i, members in enumerate(classes, 1):
            for v in members:
                labels[v] = i
        if any(labels[v] == 0 for v in range(1, n + 1)):
            raise ValueError("classes do not cover all vertices")
        return cls.from_labels(labels, n)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls([[v] for v in range(1, n + 1)], list(range(n + 1)))

    def __len__(self) -> int:
        return len(self.classes)

    def refines(self, other: "Partition") -> bool:
        """True when every class of ``self`` lies inside one class of ``other``."""
        return all(len({other.class_of[v] for v in c}) == 1 for c in self.classes)


@dataclass
class ContractionMap:
    vertex_map: list[int]  # old vertex -> new vertex (index 0 unused)
    edge_map: list[int]  # new edge id -> old edge id (index 0 unused)


# --- text format -----------------------------------------------------------


def parse_graph(text: str | bytes) -> Multigraph:
    """Parse the ``p n m`` / ``e u v`` line format."""
    if isinstance(text, bytes):
        text = text.decode()
    n = m = -1
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n >= 0:
                raise GraphFormatError("duplicate header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("malformed header, expected 'p <n> <m>'", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("malformed header, counts must be integers", lineno) from None
            if n < 1 or m < 0:
                raise GraphFormatError("malformed header, need n >= 1 and m >= 0", lineno)
        elif tag == "e":
            if n < 0:
                raise GraphFormatError("edge line before header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("malformed edge line, expected 'e <u> <v>'", lineno)
            try:
                a, b = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("malformed edge line, endpoints must be integers", lineno) from None
            if not (1 <= a <= n and 1 <= b <= n):
                raise GraphFormatError(f"endpoint out of range: {a} {b} (n={n})", lineno)
            if len(edges) == m:
                raise GraphFormatError(f"edge-count mismatch: more than {m} edges", lineno)
            edges.append((a, b))
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if n < 0:
        raise GraphFormatError("missing header 'p <n> <m>'")
    if len(edges) != m:
        raise GraphFormatError(f"edge-count mismatch: header says {m}, found {len(edges)}")
    return Multigraph._trusted(n, edges)


def format_graph(g: Multigraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p {g.n} {g.m}")
    lines.extend(f"e {a} {b}" for a, b in g.edges)
    return "\n".join(lines) + "\n"


# --- generators ------------------------------------------------------------


def generate_3ec_graph(n: int, m: int, seed: int) -> Multigraph:
    """Random 3-edge-connected multigraph with exactly ``n`` vertices and ``m`` edges.

    Grown from three parallel edges on two vertices using operations that keep
    3-edge-connectivity: adding an edge; subdividing an edge and joining the new
    vertex to an old one; subdividing two distinct edges and joining the two new
    vertices.  Every 3-edge-connected multigraph is reachable this way.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if m < math.ceil(3 * n / 2):
        raise ValueError(f"infeasible: m={m} < ceil(3n/2)={math.ceil(3 * n / 2)}")
    rng = random.Random(seed)
    extra_v, extra_e = n - 2, m - 3
    # pairs used (+2 vertices, +3 edges); singles (+1, +2); plain edges (+0, +1)
    lo = max(0, 2 * extra_v - extra_e)
    pairs = rng.randint(lo, extra_v // 2)
    singles = extra_v - 2 * pairs
    plain = extra_e - 3 * pairs - 2 * singles
    ops = ["pair"] * pairs + ["single"] * singles + ["edge"] * plain
    rng.shuffle(ops)

    edges = [(1, 2), (1, 2), (1, 2)]
    nv = 2
    for op in ops:
        if op == "edge":
            a = rng.randint(1, nv)
            b = rng.randint(1, nv - 1)
            if b >= a:
                b += 1
            edges.append((a, b))
        elif op == "single":
            i = rng.randrange(len(edges))
            a, b = edges[i]
            nv += 1
            w = nv
            edges[i] = (a, w)
            edges.append((w, b))
            edges.append((w, rng.randint(1, nv - 1)))
        else:
            i, j = rng.sample(range(len(edges)), 2)
            a, b = edges[i]
            c, d = edges[j]
            w1, w2 = nv + 1, nv + 2
            nv += 2
            edges[i] = (a, w1)
            edges[j] = (c, w2)
            edges.extend([(w1, b), (w2, d), (w1, w2)])
    assert nv == n and len(edges) == m

    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    relabel = [0] + perm
    out = []
    for a, b in edges:
        a, b = relabel[a], relabel[b]
        out.append((a, b) if rng.random() < 0.5 else (b, a))
    rng.shuffle(out)
    return Multigraph(n, out)


def generate_random_graph(
    n: int,
    m: int,
    seed: int,
    *,
    connected: bool = False,
    self_loop_rate: float = 0.05,
) -> Multigraph:
    """Uniform-ish random multigraph; parallel edges and self-loops allowed.

    With ``connected=True`` a random spanning tree is laid down first.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if connected and m < n - 1:
        raise ValueError("a connected graph needs m >= n - 1")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    if connected:
        order = list(range(1, n + 1))
        rng.shuffle(order)
        for i in range(1, n):
            edges.append((order[i], order[rng.randrange(i)]))
    while len(edges) < m:
        a = rng.randint(1, n)
        if n > 1 and rng.random() >= self_loop_rate:
            b = rng.randint(1, n - 1)
            if b >= a:
                b += 1
        else:
            b = a
        edges.append((a, b))
    rng.shuffle(edges)
    return Multigraph(n, edges)


# --- contraction and traversal --------------------------------------------


def contract_classes(g: Multigraph, classes: Sequence) -> tuple[Multigraph, ContractionMap]:
    """Merge each vertex class into one vertex and drop the resulting self-loops.

    ``classes[v]`` is any hashable label for v in 1..n.  New vertices are
    numbered by the smallest member of their class.  Surviving edges keep their
    relative order; ``edge_map`` sends new ids back to ``g``'s ids.
    """
    n = g.n
    new_id: dict = {}
    vertex_map = [0] * (n + 1)
    for v in range(1, n + 1):
        label = classes[v]
        k = new_id.get(label)
        if k is None:
            k = new_id[label] = len(new_id) + 1
        vertex_map[v] = k
    edges = []
    edge_map = [0]
    for eid, (a, b) in enumerate(g.edges, 1):
        na, nb = vertex_map[a], vertex_map[b]
        if na != nb:
            edges.append((na, nb))
            edge_map.append(eid)
    return Multigraph._trusted(len(new_id), edges), ContractionMap(vertex_map, edge_map)


def induced_subgraph(
    g: Multigraph, vertices: Sequence[int], skip_edges: set[int] | frozenset = frozenset()
) -> tuple[Multigraph, list[int], list[int]]:
    """Subgraph on ``vertices`` (relabelled 1..k in the given order).

    Returns ``(sub, origin_vertex, origin_edge)`` where both origin lists are
    1-based with a dummy slot 0.
    """
    local = {v: i for i, v in enumerate(vertices, 1)}
    edges = []
    origin_edge = [0]
    for eid, (a, b) in enumerate(g.edges, 1):
        if eid in skip_edges:
            continue
        la, lb = local.get(a), local.get(b)
        if la is not None and lb is not None:
            edges.append((la, lb))
            origin_edge.append(eid)
    return Multigraph._trusted(len(vertices), edges), [0, *vertices], origin_edge


def _component_labels(g: Multigraph, removed: set[int] | frozenset = frozenset()) -> list[int]:
    label = [0] * (g.n + 1)
    adj = g.adjacency()
    count = 0
    for s in range(1, g.n + 1):
        if label[s]:
            continue
        count += 1
        label[s] = count
        stack = [s]
        while stack:
            v = stack.pop()
            for w, eid in adj[v]:
                if not label[w] and eid not in removed:
                    label[w] = count
                    stack.append(w)
    return label


def connected_components(g: Multigraph, removed: Iterable[int] = ()) -> Partition:
    """Components of ``g`` with the edges in ``removed`` deleted."""
    removed = set(removed)
    return Partition.from_labels(_component_labels(g, removed), g.n)


def is_disconnected_after_removal(g: Multigraph, removed: Iterable[int]) -> bool:
    removed = set(removed)
    for eid in removed:
        g.endpoints(eid)
    if g.n <= 1:
        return False
    label = _component_labels(g, removed)
    return max(label) > 1
