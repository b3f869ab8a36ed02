"""Labeled graphs, rings, balls and the local views K(r, v)."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class GraphError(ValueError):
    pass


class InstanceError(ValueError):
    """Malformed instance text; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def _edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class LabeledGraph:
    """Connected simple graph on nodes ``0..n-1`` with distinct positive labels.

    Node indices only matter for serialization; everything semantic is keyed
    on labels. ``L`` is the optional label-space bound.
    """

    labels: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    L: int | None = None

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        n = len(labels)
        if n < 1:
            raise GraphError("graph needs at least one node")
        if len(set(labels)) != n:
            raise GraphError("duplicate label")
        if min(labels) < 1:
            raise GraphError("labels must be positive")
        if self.L is not None and max(labels) > self.L:
            raise GraphError(f"label {max(labels)} exceeds L={self.L}")
        edges = set()
        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) out of range for {n} nodes")
            if i == j:
                raise GraphError(f"self-loop at node {i}")
            edges.add(_edge(int(i), int(j)))
        object.__setattr__(self, "edges", frozenset(edges))
        order, _ = kernels.bfs_dist(self.indptr, self.indices, 0)
        if len(order) != n:
            raise GraphError("graph is disconnected")

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.labels]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def indptr(self) -> np.ndarray:
        return np.concatenate(([0], np.cumsum([len(a) for a in self.adjacency]))).astype(np.int64)

    @cached_property
    def indices(self) -> np.ndarray:
        return np.fromiter((w for a in self.adjacency for w in a), dtype=np.int64,
                           count=2 * len(self.edges))

    @cached_property
    def label_array(self) -> np.ndarray:
        return np.array(self.labels, dtype=np.int64)

    @cached_property
    def index_of(self) -> dict[int, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def node(self, label: int) -> int:
        try:
            return self.index_of[label]
        except KeyError:
            raise GraphError(f"no node labeled {label}") from None

    @property
    def max_label(self) -> int:
        return max(self.labels)

    def is_ring(self) -> bool:
        return self.n >= 3 and all(len(a) == 2 for a in self.adjacency)

    def relabel(self, mapping: dict[int, int]) -> LabeledGraph:
        return LabeledGraph(tuple(mapping.get(x, x) for x in self.labels), self.edges, self.L)


def graph_from_label_edges(label_edges: Iterable[tuple[int, int]], labels: Sequence[int] | None = None,
                           L: int | None = None) -> LabeledGraph:
    """Build a graph from edges given as label pairs (node order = ``labels`` or first appearance)."""
    label_edges = list(label_edges)
    if labels is None:
        seen: dict[int, None] = {}
        for a, b in label_edges:
            seen.setdefault(a)
            seen.setdefault(b)
        labels = list(seen)
    pos = {lab: i for i, lab in enumerate(labels)}
    if len(pos) != len(labels):
        raise GraphError("duplicate label")
    return LabeledGraph(tuple(labels), frozenset(_edge(pos[a], pos[b]) for a, b in label_edges), L)


def build_ring(labels: Sequence[int], L: int | None = None) -> LabeledGraph:
    """Cycle through ``labels`` in the given circular order."""
    labels = tuple(labels)
    if len(labels) < 3:
        raise GraphError(f"a ring needs at least 3 nodes, got {len(labels)}")
    n = len(labels)
    return LabeledGraph(labels, frozenset(_edge(i, (i + 1) % n) for i in range(n)), L)


def build_path(labels: Sequence[int], L: int | None = None) -> LabeledGraph:
    labels = tuple(labels)
    return LabeledGraph(labels, frozenset((i, i + 1) for i in range(len(labels) - 1)), L)


def ring_sequence(g: LabeledGraph) -> tuple[int, ...]:
    """Circular label order of a ring, starting at its smallest label and
    continuing towards the smaller of that node's two neighbours."""
    if not g.is_ring():
        raise GraphError("not a ring")
    start = g.node(min(g.labels))
    a, b = g.adjacency[start]
    nxt = a if g.labels[a] < g.labels[b] else b
    seq = [start]
    prev, cur = start, nxt
    while cur != start:
        seq.append(cur)
        x, y = g.adjacency[cur]
        prev, cur = cur, (y if x == prev else x)
    return tuple(g.labels[i] for i in seq)


def eccentricities(g: LabeledGraph) -> np.ndarray:
    if g.is_ring():
        return np.full(g.n, g.n // 2, dtype=np.int64)
    return kernels.eccentricities(g.indptr, g.indices)


def eccentricity(g: LabeledGraph, v: int) -> int:
    _, dist = kernels.bfs_dist(g.indptr, g.indices, v)
    return int(dist[-1])


def diameter(g: LabeledGraph) -> int:
    """Largest BFS distance over node pairs (closed form for cycles)."""
    ecc = eccentricities(g)
    if ecc[0] < 0:
        raise GraphError("graph is disconnected")
    return int(ecc.max())


def distances_from(g: LabeledGraph, v: int, radius: int = -1) -> dict[int, int]:
    order, dist = kernels.bfs_dist(g.indptr, g.indices, v, radius)
    return dict(zip(order.tolist(), dist.tolist()))


@dataclass(frozen=True)
class View:
    """K(r, v): the radius-r ball around ``root_label`` without the edges
    joining two nodes at distance exactly r, plus the full degrees of the
    nodes at distance r."""

    root_label: int
    radius: int
    inner_labels: frozenset[int]
    boundary_labels: frozenset[int]
    edges: frozenset[tuple[int, int]]
    boundary_degrees: tuple[tuple[int, int], ...] = field(default=())

    @property
    def labels(self) -> frozenset[int]:
        return self.inner_labels | self.boundary_labels

    @property
    def max_label(self) -> int:
        return max(self.labels)

    @property
    def has_boundary(self) -> bool:
        return bool(self.boundary_labels)

    def encode(self) -> bytes:
        def join(xs):
            return ",".join(map(str, xs))

        parts = [
            f"root={self.root_label}",
            f"r={self.radius}",
            "inner=" + join(sorted(self.inner_labels)),
            "boundary=" + join(sorted(self.boundary_labels)),
            "edges=" + join(f"{a}-{b}" for a, b in sorted(self.edges)),
            "deg=" + join(f"{a}:{d}" for a, d in sorted(self.boundary_degrees)),
        ]
        return ";".join(parts).encode()

    def materialize(self) -> View:
        return self


def ball_view(g: LabeledGraph, v: int, r: int) -> View:
    if r < 0:
        raise ValueError("radius must be non-negative")
    order, dist = kernels.bfs_dist(g.indptr, g.indices, v, r)
    d = dict(zip(order.tolist(), dist.tolist()))
    lab = g.labels
    edges = set()
    for u, du in d.items():
        for w in g.adjacency[u]:
            dw = d.get(w)
            if dw is None or (du == r and dw == r) or u > w:
                continue
            edges.add(_edge(lab[u], lab[w]))
    boundary = [u for u, du in d.items() if du == r]
    return View(
        root_label=lab[v],
        radius=r,
        inner_labels=frozenset(lab[u] for u, du in d.items() if du < r),
        boundary_labels=frozenset(lab[u] for u in boundary),
        edges=frozenset(edges),
        boundary_degrees=tuple(sorted((lab[u], g.degree(u)) for u in boundary)),
    )


def label_set(g: LabeledGraph, v: int, r: int) -> frozenset[int]:
    order, _ = kernels.bfs_dist(g.indptr, g.indices, v, r)
    return frozenset(g.labels[u] for u in order.tolist())


def ball_max_labels(g: LabeledGraph, r: int) -> np.ndarray:
    """max(lambda(r, v)) for every node v, indexed by node."""
    return kernels.flood_max(g.indptr, g.indices, g.label_array, r)


def views_equal(a: View, b: View) -> bool:
    return a.encode() == b.encode()


def serialize_instance(g: LabeledGraph) -> str:
    lines = [f"graph {g.n} {len(g.edges)}"]
    if g.L is not None:
        lines.append(f"L {g.L}")
    lines += [f"node {i} {lab}" for i, lab in enumerate(g.labels)]
    lines += [f"edge {i} {j}" for i, j in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InstanceError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_instance(text: str) -> LabeledGraph:
    """Parse the line-oriented instance format (``graph``/``ring`` header,
    optional ``L``, then ``node`` and ``edge`` records)."""
    header = None
    ring: list[int] | None = None
    n = m = 0
    L = None
    nodes: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, *rest = line.split()
        if header is None:
            if kw == "graph":
                if len(rest) != 2:
                    raise InstanceError("expected 'graph <n> <m>'", lineno)
                n, m = _ints(rest, lineno)
                if n < 1 or m < 0:
                    raise InstanceError("node count must be positive", lineno)
            elif kw == "ring":
                ring = _ints(rest, lineno)
            else:
                raise InstanceError(f"expected 'graph' or 'ring' header, got {kw!r}", lineno)
            header = kw
            continue
        if kw == "L":
            if len(rest) != 1 or L is not None:
                raise InstanceError("expected a single 'L <value>' line", lineno)
            (L,) = _ints(rest, lineno)
            if L < 1:
                raise InstanceError("L must be positive", lineno)
        elif kw == "node" and header == "graph":
            if len(rest) != 2:
                raise InstanceError("expected 'node <index> <label>'", lineno)
            i, lab = _ints(rest, lineno)
            if not 0 <= i < n:
                raise InstanceError(f"node index {i} out of range for {n} nodes", lineno)
            if i in nodes:
                raise InstanceError(f"node {i} declared twice", lineno)
            if lab < 1:
                raise InstanceError(f"label {lab} must be positive", lineno)
            if lab in nodes.values():
                raise InstanceError(f"duplicate label {lab}", lineno)
            nodes[i] = lab
        elif kw == "edge" and header == "graph":
            if len(rest) != 2:
                raise InstanceError("expected 'edge <i> <j>'", lineno)
            i, j = _ints(rest, lineno)
            for x in (i, j):
                if not 0 <= x < n:
                    raise InstanceError(f"edge endpoint {x} out of range for {n} nodes", lineno)
            if i == j:
                raise InstanceError(f"self-loop at node {i}", lineno)
            if _edge(i, j) in edges:
                raise InstanceError(f"parallel edge {i} {j}", lineno)
            edges.append(_edge(i, j))
        else:
            raise InstanceError(f"unexpected record {kw!r}", lineno)
    if header is None:
        raise InstanceError("empty instance")
    try:
        if ring is not None:
            if len(set(ring)) != len(ring):
                raise InstanceError("duplicate label in ring")
            return build_ring(ring, L)
        if len(nodes) != n:
            missing = sorted(set(range(n)) - set(nodes))
            raise InstanceError(f"missing node records: {missing[:5]}")
        if len(edges) != m:
            raise InstanceError(f"header declares {m} edges, found {len(edges)}")
        return LabeledGraph(tuple(nodes[i] for i in range(n)), frozenset(edges), L)
    except GraphError as exc:
        raise InstanceError(str(exc)) from None
