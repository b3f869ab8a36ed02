"""Rings R^1_k: same view around node 1, different maximum, different diameter."""
from __future__ import annotations

from dataclasses import dataclass

from ..graph import LabeledGraph, ball_view, build_ring, distances_from
from ..verdict import Verdict


@dataclass(frozen=True)
class NestedRingFamily:
    D: int
    base: LabeledGraph
    members: tuple[LabeledGraph, ...]  # members[k - 1] is R^1_k

    def member(self, k: int) -> LabeledGraph:
        return self.members[k - 1]


def base_ring(D: int) -> LabeledGraph:
    """Circular labels (1, 2, ..., D+1, 2D+1, 2D, ..., D+2)."""
    return build_ring(list(range(1, D + 2)) + list(range(2 * D + 1, D + 1, -1)))


def nested_ring_family(D: int) -> NestedRingFamily:
    if D < 2:
        raise ValueError(f"need D >= 2, got {D}")
    base = base_ring(D)
    dist = distances_from(base, base.node(1))
    members = []
    for k in range(1, D + 1):
        keep = [v for v in range(base.n) if dist[v] <= k]
        index = {v: i for i, v in enumerate(keep)}
        edges = {(index[a], index[b]) for a, b in base.edges if a in index and b in index}
        a, b = index[base.node(k + 1)], index[base.node(D + k + 1)]
        edges.add((min(a, b), max(a, b)))
        members.append(LabeledGraph(tuple(base.labels[v] for v in keep), frozenset(edges)))
    return NestedRingFamily(D, base, tuple(members))


def verify_nested_views(D: int | None = None, family: NestedRingFamily | None = None) -> Verdict:
    """K(r, node 1) agrees in R^1_i and R^1_j for all i < j and r <= i.

    Witness on failure: ``(i, j, r)``.
    """
    if family is None:
        family = nested_ring_family(D)
    D = family.D
    enc = {}
    for k, g in enumerate(family.members, 1):
        v = g.node(1)
        for r in range(k + 1):
            enc[k, r] = ball_view(g, v, r).encode()
    checked = 0
    for i in range(1, D + 1):
        for j in range(i + 1, D + 1):
            for r in range(i + 1):
                checked += 1
                if enc[i, r] != enc[j, r]:
                    return Verdict(False, checked, (i, j, r))
    return Verdict(True, checked, detail=f"D={D}")
