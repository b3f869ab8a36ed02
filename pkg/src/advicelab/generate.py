"""Seeded random instances."""
from __future__ import annotations

import random

from .graph import LabeledGraph, build_ring


def default_L(n: int) -> int:
    """Smallest power of two >= 4n."""
    return 1 << (4 * n - 1).bit_length()


def random_ring(n: int, seed: int, L: int | None = None) -> LabeledGraph:
    L = L or default_L(n)
    rng = random.Random(seed)
    return build_ring(rng.sample(range(1, L + 1), n), L)


def random_graph(n: int, seed: int, L: int | None = None, extra: float = 0.5) -> LabeledGraph:
    """Random spanning tree plus about ``extra * n`` further random edges."""
    L = L or default_L(n)
    rng = random.Random(seed)
    labels = rng.sample(range(1, L + 1), n)
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    target = len(edges) + int(extra * n)
    attempts = 0
    while len(edges) < min(target, n * (n - 1) // 2) and attempts < 20 * n:
        attempts += 1
        a, b = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return LabeledGraph(tuple(labels), frozenset(edges), L)
