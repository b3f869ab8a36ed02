"""Fat rings: cyclic sequences of equal-width label blocks.

Each block is a clique and consecutive blocks are joined completely. Blocks
come from a pool of disjoint consecutive label ranges.
"""
from __future__ import annotations

import random
from itertools import permutations
from math import comb, factorial
from typing import Sequence

from ..graph import LabeledGraph, ball_view, graph_from_label_edges
from ..verdict import Verdict

Slots = tuple[frozenset[int], ...]


def pool_sets(m: int, width: int) -> list[frozenset[int]]:
    return [frozenset(range(width * i + 1, width * (i + 1) + 1)) for i in range(m)]


def fat_ring(slots: Sequence[Sequence[int]], width: int | None = None) -> LabeledGraph:
    slots = [sorted(s) for s in slots]
    k = len(slots)
    if k < 4 or k % 2:
        raise ValueError(f"need an even number of slots >= 4, got {k}")
    width = width or len(slots[0])
    if any(len(s) != width for s in slots):
        raise ValueError(f"every slot must hold exactly {width} labels")
    labels = [x for s in slots for x in s]
    edges = []
    for j, s in enumerate(slots):
        nxt = slots[(j + 1) % k]
        edges += [(a, b) for i, a in enumerate(s) for b in s[i + 1:]]
        edges += [(a, b) for a in s for b in nxt]
    return graph_from_label_edges(edges, labels)


def canonical_slots(slots: Sequence[frozenset[int]]) -> Slots:
    """Rotate the block of the minimum label to the front; reflect so that
    the next block holds that label's smallest outside neighbour."""
    slots = [frozenset(s) for s in slots]
    k = len(slots)
    start = min(range(k), key=lambda j: min(slots[j]))
    rot = slots[start:] + slots[:start]
    if min(rot[1]) > min(rot[-1]):
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def fat_ring_count(m: int, slots: int) -> int:
    """C(m, slots) * (slots - 1)! / 2."""
    return comb(m, slots) * factorial(slots - 1) // 2


def enumerate_fat_rings(m: int, slots: int, width: int = 1) -> int:
    """Count canonical slot sequences drawn from a pool of ``m`` blocks."""
    pool = pool_sets(m, width)
    count = 0
    for seq in permutations(pool, slots):
        if canonical_slots(seq) == seq:
            count += 1
    return count


def _views_agree(s1: Sequence[frozenset[int]], s2: Sequence[frozenset[int]], i: int, D: int) -> int | None:
    """First label in block i + D whose K(D - 1, .) differs, else None."""
    g1, g2 = fat_ring(s1), fat_ring(s2)
    k = (i + D) % (2 * D)
    for v in sorted(s1[k]):
        if ball_view(g1, g1.node(v), D - 1).encode() != ball_view(g2, g2.node(v), D - 1).encode():
            return v
    return None


def verify_fat_views(D: int, n: int, trials: int | None = None, pool: int | None = None,
                     seed: int = 0) -> Verdict:
    """Fat rings that differ only in block i look the same, up to radius D - 1,
    from every node of the opposite block i + D.

    ``trials=None`` checks every canonical sequence from the pool against
    every single-block replacement; otherwise ``trials`` seeded random pairs.
    Witness: ``(S1, S2, i, label)``.
    """
    if n % (2 * D):
        raise ValueError(f"2D = {2 * D} must divide n = {n}")
    width = n // (2 * D)
    m = pool if pool is not None else 2 * D + 1
    if m <= 2 * D:
        raise ValueError(f"a pool of {m} blocks leaves no replacement for {2 * D} slots")
    blocks = pool_sets(m, width)
    checked = 0
    if trials is None:
        for seq in permutations(blocks, 2 * D):
            if canonical_slots(seq) != seq:
                continue
            spare = [b for b in blocks if b not in seq]
            for i in range(2 * D):
                for b in spare:
                    other = seq[:i] + (b,) + seq[i + 1:]
                    checked += 1
                    bad = _views_agree(seq, other, i, D)
                    if bad is not None:
                        return Verdict(False, checked, (seq, other, i, bad))
        return Verdict(True, checked, detail=f"D={D} n={n} pool={m} exhaustive")
    rng = random.Random(seed)
    for _ in range(trials):
        seq = tuple(rng.sample(blocks, 2 * D))
        i = rng.randrange(2 * D)
        b = rng.choice([x for x in blocks if x not in seq])
        other = seq[:i] + (b,) + seq[i + 1:]
        checked += 1
        bad = _views_agree(seq, other, i, D)
        if bad is not None:
            return Verdict(False, checked, (seq, other, i, bad))
    return Verdict(True, checked, detail=f"D={D} n={n} pool={m} seed={seed}")
