"""Chop and glue on odd rings, and the staged adversary built from them.

The adversary starts from disjoint triangles, keeps the largest class of
rings that receive identical advice, glues those rings pairwise into larger
odd rings, and repeats. It finally splices two chopped survivors into a ring
X. If the algorithm halts within the diameter, both chopped survivors still
see exactly what they saw in their own rings, so both output 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..graph import GraphError, LabeledGraph, build_ring, diameter, ring_sequence
from ..sim import Algorithm, Oracle, RunReport, run

Path = tuple[int, ...]


def chop(ring: LabeledGraph, report: RunReport) -> Path:
    """Drop the edge between the two nodes at distance diam from the selected
    node; returns the resulting path as a label sequence, leaf to leaf."""
    if not ring.is_ring() or ring.n % 2 == 0:
        raise GraphError("chop needs an odd ring")
    chosen = report.selected()
    if len(chosen) != 1:
        raise ValueError(f"chop needs exactly one selected node, got {chosen}")
    d = ring.n // 2
    late = [lab for lab, res in report.nodes.items() if res.halt_round is None or res.halt_round > d]
    if late:
        raise ValueError(f"nodes {late[:5]} did not halt within diam = {d} rounds")
    seq = ring_sequence(ring)
    p = seq.index(chosen[0])
    start = (p + d + 1) % ring.n
    return seq[start:] + seq[:start]


def glue(path1: Sequence[int], path2: Sequence[int], new_label: int, L: int | None = None) -> LabeledGraph:
    """Join two chopped rings: smaller leaf to smaller leaf, and a new node
    between the two larger leaves."""
    p1, p2 = tuple(path1), tuple(path2)
    if set(p1) & set(p2) or new_label in p1 or new_label in p2:
        raise GraphError("glue needs disjoint label sets and a fresh label")
    if p1[0] < p1[-1]:
        p1 = p1[::-1]  # smaller leaf last
    if p2[0] > p2[-1]:
        p2 = p2[::-1]  # smaller leaf first
    return build_ring(p1 + p2 + (new_label,), L)


def path_in(g: LabeledGraph, path: Sequence[int], without: tuple[int, int] | None = None) -> bool:
    """Whether every edge of ``path`` is an edge of ``g`` (optionally minus one edge)."""
    try:
        idx = [g.node(x) for x in path]
    except GraphError:
        return False
    drop = None if without is None else tuple(sorted((g.node(without[0]), g.node(without[1]))))
    for a, b in zip(idx, idx[1:]):
        e = (a, b) if a < b else (b, a)
        if e not in g.edges or e == drop:
            return False
    return True


def path_in_path(inner: Sequence[int], outer: Sequence[int]) -> bool:
    edges = {frozenset(e) for e in zip(outer, outer[1:])}
    return all(frozenset(e) in edges for e in zip(inner, inner[1:]))


@dataclass
class Member:
    ring: LabeledGraph
    report: RunReport
    parents: tuple[int, int] | None = None  # indices into the previous stage's survivors

    @property
    def min_label(self) -> int:
        return min(self.ring.labels)

    @property
    def chopped(self) -> Path:
        return chop(self.ring, self.report)


@dataclass
class Stage:
    index: int
    generated: int
    class_sizes: list[int]
    survivors: list[Member]

    @property
    def advice(self) -> str:
        return self.survivors[0].report.advice


@dataclass
class AdversaryResult:
    status: str  # "counterexample", "starved", "survived" or "incorrect"
    stages: list[Stage]
    detail: str = ""
    X: LabeledGraph | None = None
    X_report: RunReport | None = None
    witness: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def summary(self) -> str:
        sizes = " ".join(f"H{s.index}={len(s.survivors)}/{s.generated}" for s in self.stages)
        line = f"status={self.status} stages={len(self.stages)} {sizes}".rstrip()
        if self.witness:
            line += f" ones={','.join(map(str, self.witness))}"
        if self.detail:
            line += f" ({self.detail})"
        return line


def adversary_label_bound(budget: int, pool: int) -> int:
    """Largest label the harness can hand out for these parameters."""
    ring_size = 2 ** (budget + 1) - 1
    return 4 * pool + 2 * ring_size


def _check_member(m: Member) -> str | None:
    if m.report.aborted:
        return f"aborted nodes {m.report.aborted[:5]}"
    if not m.report.selection:
        return f"selection fails on member {ring_sequence(m.ring)}"
    if any(res.halt_round > m.ring.n // 2 for res in m.report.nodes.values()):
        return "member run exceeds diam rounds"
    return None


def _largest_class(members: list[Member]) -> tuple[list[Member], list[int]]:
    classes: dict[str, list[Member]] = {}
    for m in members:
        classes.setdefault(m.report.advice, []).append(m)
    ranked = sorted(classes.values(), key=lambda c: (-len(c), min(x.min_label for x in c)))
    return sorted(ranked[0], key=lambda m: m.min_label), [len(c) for c in ranked]


def adversary_stages(alg: Algorithm, oracle: Oracle, budget: int, pool: int,
                     glue_base: int | None = None, fresh_len: int | None = None,
                     L: int | None = None) -> AdversaryResult:
    """Run ``budget`` stages of the chop-and-glue construction against ``alg``.

    Triangles use labels (3i+1, 3i+2, 3i+3) for i < ``pool``; the i-th glue
    takes label ``glue_base + i`` (default 3 * pool + i). X closes two final
    survivors with a fresh path whose labels start above every label used.
    """
    if budget < 1 or pool < 2:
        raise ValueError("need budget >= 1 and pool >= 2")
    base = 3 * pool if glue_base is None else glue_base
    glued = 0
    stages: list[Stage] = []
    members = [Member(build_ring((3 * i + 1, 3 * i + 2, 3 * i + 3), L), None) for i in range(pool)]
    for j in range(1, budget + 1):
        for m in members:
            m.report = run(m.ring, oracle, alg)
        survivors, sizes = _largest_class(members)
        stages.append(Stage(j, len(members), sizes, survivors))
        for m in survivors:
            problem = _check_member(m)
            if problem:
                return AdversaryResult("incorrect", stages, problem, X=m.ring, X_report=m.report,
                                       witness=m.report.selected())
        if len(survivors) < 2:
            return AdversaryResult("starved", stages, f"stage {j} keeps {len(survivors)} ring(s)")
        if j == budget:
            break
        members = []
        for a in range(0, len(survivors) - 1, 2):
            glued += 1
            r1, r2 = survivors[a], survivors[a + 1]
            members.append(Member(glue(r1.chopped, r2.chopped, base + glued, L), None, (a, a + 1)))
    r1, r2 = stages[-1].survivors[:2]
    c1, c2 = r1.chopped, r2.chopped
    used = max(3 * pool, base + glued)
    k = fresh_len if fresh_len is not None else len(c1) + len(c2)
    fresh = tuple(range(used + 1, used + 1 + k))
    X = build_ring(c1 + c2 + fresh, L)
    notes = [f"fresh path labels {fresh[0]}..{fresh[-1]}" if fresh else "no fresh path"]
    if not (path_in(X, c1) and path_in(X, c2)):
        raise AssertionError("X lost a chopped survivor")
    report = run(X, oracle, alg)
    ones = report.selected()
    if len(ones) >= 2:
        status, detail = "counterexample", "two nodes output 1"
    elif not report.selection:
        status, detail = "counterexample", "selection fails on X"
    else:
        status, detail = "survived", f"X receives advice {report.advice!r}, unused by the stages"
    return AdversaryResult(status, stages, detail, X, report, ones, notes)


def verify_stage_containment(result: AdversaryResult) -> tuple[bool, tuple | None]:
    """Every stage-k survivor's chop contains the chop of some stage-j survivor, j < k."""
    chops = [[m.chopped for m in s.survivors] for s in result.stages]
    for k in range(1, len(chops)):
        for outer in chops[k]:
            for j in range(k):
                if not any(path_in_path(inner, outer) for inner in chops[j]):
                    return False, (k + 1, j + 1, outer)
    return True, None


def verify_glue(path1: Sequence[int], path2: Sequence[int], new_label: int) -> tuple[bool, str]:
    """Parity, containment and one-edge-removal survival for a single glue."""
    g = glue(path1, path2, new_label)
    if g.n % 2 == 0 or g.n != len(path1) + len(path2) + 1:
        return False, "size"
    if not (path_in(g, path1) and path_in(g, path2)):
        return False, "containment"
    for a, b in g.edges:
        e = (g.labels[a], g.labels[b])
        if not (path_in(g, path1, without=e) or path_in(g, path2, without=e)):
            return False, f"edge {e}"
    if diameter(g) != g.n // 2:
        return False, "diameter"
    return True, ""
