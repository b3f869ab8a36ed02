"""Synchronous round engine for algorithms with advice.

A node's decision in round r may depend only on the advice string and its
knowledge K(r, v); the engine therefore hands each node nothing but a view
handle for (v, r). Messages are never simulated: K(r, v) is exactly what r
rounds of unbounded LOCAL communication deliver.

A step returns ``None`` (keep going), an ``int`` (halt with that output) or
``Wait(k)`` (stay silent until round k; equivalent to returning ``None`` in
every round before k, but the engine skips those calls).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, replace
from typing import Callable, Union

import numpy as np

from . import kernels
from .codec import AdviceError
from .graph import LabeledGraph, View, ball_view, diameter, eccentricities


@dataclass(frozen=True)
class Wait:
    until: int


Decision = Union[int, Wait, None]
StepFn = Callable[[str, int, "NodeView"], Decision]


@dataclass(frozen=True)
class Algorithm:
    name: str
    step: StepFn
    task: str = "selection"  # or "election"
    time_bound: Callable[[LabeledGraph], int] | None = None


@dataclass(frozen=True)
class Oracle:
    name: str
    advise: Callable[[LabeledGraph], str]

    def __call__(self, g: LabeledGraph) -> str:
        return self.advise(g)


EMPTY_ORACLE = Oracle("empty", lambda g: "")


class _Knowledge:
    """Per-run caches shared by every node's view handle."""

    def __init__(self, g: LabeledGraph):
        self.g = g
        self._flood_r = 0
        self._flood = g.label_array
        self._ecc: np.ndarray | None = None

    def ball_max(self, v: int, r: int) -> int:
        if r < self._flood_r:
            return ball_view(self.g, v, r).max_label
        if r > self._flood_r:
            self._flood = kernels.flood_max(self.g.indptr, self.g.indices, self._flood, r - self._flood_r)
            self._flood_r = r
        return int(self._flood[v])

    def ecc(self, v: int) -> int:
        if self._ecc is None:
            self._ecc = eccentricities(self.g)
        return int(self._ecc[v])


class NodeView:
    """Lazy handle on K(r, v).

    Every attribute is a function of K(r, v) alone; summaries such as
    ``max_label`` are answered from shared caches instead of building the
    ball, which is what keeps large rings cheap.
    """

    __slots__ = ("_k", "_v", "radius", "root_label", "_view")

    def __init__(self, knowledge: _Knowledge, v: int, r: int):
        self._k = knowledge
        self._v = v
        self.radius = r
        self.root_label = knowledge.g.labels[v]
        self._view: View | None = None

    def materialize(self) -> View:
        if self._view is None:
            self._view = ball_view(self._k.g, self._v, self.radius)
        return self._view

    @property
    def max_label(self) -> int:
        return self._k.ball_max(self._v, self.radius)

    @property
    def has_boundary(self) -> bool:
        return self.radius <= self._k.ecc(self._v)

    @property
    def labels(self) -> frozenset[int]:
        return self.materialize().labels

    @property
    def inner_labels(self) -> frozenset[int]:
        return self.materialize().inner_labels

    @property
    def boundary_labels(self) -> frozenset[int]:
        return self.materialize().boundary_labels

    @property
    def edges(self):
        return self.materialize().edges

    @property
    def boundary_degrees(self):
        return self.materialize().boundary_degrees


@dataclass(frozen=True)
class NodeResult:
    halt_round: int | None
    output: int | None
    abort: str | None = None


@dataclass(frozen=True)
class RunReport:
    """Outcome of one run; ``nodes`` maps label to result."""

    algorithm: str
    task: str
    advice: str
    nodes: dict[int, NodeResult]
    time: int
    round_cap: int
    selection: bool = False
    election: bool = False
    within_time: bool = True

    @property
    def advice_bits(self) -> int:
        return len(self.advice)

    @property
    def aborted(self) -> list[int]:
        return sorted(lab for lab, res in self.nodes.items() if res.abort)

    def outputs(self) -> dict[int, int | None]:
        return {lab: res.output for lab, res in self.nodes.items()}

    def selected(self) -> list[int]:
        return sorted(lab for lab, res in self.nodes.items() if res.output == 1)

    def format(self) -> str:
        lines = []
        for lab in sorted(self.nodes):
            res = self.nodes[lab]
            if res.abort:
                lines.append(f"node {lab} halt=abort out=-")
            else:
                lines.append(f"node {lab} halt={res.halt_round} out={res.output}")
        verdict = {True: "pass", False: "fail"}
        lines.append(
            f"time={self.time} advice_bits={self.advice_bits} "
            f"selection={verdict[self.selection]} election={verdict[self.election]}"
        )
        return "\n".join(lines) + "\n"


def check_selection(report: RunReport, g: LabeledGraph) -> bool:
    top = g.max_label
    if set(report.nodes) != set(g.labels):
        return False
    for lab, res in report.nodes.items():
        if res.abort or res.output != (1 if lab == top else 0):
            return False
    return True


def check_election(report: RunReport, g: LabeledGraph) -> bool:
    top = g.max_label
    if set(report.nodes) != set(g.labels):
        return False
    return all(not res.abort and res.output == top for res in report.nodes.values())


def _election_as_selection(report: RunReport) -> RunReport:
    nodes = {
        lab: NodeResult(res.halt_round, None if res.output is None else int(res.output == lab), res.abort)
        for lab, res in report.nodes.items()
    }
    return RunReport(report.algorithm, "selection", report.advice, nodes, report.time, report.round_cap)


def run(g: LabeledGraph, oracle: Oracle | Callable[[LabeledGraph], str], alg: Algorithm,
        round_cap: int | None = None, advice: str | None = None) -> RunReport:
    """Run ``alg`` on every node of ``g`` in lock-step rounds.

    ``advice`` overrides the oracle (used to feed one graph's advice to
    another). Nodes still running when round ``round_cap`` is reached are
    aborted; so are nodes whose step rejects the advice.
    """
    if advice is None:
        advice = oracle(g)
    if round_cap is None:
        round_cap = diameter(g) + 2
    if round_cap < 1:
        raise ValueError("round_cap must be >= 1")
    knowledge = _Knowledge(g)
    pending: dict[int, list[int]] = defaultdict(list)
    pending[0] = list(range(g.n))
    results: dict[int, NodeResult] = {}
    for r in range(round_cap):
        if not pending:
            break
        for v in sorted(pending.pop(r, ())):
            try:
                decision = alg.step(advice, r, NodeView(knowledge, v, r))
            except AdviceError as exc:
                results[v] = NodeResult(None, None, f"advice: {exc}")
                continue
            if decision is None:
                pending[r + 1].append(v)
            elif isinstance(decision, Wait):
                pending[max(decision.until, r + 1)].append(v)
            else:
                results[v] = NodeResult(r, int(decision))
    for nodes in pending.values():
        for v in nodes:
            results[v] = NodeResult(None, None, "round cap")
    halted = [res.halt_round for res in results.values() if not res.abort]
    any_abort = len(halted) < g.n
    time = round_cap if any_abort else max(halted)
    report = RunReport(
        algorithm=alg.name,
        task=alg.task,
        advice=advice,
        nodes={g.labels[v]: res for v, res in sorted(results.items())},
        time=time,
        round_cap=round_cap,
    )
    sel_view = report if alg.task == "selection" else _election_as_selection(report)
    within = not any_abort and (alg.time_bound is None or time <= alg.time_bound(g))
    return replace(report, selection=check_selection(sel_view, g),
                   election=check_election(report, g), within_time=within)


def execute_node(alg: Algorithm, advice: str, view_at: Callable[[int], View | NodeView],
                 round_cap: int) -> tuple[int | None, int | None, list]:
    """Step a single node against an explicit view sequence, one call per round.

    Returns ``(halt_round, output, trace)`` where ``trace`` lists every
    decision made. This never uses the engine's caches, so two executions fed
    equal views and equal advice can be compared decision by decision.
    """
    trace = []
    wake = 0
    for r in range(round_cap):
        if r < wake:
            continue
        decision = alg.step(advice, r, view_at(r))
        trace.append((r, decision))
        if isinstance(decision, Wait):
            wake = decision.until
        elif decision is not None:
            return r, int(decision), trace
    return None, None, trace
