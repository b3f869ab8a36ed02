"""Rings R_1..R_y of size 2D built from "peaked" paths P_1..P_y.

The middle of P_i carries the largest label of P_i and sees only P_i within x
rounds. So in every R_j with j >= i it behaves exactly as in R_i, where it is
the global maximum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..colouring import parse_rational
from ..graph import LabeledGraph, ball_view, build_ring
from ..sim import Algorithm, Oracle, execute_node, run
from ..verdict import Verdict


class InfeasibleParameters(ValueError):
    pass


def ceil_power(D: int, p: int, q: int) -> int:
    """Least integer x >= 0 with x**q >= D**p, i.e. ceil(D**(p/q))."""
    target = D**p
    x = max(1, round(target ** (1 / q)) if target < 2**1000 else 1)
    while x**q < target:
        x += 1
    while x > 0 and (x - 1) ** q >= target:
        x -= 1
    return x


def next_pow2(x: int) -> int:
    return 1 << max(0, (x - 1).bit_length())


@dataclass(frozen=True)
class EpsilonFamily:
    D: int
    eps: Fraction
    x: int
    y: int
    L: int
    paths: tuple[tuple[int, ...], ...]  # paths[i - 1] is P_i
    rings: tuple[LabeledGraph, ...]  # rings[i - 1] is R_i

    def peak(self, i: int) -> int:
        return 2 * self.D * i + 2 * self.x


def peaked_path(D: int, x: int, i: int) -> tuple[int, ...]:
    s = 2 * D * i
    return tuple(range(s, s + x)) + tuple(range(s + 2 * x, s + x - 1, -1))


def epsilon_family(D: int, eps, L: int | None = None) -> EpsilonFamily:
    eps = parse_rational(eps)
    if not 0 <= eps < Fraction(1, 2):
        raise InfeasibleParameters(f"need 0 <= eps < 1/2, got {eps}")
    p, q = eps.numerator, eps.denominator
    x = ceil_power(D, p, q)
    y = ceil_power(D, q - 2 * p, q)
    if y < 2:
        raise InfeasibleParameters(f"y = ceil(D^(1-2eps)) = {y} violates y >= 2")
    if y * (1 + 2 * x) >= 2 * D:
        raise InfeasibleParameters(f"y(1+2x) = {y * (1 + 2 * x)} violates y(1+2x) < 2D = {2 * D}")
    need = 2 * D * (y + 1)
    if L is None:
        L = next_pow2(need)
    elif L < need:
        raise InfeasibleParameters(f"L = {L} violates L >= 2D(y+1) = {need}")
    paths = tuple(peaked_path(D, x, i) for i in range(1, y + 1))
    rings = []
    for i in range(1, y + 1):
        joined = tuple(lab for path in paths[:i] for lab in path)
        filler = tuple(range(1, 2 * D - len(joined) + 1))
        rings.append(build_ring(joined + filler, L))
    return EpsilonFamily(D, eps, x, y, L, paths, tuple(rings))


def verify_epsilon_views(fam: EpsilonFamily) -> Verdict:
    """Every R_i has 2D nodes, and the peak of P_i has the same K(x, .) in
    R_i and in every later R_j. Witness: ``(i, j)`` or ``("size", i)``."""
    checked = 0
    for i, g in enumerate(fam.rings, 1):
        if g.n != 2 * fam.D:
            return Verdict(False, checked, ("size", i))
    for i in range(1, fam.y + 1):
        peak = fam.peak(i)
        gi = fam.rings[i - 1]
        ref = ball_view(gi, gi.node(peak), fam.x)
        if ref.labels != frozenset(fam.paths[i - 1]):
            return Verdict(False, checked, ("path", i))
        for j in range(i + 1, fam.y + 1):
            gj = fam.rings[j - 1]
            checked += 1
            if ball_view(gj, gj.node(peak), fam.x).encode() != ref.encode():
                return Verdict(False, checked, (i, j))
    return Verdict(True, checked, detail=f"D={fam.D} eps={fam.eps} x={fam.x} y={fam.y}")


@dataclass
class EpsilonWitness:
    a: int
    b: int
    label: int
    advice: str
    replay_equal: bool

    def format(self) -> str:
        return (f"R_{self.b} shares advice {self.advice!r} with R_{self.a}; "
                f"node {self.label} outputs 1 in R_{self.b} (replay identical: {self.replay_equal})")


def epsilon_harness(fam: EpsilonFamily, alg: Algorithm, oracle: Oracle) -> EpsilonWitness | None:
    """Find rings R_a, R_b (a < b) with identical advice on which the peak of
    P_a wrongly outputs 1 in R_b; the two executions of that node are
    replayed round by round and compared."""
    advice = [oracle(g) for g in fam.rings]
    seen: dict[str, int] = {}
    for b, adv in enumerate(advice, 1):
        if adv not in seen:
            seen[adv] = b
            continue
        for a in range(1, b):
            if advice[a - 1] != adv:
                continue
            label = fam.peak(a)
            report = run(fam.rings[b - 1], None, alg, advice=adv)
            if report.nodes[label].output != 1:
                continue
            ga, gb = fam.rings[a - 1], fam.rings[b - 1]
            cap = fam.x + 1
            ta = execute_node(alg, adv, lambda r: ball_view(ga, ga.node(label), r), cap)
            tb = execute_node(alg, adv, lambda r: ball_view(gb, gb.node(label), r), cap)
            return EpsilonWitness(a, b, label, adv, ta == tb)
    return None
