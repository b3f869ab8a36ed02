"""Advice oracles and the node algorithms that consume them.

Selection on rings: ``select_oracle`` / ``algorithm_select``.
Election on arbitrary graphs: max-label advice (time 0), diameter advice
(time diam) and no advice with the stall rule (time ecc(v) + 1).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .codec import (
    BitReader,
    SelectAdvice,
    bit_width,
    pack_select_advice,
    uint_bits,
    unpack_select_advice,
)
from .colouring import beta_of, colour_of, first_entry_exists, parse_rational
from .graph import LabeledGraph, ball_max_labels, diameter
from .sim import EMPTY_ORACLE, Algorithm, Oracle, Wait


def select_radius(alpha: Fraction, a1: int) -> int:
    """floor(alpha * 2**a1)."""
    return (alpha.numerator << a1) // alpha.denominator


def floor_log2(x: int) -> int:
    if x < 1:
        raise ValueError("log of a non-positive number")
    return x.bit_length() - 1


def candidate_set(g: LabeledGraph, r: int) -> frozenset[int]:
    """Labels that are the maximum of their own radius-r label set."""
    tops = ball_max_labels(g, r)
    return frozenset(lab for lab, top in zip(g.labels, tops.tolist()) if lab == top)


def pad_tuple(candidates: frozenset[int] | set[int], beta: int) -> tuple[int, ...]:
    """Decreasing beta-tuple led by the largest candidate, holding every
    candidate, with free slots taken by the largest unused labels below it."""
    gammas = sorted(candidates, reverse=True)
    if len(gammas) > beta:
        raise ValueError(f"{len(gammas)} candidates do not fit in a {beta}-tuple")
    if gammas[0] < beta:
        raise ValueError(f"no {beta}-tuple can start at label {gammas[0]}")
    chosen = set(gammas)
    x = gammas[0] - 1
    while len(chosen) < beta:
        if x not in chosen:
            chosen.add(x)
        x -= 1
    return tuple(sorted(chosen, reverse=True))


def select_advice_fields(g: LabeledGraph, alpha, L: int) -> tuple[SelectAdvice, tuple[int, ...] | None]:
    """Decoded advice for ``g`` together with the coloured tuple (None in fallback)."""
    alpha = parse_rational(alpha)
    if not g.is_ring():
        raise ValueError("selection advice is defined for rings")
    if g.max_label > L:
        raise ValueError(f"label {g.max_label} exceeds L={L}")
    a1 = floor_log2(diameter(g))
    beta = beta_of(alpha)
    cands = candidate_set(g, select_radius(alpha, a1))
    gamma0 = max(cands)
    if gamma0 < beta:
        return SelectAdvice(a1, True, gamma0=gamma0), None
    t = pad_tuple(cands, beta)
    return SelectAdvice(a1, False, colour=colour_of(t, L)), t


def advice_construct_select(g: LabeledGraph, alpha, L: int) -> str:
    fields, _ = select_advice_fields(g, alpha, L)
    return pack_select_advice(fields, beta_of(alpha), L)


def select_oracle(alpha, L: int) -> Oracle:
    alpha = parse_rational(alpha)
    return Oracle(f"select[{alpha}]", lambda g: advice_construct_select(g, alpha, L))


def algorithm_select(alpha, L: int) -> Algorithm:
    alpha = parse_rational(alpha)
    beta = beta_of(alpha)

    @lru_cache(maxsize=64)
    def decode(advice: str) -> SelectAdvice:
        return unpack_select_advice(advice, beta, L)

    def step(advice: str, r: int, view):
        adv = decode(advice)
        target = select_radius(alpha, adv.a1)
        if r < target:
            return Wait(target)
        own = view.root_label
        if view.max_label != own:
            return 0
        if adv.fallback:
            return int(own == adv.gamma0)
        return int(first_entry_exists(own, adv.colour, L, beta))

    def bound(g):
        return select_radius(alpha, floor_log2(diameter(g)))

    return Algorithm(f"select[{alpha}]", step, "selection", bound)


# --- election -----------------------------------------------------------


def max_label_oracle(L: int) -> Oracle:
    return Oracle("max-label", lambda g: uint_bits(g.max_label - 1, bit_width(L)))


def _elect_max_step(advice: str, r: int, view):
    return BitReader(advice).read(len(advice)) + 1


ELECT_MAX = Algorithm("elect-max", _elect_max_step, "election", lambda g: 0)


def diam_oracle(D: int) -> Oracle:
    """diam(G) - 1 in ceil(log2 D) bits; requires 1 <= diam(G) <= D."""

    def advise(g: LabeledGraph) -> str:
        d = diameter(g)
        if not 1 <= d <= D:
            raise ValueError(f"diameter {d} outside [1, {D}]")
        return uint_bits(d - 1, bit_width(D))

    return Oracle(f"diam[{D}]", advise)


def _elect_diam_step(advice: str, r: int, view):
    d = BitReader(advice).read(len(advice)) + 1
    if r < d:
        return Wait(d)
    return view.max_label


ELECT_DIAM = Algorithm("elect-diam", _elect_diam_step, "election", diameter)


def _elect_stall_step(advice: str, r: int, view):
    # lambda(r, v) == lambda(r-1, v) exactly when nobody sits at distance r
    if r >= 1 and not view.has_boundary:
        return view.max_label
    return None


ELECT_STALL = Algorithm("elect-stall", _elect_stall_step, "election", lambda g: diameter(g) + 1)


def as_selection(alg: Algorithm) -> Algorithm:
    """Selection from election: output 1 iff the elected label is one's own."""

    def step(advice, r, view):
        d = alg.step(advice, r, view)
        if d is None or isinstance(d, Wait):
            return d
        return int(d == view.root_label)

    return Algorithm(f"{alg.name}/select", step, "selection", alg.time_bound)


def local_max_within(radius: int, name: str | None = None) -> Algorithm:
    """Advice-blind strawman: after ``radius`` rounds, claim selection iff
    no larger label is in sight."""

    def step(advice, r, view):
        if r < radius:
            return Wait(radius)
        return int(view.max_label == view.root_label)

    return Algorithm(name or f"local-max[{radius}]", step, "selection", lambda g: radius)


LOCAL_MAX_NOADVICE = local_max_within(1, "local-max-noadvice")


SCHEME_NAMES = ("select", "elect-max", "elect-diam", "elect-stall", "select-diam", "local-max-noadvice")


def scheme(name: str, *, alpha="1/1", L: int, D: int | None = None) -> tuple[Oracle, Algorithm]:
    """Oracle and algorithm registered under ``name``.

    ``D`` bounds the diameter for the diameter-advice schemes.
    """
    if name == "select":
        return select_oracle(alpha, L), algorithm_select(alpha, L)
    if name == "elect-max":
        return max_label_oracle(L), ELECT_MAX
    if name in ("elect-diam", "select-diam"):
        if D is None:
            raise ValueError(f"{name} needs a diameter bound D")
        alg = ELECT_DIAM if name == "elect-diam" else as_selection(ELECT_DIAM)
        return diam_oracle(D), alg
    if name == "elect-stall":
        return EMPTY_ORACLE, ELECT_STALL
    if name == "local-max-noadvice":
        return EMPTY_ORACLE, LOCAL_MAX_NOADVICE
    raise KeyError(name)
