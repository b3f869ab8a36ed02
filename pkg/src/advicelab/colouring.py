"""The legal colouring of decreasing label tuples and its membership query.

A tuple (l0 > l1 > ... > l_{b-1}) is mapped to exponents (a1, ..., a_{b-1}),
where a_i is the largest 2-adic valuation attained in the integer interval
{l_i + 1, ..., l0}; the colour is the mixed-radix index of that exponent
tuple. Within any integer interval exactly one element attains the maximal
valuation, which is what makes the colouring legal.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Iterator, Sequence

from .codec import mixed_radix_decode, mixed_radix_encode, radix_of
from .verdict import Verdict

ENUMERATION_LIMIT = 10**7


def parse_rational(text: str | Fraction | int) -> Fraction:
    if isinstance(text, (Fraction, int)):
        return Fraction(text)
    num, sep, den = str(text).partition("/")
    try:
        return Fraction(int(num), int(den) if sep else 1)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"expected a rational 'p/q', got {text!r}") from None


def beta_of(alpha: Fraction | str | int) -> int:
    """ceil(8 / alpha), exactly."""
    alpha = parse_rational(alpha)
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    return -(-8 * alpha.denominator // alpha.numerator)


def max_valuation(lo: int, hi: int) -> int:
    """Largest j such that some integer in [lo, hi] is divisible by 2**j."""
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    # the highest bit where lo-1 and hi differ marks the element of maximal valuation
    return ((lo - 1) ^ hi).bit_length() - 1


def g_map(t: Sequence[int]) -> tuple[int, ...]:
    top = t[0]
    return tuple(max_valuation(x + 1, top) for x in t[1:])


def colour_of(t: Sequence[int], L: int) -> int:
    return mixed_radix_encode(g_map(t), L)


def decreasing_tuples(L: int, beta: int) -> Iterator[tuple[int, ...]]:
    for c in combinations(range(L, 0, -1), beta):
        yield c


def _check_size(L: int, beta: int):
    size = comb(L, beta)
    if size > ENUMERATION_LIMIT:
        raise ValueError(f"C({L}, {beta}) = {size} tuples exceeds the enumeration limit")


def is_legal_colouring(L: int, beta: int,
                       colouring: Callable[[tuple[int, ...], int], int] = colour_of) -> Verdict:
    """Exhaustively check the legality dichotomy over all decreasing beta-tuples.

    On failure the witness is ``(colour, z, tuple_with_z_first, tuple_with_z_inside)``.
    """
    _check_size(L, beta)
    first: dict[tuple[int, int], tuple[int, ...]] = {}
    inside: dict[tuple[int, int], tuple[int, ...]] = {}
    count = 0
    for t in decreasing_tuples(L, beta):
        count += 1
        c = colouring(t, L)
        key = (c, t[0])
        first.setdefault(key, t)
        if key in inside:
            return Verdict(False, count, (c, t[0], t, inside[key]))
        for z in t[1:]:
            key = (c, z)
            inside.setdefault(key, t)
            if key in first:
                return Verdict(False, count, (c, z, first[key], t))
    return Verdict(True, count, detail=f"L={L} beta={beta}")


def find_tuple_with_first(first: int, colour: int, L: int, beta: int) -> tuple[int, ...] | None:
    """A decreasing beta-tuple starting at ``first`` with the given colour, or None.

    For a fixed top label, the valuation of {x+1..first} is non-increasing in
    x, so each target exponent a admits a contiguous range of x, namely
    [m(a+1), m(a) - 1] with m(j) the largest multiple of 2**j not above
    ``first``. Taking the largest feasible value slot by slot is optimal.
    """
    if not 1 <= first <= L or not 0 <= colour < radix_of(L) ** (beta - 1):
        return None
    exps = mixed_radix_decode(colour, beta - 1, L)
    out = [first]
    prev = first
    for a in exps:
        hi = min(((first >> a) << a) - 1, prev - 1)
        lo = max((first >> (a + 1)) << (a + 1), 1)
        if hi < lo:
            return None
        out.append(hi)
        prev = hi
    return tuple(out)


def first_entry_exists(first: int, colour: int, L: int, beta: int) -> bool:
    return find_tuple_with_first(first, colour, L, beta) is not None


def first_entries_by_enumeration(L: int, beta: int) -> set[tuple[int, int]]:
    """All (first entry, colour) pairs realised by some tuple; brute force."""
    _check_size(L, beta)
    return {(t[0], colour_of(t, L)) for t in decreasing_tuples(L, beta)}


def verify_membership(L: int, beta: int) -> Verdict:
    """Compare the constructive query with full enumeration for every (label, colour)."""
    realised = first_entries_by_enumeration(L, beta)
    checked = 0
    for first in range(1, L + 1):
        for c in range(radix_of(L) ** (beta - 1)):
            checked += 1
            fast = find_tuple_with_first(first, c, L, beta)
            if (fast is not None) != ((first, c) in realised):
                return Verdict(False, checked, (first, c))
            if fast is not None and colour_of(fast, L) != c:
                return Verdict(False, checked, (first, c, fast))
    return Verdict(True, checked, detail=f"L={L} beta={beta}")
