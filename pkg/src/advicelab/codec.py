"""Bit-level advice layouts.

Bit strings are plain ``str`` objects over ``'0'``/``'1'``, most significant
bit first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class AdviceError(ValueError):
    """Advice that cannot be decoded (truncated, malformed, out of range)."""


def uint_bits(value: int, width: int) -> str:
    if value < 0 or value >= 1 << width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return format(value, f"0{width}b") if width else ""


def bit_width(count: int) -> int:
    """Bits needed to address ``count`` distinct values: ceil(log2(count))."""
    return (count - 1).bit_length() if count > 1 else 0


class BitReader:
    def __init__(self, bits: str):
        if set(bits) - {"0", "1"}:
            raise AdviceError("advice contains non-binary characters")
        self.bits = bits
        self.pos = 0

    def read(self, width: int) -> int:
        end = self.pos + width
        if end > len(self.bits):
            raise AdviceError(f"truncated advice: need {width} bits at offset {self.pos}")
        chunk = self.bits[self.pos:end]
        self.pos = end
        return int(chunk, 2) if chunk else 0

    def read_gamma(self) -> int:
        value, used = gamma_decode(self.bits, self.pos)
        self.pos += used
        return value

    def done(self) -> bool:
        return self.pos == len(self.bits)


def gamma_encode(k: int) -> str:
    """Elias gamma: ``len-1`` zeros followed by the binary form of ``k``."""
    if k < 1:
        raise ValueError("gamma code is defined for k >= 1")
    b = format(k, "b")
    return "0" * (len(b) - 1) + b


def gamma_decode(bits: str, start: int = 0) -> tuple[int, int]:
    """Decode one gamma codeword at ``start``; returns ``(value, bits consumed)``."""
    zeros = 0
    i = start
    while i < len(bits) and bits[i] == "0":
        zeros += 1
        i += 1
    end = i + zeros + 1
    if i >= len(bits) or end > len(bits):
        raise AdviceError("truncated gamma codeword")
    return int(bits[i:end], 2), end - start


def radix_of(L: int) -> int:
    """Number of possible 2-adic exponents of integers in 1..L."""
    return L.bit_length()  # floor(log2 L) + 1


def mixed_radix_encode(t: Sequence[int], L: int) -> int:
    radix = radix_of(L)
    value = 0
    for a in t:
        if not 0 <= a < radix:
            raise ValueError(f"component {a} outside [0, {radix - 1}]")
        value = value * radix + a
    return value


def mixed_radix_decode(value: int, length: int, L: int) -> tuple[int, ...]:
    radix = radix_of(L)
    if not 0 <= value < radix**length:
        raise ValueError(f"{value} outside [0, {radix}^{length})")
    out = []
    for _ in range(length):
        value, a = divmod(value, radix)
        out.append(a)
    return tuple(reversed(out))


@dataclass(frozen=True)
class SelectAdvice:
    """Decoded selection advice: ``fallback`` selects which payload is meaningful."""

    a1: int
    fallback: bool
    colour: int = 0
    gamma0: int = 0


def colour_width(beta: int, L: int) -> int:
    return (beta - 1) * bit_width(radix_of(L))


def fallback_width(beta: int) -> int:
    return bit_width(beta)


def pack_select_advice(advice: SelectAdvice, beta: int, L: int) -> str:
    """flag bit, gamma(a1 + 1), then the colour or the direct fallback label."""
    bits = ("1" if advice.fallback else "0") + gamma_encode(advice.a1 + 1)
    if advice.fallback:
        if not 1 <= advice.gamma0 < beta:
            raise ValueError(f"fallback label {advice.gamma0} must lie in [1, {beta - 1}]")
        return bits + uint_bits(advice.gamma0, fallback_width(beta))
    if advice.colour >= radix_of(L) ** (beta - 1):
        raise ValueError(f"colour {advice.colour} out of range")
    return bits + uint_bits(advice.colour, colour_width(beta, L))


def unpack_select_advice(bits: str, beta: int, L: int) -> SelectAdvice:
    reader = BitReader(bits)
    fallback = reader.read(1) == 1
    a1 = reader.read_gamma() - 1
    if fallback:
        advice = SelectAdvice(a1, True, gamma0=reader.read(fallback_width(beta)))
    else:
        colour = reader.read(colour_width(beta, L))
        if colour >= radix_of(L) ** (beta - 1):
            raise AdviceError(f"colour {colour} out of range")
        advice = SelectAdvice(a1, False, colour=colour)
    if not reader.done():
        raise AdviceError("trailing bits after advice")
    return advice


def select_advice_bound(a1: int, beta: int, L: int) -> int:
    """Closed-form upper bound on the packed length for a given ``a1``."""
    return 1 + (2 * (a1 + 1).bit_length() - 1) + colour_width(beta, L)
