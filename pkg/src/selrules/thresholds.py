"""Exact handling of fractional thresholds (minimum support / confidence)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

FractionLike = Union[Fraction, int, float, str]


def parse_fraction(value: FractionLike) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Floats go through their shortest decimal repr, so ``0.9`` becomes
    ``9/10`` and not the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean is not a fraction")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a fraction: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as a fraction")


def unit_fraction(value: FractionLike, name: str, *, allow_zero: bool = True) -> Fraction:
    """Parse ``value`` and check it lies in [0, 1] (or (0, 1] without zero)."""
    frac = parse_fraction(value)
    low_ok = frac >= 0 if allow_zero else frac > 0
    if not (low_ok and frac <= 1):
        interval = "[0, 1]" if allow_zero else "(0, 1]"
        raise ValueError(f"{name} must be in {interval}, got {value}")
    return frac


def min_count(minsup: Fraction, m: int) -> int:
    """Smallest integer count c with c / m >= minsup."""
    num, den = minsup.numerator, minsup.denominator
    return -((-num * m) // den)


def meets(count: int, total: int, threshold: Fraction) -> bool:
    """``count / total >= threshold`` in integer arithmetic."""
    return count * threshold.denominator >= threshold.numerator * total
