# Semigame - Rational Utilities
# Exact rational helpers and the "num/den" wire format

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from ..exceptions import InputError

RationalLike = Union[Fraction, int, str]


def to_fraction(value: RationalLike) -> Fraction:
    """
    Convert an exact value to a Fraction

    Floats are rejected: every exact quantity must enter the system exactly.

    Args:
        value: Fraction, int or "num/den" string

    Returns:
        Fraction: normalized value
    """
    if isinstance(value, bool):
        raise InputError(f"Boolean {value!r} is not a rational number")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    raise InputError(f"Cannot use {type(value).__name__} {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """
    Parse "num/den" (or a bare integer) into a Fraction

    Args:
        text: rational in wire format

    Returns:
        Fraction: parsed value
    """
    cleaned = text.strip()
    try:
        if "/" in cleaned:
            num, den = cleaned.split("/", 1)
            if int(den) == 0:
                raise InputError(f"Zero denominator in rational {text!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(cleaned))
    except ValueError as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"Malformed rational {text!r}; expected 'num/den'") from e


def format_rational(value: RationalLike) -> str:
    """
    Format an exact value as "num/den" (denominator always written)

    Args:
        value: exact value

    Returns:
        str: wire-format string
    """
    frac = to_fraction(value)
    return f"{frac.numerator}/{frac.denominator}"
