"""Commutative semirings with a zero element.

Three instances are registered under string ids used by model files and the
command line:

    arith-rational   nonnegative Fractions, + and *
    arith-float      nonnegative floats, + and *
    bool-maxmin      {0, 1} with max as addition and min as multiplication

The canonical preorder is ``a <= b`` iff ``a + c == b`` for some ``c``. For
the arithmetic instances this is numeric ``<=``; for max-min it is ``0 <= 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .errors import SemiringMismatchError


@dataclass(frozen=True)
class Semiring:
    name: str
    plus: Callable[[Any, Any], Any]
    times: Callable[[Any, Any], Any]
    zero: Any
    is_member: Callable[[Any], bool]
    parse_value: Callable[[str], Any]
    format_value: Callable[[Any], str]
    totally_ordered: bool = True
    positive: bool = True
    cancellative: bool = True
    idempotent_times: bool = False
    exact: bool = True

    def check(self, *values):
        for v in values:
            if not self.is_member(v):
                raise SemiringMismatchError(
                    f"value {v!r} does not belong to semiring {self.name}")

    def add(self, a, b):
        self.check(a, b)
        return self.plus(a, b)

    def mul(self, a, b):
        self.check(a, b)
        return self.times(a, b)

    def leq(self, a, b) -> bool:
        """Canonical order: is there a ``c`` with ``a + c == b``?"""
        self.check(a, b)
        return a <= b

    def is_zero(self, a) -> bool:
        return a == self.zero

    def coerce(self, value):
        """Convert a value from another instance (or a plain number)."""
        if self.is_member(value):
            return value
        if self.name == "arith-float":
            return float(value)
        if self.name == "arith-rational":
            return Fraction(value)
        if value in (0, 1):
            return int(value)
        return 1 if value else 0

    def __repr__(self):
        return f"Semiring({self.name})"

    def __eq__(self, other):
        return isinstance(other, Semiring) and other.name == self.name

    def __hash__(self):
        return hash(self.name)


def _is_fraction(v):
    return type(v) is Fraction and v >= 0


def _is_float(v):
    return type(v) is float and v >= 0.0


def _is_bit(v):
    return type(v) is int and v in (0, 1)


def _parse_fraction(text: str) -> Fraction:
    value = Fraction(text.strip())
    if value < 0:
        raise ValueError(f"negative value {text!r}")
    return value


def _format_fraction(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _parse_float(text: str) -> float:
    text = text.strip()
    value = float(Fraction(text)) if "/" in text else float(text)
    if value < 0:
        raise ValueError(f"negative value {text!r}")
    return value


def _parse_bit(text: str) -> int:
    text = text.strip()
    if text not in ("0", "1"):
        raise ValueError(f"boolean value must be 0 or 1, got {text!r}")
    return int(text)


ARITH_RATIONAL = Semiring(
    name="arith-rational",
    plus=lambda a, b: a + b,
    times=lambda a, b: a * b,
    zero=Fraction(0),
    is_member=_is_fraction,
    parse_value=_parse_fraction,
    format_value=_format_fraction,
)

ARITH_FLOAT = Semiring(
    name="arith-float",
    plus=lambda a, b: a + b,
    times=lambda a, b: a * b,
    zero=0.0,
    is_member=_is_float,
    parse_value=_parse_float,
    format_value=repr,
    exact=False,
)

# max(1, 0) == max(1, 1) breaks cancellativity; the order 0 <= 1 is still a
# partial order.
BOOL_MAXMIN = Semiring(
    name="bool-maxmin",
    plus=max,
    times=min,
    zero=0,
    is_member=_is_bit,
    parse_value=_parse_bit,
    format_value=str,
    cancellative=False,
    idempotent_times=True,
)

SEMIRINGS = {s.name: s for s in (ARITH_RATIONAL, ARITH_FLOAT, BOOL_MAXMIN)}


def get_semiring(name: str) -> Semiring:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise KeyError(f"unknown semiring {name!r}; "
                       f"expected one of {sorted(SEMIRINGS)}") from None
