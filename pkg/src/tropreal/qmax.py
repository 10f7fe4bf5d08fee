"""Exact scalars of the max-plus semiring (Q ∪ {-inf}, max, +).

All values are either the absorbing bottom element -inf or an exact
rational stored as a ``fractions.Fraction``.  No floating point is used
anywhere: downstream decision procedures rely on exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

RatLike = Union[int, Fraction, str]


class QMaxError(ValueError):
    """Malformed max-plus scalar input."""


@dataclass(frozen=True, slots=True)
class QMax:
    """A max-plus scalar: ``None`` marks bottom (-inf), else a Fraction.

    Bottom is a tag, not a sentinel number; ``power(bottom, 0)`` must be
    the semiring unit, which a "very negative" encoding could not honor.
    """

    value: Optional[Fraction]

    @staticmethod
    def of(x: RatLike) -> "QMax":
        if isinstance(x, str):
            return parse_scalar(x)
        return QMax(Fraction(x))

    @staticmethod
    def bottom() -> "QMax":
        return _BOTTOM

    @staticmethod
    def unit() -> "QMax":
        return _UNIT

    @property
    def is_bottom(self) -> bool:
        return self.value is None

    def __add__(self, other: "QMax") -> "QMax":
        """Semiring addition: max, with bottom neutral."""
        if self.value is None:
            return other
        if other.value is None:
            return self
        return self if self.value >= other.value else other

    def __mul__(self, other: "QMax") -> "QMax":
        """Semiring multiplication: +, with bottom absorbing."""
        if self.value is None or other.value is None:
            return _BOTTOM
        return QMax(self.value + other.value)

    def __pow__(self, k: int) -> "QMax":
        if k < 0:
            raise QMaxError(f"negative power {k}")
        if k == 0:
            return _UNIT
        if self.value is None:
            return _BOTTOM
        return QMax(self.value * k)

    def __le__(self, other: "QMax") -> bool:
        if self.value is None:
            return True
        if other.value is None:
            return False
        return self.value <= other.value

    def __lt__(self, other: "QMax") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "QMax") -> bool:
        return other <= self

    def __gt__(self, other: "QMax") -> bool:
        return other < self

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"QMax({format_scalar(self)!r})"


_BOTTOM = QMax(None)
_UNIT = QMax(Fraction(0))


def oplus(a: QMax, b: QMax) -> QMax:
    """max(a, b) under the order where bottom is least."""
    return a + b


def otimes(a: QMax, b: QMax) -> QMax:
    """a + b in conventional notation; bottom absorbs."""
    return a * b


def leq(a: QMax, b: QMax) -> bool:
    """Total order test: a <= b iff a oplus b == b."""
    return a <= b


def power(a: QMax, k: int) -> QMax:
    """k-fold product; the empty product is the unit even for bottom."""
    return a ** k


def parse_scalar(text: str) -> QMax:
    """Parse ``-inf``, an integer, or a fraction ``p/q``."""
    s = text.strip()
    if s == "-inf":
        return _BOTTOM
    try:
        return QMax(Fraction(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise QMaxError(f"bad scalar {text!r}") from exc


def format_scalar(a: QMax) -> str:
    if a.value is None:
        return "-inf"
    if a.value.denominator == 1:
        return str(a.value.numerator)
    return f"{a.value.numerator}/{a.value.denominator}"
