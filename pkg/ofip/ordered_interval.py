"""
Ordered intervals: endpoint-labelled intervals [a,b]_o with no ordering
constraint between the labels.

Arithmetic acts on the labels, so (X + Y) - Y == X holds exactly whenever the
float arithmetic is exact. Set-level predicates (contains, subset, geq) act on
the canonical form [min{a,b}, max{a,b}].

Note that the product is label-wise: [a,b]_o * [c,d]_o = [ac,bd]_o. This is not
the image set of pointwise multiplication, e.g. [-1,2]_o * [-1,2]_o = [1,4]_o
does not contain 0.
"""

import math
import re
from dataclasses import dataclass
from typing import Union

Real = Union[int, float]

_LABEL_FORM = re.compile(
    r"^\s*\[\s*(?P<a>[^,\]]+?)\s*,\s*(?P<b>[^,\]]+?)\s*\]\s*(?:_o)?\s*$"
)


class OrderedIntervalError(ValueError):
    """Raised for non-finite endpoints or non-finite arithmetic results."""


def _finite(value: Real, what: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as e:
        raise OrderedIntervalError(f"{what} is not a real number: {value!r}") from e
    if not math.isfinite(value):
        raise OrderedIntervalError(f"{what} must be finite, got {value!r}")
    return value


def format_label(value: float) -> str:
    """Render an endpoint at full precision, integers without a trailing .0."""
    if value == 0:
        return "0"
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


@dataclass(frozen=True)
class CanonicalInterval:
    """Sorted-endpoint interval [lo, hi]. Infinite bounds denote the whole line."""

    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise OrderedIntervalError("canonical interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise OrderedIntervalError(
                f"canonical interval requires lo <= hi, got [{self.lo}, {self.hi}]"
            )

    def contains(self, x: Real) -> bool:
        return self.lo <= x <= self.hi

    def issubset(self, other: "CanonicalInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __str__(self) -> str:
        return f"[{format_label(self.lo)},{format_label(self.hi)}]"


@dataclass(frozen=True)
class OrderedInterval:
    """
    The ordered interval [lo_label, hi_label]_o.

    Dataclass equality is representational (labels equal); use
    `extensionally_equal` to compare the underlying point sets.
    """

    lo_label: float
    hi_label: float

    def __post_init__(self):
        object.__setattr__(self, "lo_label", _finite(self.lo_label, "first endpoint"))
        object.__setattr__(self, "hi_label", _finite(self.hi_label, "second endpoint"))

    @classmethod
    def make(cls, a: Real, b: Real) -> "OrderedInterval":
        return cls(a, b)

    @classmethod
    def degenerate(cls, a: Real) -> "OrderedInterval":
        """The degenerate interval [a,a]_o."""
        return cls(a, a)

    @classmethod
    def parse(cls, text: str) -> "OrderedInterval":
        """Parse the textual form `[a,b]_o` (the `_o` suffix is optional)."""
        match = _LABEL_FORM.match(text)
        if not match:
            raise OrderedIntervalError(f"not an ordered interval literal: {text!r}")
        return cls(match.group("a"), match.group("b"))

    @property
    def is_degenerate(self) -> bool:
        return self.lo_label == self.hi_label

    def canonical(self) -> CanonicalInterval:
        return CanonicalInterval(
            min(self.lo_label, self.hi_label), max(self.lo_label, self.hi_label)
        )

    def _checked(self, a: float, b: float, operation: str) -> "OrderedInterval":
        if not (math.isfinite(a) and math.isfinite(b)):
            raise OrderedIntervalError(f"{operation} overflowed to a non-finite endpoint")
        return OrderedInterval(a, b)

    def add(self, other: "OrderedInterval") -> "OrderedInterval":
        return self._checked(
            self.lo_label + other.lo_label, self.hi_label + other.hi_label, "addition"
        )

    def sub(self, other: "OrderedInterval") -> "OrderedInterval":
        return self._checked(
            self.lo_label - other.lo_label, self.hi_label - other.hi_label, "subtraction"
        )

    def mul(self, other: "OrderedInterval") -> "OrderedInterval":
        return self._checked(
            self.lo_label * other.lo_label, self.hi_label * other.hi_label, "product"
        )

    def scale(self, k: Real) -> "OrderedInterval":
        k = _finite(k, "scalar")
        return self._checked(k * self.lo_label, k * self.hi_label, "scaling")

    def absolute(self) -> "OrderedInterval":
        return OrderedInterval(abs(self.lo_label), abs(self.hi_label))

    def contains(self, x: Real) -> bool:
        x = _finite(x, "point")
        return min(self.lo_label, self.hi_label) <= x <= max(self.lo_label, self.hi_label)

    def contains_within(self, x: Real, rel: float) -> bool:
        """`contains` with both ends widened by rel * (1 + largest magnitude involved)."""
        x = _finite(x, "point")
        lo, hi = min(self.lo_label, self.hi_label), max(self.lo_label, self.hi_label)
        slack = rel * (1.0 + max(abs(lo), abs(hi), abs(x)))
        return lo - slack <= x <= hi + slack

    def subset(self, other: "OrderedInterval") -> bool:
        """True iff this interval's points all lie in `other`."""
        return self.canonical().issubset(other.canonical())

    def geq(self, other: "OrderedInterval") -> bool:
        """The partial order: both canonical endpoints dominate."""
        mine, theirs = self.canonical(), other.canonical()
        return mine.lo >= theirs.lo and mine.hi >= theirs.hi

    def extensionally_equal(self, other: "OrderedInterval") -> bool:
        return self.canonical() == other.canonical()

    __add__ = add
    __sub__ = sub
    __abs__ = absolute
    __contains__ = contains

    def __mul__(self, other):
        if isinstance(other, OrderedInterval):
            return self.mul(other)
        if isinstance(other, (int, float)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, k):
        if isinstance(k, (int, float)):
            return self.scale(k)
        return NotImplemented

    def __neg__(self) -> "OrderedInterval":
        return self.scale(-1)

    def __str__(self) -> str:
        return f"[{format_label(self.lo_label)},{format_label(self.hi_label)}]_o"


def make(a: Real, b: Real) -> OrderedInterval:
    return OrderedInterval.make(a, b)


def canonical(interval: OrderedInterval) -> CanonicalInterval:
    return interval.canonical()
