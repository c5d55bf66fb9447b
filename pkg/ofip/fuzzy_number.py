"""
Fuzzy numbers as membership functions R -> [0,1] and their alpha-level sets.

Three families support exact alpha-cut extraction: indicators of ordered
intervals, quasi-concave piecewise-linear memberships, and constants. Arbitrary
callables can be wrapped for evaluation only.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ofip.ordered_interval import CanonicalInterval, OrderedInterval

INDICATOR = "indicator"
PIECEWISE_LINEAR = "piecewise_linear"
CONSTANT = "constant"
CALLABLE = "callable"


class AlphaLevelError(ValueError):
    """Raised when a level lies outside (0, 1]."""


class MembershipError(ValueError):
    """Raised for invalid membership data or unsupported cut extraction."""


def check_alpha(alpha: float) -> float:
    """Validate a membership level; returns it as float."""
    alpha = float(alpha)
    if not (0.0 < alpha <= 1.0):
        raise AlphaLevelError(f"alpha must lie in (0, 1], got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class AlphaCut:
    """{x : u(x) >= level}; `cut` is None when the set is empty."""

    level: float
    cut: Optional[CanonicalInterval]

    @property
    def is_empty(self) -> bool:
        return self.cut is None

    def issubset(self, other: "AlphaCut") -> bool:
        if self.cut is None:
            return True
        if other.cut is None:
            return False
        return self.cut.issubset(other.cut)


@dataclass(frozen=True)
class FuzzyNumber:
    """A membership function with a tagged description of how it was built."""

    membership_fn: Callable[[float], float] = field(repr=False, compare=False)
    kind: str
    params: Tuple[Any, ...] = ()

    def membership(self, x: float) -> float:
        value = float(self.membership_fn(x))
        if not (0.0 <= value <= 1.0):
            raise MembershipError(f"membership value {value!r} outside [0, 1] at x={x!r}")
        return value

    __call__ = membership

    @classmethod
    def indicator_on(cls, interval: OrderedInterval, rel: float = 0.0) -> "FuzzyNumber":
        """1 on the interval, 0 elsewhere; rel > 0 widens the ends as in `contains_within`."""
        return cls(
            lambda x: 1.0 if interval.contains_within(x, rel) else 0.0,
            INDICATOR,
            (interval.lo_label, interval.hi_label),
        )

    @classmethod
    def constant(cls, level: float) -> "FuzzyNumber":
        level = float(level)
        if not (0.0 <= level <= 1.0):
            raise MembershipError(f"constant membership {level!r} outside [0, 1]")
        return cls(lambda x: level, CONSTANT, (level,))

    @classmethod
    def piecewise_linear(cls, points: Sequence[Tuple[float, float]]) -> "FuzzyNumber":
        """
        Linear interpolation through (x, mu) breakpoints, zero outside them.

        Breakpoints must be strictly increasing in x, and mu must rise then fall
        so every alpha-cut is a single interval.
        """
        if len(points) < 2:
            raise MembershipError("piecewise-linear membership needs at least two breakpoints")
        xs = np.array([p[0] for p in points], dtype=float)
        mus = np.array([p[1] for p in points], dtype=float)
        if not np.all(np.isfinite(xs)) or np.any(np.diff(xs) <= 0):
            raise MembershipError("breakpoints must be finite and strictly increasing")
        if np.any(mus < 0) or np.any(mus > 1):
            raise MembershipError("breakpoint memberships must lie in [0, 1]")
        peak = int(np.argmax(mus))
        if np.any(np.diff(mus[: peak + 1]) < 0) or np.any(np.diff(mus[peak:]) > 0):
            raise MembershipError("piecewise-linear membership must be quasi-concave")

        def membership(x):
            return float(np.interp(x, xs, mus, left=0.0, right=0.0))

        return cls(membership, PIECEWISE_LINEAR, tuple(zip(xs.tolist(), mus.tolist())))

    @classmethod
    def triangular(cls, a: float, b: float, c: float) -> "FuzzyNumber":
        return cls.piecewise_linear([(a, 0.0), (b, 1.0), (c, 0.0)])

    @classmethod
    def trapezoidal(cls, a: float, b: float, c: float, d: float) -> "FuzzyNumber":
        return cls.piecewise_linear([(a, 0.0), (b, 1.0), (c, 1.0), (d, 0.0)])

    @classmethod
    def from_callable(cls, fn: Callable[[float], float]) -> "FuzzyNumber":
        return cls(fn, CALLABLE, ())

    def alpha_cut(self, alpha: float) -> AlphaCut:
        alpha = check_alpha(alpha)
        if self.kind == INDICATOR:
            return AlphaCut(alpha, OrderedInterval(*self.params).canonical())
        if self.kind == CONSTANT:
            if self.params[0] >= alpha:
                return AlphaCut(alpha, CanonicalInterval(-math.inf, math.inf))
            return AlphaCut(alpha, None)
        if self.kind == PIECEWISE_LINEAR:
            return AlphaCut(alpha, _piecewise_cut(self.params, alpha))
        raise MembershipError(f"exact alpha-cuts are not available for {self.kind} memberships")

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": self.kind, "params": [list(p) if isinstance(p, tuple) else p for p in self.params]}


def _crossing(x0: float, m0: float, x1: float, m1: float, alpha: float) -> float:
    return x0 + (alpha - m0) / (m1 - m0) * (x1 - x0)


def _piecewise_cut(points: Tuple[Tuple[float, float], ...], alpha: float) -> Optional[CanonicalInterval]:
    if max(mu for _, mu in points) < alpha:
        return None

    lo = None
    if points[0][1] >= alpha:
        lo = points[0][0]
    else:
        for (x0, m0), (x1, m1) in zip(points, points[1:]):
            if m0 < alpha <= m1:
                lo = _crossing(x0, m0, x1, m1, alpha)
                break

    hi = None
    if points[-1][1] >= alpha:
        hi = points[-1][0]
    else:
        for (x0, m0), (x1, m1) in zip(reversed(points[:-1]), reversed(points[1:])):
            if m1 < alpha <= m0:
                hi = _crossing(x0, m0, x1, m1, alpha)
                break

    return CanonicalInterval(lo, hi)


def indicator_on(interval: OrderedInterval, rel: float = 0.0) -> FuzzyNumber:
    return FuzzyNumber.indicator_on(interval, rel)


def alpha_cut(u: FuzzyNumber, alpha: float) -> AlphaCut:
    return u.alpha_cut(alpha)
