"""
Alpha-profiles, fuzzy inner-product and fuzzy-norm triples.

A fuzzy inner product is a map (alpha, x, y) -> C whose modulus is tied to one
or two classical inner products through the ordered interval
[A_alpha |<x,y>'|, B_alpha |<x,y>''|]_o. Only the modulus is constrained, so
the realizations built here are magnitude-scaled base inner products carrying
a free phase. A mixing function t(alpha, x, y) in [0, 1] picks where in the
admissible band each value sits.
"""

import cmath
import hashlib
import logging
import math
import struct
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ofip.classical_space import (
    ClassicalInnerProduct,
    ClassicalNorm,
    DimensionMismatchError,
    as_vector,
    p_norm,
)
from ofip.fuzzy_number import FuzzyNumber, check_alpha
from ofip.ordered_interval import OrderedInterval

logger = logging.getLogger(__name__)

DEFAULT_ALPHA_GRID = tuple(k / 10 for k in range(1, 11))
TWO_PI = 2.0 * math.pi

# Relative widening applied to every band membership test.
BAND_TOLERANCE = 1e-12

# Lower constant of the example norm over ||.||_2 on R^2: 2 ||x||_3 >= 2^(5/6) ||x||_2.
EXAMPLE_SIMPLIFIED_LOWER = 2.0 ** (5.0 / 6.0)


class ProfileError(ValueError):
    """Raised when an alpha-profile violates its positivity or order invariant."""


class MixingError(ValueError):
    """Raised when a mixing function leaves [0, 1] or a phase leaves [0, 2 pi)."""


class BaseMismatchError(ValueError):
    """Raised when two triples that must share a base do not."""


def _normalize_grid(grid: Sequence[float]) -> Tuple[float, ...]:
    grid = tuple(float(a) for a in grid)
    if not grid:
        raise ProfileError("alpha grid must not be empty")
    for alpha in grid:
        check_alpha(alpha)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ProfileError("alpha grid must be strictly increasing")
    return grid


@dataclass(frozen=True)
class AlphaProfile:
    """
    The constants alpha -> (lower, upper), i.e. (A, B), (C, D) or (M, N).

    Ordered profiles satisfy 0 < lower <= upper < inf on every grid level;
    unordered (general-form) profiles only need 0 < min <= max < inf.
    """

    lower_fn: Callable[[float], float] = field(repr=False, compare=False)
    upper_fn: Callable[[float], float] = field(repr=False, compare=False)
    grid: Tuple[float, ...]
    ordered: bool = True
    kind: str = "custom"
    params: Any = None

    def __post_init__(self):
        object.__setattr__(self, "grid", _normalize_grid(self.grid))
        for alpha in self.grid:
            lower, upper = self.lower(alpha), self.upper(alpha)
            if not (math.isfinite(lower) and math.isfinite(upper)):
                raise ProfileError(f"profile constants must be finite at alpha={alpha}")
            if min(lower, upper) <= 0:
                raise ProfileError(
                    f"profile constants must be positive at alpha={alpha}, got ({lower}, {upper})"
                )
            if self.ordered and lower > upper:
                raise ProfileError(
                    f"ordered profile needs lower <= upper at alpha={alpha}, got ({lower}, {upper})"
                )

    def lower(self, alpha: float) -> float:
        return float(self.lower_fn(alpha))

    def upper(self, alpha: float) -> float:
        return float(self.upper_fn(alpha))

    def bounds(self, alpha: float) -> Tuple[float, float]:
        return self.lower(alpha), self.upper(alpha)

    @property
    def is_crisp(self) -> bool:
        return all(self.lower(a) == self.upper(a) for a in self.grid)

    @classmethod
    def constant(cls, lower: float, upper: float, grid=DEFAULT_ALPHA_GRID, ordered: bool = True) -> "AlphaProfile":
        lower, upper = float(lower), float(upper)
        return cls(lambda a: lower, lambda a: upper, grid, ordered, "constant",
                   {"lower": lower, "upper": upper})

    @classmethod
    def affine(cls, lower: Sequence[float], upper: Sequence[float], grid=DEFAULT_ALPHA_GRID,
               ordered: bool = True) -> "AlphaProfile":
        """lower(alpha) = a0 + a1 alpha, upper(alpha) = b0 + b1 alpha."""
        a0, a1 = (float(v) for v in lower)
        b0, b1 = (float(v) for v in upper)
        return cls(lambda a: a0 + a1 * a, lambda a: b0 + b1 * a, grid, ordered, "affine",
                   {"lower": [a0, a1], "upper": [b0, b1]})

    @classmethod
    def table(cls, lower: Sequence[float], upper: Sequence[float], grid: Sequence[float],
              ordered: bool = True) -> "AlphaProfile":
        """Constants tabulated on the grid; evaluation off the grid is an error."""
        grid = _normalize_grid(grid)
        if len(lower) != len(grid) or len(upper) != len(grid):
            raise ProfileError("table profile needs one lower and one upper value per grid level")
        lower_map = dict(zip(grid, (float(v) for v in lower)))
        upper_map = dict(zip(grid, (float(v) for v in upper)))

        def lookup(table):
            def value(alpha):
                try:
                    return table[float(alpha)]
                except KeyError:
                    raise ProfileError(f"alpha={alpha} is not on the profile grid") from None
            return value

        return cls(lookup(lower_map), lookup(upper_map), grid, ordered, "table",
                   {"lower": list(lower_map.values()), "upper": list(upper_map.values())})

    @classmethod
    def from_descriptor(cls, descriptor: Dict[str, Any], grid: Sequence[float]) -> "AlphaProfile":
        kind = descriptor.get("kind")
        ordered = bool(descriptor.get("ordered", True))
        if kind == "constant":
            return cls.constant(descriptor["lower"], descriptor["upper"], grid, ordered)
        if kind == "affine":
            return cls.affine(descriptor["lower"], descriptor["upper"], grid, ordered)
        if kind == "table":
            return cls.table(descriptor["lower"], descriptor["upper"], grid, ordered)
        raise ProfileError(f"unknown profile kind {kind!r}")

    def sqrt(self) -> "AlphaProfile":
        """The profile (sqrt(lower), sqrt(upper)) of the derived norm."""
        return AlphaProfile(
            lambda a: math.sqrt(self.lower(a)),
            lambda a: math.sqrt(self.upper(a)),
            self.grid,
            self.ordered,
            "sqrt",
            self.descriptor(),
        )

    def with_grid(self, grid: Sequence[float]) -> "AlphaProfile":
        return AlphaProfile(self.lower_fn, self.upper_fn, grid, self.ordered, self.kind, self.params)

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": self.kind, "ordered": self.ordered, "params": self.params, "grid": list(self.grid)}


def global_bound(profile: AlphaProfile) -> float:
    """
    max over the grid of upper/lower: the constant M of the uniform corollaries
    (and, for a norm profile (C, D), the constant L = 1 / inf C/D).
    """
    return max(
        max(profile.bounds(a)) / min(profile.bounds(a)) for a in profile.grid
    )


def _hash_unit(*parts: bytes) -> Tuple[float, float]:
    digest = hashlib.blake2b(b"|".join(parts), digest_size=16).digest()
    first, second = struct.unpack("<QQ", digest)
    return first / 2.0 ** 64, second / 2.0 ** 64


def _vector_bytes(v) -> bytes:
    v = np.asarray(v)
    return v.dtype.str.encode() + np.ascontiguousarray(v).tobytes()


@dataclass(frozen=True)
class MixingFunction:
    """t(alpha, x, y) in [0, 1] and phase(alpha, x, y) in [0, 2 pi)."""

    t_fn: Callable[[float, np.ndarray, np.ndarray], float] = field(repr=False, compare=False)
    phase_fn: Callable[[float, np.ndarray, np.ndarray], float] = field(repr=False, compare=False)
    kind: str = "custom"
    params: Any = None

    def t(self, alpha: float, x, y) -> float:
        value = float(self.t_fn(alpha, x, y))
        if not (0.0 <= value <= 1.0):
            raise MixingError(f"mixing value {value!r} outside [0, 1]")
        return value

    def phase(self, alpha: float, x, y) -> float:
        value = float(self.phase_fn(alpha, x, y))
        if not (0.0 <= value < TWO_PI):
            raise MixingError(f"phase {value!r} outside [0, 2 pi)")
        return value

    @property
    def is_constant(self) -> bool:
        return self.kind == "constant"

    @classmethod
    def constant(cls, t: float, phase: float = 0.0) -> "MixingFunction":
        t, phase = float(t), float(phase)
        return cls(lambda a, x, y: t, lambda a, x, y: phase, "constant", {"t": t, "phase": phase})

    @classmethod
    def affine(cls, t0: float, t1: float, phase: float = 0.0) -> "MixingFunction":
        """t = clip(t0 + t1 alpha, 0, 1)."""
        t0, t1, phase = float(t0), float(t1), float(phase)
        return cls(
            lambda a, x, y: min(1.0, max(0.0, t0 + t1 * a)),
            lambda a, x, y: phase,
            "affine",
            {"t": [t0, t1], "phase": phase},
        )

    @classmethod
    def hashed(cls, seed: int, salt: int = 0) -> "MixingFunction":
        """A deterministic pseudo-random function of (alpha, x, y), fixed by (seed, salt)."""
        key = f"{int(seed)}:{int(salt)}".encode()

        def draw(alpha, x, y):
            return _hash_unit(key, struct.pack("<d", float(alpha)), _vector_bytes(x), _vector_bytes(y))

        return cls(
            lambda a, x, y: draw(a, x, y)[0],
            lambda a, x, y: draw(a, x, y)[1] * TWO_PI,
            "hashed",
            {"seed": int(seed), "salt": int(salt)},
        )

    @classmethod
    def from_descriptor(cls, descriptor: Dict[str, Any], seed: int = 0) -> "MixingFunction":
        kind = descriptor.get("kind")
        if kind == "constant":
            return cls.constant(descriptor.get("t", 0.0), descriptor.get("phase", 0.0))
        if kind == "affine":
            t0, t1 = descriptor["t"]
            return cls.affine(t0, t1, descriptor.get("phase", 0.0))
        if kind == "hashed":
            return cls.hashed(seed, descriptor.get("salt", 0))
        raise MixingError(f"unknown mixing kind {kind!r}")

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": self.kind, "params": self.params}


@dataclass(frozen=True)
class FuzzyInnerProductTriple:
    """(<.,.>_alpha, <.,.>', <.,.>'') together with its profile and membership."""

    value_fn: Callable[[float, np.ndarray, np.ndarray], complex] = field(repr=False, compare=False)
    base1: ClassicalInnerProduct
    base2: ClassicalInnerProduct
    profile: AlphaProfile
    membership_fn: Callable[[float, np.ndarray, np.ndarray], FuzzyNumber] = field(repr=False, compare=False)
    simplified: bool = True
    name: str = "fip"

    def __call__(self, alpha: float, x, y) -> complex:
        alpha = check_alpha(alpha)
        return complex(self.value_fn(alpha, as_vector(x), as_vector(y)))

    value = __call__

    def interval(self, alpha: float, x, y) -> OrderedInterval:
        """[A_alpha |<x,y>'|, B_alpha |<x,y>''|]_o."""
        lower, upper = self.profile.bounds(alpha)
        return OrderedInterval(lower * abs(self.base1.inner(x, y)), upper * abs(self.base2.inner(x, y)))

    def membership(self, alpha: float, x, y) -> FuzzyNumber:
        return self.membership_fn(check_alpha(alpha), as_vector(x), as_vector(y))

    def descriptor(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "simplified": self.simplified,
            "base1": self.base1.descriptor(),
            "base2": self.base2.descriptor(),
            "profile": self.profile.descriptor(),
        }


@dataclass(frozen=True)
class FuzzyNormTriple:
    """(||.||_alpha, ||.||', ||.||'') together with its profile and membership."""

    value_fn: Callable[[float, np.ndarray], complex] = field(repr=False, compare=False)
    base1: ClassicalNorm
    base2: ClassicalNorm
    profile: AlphaProfile
    membership_fn: Callable[[float, np.ndarray], FuzzyNumber] = field(repr=False, compare=False)
    simplified: bool = True
    name: str = "fnorm"

    def __call__(self, alpha: float, x) -> complex:
        alpha = check_alpha(alpha)
        return complex(self.value_fn(alpha, as_vector(x)))

    value = __call__

    def interval(self, alpha: float, x) -> OrderedInterval:
        """[C_alpha ||x||', D_alpha ||x||'']_o."""
        lower, upper = self.profile.bounds(alpha)
        return OrderedInterval(lower * self.base1(x), upper * self.base2(x))

    def membership(self, alpha: float, x) -> FuzzyNumber:
        return self.membership_fn(check_alpha(alpha), as_vector(x))

    def descriptor(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "simplified": self.simplified,
            "base1": self.base1.descriptor(),
            "base2": self.base2.descriptor(),
            "profile": self.profile.descriptor(),
        }


def _require_ordered(profile: AlphaProfile):
    if not profile.ordered:
        raise ProfileError("the simplified form needs an ordered profile 0 < A <= B")


def make_scaled_fip(base: ClassicalInnerProduct, profile: AlphaProfile, mix: MixingFunction,
                    name: str = "scaled") -> FuzzyInnerProductTriple:
    """value = [A + t (B - A)] e^{i phase} <x,y>', which lies in the band by construction."""
    _require_ordered(profile)

    def value(alpha, x, y):
        lower, upper = profile.bounds(alpha)
        factor = lower + mix.t(alpha, x, y) * (upper - lower)
        return factor * cmath.rect(1.0, mix.phase(alpha, x, y)) * base.inner(x, y)

    def membership(alpha, x, y):
        lower, upper = profile.bounds(alpha)
        product = abs(base.inner(x, y))
        return FuzzyNumber.indicator_on(OrderedInterval(lower * product, upper * product), BAND_TOLERANCE)

    return FuzzyInnerProductTriple(value, base, base, profile, membership, True, name)


def make_general_fip(base1: ClassicalInnerProduct, base2: ClassicalInnerProduct, profile: AlphaProfile,
                     mix: MixingFunction, name: str = "general") -> FuzzyInnerProductTriple:
    """
    |value| = (1 - t) A |<x,y>'| + t B |<x,y>''|: a convex combination of the two
    endpoint labels, inside the ordered interval whatever their order.
    """
    if base1.weights is not None and base2.weights is not None and len(base1.weights) != len(base2.weights):
        raise DimensionMismatchError("base inner products are defined on different dimensions")

    def labels(alpha, x, y):
        lower, upper = profile.bounds(alpha)
        return lower * abs(base1.inner(x, y)), upper * abs(base2.inner(x, y))

    def value(alpha, x, y):
        first, second = labels(alpha, x, y)
        t = mix.t(alpha, x, y)
        magnitude = min(max((1.0 - t) * first + t * second, min(first, second)), max(first, second))
        return cmath.rect(magnitude, mix.phase(alpha, x, y))

    def membership(alpha, x, y):
        return FuzzyNumber.indicator_on(OrderedInterval(*labels(alpha, x, y)), BAND_TOLERANCE)

    return FuzzyInnerProductTriple(value, base1, base2, profile, membership, False, name)


def make_adversarial_fip(base: ClassicalInnerProduct, profile: AlphaProfile, inflation: float = 2.0,
                         name: str = "adversarial") -> FuzzyInnerProductTriple:
    """
    A triple that claims `profile` while its modulus is inflation * B_alpha |<x,y>'|.
    Its membership is the indicator of its own inflated band, so the defining
    equivalence fails for every pair with <x,y>' != 0.
    """
    _require_ordered(profile)
    inflation = float(inflation)

    def value(alpha, x, y):
        return complex(inflation * profile.upper(alpha) * base.inner(x, y))

    def membership(alpha, x, y):
        lower, upper = profile.bounds(alpha)
        product = inflation * abs(base.inner(x, y))
        return FuzzyNumber.indicator_on(OrderedInterval(lower * product, upper * product), BAND_TOLERANCE)

    return FuzzyInnerProductTriple(value, base, base, profile, membership, True, name)


def in_band(interval: OrderedInterval, magnitude: float) -> bool:
    """Containment up to BAND_TOLERANCE relative to the largest magnitude involved."""
    return interval.contains_within(magnitude, BAND_TOLERANCE)


def defining_predicate(fip: FuzzyInnerProductTriple, alpha: float, x, y) -> bool:
    """Truth of: K(|<x,y>_alpha|) >= alpha  <=>  |<x,y>_alpha| in the ordered interval."""
    alpha = check_alpha(alpha)
    magnitude = abs(fip(alpha, x, y))
    member = fip.membership(alpha, x, y).membership(magnitude) >= alpha
    inside = in_band(fip.interval(alpha, x, y), magnitude)
    if member != inside:
        logger.debug(f"{fip.name}: K({magnitude!r}) >= {alpha} is {member} but band membership is {inside}")
    return member == inside


def norm_defining_predicate(fnorm: FuzzyNormTriple, alpha: float, x) -> bool:
    alpha = check_alpha(alpha)
    magnitude = abs(fnorm(alpha, x))
    member = fnorm.membership(alpha, x).membership(magnitude) >= alpha
    return member == in_band(fnorm.interval(alpha, x), magnitude)


def derive_norm_triple(fip: FuzzyInnerProductTriple) -> FuzzyNormTriple:
    """||x||_alpha = principal sqrt of <x,x>_alpha, with profile (sqrt A, sqrt B)."""
    if not fip.simplified:
        raise ProfileError("norm derivation needs a fuzzy inner product in simplified form")
    profile = fip.profile.sqrt()
    base1 = ClassicalNorm.induced_by(fip.base1)
    base2 = ClassicalNorm.induced_by(fip.base2)

    def value(alpha, x):
        return cmath.sqrt(fip(alpha, x, x))

    def membership(alpha, x):
        lower, upper = profile.bounds(alpha)
        return FuzzyNumber.indicator_on(OrderedInterval(lower * base1(x), upper * base2(x)), BAND_TOLERANCE)

    return FuzzyNormTriple(value, base1, base2, profile, membership, True, f"sqrt({fip.name})")


def make_scaled_fnorm(base: ClassicalNorm, profile: AlphaProfile, mix: MixingFunction,
                      name: str = "scaled_norm") -> FuzzyNormTriple:
    """value = [C + t (D - C)] e^{i phase} ||x||'."""
    _require_ordered(profile)

    def value(alpha, x):
        lower, upper = profile.bounds(alpha)
        factor = lower + mix.t(alpha, x, x) * (upper - lower)
        return factor * cmath.rect(1.0, mix.phase(alpha, x, x)) * base(x)

    def membership(alpha, x):
        lower, upper = profile.bounds(alpha)
        size = base(x)
        return FuzzyNumber.indicator_on(OrderedInterval(lower * size, upper * size), BAND_TOLERANCE)

    return FuzzyNormTriple(value, base, base, profile, membership, True, name)


def _plane_vector(x) -> np.ndarray:
    x = as_vector(x)
    if x.size != 2 or np.iscomplexobj(x):
        raise DimensionMismatchError("the example norm is defined on real vectors of R^2")
    return x


def example_norm(alpha: float, x, verbatim: bool = False) -> complex:
    """
    The example fuzzy norm on R^2.

    The canonical form squares the (1 - alpha^2) factor of the imaginary
    radicand so that |value| = 3 alpha^2 ||x||_2 + 2 (1 - alpha^2) ||x||_3.
    `verbatim=True` keeps the unsquared factor as originally printed.
    """
    alpha = check_alpha(alpha)
    x = _plane_vector(x)
    n2, n3 = p_norm(x, 2), p_norm(x, 3)
    a2 = alpha * alpha
    rest = 1.0 - a2
    real = math.sqrt(9.0 * a2 * a2 * n2 * n2 + 5.0 * a2 * rest * n2 * n3)
    weight = rest if verbatim else rest * rest
    imag = math.sqrt(4.0 * weight * n3 * n3 + 7.0 * a2 * rest * n2 * n3)
    return complex(real, imag)


def example_magnitude(alpha: float, x) -> float:
    """3 alpha^2 ||x||_2 + 2 (1 - alpha^2) ||x||_3."""
    alpha = check_alpha(alpha)
    x = _plane_vector(x)
    return 3.0 * alpha * alpha * p_norm(x, 2) + 2.0 * (1.0 - alpha * alpha) * p_norm(x, 3)


def example_interval(x) -> OrderedInterval:
    """[3 ||x||_2, 2 ||x||_3]_o."""
    x = _plane_vector(x)
    return OrderedInterval(3.0 * p_norm(x, 2), 2.0 * p_norm(x, 3))


def example_norm_triple(grid=DEFAULT_ALPHA_GRID, simplified: bool = False,
                        verbatim: bool = False) -> FuzzyNormTriple:
    """
    The example norm as a triple: general form over (||.||_2, ||.||_3) with
    C = 3, D = 2, or the simplified view over ||.||_2 with C = 2^(5/6), D = 3.
    """
    two = ClassicalNorm.p_norm(2)

    def value(alpha, x):
        return example_norm(alpha, x, verbatim)

    if simplified:
        profile = AlphaProfile.constant(EXAMPLE_SIMPLIFIED_LOWER, 3.0, grid)

        def membership(alpha, x):
            size = two(x)
            band = OrderedInterval(EXAMPLE_SIMPLIFIED_LOWER * size, 3.0 * size)
            return FuzzyNumber.indicator_on(band, BAND_TOLERANCE)

        return FuzzyNormTriple(value, two, two, profile, membership, True, "example_simplified")

    profile = AlphaProfile.constant(3.0, 2.0, grid, ordered=False)

    def membership(alpha, x):
        return FuzzyNumber.indicator_on(example_interval(x), BAND_TOLERANCE)

    return FuzzyNormTriple(value, two, ClassicalNorm.p_norm(3), profile, membership, False, "example")
