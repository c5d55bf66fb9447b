"""
Checks of the fuzzy inequalities on concrete instances.

Each check evaluates one inequality exactly as stated and returns a CheckRecord.
A record passes when slack >= -tolerance * (1 + largest magnitude involved);
the inequalities are exact in real arithmetic, so the tolerance only absorbs
float rounding.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ofip.classical_space import (
    ClassicalInnerProduct,
    NotOrthonormalError,
    OrthonormalSystem,
    as_vector,
    find_orthonormality_violation,
)
from ofip.fuzzy_number import check_alpha
from ofip.fuzzy_structures import (
    BAND_TOLERANCE,
    BaseMismatchError,
    FuzzyInnerProductTriple,
    FuzzyNormTriple,
    ProfileError,
    defining_predicate,
    derive_norm_triple,
)

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9

QUASI_LINEARITY_ITEMS = tuple(range(3, 13))
NORM_COROLLARY_ITEMS = (1, 2)

CHECK_IDS = (
    "defining_predicate",
    "band",
    "orthogonality",
    "zero_properties",
    "norm_bounds",
    "cauchy_schwarz",
    "parallelogram",
    "polarization",
    "classical_polarization_bound",
    "bessel",
    *(f"quasi_linearity_{item}" for item in QUASI_LINEARITY_ITEMS),
    *(f"global_bound_{item}" for item in QUASI_LINEARITY_ITEMS),
    "norm_definiteness",
    "norm_triangle",
    "norm_homogeneity",
    *(f"norm_global_bound_{item}" for item in NORM_COROLLARY_ITEMS),
    "cross_alpha",
    "cross_alpha_pair",
    "norm_cross_alpha",
    "norm_cross_alpha_pair",
    "example_norm_definiteness",
    "example_norm_triangle",
    "example_norm_homogeneity",
)


class UnsupportedFieldError(ValueError):
    """Raised when a real-only inequality receives complex vectors."""


class UnknownItemError(ValueError):
    """Raised for an item number the proposition does not have."""


@dataclass(frozen=True)
class CheckRecord:
    """
    One evaluated inequality instance.

    One-sided checks read lhs <= rhs. Two-sided checks read lower <= lhs <= rhs
    and report the smaller of the two slacks.
    """

    check_id: str
    inputs: Dict[str, Any]
    lhs: float
    rhs: float
    slack: float
    passed: bool
    tolerance: float
    lower: Optional[float] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def scale(self) -> float:
        values = [abs(self.lhs), abs(self.rhs)]
        if self.lower is not None:
            values.append(abs(self.lower))
        return 1.0 + max(values)

    @property
    def relative_slack(self) -> float:
        return self.slack / self.scale


def _snapshot(**values) -> Dict[str, Any]:
    snapshot = {}
    for key, value in values.items():
        if value is None:
            continue
        snapshot[key] = np.array(value, copy=True) if isinstance(value, np.ndarray) else value
    return snapshot


def _within(slack: float, tolerance: float, *magnitudes: float) -> bool:
    return slack >= -tolerance * (1.0 + max(abs(m) for m in magnitudes))


def one_sided(check_id: str, lhs: float, rhs: float, tolerance: float, inputs: Dict[str, Any],
              details: Optional[Dict[str, Any]] = None) -> CheckRecord:
    lhs, rhs = float(lhs), float(rhs)
    slack = rhs - lhs
    return CheckRecord(check_id, inputs, lhs, rhs, slack, _within(slack, tolerance, lhs, rhs),
                       tolerance, None, details or {})


def two_sided(check_id: str, lower: float, middle: float, upper: float, tolerance: float,
              inputs: Dict[str, Any], details: Optional[Dict[str, Any]] = None) -> CheckRecord:
    lower, middle, upper = float(lower), float(middle), float(upper)
    slack = min(middle - lower, upper - middle)
    return CheckRecord(check_id, inputs, middle, upper, slack,
                       _within(slack, tolerance, lower, middle, upper), tolerance, lower, details or {})


def equivalence(check_id: str, left: bool, right: bool, tolerance: float, inputs: Dict[str, Any],
                details: Optional[Dict[str, Any]] = None) -> CheckRecord:
    """A record for a biconditional: passes iff both sides agree."""
    agree = bool(left) == bool(right)
    return CheckRecord(check_id, inputs, float(bool(left)), float(bool(right)),
                       0.0 if agree else -1.0, agree, tolerance, None, details or {})


def _require_simplified(triple: Union[FuzzyInnerProductTriple, FuzzyNormTriple]):
    if not triple.simplified:
        raise ProfileError(f"{triple.name} is not in simplified form")


def _profile_inputs(triple, alpha: float) -> Dict[str, float]:
    lower, upper = triple.profile.bounds(alpha)
    return {"lower": lower, "upper": upper}


def _is_zero(vector) -> bool:
    return not np.any(as_vector(vector))


def _is_complex(*vectors) -> bool:
    return any(np.iscomplexobj(np.asarray(v)) for v in vectors)


def _squared(fnorm: FuzzyNormTriple, alpha: float, x) -> float:
    """|(||x||_alpha)^2|."""
    return abs(fnorm(alpha, x)) ** 2


def check_norm_bounds(fip: FuzzyInnerProductTriple, alpha: float, x, fnorm: Optional[FuzzyNormTriple] = None,
                      tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    """|(||x||_a)^2| / B <= ||x||'^2 <= |(||x||_a)^2| / A."""
    _require_simplified(fip)
    fnorm = fnorm or derive_norm_triple(fip)
    lower, upper = fip.profile.bounds(alpha)
    squared = _squared(fnorm, alpha, x)
    base = float(np.real(fip.base1.inner(x, x)))
    return two_sided("norm_bounds", squared / upper, base, squared / lower, tolerance,
                     _snapshot(alpha=alpha, x=x, profile=_profile_inputs(fip, alpha)))


def check_fuzzy_cauchy_schwarz(fip: FuzzyInnerProductTriple, alpha: float, x, y,
                               fnorm: Optional[FuzzyNormTriple] = None,
                               tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    """|<x,y>_a| <= (B/A) |(||x||_a)(||y||_a)|."""
    _require_simplified(fip)
    fnorm = fnorm or derive_norm_triple(fip)
    lower, upper = fip.profile.bounds(alpha)
    lhs = abs(fip(alpha, x, y))
    rhs = upper / lower * abs(fnorm(alpha, x) * fnorm(alpha, y))
    return one_sided("cauchy_schwarz", lhs, rhs, tolerance,
                     _snapshot(alpha=alpha, x=x, y=y, profile=_profile_inputs(fip, alpha)))


def check_fuzzy_parallelogram(fip: FuzzyInnerProductTriple, alpha: float, x, y,
                              fnorm: Optional[FuzzyNormTriple] = None,
                              tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    """(2A/B)(|x|^2 + |y|^2) <= |x+y|^2 + |x-y|^2 <= (2B/A)(|x|^2 + |y|^2) in the fuzzy norm."""
    _require_simplified(fip)
    fnorm = fnorm or derive_norm_triple(fip)
    x, y = as_vector(x), as_vector(y)
    lower, upper = fip.profile.bounds(alpha)
    middle = _squared(fnorm, alpha, x + y) + _squared(fnorm, alpha, x - y)
    total = _squared(fnorm, alpha, x) + _squared(fnorm, alpha, y)
    return two_sided("parallelogram", 2 * lower / upper * total, middle, 2 * upper / lower * total,
                     tolerance, _snapshot(alpha=alpha, x=x, y=y, profile=_profile_inputs(fip, alpha)))


def check_fuzzy_polarization(fip: FuzzyInnerProductTriple, alpha: float, x, y,
                             fnorm: Optional[FuzzyNormTriple] = None,
                             tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    """Real case: |(||x+y||_a)^2| <= (B/A)(4 |<x,y>_a| + |(||x-y||_a)^2|)."""
    _require_simplified(fip)
    if _is_complex(x, y):
        raise UnsupportedFieldError("the fuzzy polarization inequality is stated for real vectors")
    fnorm = fnorm or derive_norm_triple(fip)
    x, y = as_vector(x), as_vector(y)
    lower, upper = fip.profile.bounds(alpha)
    lhs = _squared(fnorm, alpha, x + y)
    rhs = upper / lower * (4 * abs(fip(alpha, x, y)) + _squared(fnorm, alpha, x - y))
    return one_sided("polarization", lhs, rhs, tolerance,
                     _snapshot(alpha=alpha, x=x, y=y, profile=_profile_inputs(fip, alpha)))


def check_classical_polarization_bound(ip: ClassicalInnerProduct, x, y,
                                       tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    """||x+y||^2 <= 4 |<x,y>| + ||x-y||^2, the classical step behind the fuzzy polarization bound."""
    x, y = as_vector(x), as_vector(y)
    lhs = ip.norm(x + y) ** 2
    rhs = 4 * abs(ip.inner(x, y)) + ip.norm(x - y) ** 2
    return one_sided("classical_polarization_bound", lhs, rhs, tolerance, _snapshot(x=x, y=y))


def check_fuzzy_bessel(fip: FuzzyInnerProductTriple, system: OrthonormalSystem, x, alpha: float,
                       n_terms: int, fnorm: Optional[FuzzyNormTriple] = None,
                       tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    """
    sum_{i<=N} |<x,e_i>_a|^2 <= (B^2/A) |(||x||_a)^2|.

    The bound (B/A)^2 |(||x||_a)|^2 is evaluated alongside and reported in
    `details` without affecting the verdict.
    """
    _require_simplified(fip)
    violation = find_orthonormality_violation(system.vectors, fip.base1)
    if violation:
        raise NotOrthonormalError(*violation)
    if not 0 <= n_terms <= len(system):
        raise ValueError(f"n_terms must lie in [0, {len(system)}], got {n_terms}")
    fnorm = fnorm or derive_norm_triple(fip)
    lower, upper = fip.profile.bounds(alpha)
    lhs = sum(abs(fip(alpha, x, e)) ** 2 for e in system.vectors[:n_terms])
    squared = _squared(fnorm, alpha, x)
    rhs = upper ** 2 / lower * squared
    variant_rhs = (upper / lower) ** 2 * squared
    details = {
        "squared_ratio_rhs": float(variant_rhs),
        "squared_ratio_passed": _within(variant_rhs - lhs, tolerance, lhs, variant_rhs),
    }
    return one_sided("bessel", lhs, rhs, tolerance,
                     _snapshot(alpha=alpha, x=x, n_terms=n_terms, profile=_profile_inputs(fip, alpha)),
                     details)


def check_defining_predicate(fip: FuzzyInnerProductTriple, alpha: float, x, y,
                             tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    holds = defining_predicate(fip, alpha, x, y)
    return equivalence("defining_predicate", holds, True, tolerance,
                       _snapshot(alpha=alpha, x=x, y=y, profile=_profile_inputs(fip, alpha)))


def check_band(fip: FuzzyInnerProductTriple, alpha: float, x, y,
               tolerance: float = BAND_TOLERANCE) -> CheckRecord:
    """min(labels) <= |<x,y>_a| <= max(labels) with labels A_a |<x,y>'| and B_a |<x,y>''|."""
    interval = fip.interval(alpha, x, y)
    bounds = interval.canonical()
    record = two_sided("band", bounds.lo, abs(fip(alpha, x, y)), bounds.hi, tolerance,
                       _snapshot(alpha=alpha, x=x, y=y, profile=_profile_inputs(fip, alpha)),
                       {"labels": [interval.lo_label, interval.hi_label]})
    if not record.passed:
        logger.debug(f"{fip.name}: |value| {record.lhs!r} outside {interval} at alpha={alpha}")
    return record


def check_orthogonality(fip: FuzzyInnerProductTriple, alpha: float, x, y,
                        tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    """<x,y>_a = 0  <=>  <x,y>' = 0."""
    _require_simplified(fip)
    return equivalence("orthogonality", fip(alpha, x, y) == 0, fip.base1.inner(x, y) == 0, tolerance,
                       _snapshot(alpha=alpha, x=x, y=y))


def check_zero_properties(fip: FuzzyInnerProductTriple, alpha: float, x, y,
                          tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    """<x,x>_a = 0 iff x = 0, and <0,y>_a = 0."""
    definite = (fip(alpha, x, x) == 0) == _is_zero(x)
    annihilates = fip(alpha, np.zeros_like(as_vector(y)), y) == 0
    return equivalence("zero_properties", definite and annihilates, True, tolerance,
                       _snapshot(alpha=alpha, x=x, y=y),
                       {"definiteness": bool(definite), "zero_first_argument": bool(annihilates)})


def _quasi_terms(fip: FuzzyInnerProductTriple, alpha: float, item: int, k, x, y, z):
    """(middle, reference) for items 3-10; (lhs, bracket) for items 11-12."""
    def mod(a, b):
        return abs(fip(alpha, a, b))

    size = abs(k)
    if item == 3:
        return mod(k * x, y), size * mod(x, y)
    if item == 4:
        return mod(x, k * y), size * mod(x, y)
    if item == 5:
        return mod(k * x, y), size * mod(y, x)
    if item == 6:
        return mod(x, size * y), size * mod(y, x)
    if item == 7:
        return mod(k * x, y), mod(x, k * y)
    if item == 8:
        return mod(x, k * y), mod(k * x, y)
    if item == 9:
        return mod(k * x, y), mod(k * y, x)
    if item == 10:
        return mod(x, k * y), mod(k * y, x)
    if item == 11:
        return mod(k * x + z, y), size * mod(x, y) + mod(z, y)
    return mod(x, k * y + z), size * mod(x, y) + mod(x, z)


def _quasi_record(check_id: str, fip: FuzzyInnerProductTriple, factor: float, item: int, alpha: float,
                  k, x, y, z, tolerance: float) -> CheckRecord:
    if item not in QUASI_LINEARITY_ITEMS:
        raise UnknownItemError(f"quasi-linearity item must be one of 3..12, got {item!r}")
    if item >= 11 and z is None:
        raise ValueError(f"item {item} needs a third vector z")
    x, y = as_vector(x), as_vector(y)
    z = as_vector(z) if z is not None else None
    middle, reference = _quasi_terms(fip, alpha, item, k, x, y, z)
    inputs = _snapshot(alpha=alpha, item=item, k=k, x=x, y=y, z=z, profile=_profile_inputs(fip, alpha))
    if item >= 11:
        return one_sided(check_id, middle, factor * reference, tolerance, inputs, {"factor": factor})
    return two_sided(check_id, reference / factor, middle, factor * reference, tolerance, inputs,
                     {"factor": factor})


def check_quasi_linearity(fip: FuzzyInnerProductTriple, item: int, alpha: float, k, x, y, z=None,
                          tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    """Items 3-12: the alpha-wise factor B_a/A_a replaces exact homogeneity and additivity."""
    _require_simplified(fip)
    lower, upper = fip.profile.bounds(alpha)
    return _quasi_record(f"quasi_linearity_{item}", fip, upper / lower, item, alpha, k, x, y, z, tolerance)


def _norm_corollary_record(fnorm: FuzzyNormTriple, bound: float, item: int, alpha: float, k, x, y,
                           tolerance: float) -> CheckRecord:
    if item not in NORM_COROLLARY_ITEMS:
        raise UnknownItemError(f"norm corollary item must be 1 or 2, got {item!r}")
    x = as_vector(x)
    size = abs(k)
    inputs = _snapshot(alpha=alpha, item=item, k=k, x=x, y=y, bound=bound)
    norm_x = abs(fnorm(alpha, x))
    if item == 1:
        return two_sided("norm_global_bound_1", size / bound * norm_x, abs(fnorm(alpha, k * x)),
                         size * bound * norm_x, tolerance, inputs)
    y = as_vector(y)
    return one_sided("norm_global_bound_2", abs(fnorm(alpha, k * x + y)),
                     bound * (size * norm_x + abs(fnorm(alpha, y))), tolerance, inputs)


def check_global_bound_corollaries(triple: Union[FuzzyInnerProductTriple, FuzzyNormTriple], bound: float,
                                   item: int, alpha: float, k, x, y=None, z=None,
                                   tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    """
    The uniform-constant versions: M replaces B_a/A_a in items 3-12 for inner
    products; L replaces D_a/C_a in items 1-2 for norms.
    """
    _require_simplified(triple)
    if isinstance(triple, FuzzyNormTriple):
        return _norm_corollary_record(triple, bound, item, alpha, k, x, y, tolerance)
    return _quasi_record(f"global_bound_{item}", triple, bound, item, alpha, k, x, y, z, tolerance)


def check_fuzzy_norm_properties(fnorm: FuzzyNormTriple, alpha: float, k, x, y, prefix: str = "norm",
                                tolerance: float = DEFAULT_TOLERANCE) -> List[CheckRecord]:
    """Definiteness, the quasi-triangle inequality and two-sided quasi-homogeneity."""
    _require_simplified(fnorm)
    x, y = as_vector(x), as_vector(y)
    lower, upper = fnorm.profile.bounds(alpha)
    ratio = upper / lower
    size = abs(k)
    norm_x = abs(fnorm(alpha, x))
    inputs = _snapshot(alpha=alpha, k=k, x=x, y=y, profile=_profile_inputs(fnorm, alpha))
    return [
        equivalence(f"{prefix}_definiteness", norm_x == 0, _is_zero(x), tolerance, inputs),
        one_sided(f"{prefix}_triangle", abs(fnorm(alpha, k * x + y)),
                  ratio * (size * norm_x + abs(fnorm(alpha, y))), tolerance, inputs),
        two_sided(f"{prefix}_homogeneity", size / ratio * norm_x, abs(fnorm(alpha, k * x)),
                  size * ratio * norm_x, tolerance, inputs),
    ]


def check_cross_alpha(triple: Union[FuzzyInnerProductTriple, FuzzyNormTriple], alpha1: float, alpha2: float,
                      x, y=None, other: Optional[Union[FuzzyInnerProductTriple, FuzzyNormTriple]] = None,
                      tolerance: float = DEFAULT_TOLERANCE) -> CheckRecord:
    """
    Relates the value at alpha1 to a value at alpha2: of the same triple
    (factors A1/B2 and B1/A2) or of a second triple over the same base with
    profile (M, N) (factors A1/N2 and B1/M2). Norm triples use (C, D).
    """
    alpha1, alpha2 = check_alpha(alpha1), check_alpha(alpha2)
    _require_simplified(triple)
    reference = other if other is not None else triple
    _require_simplified(reference)
    if type(reference) is not type(triple):
        raise BaseMismatchError("cross-level comparison needs two triples of the same kind")
    if reference.base1 != triple.base1:
        raise BaseMismatchError(f"{triple.name} and {reference.name} do not share a base")

    is_norm = isinstance(triple, FuzzyNormTriple)
    if is_norm:
        middle, against = abs(triple(alpha1, x)), abs(reference(alpha2, x))
    else:
        middle, against = abs(triple(alpha1, x, y)), abs(reference(alpha2, x, y))

    lower1, upper1 = triple.profile.bounds(alpha1)
    lower2, upper2 = reference.profile.bounds(alpha2)
    check_id = ("norm_" if is_norm else "") + ("cross_alpha_pair" if other is not None else "cross_alpha")
    inputs = _snapshot(alpha1=alpha1, alpha2=alpha2, x=x, y=y,
                       profile={"lower1": lower1, "upper1": upper1, "lower2": lower2, "upper2": upper2})
    return two_sided(check_id, lower1 / upper2 * against, middle, upper1 / lower2 * against, tolerance, inputs)
