"""
Finite-dimensional inner-product spaces over R or C.

Vectors are one-dimensional numpy arrays. Inner products follow the convention
<x, y> = sum_k w_k x_k conj(y_k): linear in the first argument, conjugate-linear
in the second. The classical identities and inequalities here are the oracles
the fuzzy checks are measured against.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

Scalar = Union[float, complex]

STANDARD = "standard"
WEIGHTED = "weighted"
INDUCED = "induced"
P_NORM = "p"

SUPPORTED_P = (1, 2, 3, np.inf)
ORTHONORMAL_TOLERANCE = 1e-10
DEPENDENCE_TOLERANCE = 1e-12


class DimensionMismatchError(ValueError):
    """Raised when vectors (or weights) disagree in dimension."""


class DependentVectorsError(ValueError):
    """Raised by Gram-Schmidt when an input is in the span of its predecessors."""

    def __init__(self, index: int, residual: float):
        self.index = index
        self.residual = residual
        super().__init__(
            f"vector at index {index} is linearly dependent on its predecessors "
            f"(residual norm {residual:.3e})"
        )


class NotOrthonormalError(ValueError):
    """Raised when a system fails |<e_i, e_j> - delta_ij| <= tolerance."""

    def __init__(self, i: int, j: int, value: Scalar):
        self.pair = (i, j)
        self.value = value
        super().__init__(f"system is not orthonormal: <e_{i}, e_{j}> = {value!r}")


class UnsupportedNormError(ValueError):
    """Raised for p outside {1, 2, 3, inf}."""


def as_vector(entries) -> np.ndarray:
    """Coerce entries to a finite 1-D float or complex array of dimension >= 1."""
    vector = np.asarray(entries)
    if vector.ndim != 1 or vector.size < 1:
        raise DimensionMismatchError(f"expected a non-empty 1-D vector, got shape {vector.shape}")
    if np.iscomplexobj(vector):
        vector = vector.astype(np.complex128)
    else:
        vector = vector.astype(np.float64)
    if not np.all(np.isfinite(vector)):
        raise ValueError("vector entries must be finite")
    return vector


def _pair(x, y) -> Tuple[np.ndarray, np.ndarray]:
    x, y = as_vector(x), as_vector(y)
    if x.shape != y.shape:
        raise DimensionMismatchError(f"dimension mismatch: {x.size} vs {y.size}")
    return x, y


def _scalar(value) -> Scalar:
    value = complex(value) if np.iscomplexobj(value) else float(value)
    return value


@dataclass(frozen=True)
class ClassicalInnerProduct:
    """Standard dot product, or a diagonal-weighted one with positive weights."""

    kind: str = STANDARD
    weights: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.kind == STANDARD:
            if self.weights is not None:
                raise ValueError("standard inner product takes no weights")
        elif self.kind == WEIGHTED:
            if not self.weights:
                raise ValueError("weighted inner product needs weights")
            weights = tuple(float(w) for w in self.weights)
            if not all(np.isfinite(w) and w > 0 for w in weights):
                raise ValueError(f"weights must be finite and strictly positive, got {weights}")
            object.__setattr__(self, "weights", weights)
        else:
            raise ValueError(f"unknown inner product kind {self.kind!r}")

    @classmethod
    def standard(cls) -> "ClassicalInnerProduct":
        return cls(STANDARD)

    @classmethod
    def weighted(cls, weights: Sequence[float]) -> "ClassicalInnerProduct":
        return cls(WEIGHTED, tuple(weights))

    def _weights_for(self, n: int) -> Optional[np.ndarray]:
        if self.weights is None:
            return None
        if len(self.weights) != n:
            raise DimensionMismatchError(
                f"inner product has {len(self.weights)} weights, vectors have dimension {n}"
            )
        return np.asarray(self.weights)

    def inner(self, x, y) -> Scalar:
        x, y = _pair(x, y)
        weights = self._weights_for(x.size)
        terms = x * np.conj(y)
        if weights is not None:
            terms = weights * terms
        return _scalar(np.sum(terms))

    __call__ = inner

    def norm(self, x) -> float:
        """Induced norm sqrt(<x, x>)."""
        return float(np.sqrt(abs(self.inner(x, x))))

    def descriptor(self) -> dict:
        if self.kind == STANDARD:
            return {"kind": STANDARD}
        return {"kind": WEIGHTED, "weights": list(self.weights)}


def inner(ip: ClassicalInnerProduct, x, y) -> Scalar:
    return ip.inner(x, y)


def p_norm(x, p) -> float:
    """(sum |x_k|^p)^(1/p) for p in {1, 2, 3}; max |x_k| for p = inf."""
    if p not in SUPPORTED_P:
        raise UnsupportedNormError(f"unsupported p-norm order {p!r}; expected one of 1, 2, 3, inf")
    return float(np.linalg.norm(as_vector(x), ord=p))


@dataclass(frozen=True)
class ClassicalNorm:
    """A norm induced by an inner product, or a p-norm."""

    kind: str
    inner_product: Optional[ClassicalInnerProduct] = None
    p: Optional[float] = None

    def __post_init__(self):
        if self.kind == INDUCED and self.inner_product is None:
            raise ValueError("induced norm needs an inner product")
        if self.kind == P_NORM and self.p not in SUPPORTED_P:
            raise UnsupportedNormError(f"unsupported p-norm order {self.p!r}")
        if self.kind not in (INDUCED, P_NORM):
            raise ValueError(f"unknown norm kind {self.kind!r}")

    @classmethod
    def induced_by(cls, ip: ClassicalInnerProduct) -> "ClassicalNorm":
        return cls(INDUCED, inner_product=ip)

    @classmethod
    def p_norm(cls, p) -> "ClassicalNorm":
        return cls(P_NORM, p=p)

    def __call__(self, x) -> float:
        if self.kind == INDUCED:
            return self.inner_product.norm(x)
        return p_norm(x, self.p)

    def descriptor(self) -> dict:
        if self.kind == INDUCED:
            return {"kind": INDUCED, "inner_product": self.inner_product.descriptor()}
        return {"kind": P_NORM, "p": "inf" if self.p == np.inf else self.p}


def gram_matrix(vectors: np.ndarray, ip: ClassicalInnerProduct) -> np.ndarray:
    count = len(vectors)
    gram = np.zeros((count, count), dtype=np.complex128)
    for i in range(count):
        for j in range(count):
            gram[i, j] = ip.inner(vectors[i], vectors[j])
    return gram


def find_orthonormality_violation(vectors, ip: ClassicalInnerProduct, tolerance: float = ORTHONORMAL_TOLERANCE):
    """Return (i, j, <e_i, e_j>) for the first violating pair (1-based), or None."""
    gram = gram_matrix(vectors, ip)
    identity = np.eye(len(vectors))
    bad = np.argwhere(np.abs(gram - identity) > tolerance)
    if bad.size:
        i, j = bad[0]
        return int(i) + 1, int(j) + 1, _scalar(gram[i, j])
    return None


@dataclass(frozen=True)
class OrthonormalSystem:
    """Finite orthonormal sequence e_1..e_N with respect to `base`."""

    vectors: np.ndarray = field(compare=False)
    base: ClassicalInnerProduct

    def __post_init__(self):
        vectors = np.array([as_vector(v) for v in self.vectors])
        if vectors.ndim != 2:
            raise DimensionMismatchError("system vectors must share one dimension")
        violation = find_orthonormality_violation(vectors, self.base)
        if violation:
            raise NotOrthonormalError(*violation)
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    @classmethod
    def canonical_basis(cls, n: int) -> "OrthonormalSystem":
        return cls(np.eye(n), ClassicalInnerProduct.standard())


def gram_schmidt(vectors: Sequence, ip: ClassicalInnerProduct) -> OrthonormalSystem:
    """
    Modified Gram-Schmidt under `ip`.

    Raises DependentVectorsError naming the 1-based index of the first input
    whose residual norm falls below 1e-12 (relative to the input's own norm
    when that exceeds one).
    """
    vectors = [as_vector(v) for v in vectors]
    if not vectors:
        raise ValueError("gram_schmidt needs at least one vector")
    dtype = np.complex128 if any(np.iscomplexobj(v) for v in vectors) else np.float64
    basis = []
    for index, vector in enumerate(vectors, start=1):
        residual = vector.astype(dtype)
        for e in basis:
            residual = residual - ip.inner(residual, e) * e
        size = ip.norm(residual)
        if size < DEPENDENCE_TOLERANCE * max(1.0, ip.norm(vector)):
            logger.debug(f"gram_schmidt: input {index} has residual norm {size!r}")
            raise DependentVectorsError(index, size)
        basis.append(residual / size)
    return OrthonormalSystem(np.array(basis), ip)


@dataclass(frozen=True)
class ClassicalOracleRecord:
    """Residuals and slacks of the classical results for one (x, y) pair."""

    cs_slack: float
    parallelogram_residual: float
    polarization_residual: float
    polarization_bound_slack: float
    bessel_partial_sum: float
    bessel_bound: float


def polarization(ip: ClassicalInnerProduct, x, y) -> Scalar:
    """Recover <x, y> from induced norms; real identity for real inputs, complex otherwise."""
    x, y = _pair(x, y)
    if np.iscomplexobj(x) or np.iscomplexobj(y):
        total = 0j
        for k in range(4):
            unit = 1j ** k
            total += unit * ip.norm(x + unit * y) ** 2
        return total / 4
    return (ip.norm(x + y) ** 2 - ip.norm(x - y) ** 2) / 4


def bessel_partial_sum(ip: ClassicalInnerProduct, x, system: OrthonormalSystem, n_terms: int) -> float:
    if not 0 <= n_terms <= len(system):
        raise ValueError(f"n_terms must lie in [0, {len(system)}], got {n_terms}")
    return float(sum(abs(ip.inner(x, e)) ** 2 for e in system.vectors[:n_terms]))


def axiom_residuals(ip: ClassicalInnerProduct, x, y, z, r: Scalar) -> dict:
    """Additivity, homogeneity and conjugate-symmetry residuals of the inner product axioms."""
    x, y = _pair(x, y)
    _, z = _pair(x, z)
    return {
        "additivity": abs(ip.inner(x + y, z) - (ip.inner(x, z) + ip.inner(y, z))),
        "homogeneity": abs(ip.inner(r * x, y) - r * ip.inner(x, y)),
        "conjugate_symmetry": abs(ip.inner(x, y) - np.conj(ip.inner(y, x))),
        "self_inner_imag": abs(np.imag(ip.inner(x, x))),
    }


def classical_oracles(ip: ClassicalInnerProduct, x, y, system: OrthonormalSystem, n_terms: int) -> ClassicalOracleRecord:
    x, y = _pair(x, y)
    norm_x, norm_y = ip.norm(x), ip.norm(y)
    xy = ip.inner(x, y)
    plus, minus = ip.norm(x + y) ** 2, ip.norm(x - y) ** 2
    return ClassicalOracleRecord(
        cs_slack=norm_x * norm_y - abs(xy),
        parallelogram_residual=abs(plus + minus - 2 * norm_x ** 2 - 2 * norm_y ** 2),
        polarization_residual=abs(polarization(ip, x, y) - xy),
        polarization_bound_slack=4 * abs(xy) + minus - plus,
        bessel_partial_sum=bessel_partial_sum(ip, x, system, n_terms),
        bessel_bound=norm_x ** 2,
    )
