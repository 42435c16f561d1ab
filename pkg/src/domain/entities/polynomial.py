"""Polynomial and root-set value objects."""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import linear_sum_assignment

from .base import (
    ValidationError,
    ValueObject,
    complex_to_pair,
    frozen_array,
    pair_to_complex,
    scale_of,
    validate_finite,
    validate_same_length,
)


# Moduli closer than this (relative to the largest modulus) count as ties.
MODULUS_TIE_TOL = 1e-12
# Arguments within this distance of 2*pi wrap to 0.
ARGUMENT_WRAP_TOL = 1e-12


def _canonical_permutation(values: np.ndarray) -> np.ndarray:
    """Indices that put ``values`` in canonical order.

    Modulus descending, then principal argument ascending in [0, 2*pi), then
    original index. Moduli are grouped against the largest member of each
    group so the grouping does not depend on input order.
    """
    n = values.size
    moduli = np.abs(values)
    angles = np.mod(np.angle(values), 2.0 * np.pi)
    angles[angles > 2.0 * np.pi - ARGUMENT_WRAP_TOL] = 0.0
    tie = MODULUS_TIE_TOL * max(1.0, float(moduli.max()))

    by_modulus = sorted(range(n), key=lambda i: (-moduli[i], i))
    order: List[int] = []
    start = 0
    while start < n:
        leader = moduli[by_modulus[start]]
        stop = start + 1
        while stop < n and leader - moduli[by_modulus[stop]] <= tie:
            stop += 1
        order.extend(sorted(by_modulus[start:stop], key=lambda i: (angles[i], i)))
        start = stop
    return np.array(order, dtype=int)


@dataclass(frozen=True, eq=False)
class RootSet(ValueObject):
    """Canonically ordered multiset of complex roots.

    Whatever order the roots are given in, they are stored canonically;
    ``permutation[k]`` is the input position of the k-th stored root.
    """

    roots: Any
    permutation: Tuple[int, ...] = field(init=False, default=())

    def __post_init__(self):
        values = np.array(list(self.roots) if not isinstance(self.roots, np.ndarray) else self.roots,
                          dtype=complex).ravel()
        if values.size < 1:
            raise ValidationError("a root set needs at least one root", "roots")
        validate_finite(values, "roots")
        order = _canonical_permutation(values)
        object.__setattr__(self, "roots", frozen_array(values[order]))
        object.__setattr__(self, "permutation", tuple(int(i) for i in order))

    def __len__(self) -> int:
        return int(self.roots.size)

    def __iter__(self) -> Iterator[complex]:
        return (complex(z) for z in self.roots)

    @property
    def degree(self) -> int:
        """Degree of the polynomial this root set represents."""
        return len(self)

    @property
    def scale(self) -> float:
        """Tolerance normalizer max(1, max |lambda|)."""
        return scale_of(self.roots)

    def translated(self, beta: complex) -> "RootSet":
        """Shift every root by ``beta``."""
        return RootSet(self.roots + complex(beta))

    def centered(self) -> "RootSet":
        """Translate so that the roots sum to zero."""
        return self.translated(-complex(np.mean(self.roots)))

    def is_real(self, tol: float) -> bool:
        """True when every imaginary part is within ``tol * scale``."""
        return bool(np.all(np.abs(self.roots.imag) <= tol * self.scale))

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the ``{"roots": [[re, im], ...]}`` JSON form."""
        return {"roots": [complex_to_pair(z) for z in self.roots]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RootSet":
        """Create a root set from its JSON form."""
        if "roots" not in data:
            raise ValidationError("root set JSON needs a 'roots' key", "roots")
        return cls([pair_to_complex(v) for v in data["roots"]])


def canonical_order(values: Iterable[complex]) -> RootSet:
    """Sort values by modulus descending, argument ascending, index ascending."""
    return RootSet(values)


def are_collinear(roots: Union[RootSet, Iterable[complex]], tol: float) -> bool:
    """Whether all values lie on one straight line.

    With mu the mean, |sum (z - mu)^2| >= (1 - tol) * sum |z - mu|^2; a
    spread of at most tol * scale^2 counts as a single point.
    """
    values = roots.roots if isinstance(roots, RootSet) else np.asarray(list(roots), dtype=complex)
    deviations = values - np.mean(values)
    spread = float(np.sum(np.abs(deviations) ** 2))
    if spread <= tol * scale_of(values) ** 2:
        return True
    return abs(complex(np.sum(deviations ** 2))) >= (1.0 - tol) * spread


@dataclass(frozen=True, eq=False)
class Polynomial(ValueObject):
    """Complex polynomial stored as ascending coefficients.

    Monic instances (the default) represent p, q and characteristic
    polynomials; ``monic=False`` carries derivatives such as p'.
    """

    coeffs: Any
    monic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "coeffs", frozen_array(np.ravel(self.coeffs)))
        self._validate()

    def _validate(self) -> None:
        """Validate coefficient data."""
        if self.coeffs.size == 0:
            raise ValidationError("polynomial needs at least one coefficient", "coeffs")
        validate_finite(self.coeffs, "coeffs")
        if self.coeffs[-1] == 0:
            raise ValidationError("leading coefficient must be nonzero", "coeffs")
        if self.monic:
            if self.coeffs[-1] != 1:
                raise ValidationError("leading coefficient must be exactly 1", "coeffs")
            if self.degree < 1:
                raise ValidationError("monic polynomial must have degree at least 1", "coeffs")

    @property
    def degree(self) -> int:
        return int(self.coeffs.size - 1)

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    @classmethod
    def from_roots(cls, roots: Union[RootSet, Iterable[complex]]) -> "Polynomial":
        """Monic expansion of prod (z - lambda_j)."""
        values = roots.roots if isinstance(roots, RootSet) else np.asarray(list(roots), dtype=complex)
        if values.size < 1:
            raise ValidationError("from_roots needs at least one root", "roots")
        coeffs = np.asarray(npoly.polyfromroots(values), dtype=complex)
        coeffs[-1] = 1.0
        return cls(coeffs)

    def derivative(self) -> "Polynomial":
        """Coefficients of p'; leading coefficient ``degree * leading``."""
        if self.degree < 1:
            raise ValidationError("constant polynomial", "coeffs")
        return Polynomial(npoly.polyder(self.coeffs), monic=False)

    def evaluate(self, z: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
        """Horner evaluation at ``z`` (scalar or array)."""
        value = npoly.polyval(z, self.coeffs)
        if np.ndim(value) == 0:
            return complex(value)
        return value

    def normalized(self) -> "Polynomial":
        """Divide by the leading coefficient."""
        coeffs = np.array(self.coeffs) / self.coeffs[-1]
        coeffs[-1] = 1.0
        return Polynomial(coeffs)

    def scaled(self, factor: complex) -> "Polynomial":
        return Polynomial(np.array(self.coeffs) * factor, monic=False)

    def relative_difference(self, other: "Polynomial") -> float:
        """Norm-wise relative coefficient difference against ``other``.

        max_k |a_k - b_k| / max_k |b_k|, zero-padding the shorter vector.
        """
        size = max(self.coeffs.size, other.coeffs.size)
        a = np.zeros(size, dtype=complex)
        b = np.zeros(size, dtype=complex)
        a[:self.coeffs.size] = self.coeffs
        b[:other.coeffs.size] = other.coeffs
        reference = float(np.max(np.abs(b)))
        return float(np.max(np.abs(a - b))) / (reference if reference > 0 else 1.0)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the ``{"coeffs": [[re, im], ...]}`` JSON form."""
        return {"coeffs": [complex_to_pair(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], monic: bool = True) -> "Polynomial":
        """Create a polynomial from its JSON form."""
        if "coeffs" not in data:
            raise ValidationError("polynomial JSON needs a 'coeffs' key", "coeffs")
        return cls([pair_to_complex(v) for v in data["coeffs"]], monic=monic)


@dataclass(frozen=True)
class MultisetMatching(ValueObject):
    """Bijection between two multisets and its largest pair distance."""

    pairs: Tuple[Tuple[int, int], ...]
    max_distance: float


def _greedy_matching(distances: np.ndarray) -> List[Tuple[int, int]]:
    n = distances.shape[0]
    used_a = np.zeros(n, dtype=bool)
    used_b = np.zeros(n, dtype=bool)
    pairs: List[Tuple[int, int]] = []
    for flat in np.argsort(distances, axis=None, kind="stable"):
        i, j = divmod(int(flat), n)
        if used_a[i] or used_b[j]:
            continue
        used_a[i] = used_b[j] = True
        pairs.append((i, j))
        if len(pairs) == n:
            break
    return sorted(pairs)


def _bottleneck_matching(distances: np.ndarray, upper: float) -> List[Tuple[int, int]]:
    """Matching minimizing the largest distance, by bisection over thresholds."""
    thresholds = np.unique(distances[distances <= upper])
    best = None
    lo, hi = 0, thresholds.size - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        blocked = (distances > thresholds[mid]).astype(float)
        rows, cols = linear_sum_assignment(blocked)
        if blocked[rows, cols].sum() == 0:
            best = list(zip(rows.tolist(), cols.tolist()))
            hi = mid - 1
        else:
            lo = mid + 1
    return sorted(best) if best is not None else []


def match_multisets(
    a: Iterable[complex], b: Iterable[complex], refine: bool = False
) -> MultisetMatching:
    """Pair up two equally sized multisets of complex numbers.

    Greedy nearest pairs first; with ``refine`` the bottleneck-optimal
    assignment replaces it, which never increases the max distance.

    Raises:
        ValidationError: If the sizes differ
    """
    left = np.asarray(a.roots if isinstance(a, RootSet) else list(a), dtype=complex)
    right = np.asarray(b.roots if isinstance(b, RootSet) else list(b), dtype=complex)
    validate_same_length(left, right, "multisets")
    if left.size == 0:
        return MultisetMatching(pairs=(), max_distance=0.0)

    distances = np.abs(left[:, None] - right[None, :])
    pairs = _greedy_matching(distances)
    if refine:
        greedy_max = max(distances[i, j] for i, j in pairs)
        optimal = _bottleneck_matching(distances, greedy_max)
        if optimal:
            pairs = optimal
    max_distance = float(max(distances[i, j] for i, j in pairs))
    return MultisetMatching(pairs=tuple(pairs), max_distance=max_distance)
