"""Half-integer spin indices, binomial weights, and SU(2) irrep spectra.

Spin projections n and total-spin labels j are stored as doubled integers
(2n, 2j), so both the even and odd copy-number lattices are exact and parity
checks reduce to integer arithmetic.  All probability weights are computed in
the log domain and exponentiated, which stays finite for copy numbers up to
~10^5 where direct binomials overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np
from scipy.special import gammaln

from .errors import DomainError

_LOG2 = math.log(2.0)

SpinLike = Union["SpinIndex", int, float]


@dataclass(frozen=True, order=True)
class SpinIndex:
    """A spin quantum number stored as its doubled value (2n or 2j)."""

    twice: int

    @classmethod
    def of(cls, value: SpinLike) -> "SpinIndex":
        """Coerce a half-integer (or SpinIndex) into a SpinIndex."""
        if isinstance(value, SpinIndex):
            return value
        doubled = 2 * value
        rounded = round(doubled)
        if abs(doubled - rounded) > 1e-9:
            raise DomainError(f"{value!r} is not a half-integer spin label")
        return cls(int(rounded))

    @property
    def value(self) -> float:
        return self.twice / 2

    def __add__(self, other: "SpinIndex") -> "SpinIndex":
        return SpinIndex(self.twice + other.twice)

    def __sub__(self, other: "SpinIndex") -> "SpinIndex":
        return SpinIndex(self.twice - other.twice)

    def __neg__(self) -> "SpinIndex":
        return SpinIndex(-self.twice)

    def __repr__(self) -> str:
        if self.twice % 2 == 0:
            return f"SpinIndex({self.twice // 2})"
        return f"SpinIndex({self.twice}/2)"


def _check_copies(n_copies: int) -> None:
    if not isinstance(n_copies, (int, np.integer)) or n_copies < 1:
        raise DomainError(f"copy number must be a positive integer, got {n_copies!r}")


def j_min_twice(n_copies: int) -> int:
    """Doubled value of the smallest total-spin label: j_min = 0 (even N) or 1/2 (odd N)."""
    _check_copies(n_copies)
    return n_copies % 2


def dicke_twice(n_copies: int) -> np.ndarray:
    """Doubled projection lattice -N, -N+2, ..., N for N copies."""
    _check_copies(n_copies)
    return np.arange(-n_copies, n_copies + 1, 2, dtype=np.int64)


def total_spin_twice(n_copies: int) -> np.ndarray:
    """Doubled total-spin lattice j_min, j_min+1, ..., N/2 for N copies."""
    return np.arange(j_min_twice(n_copies), n_copies + 1, 2, dtype=np.int64)


def dicke_lattice(n_copies: int) -> list[SpinIndex]:
    return [SpinIndex(int(t)) for t in dicke_twice(n_copies)]


def total_spin_lattice(n_copies: int) -> list[SpinIndex]:
    return [SpinIndex(int(t)) for t in total_spin_twice(n_copies)]


def log_binomial_weight(n_copies: int, twice: np.ndarray | int) -> np.ndarray:
    """log of C(N, N/2+n) / 2^N on the doubled lattice (no domain checks)."""
    twice = np.asarray(twice, dtype=np.int64)
    k = (n_copies + twice) // 2
    return (
        gammaln(n_copies + 1.0)
        - gammaln(k + 1.0)
        - gammaln(n_copies - k + 1.0)
        - n_copies * _LOG2
    )


# Below this size the scalar path takes logs of exact integer binomials, which
# keeps individual weights within a few ulp; above it big-int binomials get
# slow and the gammaln form is accurate enough.
_EXACT_COMB_MAX = 8192


def binomial_weight(n_copies: int, n: SpinLike) -> float:
    """Symmetric binomial weight of the projection n among N copies."""
    _check_copies(n_copies)
    t = SpinIndex.of(n).twice
    if (t - n_copies) % 2 != 0:
        raise DomainError(
            f"projection {t}/2 is off the lattice of {n_copies} copies (parity mismatch)"
        )
    if abs(t) > n_copies:
        raise DomainError(f"projection {t}/2 out of range for {n_copies} copies")
    if n_copies <= _EXACT_COMB_MAX:
        k = (n_copies + t) // 2
        return math.exp(math.log(math.comb(n_copies, k)) - n_copies * _LOG2)
    return float(np.exp(log_binomial_weight(n_copies, t)))


def sqrt_binomial_weights(n_copies: int) -> np.ndarray:
    """Square roots of all binomial weights, ordered along dicke_twice(N)."""
    return np.exp(0.5 * log_binomial_weight(n_copies, dicke_twice(n_copies)))


def central_binomial_weight(n_copies: int) -> float:
    """Weight of the central lattice point: n=0 for even N, |n|=1/2 for odd N."""
    _check_copies(n_copies)
    return binomial_weight(n_copies, SpinIndex(n_copies % 2))


def gaussian_weight(n_copies: int, x: float) -> float:
    """Gaussian surrogate sqrt(2/(pi N)) exp(-2 x^2 / N) of the binomial weights."""
    _check_copies(n_copies)
    return math.sqrt(2.0 / (math.pi * n_copies)) * math.exp(-2.0 * x * x / n_copies)


def multiplicity(n_copies: int, j: SpinLike) -> int:
    """Multiplicity of the spin-j irrep in the N-fold tensor power (exact integer)."""
    _check_copies(n_copies)
    tj = SpinIndex.of(j).twice
    if tj < 0 or tj > n_copies or (tj - n_copies) % 2 != 0:
        raise DomainError(f"total spin {tj}/2 invalid for {n_copies} copies")
    k = (n_copies + tj) // 2
    # Ballot-problem form of (2j+1)/(N/2+j+1) * C(N, N/2+j); exactly integer.
    return math.comb(n_copies, k) - math.comb(n_copies, k + 1)


@dataclass(frozen=True)
class IrrepBlock:
    """One total-spin sector of the N-fold tensor power."""

    j: SpinIndex
    dim_rep: int
    multiplicity: int
    weight: float

    def __post_init__(self):
        if self.dim_rep != self.j.twice + 1:
            raise DomainError("dim_rep must equal 2j+1")
        if self.multiplicity < 1:
            raise DomainError("multiplicity must be positive")


def irrep_spectrum(n_copies: int) -> list[IrrepBlock]:
    """All irrep blocks (j, 2j+1, m_j, c_j) for N copies, j ascending."""
    blocks = []
    for t in total_spin_twice(n_copies):
        t = int(t)
        d = t + 1
        m = multiplicity(n_copies, SpinIndex(t))
        blocks.append(
            IrrepBlock(
                j=SpinIndex(t),
                dim_rep=d,
                multiplicity=m,
                weight=d * m / 2**n_copies,
            )
        )
    return blocks


def log_irrep_weight(n_copies: int, twice_j: np.ndarray | int) -> np.ndarray:
    """log of c_j = (2j+1)^2 b_{N,j} / (N/2+j+1) on the doubled j-lattice."""
    twice_j = np.asarray(twice_j, dtype=np.int64)
    return (
        2.0 * np.log(twice_j + 1.0)
        - np.log((n_copies + twice_j) / 2.0 + 1.0)
        + log_binomial_weight(n_copies, twice_j)
    )


def sqrt_irrep_weights(n_copies: int) -> tuple[np.ndarray, np.ndarray]:
    """(doubled j-lattice, sqrt(c_j)) for N copies."""
    twice_j = total_spin_twice(n_copies)
    return twice_j, np.exp(0.5 * log_irrep_weight(n_copies, twice_j))


_NORM_TOL = 1e-12


@dataclass
class WeightVector:
    """Normalized nonnegative weights over a spin lattice.

    `twice` is the doubled lattice (ascending, step 2) and `log_sqrt` holds
    log of the square roots, kept so downstream products of square-root
    weights never pass through an underflowed probability.
    """

    n_copies: int
    twice: np.ndarray
    weights: np.ndarray
    log_sqrt: np.ndarray

    def __post_init__(self):
        _check_copies(self.n_copies)
        self.twice = np.asarray(self.twice, dtype=np.int64)
        self.weights = np.asarray(self.weights, dtype=float)
        self.log_sqrt = np.asarray(self.log_sqrt, dtype=float)
        if np.any((self.twice - self.n_copies) % 2 != 0):
            raise DomainError("support is off the parity lattice of n_copies")
        if np.any(np.diff(self.twice) != 2):
            raise DomainError("support must be an ascending step-2 doubled lattice")
        if np.any(self.weights < 0):
            raise DomainError("weights must be nonnegative")
        total = float(np.sum(self.weights))
        if abs(total - 1.0) > _NORM_TOL:
            raise DomainError(f"weights sum to {total}, not 1 within {_NORM_TOL}")

    @classmethod
    def binomial(cls, n_copies: int) -> "WeightVector":
        return cls._from_log(n_copies, dicke_twice(n_copies),
                             log_binomial_weight(n_copies, dicke_twice(n_copies)))

    @classmethod
    def irrep(cls, n_copies: int) -> "WeightVector":
        return cls._from_log(n_copies, total_spin_twice(n_copies),
                             log_irrep_weight(n_copies, total_spin_twice(n_copies)))

    @classmethod
    def _from_log(cls, n_copies, twice, log_w):
        weights = np.exp(log_w)
        total = np.sum(weights)
        # gammaln sums drift by ~N*eps in the log; rescale so the sum is 1.
        return cls(n_copies, twice, weights / total, 0.5 * (log_w - math.log(total)))

    def __getitem__(self, n: SpinLike) -> float:
        t = SpinIndex.of(n).twice
        pos = (t - int(self.twice[0])) // 2
        if (t - int(self.twice[0])) % 2 != 0 or pos < 0 or pos >= len(self.twice):
            raise KeyError(f"spin label {t}/2 not on the support lattice")
        return float(self.weights[pos])

    def items(self) -> Iterator[tuple[SpinIndex, float]]:
        for t, w in zip(self.twice, self.weights):
            yield SpinIndex(int(t)), float(w)

    def __len__(self) -> int:
        return len(self.twice)
