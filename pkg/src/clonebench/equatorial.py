"""Cloning and measure-and-prepare fidelities for equatorial qubit states.

The N input copies live in the symmetric subspace, so every quantity reduces
to sums over the projection lattice weighted by binomial coefficients.  The
covariant measurement outcome density and the prepared-state overlap are both
band-limited trigonometric polynomials in the phase, which makes the
measure-and-prepare fidelity an exact finite convolution of Fourier
coefficients: no quadrature or Gaussian approximation enters the computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .spin import (
    SpinIndex,
    SpinLike,
    _check_copies,
    dicke_twice,
    log_binomial_weight,
    central_binomial_weight,
    sqrt_binomial_weights,
)

_NORM_TOL = 1e-12


@dataclass
class PreparedStateQubit:
    """Re-prepared M-copy state given by Dicke-basis weights p_{M,m}.

    The support is stored densely on a contiguous stretch of the doubled
    projection lattice (zeros fill any gaps), so autocorrelations reduce to
    shifted dot products.
    """

    M: int
    twice: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        _check_copies(self.M)
        twice = np.asarray(self.twice, dtype=np.int64)
        p = np.asarray(self.p, dtype=float)
        if twice.shape != p.shape or twice.ndim != 1 or len(twice) == 0:
            raise DomainError("support and weights must be matching 1-d arrays")
        if np.any((twice - self.M) % 2 != 0):
            raise DomainError("support is off the parity lattice of M copies")
        if np.any(np.abs(twice) > self.M):
            raise DomainError("support exceeds |m| <= M/2")
        if np.any(p < 0):
            raise DomainError("prepared-state weights must be nonnegative")
        order = np.argsort(twice)
        twice, p = twice[order], p[order]
        if len(np.unique(twice)) != len(twice):
            raise DomainError("duplicate support points")
        full = np.arange(twice[0], twice[-1] + 1, 2, dtype=np.int64)
        dense = np.zeros(len(full))
        dense[(twice - twice[0]) // 2] = p
        total = float(np.sum(dense))
        if abs(total - 1.0) > _NORM_TOL:
            raise DomainError(f"prepared-state weights sum to {total}, not 1")
        self.twice = full
        self.p = dense

    def __getitem__(self, n: SpinLike) -> float:
        t = SpinIndex.of(n).twice
        off = t - int(self.twice[0])
        if off % 2 != 0 or off < 0 or off // 2 >= len(self.twice):
            return 0.0
        return float(self.p[off // 2])

    def items(self):
        for t, w in zip(self.twice, self.p):
            yield SpinIndex(int(t)), float(w)


@dataclass
class FourierDensity:
    """Even real trigonometric polynomial sum_k a_k e^{ik theta}, a_k = a_{-k}.

    Only the k >= 0 half is stored.  Construction verifies nonnegativity of
    the represented density on a 4B+1 point grid.
    """

    bandwidth: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.bandwidth < 0 or len(self.coeffs) != self.bandwidth + 1:
            raise DomainError("coeffs must hold a_0 .. a_B")
        grid = np.linspace(-math.pi, math.pi, 4 * self.bandwidth + 1, endpoint=False)
        values = self.evaluate(grid)
        if np.min(values) < -1e-12 * max(1.0, self.coeffs[0]):
            raise DomainError("density is negative on the check grid")

    def __getitem__(self, k: int) -> float:
        k = abs(int(k))
        return float(self.coeffs[k]) if k <= self.bandwidth else 0.0

    def evaluate(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        out = np.full(theta.shape, self.coeffs[0])
        for k in range(1, self.bandwidth + 1):
            out += 2.0 * self.coeffs[k] * np.cos(k * theta)
        return out


def _check_amplification(n_copies: int, m_copies: int) -> None:
    _check_copies(n_copies)
    _check_copies(m_copies)
    if m_copies < n_copies:
        raise DomainError(f"need M >= N, got N={n_copies}, M={m_copies}")
    if (m_copies - n_copies) % 2 != 0:
        raise DomainError(
            f"N={n_copies} and M={m_copies} have mismatched parity (M-N must be even)"
        )


def clone_fidelity_exact(n_copies: int, m_copies: int) -> float:
    """Global fidelity of the optimal N-to-M equatorial cloner (exact sum)."""
    _check_amplification(n_copies, m_copies)
    twice = dicke_twice(n_copies)
    root = np.exp(
        0.5 * (log_binomial_weight(n_copies, twice) + log_binomial_weight(m_copies, twice))
    )
    s = math.fsum(root)
    return s * s


def clone_fidelity_large_m(n_copies: int, m_copies: int) -> float:
    """Large-M form: central M-copy weight times (sum_n sqrt(b_{N,n}))^2."""
    _check_amplification(n_copies, m_copies)
    return central_binomial_weight(m_copies) * p_true(n_copies)


def clone_fidelity_large_n(n_copies: int, m_copies: int) -> float:
    """Gaussian-integral limit sqrt(4MN)/(M+N), accurate for N >> 1."""
    _check_copies(n_copies)
    _check_copies(m_copies)
    return math.sqrt(4.0 * m_copies * n_copies) / (m_copies + n_copies)


def outcome_density_fourier(n_copies: int) -> FourierDensity:
    """Fourier coefficients of the covariant-measurement outcome density.

    a_k is the lag-k autocorrelation of the sqrt-binomial vector, so a_0 = 1
    and the bandwidth is N.
    """
    sb = sqrt_binomial_weights(n_copies)
    coeffs = np.array([np.dot(sb[: len(sb) - k], sb[k:]) for k in range(len(sb))])
    return FourierDensity(bandwidth=n_copies, coeffs=coeffs)


def ansatz_cutoff(m_copies: int, lam: float) -> tuple[int, bool]:
    """Effective copy number K for the ansatz: M/lambda rounded onto the M-parity
    lattice, clamped at the parity minimum (2 for even M, 1 for odd M).

    Returns (K, clamped).
    """
    _check_copies(m_copies)
    if lam < 1:
        raise DomainError(f"lambda must be >= 1, got {lam}")
    ratio = m_copies / lam
    parity = m_copies % 2
    k = 2 * int(round((ratio - parity) / 2.0)) + parity
    floor = 2 if parity == 0 else 1
    if k < floor:
        return floor, True
    return min(k, m_copies), False


def prepared_state_ansatz(m_copies: int, lam: float) -> PreparedStateQubit:
    """Prepared state with weights b_{K,m}, K = M/lambda rounded to the M-lattice.

    lambda = 1 reproduces M identical copies of the estimated state; larger
    lambda narrows the support toward the central projection.
    """
    k, _ = ansatz_cutoff(m_copies, lam)
    twice = dicke_twice(k)
    p = np.exp(log_binomial_weight(k, twice))
    # gammaln sums drift by ~K*eps in the log; rescale so the weights sum to 1.
    return PreparedStateQubit(M=m_copies, twice=twice, p=p / np.sum(p))


def mp_fidelity_exact(n_copies: int, m_copies: int, state: PreparedStateQubit) -> float:
    """Exact measure-and-prepare fidelity for the covariant phase measurement.

    Evaluates the phase integral as the finite convolution sum_k a_k c_{-k},
    where a is the outcome density spectrum and c is the autocorrelation of
    the sqrt(p_m b_{M,m}) vector.  Cost O(N M).
    """
    _check_copies(n_copies)
    if state.M != m_copies:
        raise DomainError(f"prepared state is for M={state.M}, expected {m_copies}")
    a = outcome_density_fourier(n_copies).coeffs
    v = np.sqrt(state.p) * np.exp(0.5 * log_binomial_weight(m_copies, state.twice))
    terms = [a[0] * float(np.dot(v, v))]
    for k in range(1, min(n_copies, len(v) - 1) + 1):
        terms.append(2.0 * a[k] * float(np.dot(v[: len(v) - k], v[k:])))
    return math.fsum(terms)


def avg_state_expectation(m_copies: int, state: PreparedStateQubit) -> float:
    """Overlap of the prepared state with the phase-averaged M-copy state."""
    if state.M != m_copies:
        raise DomainError(f"prepared state is for M={state.M}, expected {m_copies}")
    return float(np.dot(state.p, np.exp(log_binomial_weight(m_copies, state.twice))))


def sqrt_binomial_sum(n_copies: int) -> float:
    """sum_n sqrt(b_{N,n}); approaches (2 pi N)^(1/4) for large N."""
    return math.fsum(sqrt_binomial_weights(n_copies))


def sqrt_binomial_second_moment(n_copies: int) -> float:
    """sum_n n^2 sqrt(b_{N,n}); approaches (2 pi N)^(1/4) N/2 for large N."""
    half = dicke_twice(n_copies) / 2.0
    return math.fsum(half * half * sqrt_binomial_weights(n_copies))


def p_true(n_copies: int) -> float:
    """Peak outcome density (sum_n sqrt(b_{N,n}))^2; a density, may exceed 1."""
    s = sqrt_binomial_sum(n_copies)
    return s * s
