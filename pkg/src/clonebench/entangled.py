"""Economical covariant cloning of two-qubit maximally entangled states.

The N-fold tensor power splits into total-spin blocks (j, d_j, m_j) with
normalized weights c_j = d_j m_j / 2^N.  Overlaps of block-diagonal states
with the group orbit are class functions, i.e. finite combinations of SU(2)
characters, so every Haar integral appearing in the measure-and-prepare
fidelity reduces to counting overlaps of Clebsch-Gordan series.  Nothing
here materializes a 2^N-dimensional operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .spin import (
    SpinIndex,
    SpinLike,
    _check_copies,
    central_binomial_weight,
    log_irrep_weight,
    sqrt_irrep_weights,
    total_spin_twice,
)
from .equatorial import _check_amplification, ansatz_cutoff

_NORM_TOL = 1e-12


@dataclass
class PreparedStateEnt:
    """Re-prepared M-copy state given by block weights p_j over the j-lattice."""

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
            raise DomainError("support is off the parity j-lattice of M copies")
        if np.any(twice < 0) or np.any(twice > self.M):
            raise DomainError("support must satisfy j_min <= j <= M/2")
        if np.any(p < 0):
            raise DomainError("block weights must be nonnegative")
        order = np.argsort(twice)
        twice, p = twice[order], p[order]
        if len(np.unique(twice)) != len(twice):
            raise DomainError("duplicate support points")
        total = float(np.sum(p))
        if abs(total - 1.0) > _NORM_TOL:
            raise DomainError(f"block weights sum to {total}, not 1")
        self.twice = twice
        self.p = p

    def __getitem__(self, j: SpinLike) -> float:
        t = SpinIndex.of(j).twice
        hits = np.nonzero(self.twice == t)[0]
        return float(self.p[hits[0]]) if len(hits) else 0.0

    def items(self):
        for t, w in zip(self.twice, self.p):
            yield SpinIndex(int(t)), float(w)


@dataclass
class CharPolynomial:
    """Class function sum_j alpha_j chi_j on SU(2), chi_j(phi) = sin(d_j phi)/sin(phi)."""

    twice: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        self.twice = np.asarray(self.twice, dtype=np.int64)
        self.alpha = np.asarray(self.alpha, dtype=float)
        if self.twice.shape != self.alpha.shape:
            raise DomainError("labels and coefficients must match")
        if len(self.twice) and np.any(self.twice % 2 != self.twice[0] % 2):
            raise DomainError("character labels must share one parity lattice")

    def evaluate(self, phi: np.ndarray) -> np.ndarray:
        """Values on class angles phi in (0, pi); the phi=0, pi poles are excluded."""
        phi = np.asarray(phi, dtype=float)
        dims = (self.twice + 1).astype(float)
        return (self.alpha[:, None] * np.sin(np.outer(dims, phi))).sum(axis=0) / np.sin(phi)


def seed_char_polynomial(n_copies: int) -> CharPolynomial:
    """Character expansion of the square-root-measurement seed overlap: sum_j sqrt(c_j) chi_j."""
    twice_j, sqrt_c = sqrt_irrep_weights(n_copies)
    return CharPolynomial(twice=twice_j, alpha=sqrt_c)


def prepared_char_polynomial(state: PreparedStateEnt) -> CharPolynomial:
    """Character expansion of the prepared-state overlap: sum_j sqrt(p_j c_j) chi_j / d_j."""
    sqrt_pc = np.sqrt(state.p) * np.exp(0.5 * log_irrep_weight(state.M, state.twice))
    return CharPolynomial(twice=state.twice, alpha=sqrt_pc / (state.twice + 1.0))


def eco_clone_fidelity_exact(n_copies: int, m_copies: int) -> float:
    """Global fidelity of the optimal economical covariant cloner (exact block sum)."""
    _check_amplification(n_copies, m_copies)
    twice_j = total_spin_twice(n_copies)
    root = np.exp(
        0.5 * (log_irrep_weight(n_copies, twice_j) + log_irrep_weight(m_copies, twice_j))
    )
    s = math.fsum(root)
    return s * s


def eco_clone_fidelity_large_m(n_copies: int, m_copies: int) -> float:
    """Large-M form (2 b_{M,0}/M) (sum_j sqrt(b_{N,j} (2j+1)^4 / (N/2+j+1)))^2.

    For odd M the central weight is taken at |m| = 1/2.
    """
    _check_amplification(n_copies, m_copies)
    return 2.0 * central_binomial_weight(m_copies) / m_copies * p_true_ent(n_copies)


def eco_clone_fidelity_large_n(n_copies: int, m_copies: int) -> float:
    """Gaussian-integral limit (4N/M)^(3/2), accurate for N >> 1."""
    _check_copies(n_copies)
    _check_copies(m_copies)
    return (4.0 * n_copies / m_copies) ** 1.5


def cg_overlap_count(j1: SpinLike, j2: SpinLike, j3: SpinLike, j4: SpinLike) -> int:
    """Number of common irreps in the Clebsch-Gordan series of j1 x j2 and j3 x j4.

    Equals the Haar integral of chi_{j1} chi_{j2} chi_{j3} chi_{j4}: each series
    runs from |j - j'| to j + j' in unit steps, so the integral counts the
    lattice overlap and vanishes when the two series live on different
    integer/half-integer lattices.
    """
    t1, t2, t3, t4 = (SpinIndex.of(j).twice for j in (j1, j2, j3, j4))
    if min(t1, t2, t3, t4) < 0:
        raise DomainError("total-spin labels must be nonnegative")
    if (t1 + t2) % 2 != (t3 + t4) % 2:
        return 0
    lo = max(abs(t1 - t2), abs(t3 - t4))
    hi = min(t1 + t2, t3 + t4)
    return max(0, (hi - lo) // 2 + 1)


def prepared_state_ansatz_ent(m_copies: int, lam: float) -> PreparedStateEnt:
    """Prepared state with block weights c_j^{(K)}, K = M/lambda rounded to the M-lattice."""
    k, _ = ansatz_cutoff(m_copies, lam)
    twice_j = total_spin_twice(k)
    p = np.exp(log_irrep_weight(k, twice_j))
    return PreparedStateEnt(M=m_copies, twice=twice_j, p=p / np.sum(p))


def mp_fidelity_exact_ent(n_copies: int, m_copies: int, state: PreparedStateEnt) -> float:
    """Exact measure-and-prepare fidelity with the square-root-measurement seed.

    Evaluates the Haar integral of the two density class functions as the
    quadruple sum over (j1, j2) from the seed side and (j3, j4) from the
    prepared side, weighted by cg_overlap_count.  The inner pair is
    vectorized; both pair sums have even doubled parity, so the lattice test
    inside the count is vacuous here.
    """
    _check_copies(n_copies)
    if state.M != m_copies:
        raise DomainError(f"prepared state is for M={state.M}, expected {m_copies}")
    t_n, w = sqrt_irrep_weights(n_copies)
    t_m = state.twice
    v = np.sqrt(state.p) * np.exp(0.5 * log_irrep_weight(m_copies, t_m))
    v = v / (t_m + 1.0)
    pair_v = np.outer(v, v)
    lo34 = np.abs(t_m[:, None] - t_m[None, :])
    hi34 = t_m[:, None] + t_m[None, :]
    total = 0.0
    for i1, t1 in enumerate(t_n):
        for i2, t2 in enumerate(t_n):
            lo = np.maximum(abs(int(t1) - int(t2)), lo34)
            hi = np.minimum(int(t1) + int(t2), hi34)
            counts = np.maximum(0, (hi - lo) // 2 + 1)
            total += w[i1] * w[i2] * float(np.sum(pair_v * counts))
    return total


def avg_state_expectation_ent(m_copies: int, state: PreparedStateEnt) -> float:
    """Overlap of the prepared state with the group-averaged M-copy state."""
    if state.M != m_copies:
        raise DomainError(f"prepared state is for M={state.M}, expected {m_copies}")
    c = np.exp(log_irrep_weight(m_copies, state.twice))
    d = state.twice + 1.0
    return float(np.dot(state.p, c / (d * d)))


def p_true_ent(n_copies: int) -> float:
    """Peak outcome density (sum_j sqrt(c_j) d_j)^2 of the square-root measurement."""
    twice_j, sqrt_c = sqrt_irrep_weights(n_copies)
    s = math.fsum(sqrt_c * (twice_j + 1.0))
    return s * s
