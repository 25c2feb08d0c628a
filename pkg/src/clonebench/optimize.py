"""Optimal re-prepared states and cloner/measure-and-prepare gap computation.

For the qubit family, the measure-and-prepare fidelity is the quadratic form
q^T A q in q_m = sqrt(p_m) with the banded nonnegative kernel
A_{mm'} = sqrt(b_{M,m} b_{M,m'}) a_{m'-m}, so the best prepared state within
the covariant-seed class is the Perron eigenvector of A.  The eigenvalue is a
lower bound on the optimal estimation fidelity, and it upper-bounds every
cutoff-ansatz value, giving the dominance chain
F_naive <= F_lambda <= lambda_max(A) <= F_clon.

The entangled family is handled by the cutoff-ansatz sweep only; wiring the
analogous character-integral kernel into the same eigenproblem is a
straightforward extension point but is deliberately not part of this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import entangled, equatorial
from .errors import ConvergenceError, DomainError
from .equatorial import PreparedStateQubit, outcome_density_fourier
from .spin import _check_copies, dicke_twice, log_binomial_weight

FAMILIES = ("qubit", "entangled")


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise DomainError(f"family must be one of {FAMILIES}, got {family!r}")


@dataclass
class QuadraticForm:
    """Banded symmetric PSD kernel of the qubit measure-and-prepare fidelity.

    Stored as the sqrt-binomial diagonal and the outcome-density coefficients;
    matvec cost is O(N M) instead of the O(M^2) dense product.
    """

    n_copies: int
    m_copies: int
    sqrt_b: np.ndarray
    fourier: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.sqrt_b)

    def matvec(self, q: np.ndarray) -> np.ndarray:
        u = self.sqrt_b * q
        out = self.fourier[0] * u.copy()
        for k in range(1, len(self.fourier)):
            if k >= len(u):
                break
            out[: len(u) - k] += self.fourier[k] * u[k:]
            out[k:] += self.fourier[k] * u[: len(u) - k]
        return self.sqrt_b * out

    def to_dense(self) -> np.ndarray:
        size = self.dimension
        a = np.zeros(size)
        a[: len(self.fourier)] = self.fourier
        lag = np.abs(np.arange(size)[:, None] - np.arange(size)[None, :])
        return np.outer(self.sqrt_b, self.sqrt_b) * a[lag]

    def trace(self) -> float:
        return float(self.fourier[0] * np.dot(self.sqrt_b, self.sqrt_b))


def build_quadratic_form(n_copies: int, m_copies: int) -> QuadraticForm:
    """Kernel A_{mm'} = sqrt(b_{M,m} b_{M,m'}) a_{m'-m} over the full M-lattice."""
    _check_copies(n_copies)
    _check_copies(m_copies)
    sqrt_b = np.exp(0.5 * log_binomial_weight(m_copies, dicke_twice(m_copies)))
    return QuadraticForm(
        n_copies=n_copies,
        m_copies=m_copies,
        sqrt_b=sqrt_b,
        fourier=outcome_density_fourier(n_copies).coeffs,
    )


def optimal_prepared_state(
    form: QuadraticForm, tol: float = 1e-13, max_iter: int = 50_000
) -> tuple[float, PreparedStateQubit]:
    """Dominant eigenpair of the fidelity kernel by deterministic power iteration.

    Starts from the uniform positive vector (the kernel is nonnegative, so the
    iterates stay nonnegative and converge to the Perron eigenvector) and
    stops when the Rayleigh quotient changes by at most `tol` per step.  The
    returned fidelity is the Rayleigh quotient of the returned state, so
    replaying the state through the exact evaluator reproduces it.
    """
    dim = form.dimension
    q = np.full(dim, 1.0 / math.sqrt(dim))
    rayleigh = float(q @ form.matvec(q))
    for iteration in range(1, max_iter + 1):
        y = form.matvec(q)
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            raise ConvergenceError("kernel annihilated the iterate", 0.0, iteration)
        q = y / norm
        new_rayleigh = float(q @ form.matvec(q))
        if abs(new_rayleigh - rayleigh) <= tol:
            rayleigh = new_rayleigh
            break
        rayleigh = new_rayleigh
    else:
        residual = float(np.linalg.norm(form.matvec(q) - rayleigh * q))
        raise ConvergenceError(
            f"power iteration did not converge within {max_iter} iterations "
            f"(residual {residual:.3e})",
            residual,
            max_iter,
        )
    state = PreparedStateQubit(
        M=form.m_copies, twice=dicke_twice(form.m_copies), p=q * q
    )
    return rayleigh, state


@dataclass(frozen=True)
class LambdaSweepResult:
    """Exact ansatz fidelities over a lambda grid, rows sorted by lambda."""

    rows: tuple[tuple[float, float], ...]
    best_lambda: float
    best_fidelity: float


def lambda_sweep(
    n_copies: int, m_copies: int, grid, family: str = "qubit"
) -> LambdaSweepResult:
    """Exact measure-and-prepare fidelity at each lambda; smallest lambda wins ties."""
    _check_family(family)
    lambdas = sorted({float(lam) for lam in grid})
    if not lambdas:
        raise DomainError("lambda grid must be non-empty")
    rows = []
    for lam in lambdas:
        if family == "qubit":
            state = equatorial.prepared_state_ansatz(m_copies, lam)
            fidelity = equatorial.mp_fidelity_exact(n_copies, m_copies, state)
        else:
            state_ent = entangled.prepared_state_ansatz_ent(m_copies, lam)
            fidelity = entangled.mp_fidelity_exact_ent(n_copies, m_copies, state_ent)
        rows.append((lam, fidelity))
    best_lambda, best_fidelity = rows[0]
    for lam, fidelity in rows[1:]:
        if fidelity > best_fidelity:
            best_lambda, best_fidelity = lam, fidelity
    return LambdaSweepResult(tuple(rows), best_lambda, best_fidelity)


@dataclass(frozen=True)
class GapRow:
    """Relative shortfall of measure-and-prepare versus the optimal cloner."""

    n_copies: int
    m_copies: int
    f_clon: float
    f_est_proxy: float
    delta: float


def default_lambda_grid(m_copies: int) -> tuple[float, ...]:
    """Powers of two 1, 2, 4, ..., up to M."""
    grid = []
    lam = 1
    while lam <= m_copies:
        grid.append(float(lam))
        lam *= 2
    return tuple(grid)


def relative_gap(
    n_copies: int,
    m_copies: int,
    family: str = "qubit",
    lambdas=None,
    tol: float = 1e-13,
) -> GapRow:
    """Relative gap (F_clon - F_est_proxy) / F_clon.

    F_est_proxy is the best swept ansatz fidelity, and for the qubit family
    also the kernel eigenvalue; both are achievable measure-and-prepare
    fidelities, so the proxy is a lower bound on the true optimum.
    """
    _check_family(family)
    if lambdas is None:
        lambdas = default_lambda_grid(m_copies)
    sweep = lambda_sweep(n_copies, m_copies, lambdas, family=family)
    f_est = sweep.best_fidelity
    if family == "qubit":
        f_clon = equatorial.clone_fidelity_exact(n_copies, m_copies)
        eigenvalue, _ = optimal_prepared_state(
            build_quadratic_form(n_copies, m_copies), tol=tol
        )
        f_est = max(f_est, eigenvalue)
    else:
        f_clon = entangled.eco_clone_fidelity_exact(n_copies, m_copies)
    return GapRow(
        n_copies=n_copies,
        m_copies=m_copies,
        f_clon=f_clon,
        f_est_proxy=f_est,
        delta=(f_clon - f_est) / f_clon,
    )
