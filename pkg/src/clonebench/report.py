"""Sweep orchestration and CSV/JSON report emission.

Rows are computed by a parallel map (worker count from the CLONEBENCH_WORKERS
environment variable, serial by default) and sorted before emission, so the
report content never depends on scheduling.  All numeric columns are
deterministic across runs; wall_time_ms is measured and therefore is the one
column exempt from bit-identical reproducibility.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__ as _version
from . import entangled, equatorial, optimize
from .errors import DomainError
from .equatorial import ansatz_cutoff

logger = logging.getLogger(__name__)

WORKERS_ENV = "CLONEBENCH_WORKERS"

CSV_COLUMNS = (
    "family,N,M,lambda,f_clon,f_mp,f_naive,f_eig,ratio_naive,delta,wall_time_ms"
)


@dataclass(frozen=True)
class SweepConfig:
    """One sweep request: which family, which (N, M) pairs, which lambdas.

    Exactly one of `lambda_grid` (explicit values) and `lambda_exponent`
    (power rule lambda = M^alpha, alpha in (0,1)) must be given.
    """

    family: str
    n_values: tuple[int, ...]
    m_values: tuple[int, ...]
    lambda_grid: tuple[float, ...] | None = None
    lambda_exponent: float | None = None
    output_format: str = "csv"
    output_path: str | None = None

    def __post_init__(self):
        optimize._check_family(self.family)
        if (self.lambda_grid is None) == (self.lambda_exponent is None):
            raise DomainError("give exactly one of lambda_grid / lambda_exponent")
        if self.lambda_grid is not None:
            if not self.lambda_grid:
                raise DomainError("lambda grid must be non-empty")
            if any(lam < 1 for lam in self.lambda_grid):
                raise DomainError("every lambda must be >= 1")
        if self.lambda_exponent is not None and not 0 < self.lambda_exponent < 1:
            raise DomainError("lambda exponent must lie in (0, 1)")
        if self.output_format not in ("csv", "json"):
            raise DomainError(f"unknown output format {self.output_format!r}")

    def lambdas_for(self, m_copies: int) -> tuple[float, ...]:
        if self.lambda_grid is not None:
            return self.lambda_grid
        return (float(m_copies) ** self.lambda_exponent,)

    def digest(self) -> str:
        payload = json.dumps(asdict(self), sort_keys=True, default=str)
        return hashlib.sha256(payload.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class SweepRow:
    family: str
    n_copies: int
    m_copies: int
    lam: float
    f_clon: float
    f_mp: float
    f_naive: float
    f_eig: float | None
    ratio_naive: float
    delta: float
    wall_time_ms: float


@dataclass
class SweepReport:
    rows: list[SweepRow] = field(default_factory=list)
    version: str = _version
    config_hash: str = ""


def _compute_row(task) -> SweepRow:
    family, n_copies, m_copies, lambdas = task
    start = time.perf_counter()
    sweep = optimize.lambda_sweep(n_copies, m_copies, lambdas, family=family)
    if family == "qubit":
        f_clon = equatorial.clone_fidelity_exact(n_copies, m_copies)
        naive = equatorial.mp_fidelity_exact(
            n_copies, m_copies, equatorial.prepared_state_ansatz(m_copies, 1.0)
        )
        f_eig, _ = optimize.optimal_prepared_state(
            optimize.build_quadratic_form(n_copies, m_copies)
        )
    else:
        f_clon = entangled.eco_clone_fidelity_exact(n_copies, m_copies)
        naive = entangled.mp_fidelity_exact_ent(
            n_copies, m_copies, entangled.prepared_state_ansatz_ent(m_copies, 1.0)
        )
        f_eig = None
    f_est = sweep.best_fidelity if f_eig is None else max(sweep.best_fidelity, f_eig)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return SweepRow(
        family=family,
        n_copies=n_copies,
        m_copies=m_copies,
        lam=sweep.best_lambda,
        f_clon=f_clon,
        f_mp=sweep.best_fidelity,
        f_naive=naive,
        f_eig=f_eig,
        ratio_naive=naive / f_clon,
        delta=(f_clon - f_est) / f_clon,
        wall_time_ms=elapsed_ms,
    )


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        count = int(raw)
    except ValueError:
        logger.warning("ignoring non-integer %s=%r", WORKERS_ENV, raw)
        return 1
    return max(1, count)


def run_sweep(config: SweepConfig) -> SweepReport:
    """Evaluate every admissible (N, M) pair; inadmissible pairs are logged and skipped."""
    tasks = []
    for n_copies in sorted(set(config.n_values)):
        for m_copies in sorted(set(config.m_values)):
            if m_copies < n_copies or (m_copies - n_copies) % 2 != 0:
                logger.info(
                    "skipping N=%d M=%d: needs M >= N with matching parity",
                    n_copies,
                    m_copies,
                )
                continue
            for lam in config.lambdas_for(m_copies):
                _, clamped = ansatz_cutoff(m_copies, lam)
                if clamped:
                    logger.warning(
                        "N=%d M=%d lambda=%g: cutoff clamped to the parity minimum",
                        n_copies,
                        m_copies,
                        lam,
                    )
            tasks.append((config.family, n_copies, m_copies, config.lambdas_for(m_copies)))
    workers = _worker_count()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_compute_row, tasks))
    else:
        rows = [_compute_row(task) for task in tasks]
    rows.sort(key=lambda row: (row.family, row.n_copies, row.m_copies))
    return SweepReport(rows=rows, config_hash=config.digest())


@dataclass(frozen=True)
class AppendixRow:
    m_copies: int
    f_exact: float
    f_zeroth: float
    f_second: float
    gap_ratio: float


def appendix_check(n_copies: int, lam: float, m_values) -> list[AppendixRow]:
    """Exact ansatz fidelity against its zeroth- and second-order expansions.

    The expansions are assembled from the moments S1 = sum sqrt(b_{N,n}) and
    S2 = sum n^2 sqrt(b_{N,n}); the relative gap to the zeroth order scales
    like N(1+lambda)/M, so it should roughly halve when M doubles.
    """
    s1 = equatorial.sqrt_binomial_sum(n_copies)
    s2 = equatorial.sqrt_binomial_second_moment(n_copies)
    rows = []
    for m_copies in sorted(set(m_values)):
        state = equatorial.prepared_state_ansatz(m_copies, lam)
        f_exact = equatorial.mp_fidelity_exact(n_copies, m_copies, state)
        prefactor = math.sqrt(2.0 * lam / (math.pi * m_copies * (1.0 + lam)))
        f_zeroth = prefactor * s1 * s1
        f_second = prefactor * s1 * (s1 - (1.0 + lam) / (2.0 * math.pi * m_copies) * s2)
        rows.append(
            AppendixRow(
                m_copies=m_copies,
                f_exact=f_exact,
                f_zeroth=f_zeroth,
                f_second=f_second,
                gap_ratio=abs(f_exact - f_zeroth) / f_exact,
            )
        )
    return rows


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.12g}"


def serialize_report(report: SweepReport, output_format: str) -> str:
    """CSV (fixed 11-column header) or JSON (with version/config metadata)."""
    if output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS.split(","))
        for row in report.rows:
            writer.writerow(
                [
                    row.family,
                    row.n_copies,
                    row.m_copies,
                    _fmt(row.lam),
                    _fmt(row.f_clon),
                    _fmt(row.f_mp),
                    _fmt(row.f_naive),
                    _fmt(row.f_eig),
                    _fmt(row.ratio_naive),
                    _fmt(row.delta),
                    _fmt(row.wall_time_ms),
                ]
            )
        return buffer.getvalue()
    if output_format == "json":
        payload = {
            "version": report.version,
            "config_hash": report.config_hash,
            "rows": [
                {
                    "family": row.family,
                    "N": row.n_copies,
                    "M": row.m_copies,
                    "lambda": _round12(row.lam),
                    "f_clon": _round12(row.f_clon),
                    "f_mp": _round12(row.f_mp),
                    "f_naive": _round12(row.f_naive),
                    "f_eig": _round12(row.f_eig),
                    "ratio_naive": _round12(row.ratio_naive),
                    "delta": _round12(row.delta),
                    "wall_time_ms": _round12(row.wall_time_ms),
                }
                for row in report.rows
            ],
        }
        return json.dumps(payload, indent=2) + "\n"
    raise DomainError(f"unknown output format {output_format!r}")


def _round12(value: float | None) -> float | None:
    return None if value is None else float(f"{value:.12g}")


def parse_report(text: str, output_format: str) -> SweepReport:
    """Inverse of serialize_report; CSV carries no metadata by design."""
    if output_format == "csv":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if header != CSV_COLUMNS.split(","):
            raise DomainError("unexpected CSV header")
        rows = []
        for record in reader:
            if not record:
                continue
            rows.append(
                SweepRow(
                    family=record[0],
                    n_copies=int(record[1]),
                    m_copies=int(record[2]),
                    lam=float(record[3]),
                    f_clon=float(record[4]),
                    f_mp=float(record[5]),
                    f_naive=float(record[6]),
                    f_eig=float(record[7]) if record[7] else None,
                    ratio_naive=float(record[8]),
                    delta=float(record[9]),
                    wall_time_ms=float(record[10]),
                )
            )
        return SweepReport(rows=rows)
    if output_format == "json":
        payload = json.loads(text)
        rows = [
            SweepRow(
                family=item["family"],
                n_copies=item["N"],
                m_copies=item["M"],
                lam=item["lambda"],
                f_clon=item["f_clon"],
                f_mp=item["f_mp"],
                f_naive=item["f_naive"],
                f_eig=item["f_eig"],
                ratio_naive=item["ratio_naive"],
                delta=item["delta"],
                wall_time_ms=item["wall_time_ms"],
            )
            for item in payload["rows"]
        ]
        return SweepReport(
            rows=rows,
            version=payload.get("version", _version),
            config_hash=payload.get("config_hash", ""),
        )
    raise DomainError(f"unknown output format {output_format!r}")


def serialize_appendix(rows: list[AppendixRow], output_format: str) -> str:
    if output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["M", "f_exact", "f_zeroth", "f_second", "gap_ratio"])
        for row in rows:
            writer.writerow(
                [
                    row.m_copies,
                    _fmt(row.f_exact),
                    _fmt(row.f_zeroth),
                    _fmt(row.f_second),
                    _fmt(row.gap_ratio),
                ]
            )
        return buffer.getvalue()
    if output_format == "json":
        payload = [
            {
                "M": row.m_copies,
                "f_exact": _round12(row.f_exact),
                "f_zeroth": _round12(row.f_zeroth),
                "f_second": _round12(row.f_second),
                "gap_ratio": _round12(row.gap_ratio),
            }
            for row in rows
        ]
        return json.dumps(payload, indent=2) + "\n"
    raise DomainError(f"unknown output format {output_format!r}")
