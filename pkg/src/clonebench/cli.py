"""Command-line interface.

Exit statuses: 0 success (including empty sweeps), 1 configuration error,
2 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys

from . import entangled, equatorial, optimize, quadrature, report
from .errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; remap to the config-error status.
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _emit_scalar(args, payload: dict) -> None:
    if args.output_format == "json":
        _write_output(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        keys = ", ".join(f"{key}={value:.12g}" if isinstance(value, float) else f"{key}={value}"
                         for key, value in payload.items())
        _write_output(keys + "\n", args.out)


def _cmd_clone_fidelity(args) -> int:
    if args.family == "qubit":
        fidelity = equatorial.clone_fidelity_exact(args.n, args.m)
    else:
        fidelity = entangled.eco_clone_fidelity_exact(args.n, args.m)
    _emit_scalar(args, {"family": args.family, "N": args.n, "M": args.m, "f_clon": fidelity})
    return 0


def _cmd_mp_fidelity(args) -> int:
    if args.family == "qubit":
        state = equatorial.prepared_state_ansatz(args.m, args.lam)
        fidelity = equatorial.mp_fidelity_exact(args.n, args.m, state)
    else:
        state = entangled.prepared_state_ansatz_ent(args.m, args.lam)
        fidelity = entangled.mp_fidelity_exact_ent(args.n, args.m, state)
    _emit_scalar(
        args,
        {"family": args.family, "N": args.n, "M": args.m, "lambda": args.lam, "f_mp": fidelity},
    )
    return 0


def _cmd_sweep(args) -> int:
    config = report.SweepConfig(
        family=args.family,
        n_values=args.n,
        m_values=args.m,
        lambda_grid=args.grid,
        lambda_exponent=args.lambda_rule,
        output_format=args.output_format,
        output_path=args.out,
    )
    result = report.run_sweep(config)
    _write_output(report.serialize_report(result, config.output_format), config.output_path)
    return 0


def _cmd_optimize_prep(args) -> int:
    form = optimize.build_quadratic_form(args.n, args.m)
    fidelity, state = optimize.optimal_prepared_state(form, tol=args.tol)
    replay = equatorial.mp_fidelity_exact(args.n, args.m, state)
    _emit_scalar(
        args,
        {
            "N": args.n,
            "M": args.m,
            "f_eig": fidelity,
            "replayed_f_mp": replay,
            "support": len(state.twice),
        },
    )
    return 0


def _cmd_appendix_check(args) -> int:
    rows = report.appendix_check(args.n, args.lam, args.m)
    _write_output(report.serialize_appendix(rows, args.output_format), args.out)
    return 0


def _oracle_lines(nodes_override, tol_qubit, tol_ent):
    rng = random.Random(170)
    worst_qubit = 0.0
    for _ in range(50):
        n = rng.randint(1, 6)
        m = rng.randint(n, 256)
        lam = rng.choice([1.0, 2.0, 4.0, 8.0])
        state = equatorial.prepared_state_ansatz(m, lam)
        exact = equatorial.mp_fidelity_exact(n, m, state)
        nodes = nodes_override or quadrature.phase_nodes_required(n, m)
        approx = quadrature.phase_quadrature_fidelity(n, m, state, nodes)
        worst_qubit = max(worst_qubit, abs(exact - approx))
    yield "phase-circle", worst_qubit, tol_qubit

    worst_ent = 0.0
    for _ in range(50):
        n = rng.randint(1, 4)
        m = rng.randint(n, 24)
        lam = rng.choice([1.0, 2.0, 4.0])
        state = entangled.prepared_state_ansatz_ent(m, lam)
        exact = entangled.mp_fidelity_exact_ent(n, m, state)
        nodes = nodes_override or 2 * quadrature.su2_nodes_required(n, m)
        approx = quadrature.su2_quadrature_fidelity_ent(n, m, state, nodes)
        worst_ent = max(worst_ent, abs(exact - approx))
    yield "su2-class", worst_ent, tol_ent

    worst_cg = 0.0
    labels = range(0, 13)  # doubled j from 0 to 6
    for t1 in labels:
        for t2 in labels:
            for t3 in labels:
                for t4 in labels:
                    count = entangled.cg_overlap_count(t1 / 2, t2 / 2, t3 / 2, t4 / 2)
                    nodes = nodes_override or 2 * (t1 + t2 + t3 + t4) + 8
                    value = quadrature.weyl_quadrature_char4(
                        t1 / 2, t2 / 2, t3 / 2, t4 / 2, nodes
                    )
                    worst_cg = max(worst_cg, abs(value - count))
    yield "character-integral", worst_cg, tol_ent


def _cmd_oracle_check(args) -> int:
    if args.nodes is not None:
        quadrature.QuadratureSpec(nodes=args.nodes, family="phase-circle")
        quadrature.QuadratureSpec(nodes=args.nodes, family="su2-class")
    status = 0
    for name, worst, tol in _oracle_lines(args.nodes, args.tol or 1e-10, args.tol or 1e-9):
        ok = worst <= tol
        print(f"{name}: max |closed-form - quadrature| = {worst:.3e} "
              f"(tol {tol:.0e}) -> {'PASS' if ok else 'FAIL'}")
        if not ok:
            status = 2
    return status


def build_parser() -> _Parser:
    parser = _Parser(prog="clonebench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, family=True, fmt=True):
        if family:
            p.add_argument("--family", choices=optimize.FAMILIES, default="qubit")
        if fmt:
            p.add_argument("--format", dest="output_format", choices=["csv", "json", "plain"],
                           default="plain")
            p.add_argument("--out", default=None, help="output path, '-' for stdout")

    p = sub.add_parser("clone-fidelity", help="exact optimal-cloner fidelity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_clone_fidelity)

    p = sub.add_parser("mp-fidelity", help="exact measure-and-prepare fidelity at one lambda")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    add_common(p)
    p.set_defaults(func=_cmd_mp_fidelity)

    p = sub.add_parser("sweep", help="fidelity sweep over (N, M) with a lambda rule or grid")
    p.add_argument("--n", type=_int_list, required=True, help="comma-separated N values")
    p.add_argument("--m", type=_int_list, required=True, help="comma-separated M values")
    p.add_argument("--grid", type=_float_list, default=None, help="explicit lambda grid")
    p.add_argument("--lambda-rule", dest="lambda_rule", type=float, default=None,
                   help="power-rule exponent alpha: lambda = M^alpha")
    p.add_argument("--family", choices=optimize.FAMILIES, default="qubit")
    p.add_argument("--format", dest="output_format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("optimize-prep", help="best prepared state via the kernel eigenproblem")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-13)
    add_common(p, family=False)
    p.set_defaults(func=_cmd_optimize_prep)

    p = sub.add_parser("appendix-check", help="exact fidelity vs its moment expansions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--m", type=_int_list, required=True)
    p.add_argument("--format", dest="output_format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_appendix_check)

    p = sub.add_parser("oracle-check", help="closed forms vs brute-force quadrature oracles")
    p.add_argument("--nodes", type=int, default=None, help="override the per-case node count")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=_cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DomainError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 1
    except ConvergenceError as exc:
        sys.stderr.write(f"numerical non-convergence: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"fatal: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
