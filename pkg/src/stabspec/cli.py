"""Command-line interface.

Every subcommand is a thin adapter over the library; numbers are rendered with
17 significant digits.  Exit codes: 0 ok, 1 check failure, 2 usage, 3 domain.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import asymptotics, coeffs, config, orthopoly, render, verify
from .errors import StabSpecError

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
COMPARE_TOL = 1e-8
GRAM_TOL = 1e-9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fail(code: int, msg: str) -> int:
    sys.stderr.write(f"code={code} msg={' '.join(str(msg).split())}\n")
    return code


def _meta(args) -> dict:
    skip = {"func", "command"}
    meta = {"command": args.command}
    meta.update({k: v for k, v in sorted(vars(args).items()) if k not in skip})
    meta["precision"] = config.precision()
    return meta


def _emit(text: str, out: str | None = None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(args, header, rows) -> str:
    rows = list(rows)
    if args.format == "json":
        data = [
            {h: (render.fmt(v) if isinstance(v, float) else v) for h, v in zip(header, row)}
            for row in rows
        ]
        return render.json_document(_meta(args), data)
    return render.csv_table(header, rows)


def cmd_coeff(args) -> int:
    value, bound = coeffs.coeff_with_bound(args.k1, args.k2, args.r, args.method, N=args.quad_n)
    header = ("k1", "k2", "r", "method", "value", "err_bound")
    _emit(_table(args, header, [(args.k1, args.k2, float(args.r), args.method, value, bound)]))
    return EXIT_OK


def cmd_grid(args) -> int:
    grid = coeffs.coeff_grid(args.kmax, args.r)
    header = ("k1", "k2", "c")
    _emit(_table(args, header, grid.rows()), args.out)
    return EXIT_OK


def cmd_regime(args) -> int:
    rep = asymptotics.classify(args.k1, args.k2, args.r)
    fields = (("rho", rep.rho), ("regime", rep.regime.value),
              ("base", rep.decay_base), ("limit", rep.limit_constant))
    if args.format == "json":
        _emit(_table(args, [k for k, _ in fields], [[v for _, v in fields]]))
    else:
        text = ",".join(f"{k}={render.fmt(v) if isinstance(v, float) else v}" for k, v in fields)
        _emit(text + "\n")
    return EXIT_OK


def _powers_of_two(tmax: int):
    t = 1
    while t <= tmax:
        yield t
        t *= 2


def cmd_asym(args) -> int:
    if args.tmax < 1:
        raise UsageError("--tmax must be at least 1")
    limit = asymptotics.classify(args.k1, args.k2, args.r).limit_constant
    rows = []
    for t in _powers_of_two(args.tmax):
        scaled = asymptotics.scaled_coeff(args.k1, args.k2, args.r, t)
        predicted = asymptotics.scaled_prediction(args.k1, args.k2, args.r, t, args.order)
        rows.append((t, scaled, predicted, limit, abs(scaled - limit)))
    _emit(_table(args, ("t", "scaled", "predicted", "limit", "abs_err"), rows))
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = verify.run_suite(args.suite, args.trials, args.seed)
    rows = [(args.suite, c.name, c.params, c.residual, c.tol, "pass" if c.passed else "fail")
            for c in checks]
    _emit(_table(args, ("suite", "check", "params", "residual", "tol", "status"), rows))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_CHECK


def cmd_ortho(args) -> int:
    res = orthopoly.gram_check(args.r, kmax=args.kmax, qmax=args.qmax)
    ok = res.is_identity(GRAM_TOL)
    data = [{
        "record": "summary",
        "size": len(res.labels),
        "max_off_diagonal": render.fmt(res.max_off_diagonal),
        "max_diagonal_deviation": render.fmt(res.max_diagonal_deviation),
        "tol": render.fmt(GRAM_TOL),
        "status": "pass" if ok else "fail",
    }]
    data += [{"record": "worst", "row": a, "col": b, "deviation": render.fmt(d)} for a, b, d in res.worst]
    data += [{"record": "gram", "label": lab, "values": [render.fmt(v) for v in row]}
             for lab, row in zip(res.labels, res.matrix)]
    _emit(render.json_document(_meta(args), data))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_compare(args) -> int:
    rows = []
    worst = 0.0
    for k1 in range(-args.kmax, args.kmax + 1):
        for k2 in range(-args.kmax, args.kmax + 1):
            vals = verify.oracle_triangle(k1, k2, args.r, quad_n=args.quad_n)
            dis = verify.triangle_disagreement(vals)
            worst = max(worst, dis)
            rows.append((k1, k2, vals["closed"], vals["series"], vals["quadrature"], dis))
    header = ("k1", "k2", "closed", "series", "quadrature", "max_rel_diff")
    _emit(_table(args, header, rows))
    return EXIT_OK if worst <= args.tol else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stabspec", description=__doc__.splitlines()[0])
    p.add_argument("--precision", choices=("standard", "extended"),
                   help=f"working precision (default: ${config.ENV_VAR} or standard)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("coeff", help="one Fourier coefficient c_{k1,k2}")
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--k1", type=int, required=True)
    s.add_argument("--k2", type=int, required=True)
    s.add_argument("--method", choices=coeffs.METHODS, default="closed")
    s.add_argument("--quad-n", type=int, default=512)
    s.set_defaults(func=cmd_coeff)

    s = sub.add_parser("grid", help="coefficient table for |k1|, |k2| <= kmax")
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--kmax", type=int, required=True)
    s.add_argument("--out", help="write to FILE instead of stdout")
    s.set_defaults(func=cmd_grid)

    s = sub.add_parser("regime", help="asymptotic regime of c_{t k1, t k2}")
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--k1", type=int, required=True)
    s.add_argument("--k2", type=int, required=True)
    s.set_defaults(func=cmd_regime)

    s = sub.add_parser("asym", help="scaled coefficients at t = 1, 2, 4, ..., tmax")
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--k1", type=int, required=True)
    s.add_argument("--k2", type=int, required=True)
    s.add_argument("--tmax", type=int, required=True)
    s.add_argument("--order", type=int, choices=(0, 1, 2), default=2)
    s.set_defaults(func=cmd_asym)

    s = sub.add_parser("verify", help="seeded randomized check suites")
    s.add_argument("--suite", choices=verify.SUITES, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("ortho", help="Gram matrix of the orthonormal family (JSON)")
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--kmax", type=int, default=3)
    s.add_argument("--qmax", type=int, default=2)
    s.set_defaults(func=cmd_ortho)

    s = sub.add_parser("compare", help="closed form vs series and quadrature oracles")
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--kmax", type=int, required=True)
    s.add_argument("--quad-n", type=int, default=512)
    s.add_argument("--tol", type=float, default=COMPARE_TOL)
    s.set_defaults(func=cmd_compare)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        mode = args.precision or config.precision()
    except UsageError as exc:
        return _fail(EXIT_USAGE, exc)
    except ValueError as exc:  # bad environment override
        return _fail(EXIT_USAGE, exc)
    try:
        with config.use_precision(mode):
            return args.func(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, exc)
    except (StabSpecError, ValueError, ArithmeticError) as exc:
        return _fail(EXIT_DOMAIN, exc)


if __name__ == "__main__":
    sys.exit(main())
