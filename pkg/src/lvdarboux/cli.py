"""Command line front end: ``lvdarboux <subcommand> ...``.

Exit status is 0 on success, 1 on domain errors (message on stderr) and 2 on
usage errors. All mathematics lives in the library modules.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from . import numeric
from .lv import H, LVParams, cofactor_of, hamiltonian_consistency, jacobi_sum, laurent_bracket_residuals
from .poly import LinForm, NotDivisible, parse_poly, to_json, to_text
from .search import search_all
from .structure import (
    casimir_conditions,
    casimir_exponents,
    certify,
    classify_params,
    describe,
)

FRACTION_FLAGS = {"--r", "--s", "--t", "--x0"}


class DomainError(Exception):
    pass


def hard_cap() -> int:
    return int(os.environ.get("DARBOUX_MAX_DEGREE_HARD_CAP", "8"))


def _normalize_argv(argv: Sequence[str]) -> list[str]:
    # argparse takes "-1/2" for an option; glue such values to their flag.
    out: list[str] = []
    it = iter(argv)
    for arg in it:
        if arg in FRACTION_FLAGS:
            value = next(it, None)
            out.append(arg if value is None else f"{arg}={value}")
        else:
            out.append(arg)
    return out


def _params(args) -> LVParams:
    return LVParams.parse(args.r, args.s, args.t)


def _degree(value: int) -> int:
    if value < 1:
        raise DomainError("--max-degree must be at least 1")
    if value > hard_cap():
        raise DomainError(f"--max-degree {value} exceeds DARBOUX_MAX_DEGREE_HARD_CAP={hard_cap()}")
    return value


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def cmd_search(args) -> str:
    p = _params(args)
    results = search_all(p, _degree(args.max_degree), workers=args.workers)
    if args.format == "json":
        return _dump([r.to_json() for r in results])
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["degree", "alpha", "beta", "gamma", "index", "polynomial"])
        for r in results:
            c = r.cofactor.to_json()
            for idx, f in enumerate(r.basis):
                writer.writerow([r.degree, c["alpha"], c["beta"], c["gamma"], idx, to_text(f)])
        return buf.getvalue().rstrip("\n")
    lines = [f"Darboux polynomials for {p}, degrees 1..{args.max_degree}"]
    for r in results:
        lines.append(f"degree {r.degree}  cofactor {r.cofactor}  dim {r.dimension}")
        lines.extend(f"    {to_text(f)}" for f in r.basis)
    return "\n".join(lines)


def cmd_cofactor(args) -> str:
    p = _params(args)
    f = parse_poly(args.poly)
    if f.is_zero():
        raise DomainError("the zero polynomial has no cofactor")
    lam = cofactor_of(p, f)
    if args.format == "json":
        return _dump({"poly": to_json(f), "cofactor": None if lam is None else lam.to_json()})
    return "not a Darboux polynomial" if lam is None else str(lam)


def cmd_certify(args) -> str:
    p = _params(args)
    f = parse_poly(args.poly)
    cert = certify(p, f)
    if args.format == "json":
        return _dump(cert.to_json())
    return describe(cert)


def cmd_casimir(args) -> str:
    p = _params(args)
    exps = casimir_exponents(p)
    # Same compact form for text and json: "[a,b,c]" or "null".
    return json.dumps(None if exps is None else list(exps), separators=(",", ":"))


def cmd_conditions(args) -> str:
    p = _params(args)
    report = [classify_params(p, m).to_json() for m in range(1, _degree(args.max_degree) + 1)]
    if args.format == "json":
        return _dump(report)
    lines = [f"parameter conditions for {p}"]
    for row in report:
        flags = ", ".join(f"{k}={v}" for k, v in row.items() if k != "degree")
        lines.append(f"m={row['degree']}: {flags}")
    return "\n".join(lines)


def cmd_poisson_check(args) -> str:
    p = _params(args)
    exps = casimir_exponents(p)
    report = {
        "hamiltonian_consistency": hamiltonian_consistency(p),
        "jacobi_zero": jacobi_sum(p).is_zero(),
        "casimir": None if exps is None else list(exps),
        "casimir_conditions_zero": None if exps is None else not any(casimir_conditions(p, exps)),
        "casimir_commutes": None if exps is None else all(r.is_zero() for r in laurent_bracket_residuals(p, exps)),
    }
    if args.format == "json":
        return _dump(report)
    return "\n".join(f"{k}: {v}" for k, v in report.items())


def _parse_checks(text: str, p: LVParams):
    checks = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        if item == "H":
            checks.append(("H", "conservation", H))
        elif item == "casimir":
            exps = casimir_exponents(p)
            if exps is None:
                raise DomainError("no Casimir for r = s = t = 0")
            checks.append((f"casimir{tuple(exps)}", "conservation", exps))
        elif item.startswith("f:"):
            _, poly_text, cof_text = item.split(":", 2)
            lam = LinForm.from_poly(parse_poly(cof_text)) if cof_text.strip() != "0" else LinForm()
            if lam is None:
                raise DomainError(f"cofactor must be a linear form: {cof_text!r}")
            checks.append((item, "darboux", (parse_poly(poly_text), lam)))
        else:
            raise DomainError(f"unknown check {item!r}")
    return checks


def cmd_simulate(args) -> str:
    p = _params(args)
    try:
        x0 = tuple(float(v) for v in args.x0.split(","))
    except ValueError as exc:
        raise DomainError(f"bad --x0: {args.x0!r}") from exc
    if len(x0) != 3:
        raise DomainError("--x0 needs three comma-separated values")
    cfg = numeric.SimConfig(x0, args.step, args.t_end)
    traj = numeric.simulate(p, cfg)
    rows = []
    for name, kind, payload in _parse_checks(args.check, p):
        if kind == "conservation":
            rows.append({"check": name, "kind": "drift", "value": numeric.conservation_report(traj, payload)})
        else:
            f, lam = payload
            rows.append({"check": name, "kind": "residual", "value": numeric.darboux_flow_check(p, f, lam, traj)})
    if args.format == "json":
        return _dump({"params": p.to_json(), "x0": list(x0), "step": args.step, "t_end": args.t_end, "checks": rows})
    width = max([len(r["check"]) for r in rows] + [5])
    lines = [f"{'check':<{width}}  kind      value"]
    lines.extend(f"{r['check']:<{width}}  {r['kind']:<8}  {r['value']:.3e}" for r in rows)
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lvdarboux", description="Darboux polynomials of 3D Lotka-Volterra systems")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_params(name: str, help_: str, formats=("text", "json")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--r", required=True, help="fraction p/q")
        sp.add_argument("--s", required=True, help="fraction p/q")
        sp.add_argument("--t", required=True, help="fraction p/q")
        sp.add_argument("--format", choices=formats, default="text")
        return sp

    sp = with_params("search", "enumerate homogeneous Darboux polynomials", ("text", "json", "csv"))
    sp.add_argument("--max-degree", type=int, default=8)
    sp.add_argument("--workers", type=int, default=None, help="threads for candidate solves")
    sp.set_defaults(func=cmd_search)

    sp = with_params("cofactor", "cofactor of a single polynomial")
    sp.add_argument("--poly", required=True)
    sp.set_defaults(func=cmd_cofactor)

    sp = with_params("certify", "factor a Darboux polynomial into special factors and a first integral")
    sp.add_argument("--poly", required=True)
    sp.set_defaults(func=cmd_certify)

    sp = with_params("casimir", "primitive exponents of the Casimir monomial")
    sp.set_defaults(func=cmd_casimir)

    sp = with_params("conditions", "parameter condition report")
    sp.add_argument("--max-degree", type=int, default=3)
    sp.set_defaults(func=cmd_conditions)

    sp = with_params("poisson-check", "Hamiltonian, Jacobi and Casimir identities")
    sp.set_defaults(func=cmd_poisson_check)

    sp = with_params("simulate", "RK4 drift and Darboux residual report")
    sp.add_argument("--x0", required=True, help="a,b,c")
    sp.add_argument("--step", type=float, default=1e-3)
    sp.add_argument("--t-end", type=float, default=1.0)
    sp.add_argument("--check", default="H,casimir", help="H, casimir, f:<poly>:<cofactor>")
    sp.set_defaults(func=cmd_simulate)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except (DomainError, ValueError, ArithmeticError, NotDivisible) as exc:
        print(f"lvdarboux {args.command}: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
