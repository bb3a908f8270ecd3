"""Command-line front end: expansions, basis matrices, identity verification.

Exit status contract: 0 verified / success, 1 falsified, 2 budget or
configuration error.  All sampling randomness comes from the --seed flag,
so identical configurations produce byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from .algebra import (
    BudgetError,
    DomainError,
    FieldConfig,
    Poly,
    PrecisionError,
    parse_poly,
)
from . import identities, transforms
from .transforms import (
    Basis,
    D_func,
    Dj_func,
    E_func,
    G_func,
    LinearFunc,
    add_func,
    frobenius_func,
    identity_func,
    monomial_func,
    scale_func,
)


@dataclass
class RunConfig:
    p: int = 2
    e: int = 1
    modulus: Optional[str] = None
    prec: int = 24
    budget: int = transforms.DEFAULT_BUDGET
    seed: int = 0
    format: str = "json"

    def to_text(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        return cls(**json.loads(text))

    def field(self) -> FieldConfig:
        if self.modulus is None:
            return FieldConfig(self.p, self.e)
        tmp = FieldConfig(self.p)
        mod = parse_poly(tmp, self.modulus)
        return FieldConfig(self.p, self.e, tuple(mod.coeffs))


def _factor_prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if q != 1:
                raise DomainError("q must be a prime power")
            return p, e
    raise DomainError("q must be a prime power")


FUNC_GRAMMAR = """function spec grammar: terms joined by '+', each term
NAME[:INDEX] optionally prefixed by a polynomial scalar 'POLY*'.
Names: identity | monomial:k | frobenius:m | E:n | D:n | G:j | Dj:j
(D is the hyper-derivative, Dj the digit derivative).
Examples: 'D:1', 'frobenius:1', 'T*E:1+D:2', 'G:3'."""


def parse_func(cfg: FieldConfig, spec: str) -> LinearFunc:
    terms = []
    for raw in spec.split("+"):
        raw = raw.strip()
        scalar = None
        if "*" in raw:
            head, _, raw = raw.rpartition("*")
            scalar = parse_poly(cfg, head)
        name, _, idx = raw.partition(":")
        builders = {
            "identity": lambda i: identity_func(cfg),
            "monomial": lambda i: monomial_func(cfg, i),
            "frobenius": lambda i: frobenius_func(cfg, i),
            "E": lambda i: E_func(cfg, i),
            "D": lambda i: D_func(cfg, i),
            "G": lambda i: G_func(cfg, i),
            "Dj": lambda i: Dj_func(cfg, i),
        }
        if name not in builders:
            raise DomainError(f"unknown function name {name!r}; {FUNC_GRAMMAR}")
        f = builders[name](int(idx) if idx else 0)
        if scalar is not None:
            f = scale_func(scalar, f)
        terms.append(f)
    out = terms[0]
    for t in terms[1:]:
        out = add_func(out, t)
    out.name = spec
    return out


BASIS_NAMES = {
    "E": Basis.LINEAR_E,
    "linear-D": Basis.LINEAR_D,
    "G": Basis.CARLITZ_G,
    "D": Basis.DIGIT_D,
    "powered-D": Basis.POWERED_D,
}


def cmd_expand(run: RunConfig, args) -> int:
    cfg = run.field()
    f = parse_func(cfg, args.f)
    basis = BASIS_NAMES.get(args.basis)
    if basis is None:
        raise DomainError(f"unknown basis {args.basis!r}; choose from "
                          f"{sorted(BASIS_NAMES)}")
    if basis in (Basis.LINEAR_E, Basis.LINEAR_D, Basis.POWERED_D):
        if not f.linear:
            raise DomainError(f"function {f.name!r} is not F_q-linear; "
                              f"use the G or D basis")
        if basis is Basis.LINEAR_E:
            exp = transforms.wagner_coeffs(f, args.terms)
        elif basis is Basis.LINEAR_D:
            exp = transforms.digit_coeffs_linear(f, args.terms)
        else:
            exp = transforms.powered_digit_coeffs(f, args.m, args.terms)
    else:
        analyze = (transforms.carlitz_coeffs if basis is Basis.CARLITZ_G
                   else transforms.digit_coeffs)
        exp = analyze(f, args.terms, cfg, level=args.level, budget=run.budget)
    payload = exp.to_json()
    payload["function"] = args.f
    payload["run_config"] = run.to_text()
    _emit(run, args, payload, csv_text=_expansion_csv(exp))
    return 0


def _expansion_csv(exp) -> str:
    lines = ["index,entry"]
    for j, c in enumerate(exp.coeffs):
        lines.append(f"{j},{c}")
    return "\n".join(lines) + "\n"


def cmd_matrix(run: RunConfig, args) -> int:
    cfg = run.field()
    if args.which == "voloch":
        prec = args.mat_prec if args.mat_prec is not None else run.prec
        mat = transforms.voloch_matrix(cfg, args.size, prec)
    elif args.which == "inverse":
        mat = transforms.inverse_matrix(cfg, args.size)
    else:
        raise DomainError(f"unknown matrix {args.which!r}")
    payload = mat.to_json()
    payload["run_config"] = run.to_text()
    _emit(run, args, payload, csv_text=mat.to_csv())
    return 0


def cmd_verify(run: RunConfig, args) -> int:
    cfg = run.field()
    selector = args.suite
    if selector != "all" and selector not in identities.SUITES:
        raise DomainError(f"unknown suite {selector!r}; choose from "
                          f"{('all',) + identities.SUITES}")
    reports = identities.run_suite(cfg, selector, n=args.n,
                                   budget=run.budget, seed=run.seed)
    payload = {
        "schema": transforms.SCHEMA,
        "kind": "verification",
        "suite": selector,
        "run_config": run.to_text(),
        "reports": [r.to_json() for r in reports],
        "summary": {s: sum(1 for r in reports if r.status == s)
                    for s in (identities.VERIFIED, identities.FALSIFIED,
                              identities.BUDGET_EXHAUSTED)},
    }
    _emit(run, args, payload, csv_text=identities.reports_to_csv(reports))
    falsified = [r for r in reports if r.status == identities.FALSIFIED]
    if falsified:
        for r in falsified:
            print(f"falsified: {r.identity} {r.config} witness={r.witness}",
                  file=sys.stderr)
        return 1
    if any(r.status == identities.BUDGET_EXHAUSTED for r in reports):
        return 2
    return 0


def cmd_info(run: RunConfig, args) -> int:
    cfg = run.field()
    payload = {
        "schema": transforms.SCHEMA,
        "kind": "info",
        "p": cfg.p,
        "e": cfg.e,
        "q": cfg.q,
        "modulus": None if cfg.modulus is None else list(cfg.modulus),
        "run_config": run.to_text(),
    }
    _emit(run, args, payload, csv_text=None)
    return 0


def _emit(run: RunConfig, args, payload: dict, csv_text: Optional[str]):
    if run.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif run.format == "csv":
        if csv_text is None:
            raise DomainError("this command has no CSV form")
        text = csv_text
    elif run.format == "text":
        text = _as_text(payload)
    else:
        raise DomainError(f"unknown output format {run.format!r}")
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _as_text(payload: dict) -> str:
    lines = []
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, list):
            lines.append(f"{key}:")
            for item in val:
                lines.append(f"  {item}")
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="carlitzbases",
        description="Carlitz-polynomial and digit-derivative bases on F_q[[T]]")
    ap.add_argument("--p", type=int, default=2, help="field characteristic")
    ap.add_argument("--e", type=int, default=1, help="extension degree")
    ap.add_argument("--q", type=int, default=None,
                    help="field size shorthand (prime power, overrides --p/--e)")
    ap.add_argument("--modulus", default=None,
                    help="irreducible modulus over F_p, e.g. 'u^2+u+1'")
    ap.add_argument("--prec", type=int, default=24, help="series precision")
    ap.add_argument("--budget", type=int, default=transforms.DEFAULT_BUDGET,
                    help="enumeration budget (polynomial count)")
    ap.add_argument("--seed", type=int, default=0, help="sampling seed")
    ap.add_argument("--format", choices=("json", "csv", "text"), default="json")
    ap.add_argument("--out", default=None, help="write output to a file")
    sub = ap.add_subparsers(dest="command", required=True)

    p_exp = sub.add_parser("expand", help="expand a built-in function in a basis",
                           epilog=FUNC_GRAMMAR)
    p_exp.add_argument("--f", required=True, help="function spec")
    p_exp.add_argument("--basis", required=True,
                       help="E | linear-D | G | D | powered-D")
    p_exp.add_argument("--terms", type=int, default=8,
                       help="number of coefficients to recover")
    p_exp.add_argument("--level", type=int, default=None,
                       help="enumeration level n for the G/D bases")
    p_exp.add_argument("--m", type=int, default=1,
                       help="power exponent for the powered-D basis")
    p_exp.set_defaults(run=cmd_expand)

    p_mat = sub.add_parser("matrix", help="emit a basis-change matrix")
    p_mat.add_argument("--which", required=True, help="voloch | inverse")
    p_mat.add_argument("--size", type=int, default=6)
    p_mat.add_argument("--prec", type=int, default=None, dest="mat_prec",
                       help="entry precision for the voloch matrix")
    p_mat.set_defaults(run=cmd_matrix)

    p_ver = sub.add_parser("verify", help="run identity verification suites")
    p_ver.add_argument("--suite", required=True,
                       help="ortho | addition | linearity | distance | power "
                            "| reduced | all")
    p_ver.add_argument("--n", type=int, default=2,
                       help="enumeration level for levelled suites")
    p_ver.set_defaults(run=cmd_verify)

    p_info = sub.add_parser("info", help="print the resolved field configuration")
    p_info.set_defaults(run=cmd_info)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.q is not None:
            args.p, args.e = _factor_prime_power(args.q)
        run = RunConfig(p=args.p, e=args.e, modulus=args.modulus,
                        prec=args.prec, budget=args.budget, seed=args.seed,
                        format=args.format)
        return args.run(run, args)
    except (DomainError, BudgetError, PrecisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
