"""Executable verification of the identity families.

Every check returns a VerdictReport; falsified reports carry a replayable
witness.  Sup-norm style claims are certified on a finite range (recorded
in the report) rather than proved.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from typing import List, Optional

from .algebra import (
    BudgetError,
    DomainError,
    FieldConfig,
    Poly,
    TruncSeries,
    lucas_binom,
    poly_enumerate,
    random_poly,
    valuation_norm,
    values_match,
)
from .carlitz import eval_E, eval_G
from .hasse import eval_D, hasse_derivative, powered_D
from .transforms import (
    Basis,
    BasisExpansion,
    DEFAULT_BUDGET,
    LinearFunc,
    _is_q_power,
)

VERIFIED = "verified"
FALSIFIED = "falsified"
BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class VerdictReport:
    identity: str
    config: dict
    status: str
    witness: Optional[dict] = None
    notes: List[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED

    def to_json(self) -> dict:
        return {
            "schema": "carlitzbases/v1",
            "kind": "verdict",
            "identity": self.identity,
            "config": self.config,
            "status": self.status,
            "witness": self.witness,
            "notes": self.notes,
        }


def _verdict(identity, config, ok, witness=None, notes=()):
    return VerdictReport(identity, config, VERIFIED if ok else FALSIFIED,
                         witness=None if ok else witness, notes=list(notes))


# ---------------------------------------------------------------------------
# Orthogonality
# ---------------------------------------------------------------------------

def check_orthogonality(cfg: FieldConfig, family: str, variant: str,
                        n: int, k: int, l: int,
                        budget: int = DEFAULT_BUDGET) -> VerdictReport:
    """sum over m of F_k(m) F'_l(m) = 0, or (-1)**n when k + l = q**n - 1.

    family CARLITZ uses G/G', DIGIT uses D/D'; variant deg_lt sums over
    deg(m) < n, monic over monic m of degree n (then k < q**n required).
    """
    q = cfg.q
    config = {"family": family, "variant": variant, "q": q, "n": n, "k": k, "l": l}
    if l < 0 or l >= q ** n:
        raise DomainError("orthogonality requires 0 <= l < q**n")
    if variant == "monic" and not (0 <= k < q ** n):
        raise DomainError("monic variant requires 0 <= k < q**n")
    if family == "CARLITZ":
        fk = lambda m: eval_G(cfg, k, m)
        fl = lambda m: eval_G(cfg, l, m, primed=True)
    elif family == "DIGIT":
        fk = lambda m: eval_D(cfg, k, m)
        fl = lambda m: eval_D(cfg, l, m, primed=True)
    else:
        raise DomainError(f"unknown family {family!r}")
    if variant == "deg_lt":
        polys = poly_enumerate(cfg, n, "deg_lt", budget=budget)
    elif variant == "monic":
        polys = poly_enumerate(cfg, n, "monic_deg_eq", budget=budget)
    else:
        raise DomainError(f"unknown variant {variant!r}")
    total = Poly.zero(cfg)
    for m in polys:
        total = total + fk(m) * fl(m)
    expected = (Poly.constant(cfg, cfg.sign(n))
                if k + l == q ** n - 1 else Poly.zero(cfg))
    ok = total == expected
    return _verdict("orthogonality", config, ok,
                    witness={"sum": str(total), "expected": str(expected)})


def orthogonality_suite(cfg: FieldConfig, n: int,
                        budget: int = DEFAULT_BUDGET) -> List[VerdictReport]:
    """Exhaustive orthogonality over both families and variants at level n."""
    reports = []
    q = cfg.q
    for family in ("CARLITZ", "DIGIT"):
        for variant in ("deg_lt", "monic"):
            config = {"family": family, "variant": variant, "q": q, "n": n}
            try:
                bad = None
                for k in range(q ** n):
                    for l in range(q ** n):
                        r = check_orthogonality(cfg, family, variant, n, k, l,
                                                budget=budget)
                        if not r.ok:
                            bad = r
                            break
                    if bad:
                        break
                if bad:
                    reports.append(VerdictReport("orthogonality", bad.config,
                                                 FALSIFIED, witness=bad.witness))
                else:
                    reports.append(VerdictReport("orthogonality", config, VERIFIED))
            except BudgetError as exc:
                reports.append(VerdictReport("orthogonality", config,
                                             BUDGET_EXHAUSTED,
                                             notes=[str(exc)]))
    return reports


# ---------------------------------------------------------------------------
# Addition laws
# ---------------------------------------------------------------------------

def check_addition_law(cfg: FieldConfig, family: str, j: int,
                       x: Poly, u: Poly) -> VerdictReport:
    """Binomial addition law for G, G', D, or D' at index j, plus the
    scaling law over F_q* and, at j = q**m - 1, the signed and x - u forms."""
    config = {"family": family, "q": cfg.q, "j": j, "x": str(x), "u": str(u)}
    primed = family.endswith("p")
    base = family.rstrip("p")
    if base == "G":
        f = lambda y, pr=primed: eval_G(cfg, j, y, primed=pr)
        fe = lambda e, y: eval_G(cfg, e, y)
        ff = lambda e, y, pr=primed: eval_G(cfg, e, y, primed=pr)
    elif base == "D":
        f = lambda y, pr=primed: eval_D(cfg, j, y, primed=pr)
        fe = lambda e, y: eval_D(cfg, e, y)
        ff = lambda e, y, pr=primed: eval_D(cfg, e, y, primed=pr)
    else:
        raise DomainError(f"unknown family {family!r}")

    def convolution(a, b, weight):
        acc = Poly.zero(cfg)
        for e in range(j + 1):
            w = weight(e)
            if w == 0:
                continue
            acc = acc + (fe(e, a) * ff(j - e, b)).scalar_mul(w)
        return acc

    lhs = f(x + u)
    rhs = convolution(x, u, lambda e: lucas_binom(j, e, cfg.p))
    if not values_match(lhs, rhs):
        return _verdict("addition_law", config, False,
                        witness={"lhs": str(lhs), "rhs": str(rhs)})
    for alpha in range(1, cfg.q):
        left = f(x.scalar_mul(alpha))
        right = f(x).scalar_mul(cfg.pow(alpha, j))
        if not values_match(left, right):
            return _verdict("addition_scaling", config, False,
                            witness={"alpha": alpha, "lhs": str(left),
                                     "rhs": str(right)})
    if _is_power_minus_one(j + 1, cfg.q):
        signed = convolution(x, u, lambda e: cfg.sign(e))
        if not values_match(lhs, signed):
            return _verdict("addition_sign_form", config, False,
                            witness={"lhs": str(lhs), "rhs": str(signed)})
        diff_lhs = f(x - u)
        diff_rhs = convolution(x, u, lambda e: 1)
        if not values_match(diff_lhs, diff_rhs):
            return _verdict("addition_diff_form", config, False,
                            witness={"lhs": str(diff_lhs), "rhs": str(diff_rhs)})
    return _verdict("addition_law", config, True)


def _is_power_minus_one(k: int, q: int) -> bool:
    # is k a power q**m with m >= 1, i.e. j = q**m - 1
    if k < q:
        return False
    while k % q == 0:
        k //= q
    return k == 1


# ---------------------------------------------------------------------------
# Linearity characterization
# ---------------------------------------------------------------------------

def classify_linearity(exp: BasisExpansion, evaluator: LinearFunc = None,
                       rng: random.Random = None,
                       samples: int = 8, max_deg: int = 4) -> VerdictReport:
    """Linear iff every retained coefficient away from the q-power indices
    vanishes (to its precision); cross-checked by additivity sampling when
    an evaluator is attached."""
    if exp.basis not in (Basis.CARLITZ_G, Basis.DIGIT_D):
        raise DomainError("linearity classification needs a G- or D-basis expansion")
    cfg = exp.cfg
    config = {"basis": exp.basis.value, "q": cfg.q, "trunc": exp.trunc}
    offenders = []
    for j, c in enumerate(exp.coeffs):
        if _is_q_power(j, cfg.q):
            continue
        if not _coeff_is_zero(c):
            offenders.append(j)
    linear = not offenders
    notes = [f"classified {'linear' if linear else 'nonlinear'} "
             f"from {exp.trunc} retained coefficients"]
    if offenders:
        notes.append(f"nonzero coefficients at non-q-power indices {offenders}")
    if evaluator is not None:
        rng = rng or random.Random(0)
        sampled = _sample_linear(cfg, evaluator, rng, samples, max_deg)
        if sampled != linear:
            return VerdictReport("linearity", config, FALSIFIED,
                                 witness={"expansion_says": linear,
                                          "sampling_says": sampled},
                                 notes=notes)
        notes.append("additivity sampling agrees")
    return VerdictReport("linearity", config, VERIFIED,
                         witness={"linear": linear}, notes=notes)


def _coeff_is_zero(c) -> bool:
    if isinstance(c, Poly):
        return c.is_zero
    return c.is_zero_to_prec


def _sample_linear(cfg, f, rng, samples, max_deg) -> bool:
    zero = Poly.zero(cfg)
    if not values_match(f(zero), zero):
        return False
    for _ in range(samples):
        x = random_poly(cfg, rng, max_deg)
        y = random_poly(cfg, rng, max_deg)
        if not values_match(f(x + y), f(x) + f(y)):
            return False
        alpha = rng.randrange(1, cfg.q)
        fx = f(x)
        if not values_match(f(x.scalar_mul(alpha)), fx.scalar_mul(alpha)):
            return False
    return True


# ---------------------------------------------------------------------------
# Norm-distance bounds between the bases
# ---------------------------------------------------------------------------

def basis_distance(cfg: FieldConfig, pair: str, n: int,
                   i_max: int = 50, m: int = 1) -> VerdictReport:
    """Certify v(f(T^i) - g(T^i)) >= 1 for i <= i_max (so ||f - g|| <= 1/q
    on the tested range), the reduced-function equality mod T, and the
    delta pattern f(T^i) = 0 for i < n, f(T^n) = 1."""
    config = {"pair": pair, "q": cfg.q, "n": n, "i_max": i_max, "m": m}
    if pair == "E_vs_D":
        f = lambda t: eval_E(cfg, n, t)
        g = lambda t: hasse_derivative(cfg, n, t)
    elif pair == "Dq_vs_D":
        f = lambda t: powered_D(cfg, n, m, t)
        g = lambda t: hasse_derivative(cfg, n, t)
    elif pair == "Eq_vs_E":
        f = lambda t: eval_E(cfg, n, t).frobenius(1)
        g = lambda t: eval_E(cfg, n, t)
    else:
        raise DomainError(f"unknown pair {pair!r}")
    one = Poly.one(cfg)
    max_norm = valuation_norm(Poly.zero(cfg)).value
    for i in range(i_max + 1):
        t = Poly.monomial(cfg, i)
        fv, gv = f(t), g(t)
        diff = fv - gv
        nm = valuation_norm(diff)
        if nm.v is not None and nm.v < 1:
            return _verdict("basis_distance", config, False,
                            witness={"i": i, "difference": str(diff),
                                     "valuation": nm.v})
        max_norm = max(max_norm, nm.value)
        # reduced functions mod T agree
        if _mod_T(cfg, fv) != _mod_T(cfg, gv):
            return _verdict("basis_distance_reduced", config, False,
                            witness={"i": i, "f": str(fv), "g": str(gv)})
        # delta pattern for the basis functions themselves
        expected = one if i == n else None
        if expected is not None and not values_match(gv, expected):
            return _verdict("basis_distance_delta", config, False,
                            witness={"i": i, "value": str(gv)})
        if i < n and not (_value_zero(fv) and _value_zero(gv)):
            return _verdict("basis_distance_delta", config, False,
                            witness={"i": i, "f": str(fv), "g": str(gv)})
    notes = [f"sup over tested range is {max_norm} (certified for i <= {i_max} only)"]
    return VerdictReport("basis_distance", config, VERIFIED, notes=notes)


def _mod_T(cfg, val) -> int:
    if isinstance(val, Poly):
        return val.coeff(0)
    return val.coeff(0)


def _value_zero(val) -> bool:
    if isinstance(val, Poly):
        return val.is_zero
    return val.is_zero_to_prec


# ---------------------------------------------------------------------------
# q**m-power criterion and reduced-basis independence
# ---------------------------------------------------------------------------

def check_power_criterion(cfg: FieldConfig, f, m: int,
                          samples: int = 30, rng: random.Random = None,
                          max_deg: int = 6, name: str = "f") -> VerdictReport:
    """|f(x)**(q**m) - f(x)| <= 1/q on sampled x in O, with f mapping into O."""
    if m < 1:
        raise DomainError("power criterion needs m >= 1")
    rng = rng or random.Random(0)
    config = {"q": cfg.q, "m": m, "samples": samples, "function": name}
    for s in range(samples):
        x = random_poly(cfg, rng, max_deg)
        v = f(x)
        nv = valuation_norm(v)
        if nv.v is not None and nv.v < 0:
            return _verdict("power_criterion", config, False,
                            witness={"x": str(x), "f(x)": str(v),
                                     "reason": "value escapes O"})
        diff = v.frobenius(m) - v
        nd = valuation_norm(diff)
        if nd.v is not None and nd.v < 1:
            return _verdict("power_criterion", config, False,
                            witness={"x": str(x), "difference": str(diff)})
    return VerdictReport("power_criterion", config, VERIFIED)


def check_reduced_basis(cfg: FieldConfig, n_max: int) -> VerdictReport:
    """The matrices [reduced E_i(T^j)] and [reduced D_i(T^j)] for i, j < n_max
    coincide and are unitriangular, so the reductions are independent over F_q."""
    config = {"q": cfg.q, "n_max": n_max}
    mat_E = [[eval_E(cfg, i, Poly.monomial(cfg, j)).coeff(0)
              for j in range(n_max)] for i in range(n_max)]
    mat_D = [[hasse_derivative(cfg, i, Poly.monomial(cfg, j)).coeff(0)
              for j in range(n_max)] for i in range(n_max)]
    if mat_E != mat_D:
        return _verdict("reduced_basis", config, False,
                        witness={"E": mat_E, "D": mat_D})
    for i in range(n_max):
        if mat_E[i][i] != 1:
            return _verdict("reduced_basis", config, False,
                            witness={"diagonal": (i, mat_E[i][i])})
        for j in range(i):
            if mat_E[i][j] != 0:
                return _verdict("reduced_basis", config, False,
                                witness={"entry": (i, j, mat_E[i][j])})
    return VerdictReport("reduced_basis", config, VERIFIED)


# ---------------------------------------------------------------------------
# Suite runner (drives the CLI and the scripts)
# ---------------------------------------------------------------------------

SUITES = ("ortho", "addition", "linearity", "distance", "power", "reduced")


def run_suite(cfg: FieldConfig, selector: str, *, n: int = 2,
              budget: int = DEFAULT_BUDGET, seed: int = 0,
              i_max: int = 50) -> List[VerdictReport]:
    from . import transforms as tf

    rng = random.Random(seed)
    reports: List[VerdictReport] = []
    selectors = SUITES if selector == "all" else (selector,)
    for sel in selectors:
        if sel == "ortho":
            reports.extend(orthogonality_suite(cfg, max(n, 1), budget=budget))
        elif sel == "addition":
            j_max = min(cfg.q ** 3, budget)
            for family in ("G", "Gp", "D", "Dp"):
                bad = None
                for j in range(j_max):
                    for _ in range(3):
                        x = random_poly(cfg, rng, 3)
                        u = random_poly(cfg, rng, 3)
                        r = check_addition_law(cfg, family, j, x, u)
                        if not r.ok:
                            bad = r
                            break
                    if bad:
                        break
                reports.append(bad or VerdictReport(
                    "addition_law", {"family": family, "q": cfg.q,
                                     "j_max": j_max, "seed": seed}, VERIFIED))
        elif sel == "linearity":
            J = min(cfg.q ** 3, 32)
            for func, expected in _linearity_corpus(cfg):
                exp = tf.digit_coeffs(func, J, cfg, budget=max(budget, cfg.q ** 4))
                r = classify_linearity(exp, evaluator=func, rng=rng)
                if r.ok and r.witness and r.witness.get("linear") != expected:
                    r = VerdictReport("linearity", r.config, FALSIFIED,
                                      witness={"function": func.name,
                                               "expected": expected,
                                               "classified": r.witness["linear"]})
                r.config["function"] = func.name
                reports.append(r)
        elif sel == "distance":
            for level in range(0, min(n, 4) + 1):
                for pair in ("E_vs_D", "Dq_vs_D", "Eq_vs_E"):
                    reports.append(basis_distance(cfg, pair, level, i_max=i_max))
        elif sel == "power":
            from .transforms import E_func, G_func, constant_func
            for func in (E_func(cfg, 1), G_func(cfg, 3),
                         constant_func(cfg, Poly.one(cfg))):
                reports.append(check_power_criterion(cfg, func, 1, rng=rng,
                                                     name=func.name))
        elif sel == "reduced":
            reports.append(check_reduced_basis(cfg, 6))
        else:
            raise DomainError(f"unknown suite selector {selector!r}")
    return reports


def _linearity_corpus(cfg):
    from .transforms import (D_func, Dj_func, E_func, G_func, add_func,
                             constant_func, frobenius_func, identity_func,
                             monomial_func, scale_func)

    T = Poly.T(cfg)
    linear = [
        identity_func(cfg),
        D_func(cfg, 1),
        E_func(cfg, 1),
        frobenius_func(cfg, 1),
        add_func(D_func(cfg, 0), D_func(cfg, 1)),
        scale_func(T, D_func(cfg, 1)),
        add_func(E_func(cfg, 0), scale_func(T, E_func(cfg, 1))),
        D_func(cfg, 2),
        E_func(cfg, 2),
        add_func(frobenius_func(cfg, 1), identity_func(cfg)),
    ]
    q = cfg.q
    nonlinear_js = [j for j in range(2, q ** 3) if not _is_q_power(j, q)]
    nonlinear = [
        constant_func(cfg, Poly.one(cfg)),
        G_func(cfg, nonlinear_js[0]),
        Dj_func(cfg, nonlinear_js[0]),
        Dj_func(cfg, nonlinear_js[-1] if len(nonlinear_js) > 1 else nonlinear_js[0],
                primed=True),
        G_func(cfg, nonlinear_js[0], primed=True),
        add_func(identity_func(cfg), constant_func(cfg, T)),
        monomial_func(cfg, nonlinear_js[0]),
        G_func(cfg, nonlinear_js[min(1, len(nonlinear_js) - 1)]),
        Dj_func(cfg, nonlinear_js[min(1, len(nonlinear_js) - 1)]),
        add_func(G_func(cfg, nonlinear_js[0]), D_func(cfg, 1)),
    ]
    return [(f, True) for f in linear] + [(f, False) for f in nonlinear]


def reports_to_json_text(reports: List[VerdictReport]) -> str:
    return json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2)


def reports_to_csv(reports: List[VerdictReport]) -> str:
    lines = ["identity,config,status"]
    for r in reports:
        cfg_txt = ";".join(f"{k}={v}" for k, v in sorted(r.config.items()))
        lines.append(f"{r.identity},{cfg_txt},{r.status}")
    return "\n".join(lines) + "\n"
