"""Coefficient recovery in the four bases, basis-change matrices, synthesis.

Functions are represented by evaluators that accept exact polynomials
(and usually truncated series as well); every coefficient formula from
the difference-operator calculus has an independent second computation
path used by the test suite for cross-validation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Callable, List, Optional

from .algebra import (
    EXACT,
    BudgetError,
    DomainError,
    FieldConfig,
    Poly,
    PrecisionError,
    TruncSeries,
    Value,
    lucas_binom,
    poly_enumerate,
    valuation_norm,
)
from . import carlitz as _carlitz
from . import hasse as _hasse
from .carlitz import bracket, carlitz_L, eval_E, eval_G
from .hasse import eval_D, hasse_derivative, hasse_on_monomial, powered_D

DEFAULT_BUDGET = 256

SCHEMA = "carlitzbases/v1"


class Basis(Enum):
    CARLITZ_G = "G"
    LINEAR_E = "E"
    DIGIT_D = "D"
    LINEAR_D = "linear-D"
    POWERED_D = "powered-D"


# ---------------------------------------------------------------------------
# Continuous F_q-linear functions as evaluators
# ---------------------------------------------------------------------------

@dataclass
class LinearFunc:
    """A continuous function O -> K given by an evaluator.

    ``loss`` bounds the precision cost: input precision N yields output
    precision >= N - loss.  ``linear`` asserts F_q-linearity; operations
    that require it (the difference calculus) refuse nonlinear functions.
    """

    cfg: FieldConfig
    eval_at: Callable[[Value], Value]
    loss: int = 0
    linear: bool = True
    name: str = ""

    def __call__(self, x: Value) -> Value:
        return self.eval_at(x)

    def norm_on_monomials(self, i_max: int) -> Fraction:
        """max |f(T**i)| for i <= i_max; equals ||f|| for linear f (ultrametric)."""
        best = Fraction(0)
        for i in range(i_max + 1):
            best = max(best, valuation_norm(self(Poly.monomial(self.cfg, i))).value)
        return best


def identity_func(cfg) -> LinearFunc:
    return LinearFunc(cfg, lambda x: x, name="identity")


def E_func(cfg, n: int) -> LinearFunc:
    return LinearFunc(cfg, lambda x: eval_E(cfg, n, x),
                      loss=_carlitz.e_carry_loss(cfg, n), name=f"E:{n}")


def D_func(cfg, n: int) -> LinearFunc:
    return LinearFunc(cfg, lambda x: hasse_derivative(cfg, n, x),
                      loss=n, name=f"D:{n}")


def powered_D_func(cfg, n: int, m: int) -> LinearFunc:
    return LinearFunc(cfg, lambda x: powered_D(cfg, n, m, x),
                      loss=n, name=f"Dpow:{n}:{m}")


def frobenius_func(cfg, m: int) -> LinearFunc:
    return LinearFunc(cfg, lambda x: x.frobenius(m), name=f"frobenius:{m}")


def G_func(cfg, j: int, primed: bool = False) -> LinearFunc:
    linear = _is_q_power(j, cfg.q)
    tag = "Gp" if primed else "G"
    return LinearFunc(cfg, lambda x: eval_G(cfg, j, x, primed),
                      loss=sum(_carlitz.e_carry_loss(cfg, n) * a for n, a in
                               enumerate(_carlitz.DigitIndex.of(j, cfg.q).digits)),
                      linear=linear and not primed, name=f"{tag}:{j}")


def Dj_func(cfg, j: int, primed: bool = False) -> LinearFunc:
    linear = _is_q_power(j, cfg.q)
    tag = "Djp" if primed else "Dj"
    return LinearFunc(cfg, lambda x: eval_D(cfg, j, x, primed),
                      loss=sum(n * a for n, a in
                               enumerate(_carlitz.DigitIndex.of(j, cfg.q).digits)),
                      linear=linear and not primed, name=f"{tag}:{j}")


def monomial_func(cfg, k: int) -> LinearFunc:
    # x -> x**k; F_q-linear exactly when k is a power of q.
    return LinearFunc(cfg, lambda x: x ** k, linear=_is_q_power(k, cfg.q),
                      name=f"monomial:{k}")


def constant_func(cfg, c: Poly) -> LinearFunc:
    return LinearFunc(cfg, lambda x: c, linear=c.is_zero, name=f"const:{c}")


def scale_func(c: Value, f: LinearFunc) -> LinearFunc:
    return LinearFunc(f.cfg, lambda x: c * f(x), loss=f.loss, linear=f.linear,
                      name=f"({c})*{f.name}")


def add_func(f: LinearFunc, g: LinearFunc) -> LinearFunc:
    return LinearFunc(f.cfg, lambda x: f(x) + g(x), loss=max(f.loss, g.loss),
                      linear=f.linear and g.linear, name=f"{f.name}+{g.name}")


def _is_q_power(k: int, q: int) -> bool:
    if k < 1:
        return False
    while k % q == 0:
        k //= q
    return k == 1


# ---------------------------------------------------------------------------
# Expansions and matrices
# ---------------------------------------------------------------------------

@dataclass
class BasisExpansion:
    """A truncated coefficient sequence in a named basis.

    ``tail_bound`` is the sup of the dropped |coefficients| when known
    (0 for finite constructed expansions, None when unreported).
    """

    cfg: FieldConfig
    basis: Basis
    coeffs: List[Value]
    m: int = 0  # only meaningful for POWERED_D
    tail_bound: Optional[Fraction] = None

    @property
    def trunc(self) -> int:
        return len(self.coeffs)

    def coeff(self, j: int) -> Value:
        if j < len(self.coeffs):
            return self.coeffs[j]
        return Poly.zero(self.cfg)

    def sup_norm(self) -> Fraction:
        return max((valuation_norm(c).value for c in self.coeffs),
                   default=Fraction(0))

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "kind": "expansion",
            "basis": self.basis.value,
            "q": self.cfg.q,
            "trunc": self.trunc,
            "entries": [str(c) for c in self.coeffs],
            "tail_bound": None if self.tail_bound is None else str(self.tail_bound),
        }
        if self.basis is Basis.POWERED_D:
            out["m"] = self.m
        return out


@dataclass
class BasisMatrix:
    """Basis-change matrix between the E and D linear bases."""

    cfg: FieldConfig
    kind: str            # "voloch" (A) or "inverse" (B)
    size: int
    entries: List[List[Value]]
    prec: Optional[int] = None  # None for exact entries

    def entry(self, i: int, j: int) -> Value:
        return self.entries[i][j]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": f"matrix-{self.kind}",
            "q": self.cfg.q,
            "size": self.size,
            "prec": self.prec,
            "triangular": "lower" if self.kind == "voloch" else "upper",
            "unit_diagonal": True,
            "entries": [[str(e) for e in row] for row in self.entries],
        }

    def to_csv(self) -> str:
        lines = ["row,col,entry"]
        for i in range(self.size):
            for j in range(self.size):
                lines.append(f"{i},{j},{self.entries[i][j]}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Difference operators
# ---------------------------------------------------------------------------

def delta(f: LinearFunc) -> LinearFunc:
    """The Carlitz difference operator: (delta f)(x) = f(Tx) - T f(x)."""
    if not f.linear:
        raise DomainError("the difference operator requires an F_q-linear function")
    cfg = f.cfg
    T = Poly.T(cfg)

    def ev(x):
        return f(T * x) - T * f(x)

    return LinearFunc(cfg, ev, loss=f.loss, name=f"delta({f.name})")


def delta_minus(f: LinearFunc, m: int) -> LinearFunc:
    """(delta - [m] I) f, with [0] read as the zero polynomial."""
    cfg = f.cfg
    g = delta(f)
    if m == 0:
        return g
    br = bracket(cfg, m)
    return LinearFunc(cfg, lambda x: g(x) - br * f(x), loss=f.loss,
                      name=f"(delta-[{m}])({f.name})")


def delta_upper(n: int, f: LinearFunc) -> LinearFunc:
    """The recursive operator with the q-power twist:

    (delta^(n) f)(x) = (delta^(n-1) f)(Tx) - T**(q**(n-1)) (delta^(n-1) f)(x).
    Distinct from the n-fold iterate of delta for n >= 2.
    """
    if not f.linear:
        raise DomainError("the difference operator requires an F_q-linear function")
    cfg = f.cfg
    g = f
    for k in range(1, n + 1):
        g = _delta_step(g, Poly.monomial(cfg, cfg.q ** (k - 1)))
    return g


def _delta_step(f: LinearFunc, mult: Poly) -> LinearFunc:
    cfg = f.cfg
    T = Poly.T(cfg)

    def ev(x, f=f, mult=mult):
        return f(T * x) - mult * f(x)

    return LinearFunc(cfg, ev, loss=f.loss, name=f"step({f.name})")


# ---------------------------------------------------------------------------
# Coefficient recovery
# ---------------------------------------------------------------------------

def wagner_coeffs(f: LinearFunc, N: int) -> BasisExpansion:
    """Coefficients a_n of f = sum a_n E_n, via a_n = (delta^(n) f)(1)."""
    if not f.linear:
        raise DomainError("E-basis expansion requires an F_q-linear function")
    cfg = f.cfg
    one = Poly.one(cfg)
    coeffs = []
    g = f
    for n in range(N):
        try:
            coeffs.append(g(one))
        except PrecisionError as exc:
            raise PrecisionError(f"precision exhausted at level {n}: {exc}") from exc
        g = _delta_step(g, Poly.monomial(cfg, cfg.q ** n))
    return BasisExpansion(cfg, Basis.LINEAR_E, coeffs)


def wagner_coeffs_by_solve(f: LinearFunc, N: int) -> BasisExpansion:
    """Independent oracle: solve the triangular system E_n(T^i) against f(T^i)."""
    cfg = f.cfg
    # E_n(T^i) = 0 for i < n and E_i(T^i) = 1, so forward substitution works.
    evals = [[eval_E(cfg, n, Poly.monomial(cfg, i)) for n in range(N)]
             for i in range(N)]
    coeffs: List[Value] = []
    for i in range(N):
        acc = f(Poly.monomial(cfg, i))
        for n in range(i):
            acc = acc - coeffs[n] * evals[i][n]
        coeffs.append(acc)  # E_i(T^i) = 1
    return BasisExpansion(cfg, Basis.LINEAR_E, coeffs)


def digit_coeffs_linear(f: LinearFunc, N: int) -> BasisExpansion:
    """Coefficients b_n of f = sum b_n D_n by the closed sum

    b_n = sum_{i<=n} (-1)**(n-i) f(T**i) D_i(T**n).
    """
    if not f.linear:
        raise DomainError("D-basis expansion requires an F_q-linear function")
    cfg = f.cfg
    fvals = [f(Poly.monomial(cfg, i)) for i in range(N)]
    coeffs = []
    for n in range(N):
        acc = None
        for i in range(n + 1):
            w = hasse_on_monomial(cfg, i, n)
            if w.is_zero:
                continue
            term = fvals[i] * w
            if (n - i) % 2:
                term = -term
            acc = term if acc is None else acc + term
        coeffs.append(acc if acc is not None else Poly.zero(cfg))
    return BasisExpansion(cfg, Basis.LINEAR_D, coeffs)


def digit_coeffs_linear_by_iteration(f: LinearFunc, N: int) -> BasisExpansion:
    """Independent oracle: literal n-fold delta iteration evaluated at 1."""
    cfg = f.cfg
    one = Poly.one(cfg)
    coeffs = []
    g = f
    for _ in range(N):
        coeffs.append(g(one))
        g = delta(g)
    return BasisExpansion(cfg, Basis.LINEAR_D, coeffs)


def powered_digit_coeffs(f: LinearFunc, m: int, N: int) -> BasisExpansion:
    """Coefficients of f in the q**m-power digit basis {D_n**(q**m)}:

    beta_n = sum_{i<=j<=n} (-1)**(n-i) C(n,j) [m]**(n-j) f(T**i) D_i(T**j),
    with [0] read as the zero polynomial (reducing to the plain D-basis).
    """
    if not f.linear:
        raise DomainError("powered-D expansion requires an F_q-linear function")
    if m < 0:
        raise DomainError("m must be non-negative")
    cfg = f.cfg
    br = bracket(cfg, m) if m >= 1 else Poly.zero(cfg)
    fvals = [f(Poly.monomial(cfg, i)) for i in range(N)]
    coeffs = []
    for n in range(N):
        acc = None
        for j in range(n + 1):
            cnj = lucas_binom(n, j, cfg.p)
            if cnj == 0:
                continue
            if n - j > 0 and br.is_zero:
                continue
            brpow = (br ** (n - j)).scalar_mul(cnj)
            for i in range(j + 1):
                w = hasse_on_monomial(cfg, i, j)
                if w.is_zero:
                    continue
                term = fvals[i] * w * brpow
                if (n - i) % 2:
                    term = -term
                acc = term if acc is None else acc + term
        coeffs.append(acc if acc is not None else Poly.zero(cfg))
    return BasisExpansion(cfg, Basis.POWERED_D, coeffs, m=m)


def powered_digit_coeffs_by_iteration(f: LinearFunc, m: int, N: int) -> BasisExpansion:
    """Independent oracle: literal iteration of (delta - [m] I), evaluated at 1."""
    cfg = f.cfg
    one = Poly.one(cfg)
    coeffs = []
    g = f
    for _ in range(N):
        coeffs.append(g(one))
        g = delta_minus(g, m)
    return BasisExpansion(cfg, Basis.POWERED_D, coeffs, m=m)


def delta_minus_power_at(f: LinearFunc, m: int, n: int, x: Value) -> Value:
    """Closed double sum for ((delta - [m] I)**n f)(x):

    sum_{i<=j<=n} (-1)**(n-i) C(n,j) [m]**(n-j) f(T**i x) D_i(T**j).
    """
    cfg = f.cfg
    br = bracket(cfg, m) if m >= 1 else Poly.zero(cfg)
    acc = None
    for j in range(n + 1):
        cnj = lucas_binom(n, j, cfg.p)
        if cnj == 0:
            continue
        if n - j > 0 and br.is_zero:
            continue
        brpow = (br ** (n - j)).scalar_mul(cnj)
        for i in range(j + 1):
            w = hasse_on_monomial(cfg, i, j)
            if w.is_zero:
                continue
            term = f(Poly.monomial(cfg, i) * x) * w * brpow
            if (n - i) % 2:
                term = -term
            acc = term if acc is None else acc + term
    if acc is None:
        acc = Poly.zero(cfg) if isinstance(x, Poly) else TruncSeries.zero(cfg)
    return acc


def default_level(cfg: FieldConfig, J: int) -> int:
    """Smallest n with q**n >= J, i.e. q**n > every expanded index j < J."""
    n = 0
    while cfg.q ** n < J:
        n += 1
    return n


def carlitz_coeffs(f: Callable[[Poly], Value], J: int, cfg: FieldConfig,
                   level: int = None, budget: int = DEFAULT_BUDGET) -> BasisExpansion:
    """Coefficients A_j of f = sum A_j G_j, by the finite enumeration formula

    A_j = (-1)**n * sum over deg(m) < n of G'_{q**n - 1 - j}(m) f(m),
    valid for any level n with q**n > j for every recovered index.
    """
    return _enumeration_coeffs(f, J, cfg, level, budget, Basis.CARLITZ_G,
                               lambda idx, mpoly: eval_G(cfg, idx, mpoly, primed=True))


def digit_coeffs(f: Callable[[Poly], Value], J: int, cfg: FieldConfig,
                 level: int = None, budget: int = DEFAULT_BUDGET) -> BasisExpansion:
    """Coefficients B_j of f = sum B_j D_j, by the same enumeration with D'."""
    return _enumeration_coeffs(f, J, cfg, level, budget, Basis.DIGIT_D,
                               lambda idx, mpoly: eval_D(cfg, idx, mpoly, primed=True))


def _enumeration_coeffs(f, J, cfg, level, budget, basis, primed_eval):
    n = default_level(cfg, J) if level is None else level
    if cfg.q ** n < J:
        raise DomainError(f"level n = {n} too small: q**n must cover all j < {J}")
    polys = poly_enumerate(cfg, n, "deg_lt", budget=budget)
    sign = cfg.sign(n)
    fvals = [f(mp) for mp in polys]
    coeffs = []
    for j in range(J):
        acc = None
        for mp, fm in zip(polys, fvals):
            w = primed_eval(cfg.q ** n - 1 - j, mp)
            term = w * fm
            acc = term if acc is None else acc + term
        coeffs.append(acc.scalar_mul(sign))
    return BasisExpansion(cfg, basis, coeffs)


# ---------------------------------------------------------------------------
# Basis-change matrices
# ---------------------------------------------------------------------------

def recip_bracket(cfg: FieldConfig, i: int, prec: int) -> TruncSeries:
    """1/[i] expanded from [i] = -T (1 - T**(q**i - 1)) as a geometric series."""
    step = cfg.q ** i - 1
    coeffs = {}
    k = 0
    while k * step - 1 < prec:
        coeffs[k * step - 1] = cfg.neg_one
        k += 1
    hi = max(coeffs)
    return TruncSeries(cfg, -1, (coeffs.get(e, 0) for e in range(-1, hi + 1)), prec)


def voloch_matrix(cfg: FieldConfig, size: int, prec: int) -> BasisMatrix:
    """The matrix A with D_m = sum_n A[n][m] E_n:

    A[n][m] = (-1)**(n+m) L_{n-1} * sum over 0 < i_1 < ... < i_{m-1} < n
    of 1/([i_1] ... [i_{m-1}]); A[n][n] = 1, A[n][1] = (-1)**(n-1) L_{n-1}.
    """
    work = prec + size + 2
    zero = TruncSeries.zero(cfg, prec)
    entries = [[zero for _ in range(size)] for _ in range(size)]
    one = Poly.one(cfg).to_series(prec)
    for n in range(size):
        for m in range(n + 1):
            if m == n:
                entries[n][m] = one
            elif m == 0:
                continue  # D_0 = E_0 exactly; off-diagonal column is zero
            elif m == 1:
                Ln1 = carlitz_L(cfg, n - 1).scalar_mul(cfg.sign(n - 1))
                entries[n][m] = Ln1.to_series(prec)
            else:
                acc = TruncSeries.zero(cfg, work)
                for combo in combinations(range(1, n), m - 1):
                    prod = TruncSeries.monomial(cfg, 0, 1, work)
                    for idx in combo:
                        prod = prod * recip_bracket(cfg, idx, work)
                    acc = acc + prod
                entry = (carlitz_L(cfg, n - 1) * acc).scalar_mul(cfg.sign(n + m))
                entries[n][m] = entry.truncate(prec)
    return BasisMatrix(cfg, "voloch", size, entries, prec=prec)


def inverse_matrix(cfg: FieldConfig, size: int) -> BasisMatrix:
    """The exact inverse matrix B with E_n = sum_m B[m][n] D_m:

    B[m][n] = sum_{i<=m} (-1)**(m-i) D_i(T**m) E_n(T**i); zero for m < n,
    unit diagonal, and T divides every entry below the diagonal.
    """
    entries = [[Poly.zero(cfg) for _ in range(size)] for _ in range(size)]
    Evals = [[eval_E(cfg, n, Poly.monomial(cfg, i)) for n in range(size)]
             for i in range(size)]
    for m in range(size):
        for n in range(size):
            acc = Poly.zero(cfg)
            for i in range(m + 1):
                w = hasse_on_monomial(cfg, i, m)
                if w.is_zero:
                    continue
                term = w * Evals[i][n]
                if (m - i) % 2:
                    term = -term
                acc = acc + term
            entries[m][n] = acc
    return BasisMatrix(cfg, "inverse", size, entries)


def matrix_product_block(A: BasisMatrix, B: BasisMatrix, k: int) -> List[List[Value]]:
    """Top-left k x k block of the matrix product A * B."""
    out = []
    for i in range(k):
        row = []
        for j in range(k):
            acc = None
            for l in range(max(A.size, B.size)):
                if l >= A.size or l >= B.size:
                    break
                term = A.entry(i, l) * B.entry(l, j)
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def convert_powered(cfg: FieldConfig, n: int, m: int, count: int,
                    direction: str) -> List[Poly]:
    """Conversion coefficients between D_n**(q**m) and the plain D_{i+n}:

    to_plain:   D_n**(q**m) = sum_i [m]**i  C(i+n, n) D_{i+n}
    to_powered: D_n         = sum_i (-[m])**i C(i+n, n) D_{i+n}**(q**m)
    """
    if m < 1:
        raise DomainError("conversion needs m >= 1")
    br = bracket(cfg, m)
    if direction == "to_powered":
        br = -br
    elif direction != "to_plain":
        raise DomainError(f"unknown direction {direction!r}")
    out = []
    power = Poly.one(cfg)
    for i in range(count):
        c = lucas_binom(i + n, n, cfg.p)
        out.append(power.scalar_mul(c))
        power = power * br
    return out


# ---------------------------------------------------------------------------
# Synthesis
# ---------------------------------------------------------------------------

def basis_function(cfg: FieldConfig, basis: Basis, j: int, m: int = 0):
    if basis is Basis.CARLITZ_G:
        return lambda x: eval_G(cfg, j, x)
    if basis is Basis.LINEAR_E:
        return lambda x: eval_E(cfg, j, x)
    if basis is Basis.DIGIT_D:
        return lambda x: eval_D(cfg, j, x)
    if basis is Basis.LINEAR_D:
        return lambda x: hasse_derivative(cfg, j, x)
    if basis is Basis.POWERED_D:
        return lambda x: powered_D(cfg, j, m, x)
    raise DomainError(f"unknown basis {basis!r}")


def synthesize(exp: BasisExpansion, x: Value):
    """Partial sum of coeff_j * basis_j(x) over the retained terms.

    Returns (value, tail_bound) where tail_bound is the expansion's
    declared bound on the dropped coefficients (the ultrametric synthesis
    error), or None when the expansion does not state one.
    """
    if isinstance(x, TruncSeries) and x.coeffs and x.v < 0:
        raise DomainError("synthesis is defined on O (v >= 0)")
    cfg = exp.cfg
    acc = None
    for j, c in enumerate(exp.coeffs):
        if isinstance(c, Poly) and c.is_zero:
            continue
        bval = basis_function(cfg, exp.basis, j, exp.m)(x)
        term = c * bval
        acc = term if acc is None else acc + term
    if acc is None:
        acc = Poly.zero(cfg) if isinstance(x, Poly) else TruncSeries.zero(cfg)
    bound = exp.tail_bound if exp.tail_bound is not None else None
    return acc, bound


def expansion_to_json_text(exp: BasisExpansion) -> str:
    return json.dumps(exp.to_json(), sort_keys=True, indent=2)
