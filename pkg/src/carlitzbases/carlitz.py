"""The Carlitz tower: brackets, factorials, linear polynomials, digit products.

Everything here is exact on F_q[T] inputs; truncated-series inputs go
through the same linear-polynomial expansion with precision tracked by
the series arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from .algebra import (
    EXACT,
    BudgetError,
    DomainError,
    FieldConfig,
    Poly,
    PrecisionError,
    TruncSeries,
    Value,
)

# Degrees grow like q**n; keep exact products desk-scale.
DEGREE_BUDGET = 1 << 16


@dataclass(frozen=True)
class DigitIndex:
    """Base-q digit decomposition of a non-negative index, little-endian."""

    j: int
    digits: Tuple[int, ...]

    @classmethod
    def of(cls, j: int, q: int) -> "DigitIndex":
        if j < 0:
            raise DomainError("digit index must be non-negative")
        digits = []
        k = j
        while k:
            digits.append(k % q)
            k //= q
        return cls(j, tuple(digits))


@dataclass(frozen=True)
class LinearPolynomial:
    """An F_q-linear polynomial sum(c_i * x**(q**i)) with F_q[T] coefficients."""

    cfg: FieldConfig
    terms: Tuple[Tuple[int, Poly], ...]  # (i, c_i), indices strictly increasing

    def __call__(self, x: Value) -> Value:
        out = None
        for i, c in self.terms:
            term = c * x.frobenius(i)
            out = term if out is None else out + term
        if out is None:
            return Poly.zero(self.cfg) if isinstance(x, Poly) else TruncSeries.zero(self.cfg)
        return out


@lru_cache(maxsize=None)
def bracket(cfg: FieldConfig, n: int) -> Poly:
    """[n] = T**(q**n) - T; defined for n >= 1 only."""
    if n < 1:
        raise DomainError("[n] is defined for n >= 1")
    if cfg.q ** n > DEGREE_BUDGET:
        raise BudgetError(f"deg [n] = q**{n} exceeds the degree budget")
    coeffs = [0] * (cfg.q ** n + 1)
    coeffs[1] = cfg.neg_one
    coeffs[-1] = 1
    return Poly(cfg, coeffs)


@lru_cache(maxsize=None)
def carlitz_F(cfg: FieldConfig, n: int) -> Poly:
    """F_n = [n] * [n-1]**q * ... * [1]**(q**(n-1)); F_0 = 1."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if n == 0:
        return Poly.one(cfg)
    if cfg.q ** n > DEGREE_BUDGET:
        raise BudgetError("F_n degree budget exceeded")
    return bracket(cfg, n) * carlitz_F(cfg, n - 1).frobenius(1)


@lru_cache(maxsize=None)
def carlitz_L(cfg: FieldConfig, n: int) -> Poly:
    """L_n = [n] * [n-1] * ... * [1]; L_0 = 1."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if n == 0:
        return Poly.one(cfg)
    return bracket(cfg, n) * carlitz_L(cfg, n - 1)


def digit_factorial(cfg: FieldConfig, j: int) -> Poly:
    """g_j = prod F_n**(digit_n of j); the function-field factorial analogue."""
    out = Poly.one(cfg)
    for n, a in enumerate(DigitIndex.of(j, cfg.q).digits):
        if a:
            out = out * carlitz_F(cfg, n) ** a
    return out


@lru_cache(maxsize=None)
def e_poly(cfg: FieldConfig, n: int) -> LinearPolynomial:
    """e_n as a linear polynomial: coefficient of x**(q**i) is
    (-1)**(n-i) * F_n / (F_i * L_{n-i}**(q**i)), an exact division in F_q[T].
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    if n == 0:
        return LinearPolynomial(cfg, ((0, Poly.one(cfg)),))
    if cfg.q ** n > DEGREE_BUDGET:
        raise BudgetError("e_n degree budget exceeded")
    Fn = carlitz_F(cfg, n)
    terms = []
    for i in range(n + 1):
        denom = carlitz_F(cfg, i) * carlitz_L(cfg, n - i).frobenius(i)
        c = Fn.exact_div(denom)
        if (n - i) % 2:
            c = -c
        terms.append((i, c))
    return LinearPolynomial(cfg, tuple(terms))


def e_carry_loss(cfg: FieldConfig, n: int) -> int:
    """v(F_n) = (q**n - 1)/(q - 1), the precision cost of dividing by F_n."""
    return (cfg.q ** n - 1) // (cfg.q - 1)


def eval_E(cfg: FieldConfig, n: int, x: Value) -> Value:
    """E_n(x) = e_n(x) / F_n; exact polynomial out for polynomial in."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if isinstance(x, Poly):
        result = _eval_E_poly(cfg, n, x)
    else:
        if x.coeffs and x.v < 0:
            raise DomainError("E_n is only evaluated on O (v >= 0)")
        if n == 0:
            return x
        loss = e_carry_loss(cfg, n)
        if x.prec != EXACT and x.prec <= loss:
            raise PrecisionError(
                f"E_{n} needs input precision > {loss}, got {x.prec}")
        num = e_poly(cfg, n)(x)
        if num.prec == EXACT:
            result = num.to_poly().exact_div(carlitz_F(cfg, n)).to_series()
        else:
            result = num.divide_poly(carlitz_F(cfg, n))
    return result


@lru_cache(maxsize=None)
def _eval_E_poly(cfg: FieldConfig, n: int, x: Poly) -> Poly:
    if n == 0:
        return x
    return e_poly(cfg, n)(x).exact_div(carlitz_F(cfg, n))


def eval_G(cfg: FieldConfig, j: int, x: Value, primed: bool = False) -> Value:
    """Digit product of Carlitz linear polynomials: G_j or G'_j.

    Unprimed: prod E_n(x)**a_n over the base-q digits a_n of j.  Primed:
    a maximal digit a_n = q-1 contributes E_n(x)**a_n - 1 instead.
    G_0 = G'_0 = 1.
    """
    if isinstance(x, Poly):
        return _eval_G_poly(cfg, j, x, primed)
    return _digit_product(cfg, j, x, primed, lambda n, y: eval_E(cfg, n, y))


@lru_cache(maxsize=None)
def _eval_G_poly(cfg: FieldConfig, j: int, x: Poly, primed: bool) -> Poly:
    return _digit_product(cfg, j, x, primed, lambda n, y: eval_E(cfg, n, y))


def _digit_product(cfg, j, x, primed, base_fn):
    one = Poly.one(cfg)
    out = one if isinstance(x, Poly) else one.to_series()
    for n, a in enumerate(DigitIndex.of(j, cfg.q).digits):
        if a == 0:
            continue
        factor = base_fn(n, x) ** a
        if primed and a == cfg.q - 1:
            factor = factor - one
        out = out * factor
    return out
