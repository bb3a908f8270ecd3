"""Hasse hyper-derivatives D_n, digit derivatives D_j / D'_j, and q**m powers.

D_n maps sum(a_i T**i) to sum(C(i, n) a_i T**(i-n)) with binomials taken
mod p; it loses exactly n digits of precision on truncated input and is
exact on polynomials.
"""
from __future__ import annotations

from functools import lru_cache

from .algebra import (
    EXACT,
    DomainError,
    FieldConfig,
    Poly,
    PrecisionError,
    TruncSeries,
    Value,
    lucas_binom,
)
from .carlitz import DigitIndex, _digit_product


def hasse_derivative(cfg: FieldConfig, n: int, x: Value) -> Value:
    if n < 0:
        raise DomainError("derivative order must be non-negative")
    if isinstance(x, Poly):
        return _hasse_poly(cfg, n, x)
    if x.coeffs and x.v < 0:
        raise DomainError("D_n is only evaluated on O (v >= 0)")
    if n == 0:
        return x
    if x.prec != EXACT and x.prec <= n:
        raise PrecisionError(f"D_{n} needs input precision > {n}, got {x.prec}")
    prec = x.prec - n if x.prec != EXACT else EXACT
    out = {}
    for k, a in enumerate(x.coeffs):
        if a:
            i = x.v + k
            b = lucas_binom(i, n, cfg.p)
            if b:
                out[i - n] = cfg.mul(b, a)
    if not out:
        return TruncSeries(cfg, 0, (), prec)
    lo = min(out)
    return TruncSeries(cfg, lo, (out.get(i, 0) for i in range(lo, max(out) + 1)), prec)


@lru_cache(maxsize=None)
def _hasse_poly(cfg: FieldConfig, n: int, x: Poly) -> Poly:
    if n == 0:
        return x
    out = [0] * max(len(x.coeffs) - n, 0)
    for i in range(n, len(x.coeffs)):
        a = x.coeffs[i]
        if a:
            b = lucas_binom(i, n, cfg.p)
            if b:
                out[i - n] = cfg.mul(b, a)
    return Poly(cfg, out)


def eval_D(cfg: FieldConfig, j: int, x: Value, primed: bool = False) -> Value:
    """Digit derivative D_j or D'_j: the base-q digit product of the D_n.

    D_0 = D'_0 = 1 (the constant function); exact on polynomial input.
    """
    if isinstance(x, Poly):
        return _eval_D_poly(cfg, j, x, primed)
    return _digit_product(cfg, j, x, primed,
                          lambda n, y: hasse_derivative(cfg, n, y))


@lru_cache(maxsize=None)
def _eval_D_poly(cfg: FieldConfig, j: int, x: Poly, primed: bool) -> Poly:
    return _digit_product(cfg, j, x, primed,
                          lambda n, y: hasse_derivative(cfg, n, y))


def powered_D(cfg: FieldConfig, n: int, m: int, x: Value) -> Value:
    """D_n(x)**(q**m), via Frobenius on the derivative."""
    if m < 0:
        raise DomainError("power exponent m must be non-negative")
    return hasse_derivative(cfg, n, x).frobenius(m)


def hasse_on_monomial(cfg: FieldConfig, n: int, i: int) -> Poly:
    """D_n(T**i) = C(i, n) T**(i-n) as an exact polynomial (zero for i < n)."""
    b = lucas_binom(i, n, cfg.p)
    if b == 0 or i < n:
        return Poly.zero(cfg)
    return Poly.monomial(cfg, i - n, b)
