"""Carlitz tower: brackets, factorials, e_n, E_n, and the digit products G_j."""

import random

import pytest

from carlitzbases import (
    DigitIndex,
    DomainError,
    FieldConfig,
    Poly,
    bracket,
    carlitz_F,
    carlitz_L,
    digit_factorial,
    e_poly,
    eval_E,
    eval_G,
    parse_poly,
)
from carlitzbases.algebra import poly_enumerate, random_poly, random_series
from carlitzbases.carlitz import e_carry_loss


def brute_force_e(cfg, n, x):
    """Oracle: e_n(x) = product of (x - m) over all m with deg(m) < n."""
    out = Poly.one(cfg) if isinstance(x, Poly) else x - x + Poly.one(cfg)
    for m in poly_enumerate(cfg, n, "deg_lt"):
        out = out * (x - m)
    return out


# ---------------------------------------------------------------------------
# Brackets and factorials
# ---------------------------------------------------------------------------

def test_bracket_examples(f2, f3):
    assert bracket(f2, 1) == parse_poly(f2, "T^2+T")
    assert bracket(f2, 2) == parse_poly(f2, "T^4+T")
    assert bracket(f3, 1) == parse_poly(f3, "T^3+2*T")


def test_bracket_zero_is_domain_error(f2):
    with pytest.raises(DomainError):
        bracket(f2, 0)


def test_factorial_examples(f2):
    assert carlitz_F(f2, 0) == Poly.one(f2)
    assert carlitz_L(f2, 0) == Poly.one(f2)
    assert carlitz_F(f2, 1) == bracket(f2, 1)
    assert carlitz_L(f2, 1) == bracket(f2, 1)
    assert carlitz_L(f2, 2) == bracket(f2, 2) * bracket(f2, 1)
    assert carlitz_F(f2, 2) == bracket(f2, 2) * bracket(f2, 1) ** 2


@pytest.mark.parametrize("q,n_max", [(2, 4), (3, 3)])
def test_factorial_products(q, n_max):
    cfg = FieldConfig(q)
    for n in range(1, n_max + 1):
        F = Poly.one(cfg)
        L = Poly.one(cfg)
        for i in range(1, n + 1):
            F = F * bracket(cfg, i) ** (q ** (n - i))
            L = L * bracket(cfg, i)
        assert carlitz_F(cfg, n) == F
        assert carlitz_L(cfg, n) == L
        # v(F_n) = (q^n - 1)/(q - 1), the precision-loss bound for E_n
        assert F.valuation == e_carry_loss(cfg, n)


def test_digit_factorial(f2):
    # g_j = prod F_n^{alpha_n} over the base-q digits of j; 5 = 1 + 0*2 + 1*4.
    assert digit_factorial(f2, 5) == carlitz_F(f2, 0) * carlitz_F(f2, 2)
    assert digit_factorial(f2, 0) == Poly.one(f2)


def test_digit_index(f4):
    d = DigitIndex.of(11, 4)
    assert d.digits == (3, 2)
    assert sum(a * 4 ** i for i, a in enumerate(d.digits)) == 11


# ---------------------------------------------------------------------------
# e_n
# ---------------------------------------------------------------------------

def test_e_poly_examples(f2, f3):
    # e_0(x) = x
    e0 = e_poly(f2, 0)
    assert e0.terms == ((0, Poly.one(f2)),)
    # e_1(x) = x^q - x for any q
    for cfg in (f2, f3):
        e1 = e_poly(cfg, 1)
        x = Poly.T(cfg)
        assert e1(x) == x.frobenius(1) - x
    # e_2 over F_2, from the brute-force product over {0, 1, T, T+1}
    e2 = e_poly(f2, 2)
    x = parse_poly(f2, "T^3+1")
    assert e2(x) == (x ** 4 + parse_poly(f2, "T^2+T+1") * x ** 2
                     + parse_poly(f2, "T^2+T") * x)


@pytest.mark.parametrize("q,n_max", [(2, 3), (3, 2), (4, 2)])
def test_e_poly_against_brute_force(q, n_max, rng):
    cfg = FieldConfig(2, 2) if q == 4 else FieldConfig(q)
    for n in range(n_max + 1):
        en = e_poly(cfg, n)
        for _ in range(40):
            x = random_poly(cfg, rng, 4)
            assert en(x) == brute_force_e(cfg, n, x)


@pytest.mark.parametrize("q", [2, 3])
def test_e_recursion(q):
    # e_{n+1}(x) = e_n(x)^q - F_n^{q-1} e_n(x), as an identity on coefficients.
    cfg = FieldConfig(q)
    for n in range(4):
        en, en1 = e_poly(cfg, n), e_poly(cfg, n + 1)
        scale = carlitz_F(cfg, n) ** (q - 1)
        lhs = dict(en1.terms)
        rhs = {}
        for i, c in en.terms:
            rhs[i + 1] = rhs.get(i + 1, Poly.zero(cfg)) + c.frobenius(1)
            rhs[i] = rhs.get(i, Poly.zero(cfg)) - scale * c
        rhs = {i: c for i, c in rhs.items() if not c.is_zero}
        assert lhs == rhs


# ---------------------------------------------------------------------------
# E_n
# ---------------------------------------------------------------------------

def test_eval_E_examples(f2):
    for n in range(5):
        assert eval_E(f2, n, Poly.monomial(f2, n)) == Poly.one(f2)
    assert eval_E(f2, 0, Poly.monomial(f2, 3)) == Poly.monomial(f2, 3)
    assert eval_E(f2, 1, Poly.monomial(f2, 2)) == parse_poly(f2, "T^2+T")


def test_eval_E_cross_identity(f2):
    # E_1(T^2) = T*E_1(T) + E_0(T)^q
    T = Poly.T(f2)
    lhs = eval_E(f2, 1, T * T)
    rhs = T * eval_E(f2, 1, T) + eval_E(f2, 0, T).frobenius(1)
    assert lhs == rhs


@pytest.mark.parametrize("q", [2, 3])
def test_carlitz_step_identities(q, rng):
    cfg = FieldConfig(q)
    # E_n(T^{m+1}) = T E_n(T^m) + E_{n-1}^q(T^m)
    T = Poly.T(cfg)
    for n in range(1, 4):
        for m in range(9):
            tm = Poly.monomial(cfg, m)
            assert (eval_E(cfg, n, Poly.monomial(cfg, m + 1))
                    == T * eval_E(cfg, n, tm)
                    + eval_E(cfg, n - 1, tm).frobenius(1))
    # E_n^q(x) = [n+1] E_{n+1}(x) + E_n(x)
    for n in range(3):
        for _ in range(5):
            x = random_poly(cfg, rng, 4)
            assert (eval_E(cfg, n, x).frobenius(1)
                    == bracket(cfg, n + 1) * eval_E(cfg, n + 1, x)
                    + eval_E(cfg, n, x))


def test_eval_E_linearity(f3, rng):
    for n in range(3):
        for _ in range(10):
            x = random_poly(f3, rng, 4)
            y = random_poly(f3, rng, 4)
            assert eval_E(f3, n, x + y) == eval_E(f3, n, x) + eval_E(f3, n, y)
            for alpha in range(1, 3):
                assert (eval_E(f3, n, x.scalar_mul(alpha))
                        == eval_E(f3, n, x).scalar_mul(alpha))


def test_eval_E_series_path(f2, rng):
    # Truncated input gives the same digits as the exact path.
    for n in range(3):
        x = random_poly(f2, rng, 5)
        exact = eval_E(f2, n, x)
        approx = eval_E(f2, n, x.to_series(24))
        assert approx.matches(exact)


def test_eval_E_precision_and_domain_errors(f2):
    from carlitzbases import PrecisionError, TruncSeries
    with pytest.raises(PrecisionError):
        eval_E(f2, 3, TruncSeries(f2, 0, (1, 1), 4))  # loss bound is 7
    with pytest.raises(DomainError):
        eval_E(f2, 1, TruncSeries(f2, -1, (1,), 8))


# ---------------------------------------------------------------------------
# G_j and G'_j
# ---------------------------------------------------------------------------

def test_eval_G_examples(f2):
    x = parse_poly(f2, "T^3+T")
    assert eval_G(f2, 0, x) == Poly.one(f2)
    assert eval_G(f2, 0, x, primed=True) == Poly.one(f2)
    # 3 = 1 + 1*2: G_3 = E_0 * E_1; at x = T this is T * 1 = T.
    T = Poly.T(f2)
    assert eval_G(f2, 3, T) == T
    # G'_1(m) = m - 1 over F_2
    assert eval_G(f2, 1, Poly.zero(f2), primed=True) == Poly.one(f2)
    assert eval_G(f2, 1, Poly.one(f2), primed=True) == Poly.zero(f2)


def test_eval_G_digit_product(f3, rng):
    # Unprimed G_j is the plain product of E_n^{alpha_n}.
    for j in (4, 5, 7, 8):
        digits = DigitIndex.of(j, 3).digits
        for _ in range(5):
            x = random_poly(f3, rng, 3)
            prod = Poly.one(f3)
            for n, a in enumerate(digits):
                prod = prod * eval_E(f3, n, x) ** a
            assert eval_G(f3, j, x) == prod


@pytest.mark.parametrize("q", [2, 3])
def test_G_integral_valued(q):
    cfg = FieldConfig(q)
    deg, jmax = (4, q ** 4) if q == 2 else (3, q ** 3)
    for m in poly_enumerate(cfg, deg, "deg_lt"):
        for j in range(jmax):
            assert isinstance(eval_G(cfg, j, m), Poly)
            assert isinstance(eval_G(cfg, j, m, primed=True), Poly)


def test_eval_G_series_matches_exact(f2, rng):
    for j in (3, 5, 6):
        x = random_poly(f2, rng, 4)
        exact = eval_G(f2, j, x)
        approx = eval_G(f2, j, x.to_series(32))
        assert approx.matches(exact)
