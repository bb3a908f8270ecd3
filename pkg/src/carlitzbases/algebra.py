"""Exact arithmetic over F_q, F_q[T], and precision-tracked truncated Laurent series.

Field elements are integer codes in [0, q): the base-p digit vector of an
element in the polynomial basis of the modulus, packed little-endian
(code = sum digits[i] * p**i).  All field arithmetic goes through tables
built once per FieldConfig, so q is capped at 256.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Union


class DomainError(ValueError):
    """An input lies outside the mathematical domain of the operation."""


class PrecisionError(ValueError):
    """The requested digits are not determined by the known digits."""


class BudgetError(RuntimeError):
    """An enumeration or degree budget would be exceeded."""


class InexactDivisionError(ArithmeticError):
    """A division that must be exact left a remainder (internal inconsistency)."""


#: Precision marker for exactly known values.
EXACT = math.inf

MAX_Q = 256

# Shipped irreducible moduli over F_p, little-endian coefficients.
DEFAULT_MODULI = {
    4: (1, 1, 1),        # u^2 + u + 1
    8: (1, 1, 0, 1),     # u^3 + u + 1
    9: (1, 0, 1),        # u^2 + 1
    16: (1, 1, 0, 0, 1),  # u^4 + u + 1
    25: (1, 1, 1),       # u^2 + u + 1
    27: (1, 2, 0, 1),    # u^3 + 2u + 1
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _fp_poly_mul(a: tuple, b: tuple, p: int) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _fp_poly_mod(a: list, m: tuple, p: int) -> list:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * mi) % p
        while a and a[-1] == 0:
            a.pop()
    return a


class FieldConfig:
    """The coefficient field F_q with q = p**e, backed by full lookup tables."""

    def __init__(self, p: int, e: int = 1, modulus: tuple = None):
        if not _is_prime(p):
            raise DomainError(f"p = {p} is not prime")
        if e < 1:
            raise DomainError("extension degree must be >= 1")
        q = p ** e
        if q > MAX_Q:
            raise DomainError(f"q = {q} exceeds the supported cap {MAX_Q}")
        self.p = p
        self.e = e
        self.q = q
        if e == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = DEFAULT_MODULI.get(q)
                if modulus is None:
                    raise DomainError(f"no default modulus shipped for q = {q}")
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] == 0:
                raise DomainError("modulus must have degree e")
            self.modulus = modulus
            self._check_irreducible()
        self._build_tables()

    def _check_irreducible(self):
        # Trial division by every monic polynomial of degree 1..e//2 over F_p.
        p, e, m = self.p, self.e, self.modulus
        for d in range(1, e // 2 + 1):
            for code in range(p ** d):
                cand = [(code // p ** i) % p for i in range(d)] + [1]
                rem = _fp_poly_mod(list(m), tuple(cand), p)
                if not rem:
                    raise DomainError("modulus is reducible over F_p")

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q

        def digits(c):
            return tuple((c // p ** i) % p for i in range(e))

        def pack(ds):
            return sum(d * p ** i for i, d in enumerate(ds))

        self._digits = [digits(c) for c in range(q)]
        self.add_table = [
            [pack(tuple((x + y) % p for x, y in zip(digits(a), digits(b))))
             for b in range(q)]
            for a in range(q)
        ]
        if e == 1:
            self.mul_table = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            self.mul_table = []
            for a in range(q):
                row = []
                for b in range(q):
                    prod = _fp_poly_mul(digits(a), digits(b), p)
                    red = _fp_poly_mod(prod, self.modulus, p)
                    row.append(pack(tuple(red) + (0,) * (e - len(red))))
                self.mul_table.append(row)
        self.neg_table = [pack(tuple((-x) % p for x in digits(a))) for a in range(q)]
        self.inv_table = [None] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a][b] == 1:
                    self.inv_table[a] = b
                    break

    # -- element arithmetic (int codes) ------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("inversion of zero in F_q")
        return self.inv_table[a]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out, base = 1, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    @property
    def neg_one(self) -> int:
        return self.neg_table[1]

    def sign(self, n: int) -> int:
        """(-1)**n as a field element."""
        return 1 if n % 2 == 0 else self.neg_one

    def elem_digits(self, a: int) -> tuple:
        return self._digits[a]

    def elem_text(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        terms = []
        for i in range(self.e - 1, -1, -1):
            d = self._digits[a][i]
            if d == 0:
                continue
            if i == 0:
                terms.append(str(d))
            else:
                base = "u" if i == 1 else f"u^{i}"
                terms.append(base if d == 1 else f"{d}{base}")
        return "+".join(terms) if terms else "0"

    def __eq__(self, other):
        return (isinstance(other, FieldConfig)
                and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus))

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"FieldConfig(p={self.p})"
        return f"FieldConfig(p={self.p}, e={self.e}, modulus={self.modulus})"


def lucas_binom(a: int, b: int, p: int) -> int:
    """Binomial coefficient C(a, b) mod p by base-p digit products (Lucas).

    Returns an element of the prime subfield (an integer in [0, p)).
    """
    if a < 0 or b < 0:
        raise DomainError("lucas_binom requires non-negative arguments")
    out = 1
    while b:
        da, db = a % p, b % p
        if db > da:
            return 0
        out = (out * math.comb(da, db)) % p
        a //= p
        b //= p
    return out


# ---------------------------------------------------------------------------
# Polynomials over F_q
# ---------------------------------------------------------------------------

class Poly:
    """Dense polynomial in T over F_q, normalized (no trailing zero coefficient).

    The zero polynomial has degree -1 (sentinel).
    """

    __slots__ = ("cfg", "coeffs")

    def __init__(self, cfg: FieldConfig, coeffs: Iterable[int] = ()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.cfg = cfg
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, cfg):
        return cls(cfg)

    @classmethod
    def one(cls, cfg):
        return cls(cfg, (1,))

    @classmethod
    def constant(cls, cfg, c: int):
        return cls(cfg, (c,))

    @classmethod
    def monomial(cls, cfg, k: int, c: int = 1):
        if k < 0:
            raise DomainError("Poly exponents must be non-negative")
        return cls(cfg, (0,) * k + (c,))

    @classmethod
    def T(cls, cfg):
        return cls.monomial(cfg, 1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def coeff(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            return self.to_series() + other
        if not isinstance(other, Poly):
            return NotImplemented
        cfg = self.cfg
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(cfg, (cfg.add(self.coeff(i), other.coeff(i)) for i in range(n)))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        cfg = self.cfg
        return Poly(cfg, (cfg.neg(c) for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return self.to_series() * other
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly.zero(self.cfg)
        cfg = self.cfg
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                row = cfg.mul_table[a]
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = cfg.add(out[i + j], row[b])
        return Poly(cfg, out)

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative polynomial power")
        out, base = Poly.one(self.cfg), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scalar_mul(self, c: int):
        cfg = self.cfg
        if c == 0:
            return Poly.zero(cfg)
        return Poly(cfg, (cfg.mul(c, a) for a in self.coeffs))

    def divmod(self, other: "Poly"):
        if other.is_zero:
            raise DomainError("polynomial division by zero")
        cfg = self.cfg
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(cfg), self
        quot = [0] * (dq + 1)
        inv_lead = cfg.inv(other.coeffs[-1])
        for shift in range(dq, -1, -1):
            lead = rem[shift + other.degree]
            if lead == 0:
                continue
            factor = cfg.mul(lead, inv_lead)
            quot[shift] = factor
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = cfg.sub(rem[shift + i], cfg.mul(factor, b))
        return Poly(cfg, quot), Poly(cfg, rem)

    def exact_div(self, other: "Poly"):
        q, r = self.divmod(other)
        if not r.is_zero:
            raise InexactDivisionError(
                f"division of {self} by {other} left remainder {r}")
        return q

    def frobenius(self, m: int = 1):
        """Raise to the q**m power: exponents scale by q**m, coefficients fixed."""
        s = self.cfg.q ** m
        out = [0] * (len(self.coeffs) * s)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * s] = c
        return Poly(self.cfg, out)

    def to_series(self, prec=EXACT) -> "TruncSeries":
        return TruncSeries(self.cfg, 0, self.coeffs, prec)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return other == self
        return (isinstance(other, Poly)
                and self.cfg == other.cfg and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.cfg, self.coeffs))

    def text(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c:
                terms.append(_term_text(self.cfg, c, k))
        return "+".join(terms)

    __str__ = text

    def __repr__(self):
        return f"Poly({self.text()!r})"


def _term_text(cfg: FieldConfig, c: int, k: int) -> str:
    ct = cfg.elem_text(c)
    if cfg.e > 1 and ("+" in ct):
        ct = f"({ct})"
    if k == 0:
        return ct
    base = "T" if k == 1 else f"T^{k}"
    return base if c == 1 else f"{ct}*{base}"


def parse_poly(cfg: FieldConfig, text: str) -> Poly:
    """Parse the canonical polynomial text form (prime-field coefficients only).

    Accepts terms like ``T^4``, ``2*T``, ``3``, joined by ``+`` or ``-``,
    with ``T`` or ``u`` as the variable letter.
    """
    s = text.replace(" ", "").replace("u", "T")
    if not s or s == "0":
        return Poly.zero(cfg)
    s = s.replace("-", "+-")
    coeffs = {}
    for term in s.split("+"):
        if not term:
            continue
        negate = term.startswith("-")
        if negate:
            term = term[1:]
        if "T" in term:
            head, _, tail = term.partition("T")
            c = int(head.rstrip("*")) if head else 1
            k = int(tail[1:]) if tail.startswith("^") else (1 if not tail else None)
            if k is None:
                raise DomainError(f"cannot parse polynomial term {term!r}")
        else:
            c, k = int(term), 0
        c %= cfg.p
        if negate:
            c = cfg.neg(c)
        coeffs[k] = cfg.add(coeffs.get(k, 0), c)
    deg = max(coeffs) if coeffs else 0
    return Poly(cfg, (coeffs.get(i, 0) for i in range(deg + 1)))


def poly_enumerate(cfg: FieldConfig, n: int, variant: str = "deg_lt",
                   budget: int = None):
    """All polynomials of degree < n, or all monic polynomials of degree n.

    Lexicographic coefficient order, constant term fastest-varying; both
    variants yield exactly q**n polynomials.
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    count = cfg.q ** n
    if budget is not None and count > budget:
        raise BudgetError(
            f"enumeration needs {count} polynomials, budget is {budget}")
    q = cfg.q
    out = []
    for k in range(count):
        coeffs = [(k // q ** i) % q for i in range(n)]
        if variant == "deg_lt":
            out.append(Poly(cfg, coeffs))
        elif variant == "monic_deg_eq":
            out.append(Poly(cfg, coeffs + [1]))
        else:
            raise DomainError(f"unknown enumeration variant {variant!r}")
    return out


# ---------------------------------------------------------------------------
# Truncated Laurent series
# ---------------------------------------------------------------------------

Value = Union[Poly, "TruncSeries"]


class TruncSeries:
    """Laurent series over F_q known up to a stated precision exponent.

    Every coefficient of T**i with i < prec is known; coeffs stores the
    nonzero window starting at the valuation v.  prec = EXACT (infinity)
    marks an exactly known Laurent polynomial.  Empty coeffs means "zero
    to precision prec" (exactly zero when prec == EXACT).
    """

    __slots__ = ("cfg", "v", "coeffs", "prec")

    def __init__(self, cfg: FieldConfig, v: int, coeffs: Iterable[int], prec):
        coeffs = list(coeffs)
        if prec != EXACT:
            prec = int(prec)
            if len(coeffs) > prec - v:
                coeffs = coeffs[:prec - v]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            v += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.cfg = cfg
        self.v = v if coeffs else 0
        self.coeffs = tuple(coeffs)
        self.prec = prec

    @classmethod
    def zero(cls, cfg, prec=EXACT):
        return cls(cfg, 0, (), prec)

    @classmethod
    def monomial(cls, cfg, k: int, c: int = 1, prec=EXACT):
        return cls(cfg, k, (c,), prec)

    @property
    def is_exact(self) -> bool:
        return self.prec == EXACT

    @property
    def is_zero_to_prec(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self):
        """Least exponent with a nonzero known coefficient; None if zero so far."""
        return self.v if self.coeffs else None

    def _eff_v(self):
        # Lower bound on the valuation, usable even for zero-to-precision.
        return self.v if self.coeffs else self.prec

    def coeff(self, i: int) -> int:
        if i >= self.prec:
            raise PrecisionError(f"coefficient of T^{i} unknown past prec {self.prec}")
        if self.coeffs and self.v <= i < self.v + len(self.coeffs):
            return self.coeffs[i - self.v]
        return 0

    def truncate(self, prec) -> "TruncSeries":
        if prec > self.prec:
            raise PrecisionError("cannot raise precision by truncation")
        return TruncSeries(self.cfg, self.v, self.coeffs, prec)

    def __add__(self, other):
        if isinstance(other, Poly):
            other = other.to_series()
        if not isinstance(other, TruncSeries):
            return NotImplemented
        cfg = self.cfg
        prec = min(self.prec, other.prec)
        if not self.coeffs:
            return TruncSeries(cfg, other.v, other.coeffs, prec)
        if not other.coeffs:
            return TruncSeries(cfg, self.v, self.coeffs, prec)
        lo = min(self.v, other.v)
        hi = max(self.v + len(self.coeffs), other.v + len(other.coeffs))
        out = []
        for i in range(lo, hi):
            a = self.coeffs[i - self.v] if self.v <= i < self.v + len(self.coeffs) else 0
            b = other.coeffs[i - other.v] if other.v <= i < other.v + len(other.coeffs) else 0
            out.append(cfg.add(a, b))
        return TruncSeries(cfg, lo, out, prec)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        cfg = self.cfg
        return TruncSeries(cfg, self.v, (cfg.neg(c) for c in self.coeffs), self.prec)

    def __sub__(self, other):
        if isinstance(other, Poly):
            other = other.to_series()
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, Poly):
            return other.to_series() - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Poly):
            other = other.to_series()
        if not isinstance(other, TruncSeries):
            return NotImplemented
        cfg = self.cfg
        prec = min(self.prec + other._eff_v(), other.prec + self._eff_v())
        if not self.coeffs or not other.coeffs:
            return TruncSeries(cfg, 0, (), prec)
        lo = self.v + other.v
        if prec == EXACT:
            hi = lo + len(self.coeffs) + len(other.coeffs) - 1
        else:
            hi = min(prec, lo + len(self.coeffs) + len(other.coeffs) - 1)
        out = [0] * max(hi - lo, 0)
        for i, a in enumerate(self.coeffs):
            if a:
                row = cfg.mul_table[a]
                for j, b in enumerate(other.coeffs):
                    if b and i + j < len(out):
                        out[i + j] = cfg.add(out[i + j], row[b])
        return TruncSeries(cfg, lo, out, prec)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative series power; use invert_unit")
        out = TruncSeries.monomial(self.cfg, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scalar_mul(self, c: int):
        cfg = self.cfg
        if c == 0:
            return TruncSeries.zero(cfg)
        return TruncSeries(cfg, self.v, (cfg.mul(c, a) for a in self.coeffs), self.prec)

    def frobenius(self, m: int = 1) -> "TruncSeries":
        """Raise to the q**m power: exponent i maps to i*q**m, coefficients fixed."""
        s = self.cfg.q ** m
        prec = self.prec * s if self.prec != EXACT else EXACT
        if not self.coeffs:
            return TruncSeries(self.cfg, 0, (), prec)
        out = [0] * ((len(self.coeffs) - 1) * s + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * s] = c
        return TruncSeries(self.cfg, self.v * s, out, prec)

    def invert_unit(self, prec=None) -> "TruncSeries":
        """Multiplicative inverse; output precision is prec(x) - 2*v(x).

        Exact inputs need an explicit target ``prec`` for the result.
        """
        if not self.coeffs:
            raise DomainError("cannot invert a value that is zero to precision")
        cfg, v = self.cfg, self.v
        if self.prec == EXACT:
            if prec is None:
                raise PrecisionError("inverting an exact value needs a target precision")
            out_prec = prec
        else:
            out_prec = self.prec - 2 * v
            if prec is not None:
                out_prec = min(out_prec, prec)
        n_rel = out_prec + v  # digits of the unit-part reciprocal
        if n_rel <= 0:
            raise PrecisionError("insufficient precision to invert")
        u = [self.coeffs[k] if k < len(self.coeffs) else 0 for k in range(n_rel)]
        r0 = cfg.inv(u[0])
        r = [r0]
        for k in range(1, n_rel):
            acc = 0
            for j in range(1, k + 1):
                if u[j]:
                    acc = cfg.add(acc, cfg.mul(u[j], r[k - j]))
            r.append(cfg.neg(cfg.mul(r0, acc)))
        return TruncSeries(cfg, -v, r, out_prec)

    def divide_poly(self, d: Poly) -> "TruncSeries":
        """Divide by an exact nonzero polynomial; precision drops by v(d)."""
        if d.is_zero:
            raise DomainError("division by the zero polynomial")
        vd = d.valuation
        if self.prec == EXACT:
            raise PrecisionError("exact series division needs Poly.exact_div")
        work = self.prec + 2 * vd - min(self._eff_v(), 0) + 1
        inv = d.to_series(work).invert_unit()
        return (self * inv).truncate(self.prec - vd)

    def to_poly(self) -> Poly:
        """Exact Laurent polynomial with v >= 0 as a Poly; errors otherwise."""
        if self.prec != EXACT:
            raise PrecisionError("only exact series convert to Poly")
        if self.coeffs and self.v < 0:
            raise DomainError("negative-valuation value is not in F_q[T]")
        out = [0] * (self.v + len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            out[self.v + i] = c
        return Poly(self.cfg, out)

    def __eq__(self, other):
        if isinstance(other, Poly):
            other = other.to_series()
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.cfg == other.cfg and self.prec == other.prec
                and self.v == other.v and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.cfg, self.v, self.coeffs, self.prec))

    def matches(self, other) -> bool:
        """Digitwise agreement below the smaller of the two precisions."""
        if isinstance(other, Poly):
            other = other.to_series()
        prec = min(self.prec, other.prec)
        lo = min(self._eff_v(), other._eff_v())
        if lo == EXACT or lo >= prec:
            return True
        hi = prec
        if hi == EXACT:
            hi = max(self.v + len(self.coeffs), other.v + len(other.coeffs))
        return all(self.coeff(i) == other.coeff(i) for i in range(lo, int(hi)))

    def text(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(_series_term_text(self.cfg, c, self.v + i))
        body = "+".join(terms)
        if self.prec == EXACT:
            return body or "0"
        tail = f"O(T^{self.prec})"
        return f"{body}+{tail}" if body else tail

    __str__ = text

    def __repr__(self):
        return f"TruncSeries({self.text()!r})"


def _series_term_text(cfg, c, k):
    ct = cfg.elem_text(c)
    if cfg.e > 1 and "+" in ct:
        ct = f"({ct})"
    if k == 0:
        return ct
    base = "T" if k == 1 else f"T^{k}"
    return base if c == 1 else f"{ct}*{base}"


class Norm(NamedTuple):
    v: object          # valuation (int), or None for zero
    value: Fraction    # |x| = q**-v, or an upper bound
    is_bound: bool     # True when only "zero to precision" is known


def valuation_norm(x: Value) -> Norm:
    """Valuation and absolute value |x| = q**-v(x); |0| = 0 by convention.

    A series that is zero to precision N reports the upper bound q**-N.
    """
    if isinstance(x, Poly):
        v = x.valuation
        if v is None:
            return Norm(None, Fraction(0), False)
        return Norm(v, _abs_from_v(x.cfg.q, v), False)
    if x.coeffs:
        return Norm(x.v, _abs_from_v(x.cfg.q, x.v), False)
    if x.prec == EXACT:
        return Norm(None, Fraction(0), False)
    return Norm(None, _abs_from_v(x.cfg.q, x.prec), True)


def _abs_from_v(q: int, v: int) -> Fraction:
    return Fraction(1, q ** v) if v >= 0 else Fraction(q ** (-v))


def as_series(x: Value, prec=EXACT) -> TruncSeries:
    if isinstance(x, Poly):
        return x.to_series(prec)
    return x


def values_match(a: Value, b: Value) -> bool:
    """Equality of two values on their commonly known digits."""
    if isinstance(a, Poly) and isinstance(b, Poly):
        return a == b
    return as_series(a).matches(as_series(b))


# ---------------------------------------------------------------------------
# Seeded sampling helpers (used by identity checks and tests)
# ---------------------------------------------------------------------------

def random_poly(cfg: FieldConfig, rng, max_deg: int, nonzero: bool = False) -> Poly:
    while True:
        p = Poly(cfg, (rng.randrange(cfg.q) for _ in range(max_deg + 1)))
        if not (nonzero and p.is_zero):
            return p


def random_series(cfg: FieldConfig, rng, prec: int, min_exp: int = 0) -> TruncSeries:
    return TruncSeries(cfg, min_exp,
                       (rng.randrange(cfg.q) for _ in range(prec - min_exp)), prec)
