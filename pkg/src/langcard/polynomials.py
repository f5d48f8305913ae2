"""Exact arithmetic for integer polynomials and rational functions.

Polynomials are dense coefficient tuples in ascending powers of z with
arbitrary-precision integer entries and no stored trailing zeros.  Rational
functions keep numerator and denominator coprime at all times (reduced by
polynomial GCD after every operation) with the sign normalized so that the
denominator's lowest-order nonzero coefficient is positive.  That canonical
form makes structural equality coincide with mathematical equality, which the
counting layer relies on when checking order invariance.

Multiplication uses Kronecker substitution (packing coefficients into one big
integer) above a small size threshold, and GCDs are computed modulo word-size
primes with CRT reconstruction and a trial-division check, so the result is
provably the true GCD.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DivergentStarError

# Primes just below 2**31 (products stay single-word); extended on demand.
_PRIMES = [
    2147483647,
    2147483629,
    2147483587,
    2147483579,
    2147483563,
    2147483549,
    2147483543,
    2147483497,
    2147483489,
    2147483477,
    2147483423,
    2147483399,
    2147483353,
    2147483323,
    2147483269,
    2147483249,
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n):
    # Deterministic Miller-Rabin for n < 3.3e24, far above anything we probe.
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _extend_primes():
    n = _PRIMES[-1] - 2
    while not _is_prime(n):
        n -= 2
    _PRIMES.append(n)


# Kronecker packing pays off once schoolbook would do this many int products.
_KRONECKER_CUTOFF = 256


def _trim(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _school_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _kronecker_mul(a, b):
    # Pack both factors into integers at a power-of-two point large enough
    # that the product's coefficients fit in one balanced digit each.
    max_a = max(abs(c) for c in a)
    max_b = max(abs(c) for c in b)
    bound = max_a * max_b * min(len(a), len(b))
    bits = bound.bit_length() + 2
    pa = sum(c << (bits * i) for i, c in enumerate(a))
    pb = sum(c << (bits * i) for i, c in enumerate(b))
    prod = pa * pb
    base = 1 << bits
    half = base >> 1
    mask = base - 1
    out = []
    for _ in range(len(a) + len(b) - 1):
        digit = prod & mask
        if digit >= half:
            digit -= base
        out.append(digit)
        prod = (prod - digit) >> bits
    return out


class Polynomial:
    """Integer polynomial in z, stored as ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(tuple(coeffs))

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        """Degree of the polynomial; -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else 0

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def trailing(self):
        """Lowest-order nonzero coefficient (0 for the zero polynomial)."""
        for c in self.coeffs:
            if c:
                return c
        return 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        if len(a) * len(b) <= _KRONECKER_CUTOFF:
            return Polynomial(_school_mul(a, b))
        return Polynomial(_kronecker_mul(a, b))

    def scale(self, k):
        if k == 0:
            return ZERO_POLY
        return Polynomial(tuple(c * k for c in self.coeffs))

    def shift(self, k):
        """Multiply by z**k."""
        if self.is_zero:
            return self
        return Polynomial((0,) * k + self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self):
        """GCD of all coefficients (nonnegative; 0 for the zero polynomial)."""
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
            if g == 1:
                break
        return g

    def exact_div(self, other):
        """Divide by ``other`` assuming exact divisibility over the integers."""
        q = _exact_div(self.coeffs, other.coeffs)
        if q is None:
            raise ArithmeticError("polynomial division is not exact")
        return Polynomial(q)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self)


ZERO_POLY = Polynomial()
ONE_POLY = Polynomial((1,))


def format_poly(p, var="z"):
    if p.is_zero:
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            term = str(mag)
        else:
            power = var if i == 1 else f"{var}^{i}"
            term = power if mag == 1 else f"{mag}{power}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts)


def _exact_div(a, b):
    """Quotient of a by b over Z, or None if the division has a remainder."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    if len(a) < len(b):
        return None
    rem = list(a)
    lead = b[-1]
    nq = len(a) - len(b) + 1
    quot = [0] * nq
    for i in range(nq - 1, -1, -1):
        c = rem[i + len(b) - 1]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            return None
        quot[i] = q
        for j, bj in enumerate(b):
            rem[i + j] -= q * bj
    if any(rem[: len(b) - 1]):
        return None
    return quot


def _gcd_mod(a, b, p):
    """Monic GCD of two coefficient lists in GF(p)[z]."""
    a = [c % p for c in a]
    b = [c % p for c in b]

    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    while b:
        # a mod b in place
        inv = pow(b[-1], -1, p)
        nb = len(b)
        for i in range(len(a) - nb, -1, -1):
            c = a[i + nb - 1]
            if c:
                q = c * inv % p
                for j in range(nb):
                    a[i + j] = (a[i + j] - q * b[j]) % p
        a, b = b, trim(a)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def poly_gcd(a, b):
    """GCD over Z[z], normalized to positive leading coefficient.

    Computed modulo large primes with CRT reconstruction; a candidate is
    accepted only after exact trial division of both inputs, so unlucky
    primes cannot produce a wrong answer.
    """
    if a.is_zero:
        return b if b.leading() > 0 else -b
    if b.is_zero:
        return a if a.leading() > 0 else -a
    ca, cb = a.content(), b.content()
    c = math.gcd(ca, cb)
    pa = tuple(x // ca for x in a.coeffs)
    pb = tuple(x // cb for x in b.coeffs)
    if len(pa) == 1 or len(pb) == 1:
        return Polynomial((c,))
    if len(pa) < len(pb):
        pa, pb = pb, pa
    lc = math.gcd(pa[-1], pb[-1])
    best = len(pb)  # 1 + max possible gcd degree
    residues = None
    modulus = 1
    previous = None
    idx = 0
    while True:
        if idx == len(_PRIMES):
            _extend_primes()
        p = _PRIMES[idx]
        idx += 1
        if pa[-1] % p == 0 or pb[-1] % p == 0:
            continue
        g = _gcd_mod(pa, pb, p)
        if len(g) == 1:
            return Polynomial((c,))
        if len(g) > best:
            continue  # unlucky prime
        if len(g) < best:
            best = len(g)
            residues, modulus, previous = None, 1, None
        scaled = [x * lc % p for x in g]
        if residues is None:
            residues, modulus = scaled, p
        else:
            # coefficient-wise CRT
            inv = pow(modulus, -1, p)
            combined = []
            for r_old, r_new in zip(residues, scaled):
                t = (r_new - r_old) % p * inv % p
                combined.append(r_old + modulus * t)
            residues, modulus = combined, modulus * p
        half = modulus // 2
        sym = [r - modulus if r > half else r for r in residues]
        cand = Polynomial(sym)
        cc = cand.content()
        if cc:
            cand = Polynomial(tuple(x // cc for x in cand.coeffs))
        if cand.leading() < 0:
            cand = -cand
        # try division once the lift stops changing (always on round one);
        # verification makes a wrong candidate impossible, just wasteful
        if previous is None or cand == previous:
            if _exact_div(pa, cand.coeffs) is not None and _exact_div(pb, cand.coeffs) is not None:
                return cand.scale(c)
        previous = cand


class RationalFunction:
    """Quotient of two integer polynomials, always in canonical form.

    Canonical means numerator and denominator are coprime, carry no common
    integer content, and the denominator's lowest-order nonzero coefficient
    is positive.  The zero function is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE_POLY):
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            self.num, self.den = ZERO_POLY, ONE_POLY
            return
        g = poly_gcd(num, den)
        if g.coeffs != (1,):
            num = num.exact_div(g)
            den = den.exact_div(g)
        if den.trailing() < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    @classmethod
    def _reduced(cls, num, den):
        """Build from an already-coprime pair, normalizing only the sign."""
        self = object.__new__(cls)
        if num.is_zero:
            self.num, self.den = ZERO_POLY, ONE_POLY
            return self
        if den.trailing() < 0:
            num, den = -num, -den
        self.num, self.den = num, den
        return self

    @classmethod
    def from_int(cls, k):
        return cls._reduced(Polynomial((k,)), ONE_POLY)

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def degree(self):
        """Max of numerator and denominator degree; -inf for zero."""
        if self.is_zero:
            return -math.inf
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero

    def at_zero(self):
        """Value at z = 0 as an exact fraction (denominator must not vanish)."""
        d = self.den.constant_term()
        if d == 0:
            raise ZeroDivisionError("pole at z = 0")
        return Fraction(self.num.constant_term(), d)

    def __add__(self, other):
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            num = self.num + other.num
            h = poly_gcd(num, self.den)
            if h.coeffs != (1,):
                return RationalFunction._reduced(num.exact_div(h), self.den.exact_div(h))
            return RationalFunction._reduced(num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.coeffs == (1,):
            num = self.num * other.den + other.num * self.den
            return RationalFunction._reduced(num, self.den * other.den)
        da = self.den.exact_div(g)
        db = other.den.exact_div(g)
        num = self.num * db + other.num * da
        # any common factor of num and the denominator divides g
        h = poly_gcd(num, g)
        if h.coeffs != (1,):
            num = num.exact_div(h)
            g = g.exact_div(h)
        return RationalFunction._reduced(num, g * da * db)

    def __neg__(self):
        return RationalFunction._reduced(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return RF_ZERO
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        na = self.num.exact_div(g1) if g1.coeffs != (1,) else self.num
        db = other.den.exact_div(g1) if g1.coeffs != (1,) else other.den
        nb = other.num.exact_div(g2) if g2.coeffs != (1,) else other.num
        da = self.den.exact_div(g2) if g2.coeffs != (1,) else self.den
        return RationalFunction._reduced(na * nb, da * db)

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        return format_rational(self)


RF_ZERO = RationalFunction.from_int(0)
RF_ONE = RationalFunction.from_int(1)


def kleene_star(f):
    """Series 1/(1 - f): counts sequences of blocks counted by f.

    Defined whenever the denominator keeps a nonzero constant term, i.e.
    whenever f(0) != 1.
    """
    den = f.den - f.num
    if den.constant_term() == 0:
        raise DivergentStarError("Kleene star of a series with constant term 1 diverges")
    # gcd(den, f.den) = gcd(f.den, f.num) = 1, so the pair is already coprime
    return RationalFunction._reduced(f.den, den)


def format_rational(f, var="z"):
    """Render as ``N / D`` with ascending powers, e.g. ``1 / (1 - 2z)``."""
    num = format_poly(f.num, var)
    den = format_poly(f.den, var)
    if len(f.den.coeffs) > 1:
        den = f"({den})"
    return f"{num} / {den}"
