"""Exact scalar arithmetic: rationals, large prime fields, rational functions of t.

Three coefficient fields are used throughout the package:

* Q       -- stdlib ``fractions.Fraction`` (already reduced, denominator > 0),
* F_p     -- plain ints in ``[0, p)`` together with a ``PrimeField(p)`` context,
* Q(t)    -- ``RatFun`` values (gcd cancelled, monic denominator).

Polynomial and matrix code never hard-codes a field; it receives one of the
field context objects below and calls its methods on raw coefficient values.
This keeps F_p arithmetic on machine ints, which matters for the Groebner runs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def normalize_rational(num: int, den: int) -> Fraction:
    """Reduced rational with positive denominator.  den == 0 is an error."""
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(num, den)


def prime_field_inverse(a: int, p: int) -> int:
    """Inverse of a mod p.  a must be nonzero mod p."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 in F_%d" % p)
    return pow(a, -1, p)


class RationalField:
    """Field context for Q; values are Fraction."""

    zero = Fraction(0)
    one = Fraction(1)
    name = "QQ"

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def from_fraction(q):
        return Fraction(q)

    @staticmethod
    def to_text(a):
        return str(a)


QQ = RationalField()


class PrimeField:
    """Field context for F_p; values are plain ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("modulus must be a prime >= 2")
        self.p = p
        self.zero = 0
        self.one = 1 % p
        self.name = "GF(%d)" % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return prime_field_inverse(a, self.p)

    def div(self, a, b):
        return (a * prime_field_inverse(b, self.p)) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        q = Fraction(q)
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(
                "denominator %d not invertible mod %d" % (q.denominator, self.p))
        return (q.numerator % self.p) * prime_field_inverse(den, self.p) % self.p

    def to_text(self, a):
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return self.name


# Default working primes: both > 2^30, both < 2^31 so products fit in int64.
DEFAULT_PRIMES = (2147483647, 2147483629)


class UPoly:
    """Dense univariate polynomial over Q, immutable.

    Coefficients are a tuple of Fraction, constant term first, no trailing
    zeros.  The zero polynomial has an empty tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("UPoly is immutable")

    @staticmethod
    def const(c) -> "UPoly":
        return UPoly((Fraction(c),))

    @staticmethod
    def t() -> "UPoly":
        return UPoly((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly(out)

    def __neg__(self):
        return UPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return UPoly(out)

    def scale(self, c) -> "UPoly":
        c = Fraction(c)
        return UPoly(tuple(c * x for x in self.coeffs))

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("UPoly division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return UPoly(), self
        q = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                f = c / lead
                q[i - db] = f
                for j, cb in enumerate(other.coeffs):
                    rem[i - db + j] -= f * cb
        return UPoly(q), UPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact UPoly division")
        return q

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.coeffs[-1])

    def gcd(self, other) -> "UPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "UPoly":
        return UPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i)) \
            if self.degree >= 1 else UPoly()

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> "UPoly":
        """Multiply by t^k (k >= 0)."""
        if self.is_zero():
            return self
        return UPoly((Fraction(0),) * k + self.coeffs)

    def compose(self, other: "UPoly") -> "UPoly":
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + UPoly.const(c)
        return acc

    def squarefree_part(self) -> "UPoly":
        if self.degree < 1:
            return self.monic()
        g = self.gcd(self.derivative())
        return self.exact_div(g.scale(self.coeffs[-1] / g.coeffs[-1])).monic() \
            if g.degree >= 1 else self.monic()

    def int_cleared(self):
        """(integer coefficient list, scale) with self = poly(ints) / scale."""
        if self.is_zero():
            return [], 1
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return [int(c * den) for c in self.coeffs], den

    def str_in(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = var
            else:
                mono = "%s^%d" % (var, i)
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = "%s*%s" % (abs(c), mono)
            else:
                body = str(abs(c))
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += " %s %s" % (sign, body)
        return out

    def __repr__(self):
        return "UPoly(%s)" % self.str_in()


def upoly_from_fraction(q) -> UPoly:
    return UPoly.const(q)


class RatFun:
    """Rational function of t over Q, canonical form.

    Invariants: gcd(num, den) = 1, den monic and nonzero; the zero function
    is 0/1.  Hashable, usable as a polynomial coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly = None, _canonical=False):
        if den is None:
            den = UPoly.const(1)
        if not _canonical:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                num, den = UPoly(), UPoly.const(1)
            else:
                g = num.gcd(den)
                if g.degree >= 1:
                    num, den = num.exact_div(g), den.exact_div(g)
                lead = den.coeffs[-1]
                if lead != 1:
                    num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFun is immutable")

    @staticmethod
    def const(c) -> "RatFun":
        return RatFun(UPoly.const(c), UPoly.const(1), _canonical=True)

    @staticmethod
    def t() -> "RatFun":
        return RatFun(UPoly.t(), UPoly.const(1), _canonical=True)

    @staticmethod
    def from_upoly(p: UPoly) -> "RatFun":
        return RatFun(p, UPoly.const(1), _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFun.const(other)
        return isinstance(other, RatFun) and \
            self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return RatFun(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __neg__(self):
        return RatFun(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RatFun(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("RatFun division by zero")
        return RatFun(self.num * other.den, self.den * other.num)

    def inv(self) -> "RatFun":
        return RatFun.const(1) / self

    def derivative(self) -> "RatFun":
        return RatFun(self.num.derivative() * self.den -
                      self.num * self.den.derivative(),
                      self.den * self.den)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole of rational function at %s" % x)
        return self.num(x) / d

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __str__(self):
        if self.den.degree == 0:
            return self.num.str_in()
        return "(%s)/(%s)" % (self.num.str_in(), self.den.str_in())

    def __repr__(self):
        return "RatFun(%s)" % str(self)


def ratfun_reduce(num, den) -> RatFun:
    """Canonical rational function from raw coefficient sequences.

    num and den are sequences of rationals, constant term first.
    """
    return RatFun(UPoly(num), UPoly(den))


class RationalFunctionField:
    """Field context for Q(t); values are RatFun."""

    zero = RatFun.const(0)
    one = RatFun.const(1)
    name = "QQ(t)"

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return a.inv()

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def is_zero(a):
        return a.is_zero()

    @staticmethod
    def from_int(n):
        return RatFun.const(n)

    @staticmethod
    def from_fraction(q):
        return RatFun.const(q)

    @staticmethod
    def to_text(a):
        return str(a)


QQ_T = RationalFunctionField()


def crt_pair(a1: int, p1: int, a2: int, p2: int) -> int:
    """x mod p1*p2 with x = a1 mod p1, x = a2 mod p2 (p1, p2 coprime)."""
    m = prime_field_inverse(p1 % p2, p2)
    return (a1 + ((a2 - a1) * m % p2) * p1) % (p1 * p2)


def rational_reconstruction(a: int, m: int) -> Fraction:
    """Fraction n/d with n/d = a mod m, |n|, d <= sqrt(m/2), gcd(d, m) = 1.

    Wang's algorithm via the extended Euclid sequence; raises ArithmeticError
    when no such fraction exists.
    """
    a %= m
    if a == 0:
        return Fraction(0)
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r1 == 0 or gcd(abs(s1), m) != 1 or abs(s1) > bound:
        raise ArithmeticError("no rational reconstruction of %d mod %d" % (a, m))
    n, d = r1, s1
    if d < 0:
        n, d = -n, -d
    if (n - a * d) % m != 0:
        raise ArithmeticError("rational reconstruction check failed")
    return Fraction(n, d)
