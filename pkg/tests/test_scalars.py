import random
from fractions import Fraction

import pytest

from nodalhodge import (DEFAULT_PRIMES, PrimeField, QQ, RatFun, UPoly,
                        crt_pair, rational_reconstruction)


def test_qq_context_basics():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.inv(Fraction(-3, 7)) == Fraction(-7, 3)
    assert QQ.is_zero(QQ.zero)
    assert QQ.from_int(4) == 4
    assert QQ.from_fraction(Fraction(2, 6)) == Fraction(1, 3)


def test_prime_field_inverse_and_fraction_lift():
    p = DEFAULT_PRIMES[0]
    F = PrimeField(p)
    for a in (1, 2, 7, p - 1, 123456789):
        assert F.mul(a, F.inv(a)) == 1
    assert F.from_fraction(Fraction(1, 3)) * 3 % p == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_upoly_division_and_gcd():
    a = UPoly((Fraction(-1), Fraction(0), Fraction(1)))  # t^2 - 1
    b = UPoly((Fraction(1), Fraction(1)))                # t + 1
    q, r = divmod(a, b)
    assert r.is_zero()
    assert q == UPoly((Fraction(-1), Fraction(1)))
    g = a.gcd(b)
    # gcd normalization is monic
    assert g.coeffs[-1] == 1 and g.degree == 1


def test_upoly_evaluate_compose_shift():
    f = UPoly((Fraction(2), Fraction(0), Fraction(3)))   # 3t^2 + 2
    assert f(Fraction(2)) == 14
    g = f.compose(UPoly((Fraction(1), Fraction(1))))     # t -> t + 1
    assert g(Fraction(1)) == f(Fraction(2))
    assert f.shift(2).degree == 4
    assert f.shift(2)(Fraction(2)) == 4 * 14


def test_ratfun_canonical_form():
    r = RatFun(UPoly((Fraction(0), Fraction(2))),
               UPoly((Fraction(0), Fraction(0), Fraction(4))))
    # 2t / 4t^2 reduces to (1/2)/t with monic denominator
    assert r.num == UPoly((Fraction(1, 2),))
    assert r.den == UPoly((Fraction(0), Fraction(1)))
    assert r(Fraction(3)) == Fraction(1, 6)
    assert (r - r).is_zero()
    with pytest.raises(ZeroDivisionError):
        RatFun(UPoly.const(1), UPoly())


def test_ratfun_field_operations():
    t = RatFun.t()
    one = RatFun.const(1)
    r = (t * t - one) / (t + one)
    assert r == t - one                       # cancellation happens
    assert r.inv() * r == one
    assert str(t / (t * t * t - RatFun.const(27))) == "(t)/(t^3 - 27)"


def test_crt_pair_reconstructs():
    p1, p2 = DEFAULT_PRIMES
    x = 123456789123456789
    a = crt_pair(x % p1, p1, x % p2, p2)
    assert a == x % (p1 * p2)


def test_rational_reconstruction_round_trip():
    p1, p2 = DEFAULT_PRIMES
    m = p1 * p2
    rng = random.Random(7)
    for _ in range(200):
        q = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        a = q.numerator * pow(q.denominator, -1, m) % m
        assert rational_reconstruction(a, m) == q


def test_rational_reconstruction_zero_and_integers():
    m = DEFAULT_PRIMES[0] * DEFAULT_PRIMES[1]
    assert rational_reconstruction(0, m) == 0
    assert rational_reconstruction(5, m) == 5
    assert rational_reconstruction(m - 3, m) == -3
