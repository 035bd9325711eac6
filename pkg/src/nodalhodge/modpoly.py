"""Dense univariate polynomial arithmetic over F_p.

Polynomials are plain lists of ints in [0, p), constant term first, no
trailing zeros (the zero polynomial is []).  Used by the eliminant / minimal
polynomial machinery and by the modular interpolation of Picard-Fuchs
coefficients, where coefficients must stay machine ints.
"""

from __future__ import annotations

from .scalars import prime_field_inverse


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def scale(a, c, p):
    c %= p
    return trim([x * c % p for x in a])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return trim([c % p for c in out])


def divmod_p(a, b, p):
    if not b:
        raise ZeroDivisionError("mod-p polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    inv_lead = prime_field_inverse(b[-1], p)
    if len(rem) - 1 < db:
        return [], trim(rem)
    q = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] % p
        if c:
            f = c * inv_lead % p
            q[i - db] = f
            for j, cb in enumerate(b):
                rem[i - db + j] = (rem[i - db + j] - f * cb) % p
    return trim(q), trim(rem)


def mod(a, b, p):
    return divmod_p(a, b, p)[1]


def gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, mod(a, b, p)
    if a:
        a = scale(a, prime_field_inverse(a[-1], p), p)
    return a


def monic(a, p):
    if not a:
        return a
    return scale(a, prime_field_inverse(a[-1], p), p)


def derivative(a, p):
    return trim([i * c % p for i, c in enumerate(a)][1:])


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def is_squarefree(a, p):
    return len(gcd(a, derivative(a, p), p)) == 1


def lagrange_interpolate(points, p):
    """Polynomial of degree < len(points) through the given (x, y) pairs."""
    result = []
    base = [1]
    for x, _ in points:
        base = mul(base, [(-x) % p, 1], p)
    for x, y in points:
        quot = divmod_p(base, [(-x) % p, 1], p)[0]
        denom = evaluate(quot, x, p)
        result = add(result, scale(quot, y * prime_field_inverse(denom, p) % p, p), p)
    return result


def rational_interpolate(points, p, max_den_degree=None):
    """Cauchy interpolation: (num, den) with num/den through the points.

    Runs the extended Euclid sequence on (prod (t - x_i), interpolant) and
    stops at the balanced degree split; den is monic.  Raises ArithmeticError
    when the reconstruction fails to pass through every sample (num and den
    sharing a root at some sample, or too few samples for the true degrees).
    """
    m = len(points)
    base = [1]
    for x, _ in points:
        base = mul(base, [(-x) % p, 1], p)
    f = lagrange_interpolate(points, p)
    stop = (m - 1) // 2 if max_den_degree is None else m - 1 - max_den_degree
    r0, r1 = base, f
    s0, s1 = [], [1]
    while r1 and len(r1) - 1 > stop:
        q, r = divmod_p(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
    num, den = r1, s1
    if not den:
        raise ArithmeticError("rational interpolation failed: zero denominator")
    g = gcd(num, den, p) if num else den
    if len(g) > 1:
        num = divmod_p(num, g, p)[0]
        den = divmod_p(den, g, p)[0]
    inv = prime_field_inverse(den[-1], p)
    num, den = scale(num, inv, p), scale(den, inv, p)
    for x, y in points:
        d = evaluate(den, x, p)
        if d == 0 or evaluate(num, x, p) != y * d % p:
            raise ArithmeticError("rational interpolation inconsistent at sample")
    return num, den
