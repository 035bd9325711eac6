"""Sparse multivariate polynomials over an exact coefficient field.

A monomial is a tuple of nonnegative exponents, one per variable; a
polynomial is a dict monomial -> nonzero coefficient plus a field context
(see scalars).  Polynomials are immutable values: every operation returns a
fresh object and zero coefficients are stripped on construction.

Monomial orders: lex, grlex, grevlex (the default), each composable with a
variable permutation.  Orders are total and multiplicative; ``key`` returns a
tuple that sorts ascending, so ``max(..., key=order.key)`` is the leading
monomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .scalars import QQ, QQ_T, RatFun


class MonomialOrder:
    """Total order on exponent tuples: kind in {lex, grlex, grevlex}.

    ``permutation`` relabels variables before comparison: entry i is the
    position in the comparison tuple fed by original variable i.
    """

    KINDS = ("lex", "grlex", "grevlex")

    def __init__(self, kind: str = "grevlex", permutation=None):
        if kind not in self.KINDS:
            raise ValueError("unknown monomial order %r" % kind)
        self.kind = kind
        self.permutation = tuple(permutation) if permutation is not None else None

    def _permute(self, mono):
        if self.permutation is None:
            return mono
        out = [0] * len(mono)
        for i, e in enumerate(mono):
            out[self.permutation[i]] = e
        return tuple(out)

    def key(self, mono):
        m = self._permute(mono)
        if self.kind == "lex":
            return m
        d = sum(m)
        if self.kind == "grlex":
            return (d, m)
        return (d, tuple(-e for e in reversed(m)))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and \
            self.kind == other.kind and self.permutation == other.permutation

    def __hash__(self):
        return hash((self.kind, self.permutation))

    def __repr__(self):
        if self.permutation is None:
            return "MonomialOrder(%r)" % self.kind
        return "MonomialOrder(%r, %r)" % (self.kind, self.permutation)


GREVLEX = MonomialOrder("grevlex")


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    """b / a, assuming divisibility."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial; do not mutate ``terms`` after creation."""

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field=QQ, terms=None):
        t = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != nvars:
                    raise ValueError("monomial arity %d != nvars %d"
                                     % (len(mono), nvars))
                if not field.is_zero(c):
                    t[tuple(mono)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", t)

    def __setattr__(self, *a):
        raise AttributeError("Polynomial is immutable")

    # ---- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars, field=QQ):
        return Polynomial(nvars, field)

    @staticmethod
    def constant(c, nvars, field=QQ):
        return Polynomial(nvars, field, {(0,) * nvars: c})

    @staticmethod
    def variable(i, nvars, field=QQ):
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return Polynomial(nvars, field, {mono: field.one})

    @staticmethod
    def monomial(mono, c, nvars, field=QQ):
        return Polynomial(nvars, field, {tuple(mono): c})

    # ---- ring structure ------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.nvars == other.nvars \
            and self.field == other.field and self.terms == other.terms

    def _check(self, other):
        if self.nvars != other.nvars or self.field != other.field:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        F = self.field
        t = dict(self.terms)
        for mono, c in other.terms.items():
            if mono in t:
                s = F.add(t[mono], c)
                if F.is_zero(s):
                    del t[mono]
                else:
                    t[mono] = s
            else:
                t[mono] = c
        out = Polynomial.__new__(Polynomial)
        object.__setattr__(out, "nvars", self.nvars)
        object.__setattr__(out, "field", F)
        object.__setattr__(out, "terms", t)
        return out

    def __neg__(self):
        F = self.field
        t = {m: F.neg(c) for m, c in self.terms.items()}
        out = Polynomial.__new__(Polynomial)
        object.__setattr__(out, "nvars", self.nvars)
        object.__setattr__(out, "field", F)
        object.__setattr__(out, "terms", t)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.field
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        t = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                prod = F.mul(ca, cb)
                if mono in t:
                    s = F.add(t[mono], prod)
                    if F.is_zero(s):
                        del t[mono]
                    else:
                        t[mono] = s
                elif not F.is_zero(prod):
                    t[mono] = prod
        out = Polynomial.__new__(Polynomial)
        object.__setattr__(out, "nvars", self.nvars)
        object.__setattr__(out, "field", F)
        object.__setattr__(out, "terms", t)
        return out

    def scale(self, c):
        F = self.field
        if F.is_zero(c):
            return Polynomial.zero(self.nvars, F)
        t = {m: F.mul(c, v) for m, v in self.terms.items()}
        t = {m: v for m, v in t.items() if not F.is_zero(v)}
        out = Polynomial.__new__(Polynomial)
        object.__setattr__(out, "nvars", self.nvars)
        object.__setattr__(out, "field", F)
        object.__setattr__(out, "terms", t)
        return out

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.constant(self.field.one, self.nvars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    # ---- queries ---------------------------------------------------

    def total_degree(self) -> int:
        """-1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def leading_monomial(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), self.field.zero)

    def diff(self, i: int) -> "Polynomial":
        F = self.field
        t = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if e:
                nm = mono[:i] + (e - 1,) + mono[i + 1:]
                add = F.mul(F.from_int(e), c)
                if nm in t:
                    s = F.add(t[nm], add)
                    if F.is_zero(s):
                        del t[nm]
                    else:
                        t[nm] = s
                else:
                    t[nm] = add
        out = Polynomial.__new__(Polynomial)
        object.__setattr__(out, "nvars", self.nvars)
        object.__setattr__(out, "field", F)
        object.__setattr__(out, "terms", t)
        return out

    def evaluate(self, point):
        """Value at a point given as a sequence of field elements."""
        F = self.field
        if len(point) != self.nvars:
            raise ValueError("point arity mismatch")
        acc = F.zero
        for mono, c in self.terms.items():
            v = c
            for x, e in zip(point, mono):
                for _ in range(e):
                    v = F.mul(v, x)
            acc = F.add(acc, v)
        return acc

    def map_coeffs(self, new_field, fn) -> "Polynomial":
        """Apply fn to every coefficient, landing in new_field."""
        return Polynomial(self.nvars, new_field,
                          {m: fn(c) for m, c in self.terms.items()})

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        """(monomial, coefficient) pairs in descending order."""
        return [(m, self.terms[m])
                for m in sorted(self.terms, key=order.key, reverse=True)]

    def to_text(self, varnames=None, order: MonomialOrder = GREVLEX) -> str:
        """Canonical text: descending terms, '^' powers, explicit '*'.

        Over Q(t) every coefficient must be polynomial in t; it is rendered
        parenthesized so the result stays inside the expression grammar.
        """
        if varnames is None:
            varnames = ["x%d" % i for i in range(self.nvars)]
        if not self.terms:
            return "0"
        F = self.field
        chunks = []
        for mono, c in self.sorted_terms(order):
            if F is QQ_T:
                if not c.is_polynomial():
                    raise ValueError("cannot render a true quotient coefficient")
                negated = False
                cn = c.num
                if cn.coeffs[-1] < 0:
                    negated, cn = True, -cn
                if cn.degree == 0 and cn.coeffs[0].denominator == 1:
                    ctext = str(cn.coeffs[0])
                    trivial = cn.coeffs[0] == 1
                else:
                    ctext = "(%s)" % cn.str_in()
                    trivial = False
                sign = "-" if negated else "+"
            else:
                q = Fraction(c) if F is QQ else None
                if q is not None:
                    sign = "-" if q < 0 else "+"
                    q = abs(q)
                    ctext = str(q)
                    trivial = q == 1
                else:
                    sign = "+"
                    ctext = F.to_text(c)
                    trivial = ctext == "1"
            factors = [] if trivial and any(mono) else [ctext]
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(varnames[i])
                elif e > 1:
                    factors.append("%s^%d" % (varnames[i], e))
            body = "*".join(factors) if factors else ctext
            chunks.append((sign, body))
        sign, body = chunks[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __repr__(self):
        return "Polynomial(%s)" % self.to_text()


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def is_homogeneous(f: Polynomial) -> bool:
    """True when all terms share one total degree (vacuously for 0)."""
    degs = {sum(m) for m in f.terms}
    return len(degs) <= 1


def partial_derivatives(f: Polynomial):
    return [f.diff(i) for i in range(f.nvars)]


def power_sum(k: int, nvars: int, field=QQ) -> Polynomial:
    """p_k = sum_i x_i^k, k >= 1."""
    if k < 1:
        raise ValueError("power sum needs k >= 1")
    t = {}
    for i in range(nvars):
        mono = tuple(k if j == i else 0 for j in range(nvars))
        t[mono] = field.one
    return Polynomial(nvars, field, t)


def elementary_symmetric(k: int, nvars: int, field=QQ) -> Polynomial:
    """e_k = sum of all squarefree degree-k monomials, 0 <= k <= nvars."""
    if k < 0 or k > nvars:
        raise ValueError("elementary symmetric needs 0 <= k <= nvars")
    t = {}
    from itertools import combinations
    for subset in combinations(range(nvars), k):
        mono = tuple(1 if j in subset else 0 for j in range(nvars))
        t[mono] = field.one
    return Polynomial(nvars, field, t)


def restrict_to_hyperplane(f: Polynomial) -> Polynomial:
    """Substitute x_{n-1} = -(x_0 + ... + x_{n-2}); result has n-1 variables.

    This is restriction to the hyperplane sum(x_i) = 0 in the chart dropping
    the last variable; it is a ring homomorphism and preserves homogeneity.
    """
    n = f.nvars
    if n < 2:
        raise ValueError("need at least two variables to restrict")
    F = f.field
    neg_sum = Polynomial(n - 1, F,
                         {tuple(1 if j == i else 0 for j in range(n - 1)):
                          F.neg(F.one) for i in range(n - 1)})
    max_e = max((m[-1] for m in f.terms), default=0)
    powers = [Polynomial.constant(F.one, n - 1, F)]
    for _ in range(max_e):
        powers.append(powers[-1] * neg_sum)
    acc = Polynomial.zero(n - 1, F)
    for mono, c in f.terms.items():
        head = Polynomial.monomial(mono[:-1], c, n - 1, F)
        acc = acc + head * powers[mono[-1]]
    return acc


def monomial_basis(deg: int, nvars: int,
                   order: MonomialOrder = GREVLEX):
    """All exponent tuples of total degree deg, descending in the order."""
    if deg < 0:
        return []
    monos = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            monos.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), deg, nvars)
    monos.sort(key=order.key, reverse=True)
    return monos


def monomial_count(deg: int, nvars: int) -> int:
    if deg < 0:
        return 0
    return comb(deg + nvars - 1, nvars - 1)


def ci_hilbert_series_coeff(d: int, nvars: int, k: int) -> int:
    """Coefficient of t^k in ((1 - t^(d-1)) / (1 - t))^nvars.

    This is the Hilbert function of the quotient by a regular sequence of
    nvars forms of degree d-1 (the Jacobian ideal of a smooth degree-d
    Fermat hypersurface).
    """
    if d < 2 or nvars < 1:
        raise ValueError("need degree >= 2 and at least one variable")
    if k < 0:
        return 0
    block = [1] * (d - 1)
    series = [1]
    for _ in range(nvars):
        out = [0] * (k + 1)
        for i, a in enumerate(series):
            if i > k:
                break
            for j, b in enumerate(block):
                if i + j > k:
                    break
                out[i + j] += a * b
        series = out
    return series[k] if k < len(series) else 0
