"""Hodge-theoretic invariants of (nodal) hypersurfaces in P^4.

Smooth Hodge numbers come from graded pieces of the Jacobian ring, whose
dimensions depend only on the degree, so the complete-intersection Hilbert
series evaluates them without any Groebner work.  Euler-polynomial calculus,
node bounds, adjoint-space dimensions and the mixed-Hodge bookkeeping for the
blown-up threefold all live here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .groebner import (NOT_ZERO_DIMENSIONAL, build_point_algebra, buchberger,
                       jacobian_ideal, zero_dim_degree)
from .linalg import np_mod_rank, rank, vanishing_matrix
from .polyring import (Polynomial, ci_hilbert_series_coeff, monomial_basis,
                       monomial_count)
from .scalars import DEFAULT_PRIMES, QQ, PrimeField


@dataclass(frozen=True)
class HodgeDiamondH3:
    """Middle-cohomology Hodge numbers of a smooth projective threefold."""

    h30: int
    h21: int
    h12: int
    h03: int

    def __post_init__(self):
        if self.h30 != self.h03 or self.h21 != self.h12:
            raise ValueError("conjugation symmetry violated")

    def as_tuple(self):
        return (self.h30, self.h21, self.h12, self.h03)


def smooth_hodge_numbers(d: int, n: int = 3) -> HodgeDiamondH3:
    """Hodge numbers of primitive H^3 of a smooth degree-d hypersurface in P^4.

    h^{3-k,k} is the dimension of the degree-((k+1)d - 5) piece of the
    Jacobian ring, evaluated on the Fermat representative where the ring is a
    complete intersection of five degree-(d-1) forms.
    """
    if n != 3:
        raise ValueError("only threefolds in P^4 are supported")
    if d < 2:
        raise ValueError("degree must be at least 2")
    dims = [ci_hilbert_series_coeff(d, 5, (k + 1) * d - 5) for k in range(4)]
    return HodgeDiamondH3(dims[0], dims[1], dims[2], dims[3])


def node_bound(d: int) -> int:
    """Largest possible number of nodes on a degree-d hypersurface in P^4,
    namely h^{2,1} of the smooth model."""
    return smooth_hodge_numbers(d).h21


def pole_adjoint_threshold(n: int) -> int:
    """Adjoint-order threshold N = 2n - 3 attached to pole order n."""
    if n < 2:
        raise ValueError("pole order must be at least 2")
    return 2 * n - 3


# ---- adjoint spaces ------------------------------------------------------


def _validate_sigma(f: Polynomial, sigma):
    partials = [f.diff(i) for i in range(f.nvars)]
    pts = []
    for pt in sigma:
        pt = tuple(Fraction(c) for c in pt)
        if len(pt) != f.nvars:
            raise ValueError("point has %d coordinates, expected %d"
                             % (len(pt), f.nvars))
        if all(c == 0 for c in pt):
            raise ValueError("zero vector is not a projective point")
        if f.evaluate(pt) != 0:
            raise ValueError("point %s does not lie on the hypersurface"
                             % (pt,))
        for g in partials:
            if g.evaluate(pt) != 0:
                raise ValueError("point %s is not singular on the "
                                 "hypersurface" % (pt,))
        pts.append(pt)
    return pts


def adjoint_space_dim(f: Polynomial, sigma, pole_order: int,
                      adjoint_order: int) -> int:
    """Dimension of degree-(pole_order*d - 5) forms with multiplicity at
    least adjoint_order at every point of sigma.

    sigma must consist of singular points of V(f); the conditions matrix is
    assembled over Q and the kernel dimension returned.
    """
    if f.nvars != 5:
        raise ValueError("the ambient space is fixed to P^4")
    from .polyring import is_homogeneous
    if not is_homogeneous(f):
        raise ValueError("hypersurface polynomial must be homogeneous")
    d = f.total_degree()
    deg = pole_order * d - 5
    if deg < 0:
        raise ValueError("numerator degree %d negative" % deg)
    if adjoint_order < 1:
        raise ValueError("adjoint order must be positive")
    pts = _validate_sigma(f, sigma)
    if not pts:
        return monomial_count(deg, 5)
    M = vanishing_matrix(pts, deg, adjoint_order, 5)
    return M.ncols - rank(M)


def adjoint_rank_report(f: Polynomial, sigma, pole_order: int,
                        adjoint_order: int) -> dict:
    """Rank/kernel report of the rational conditions matrix."""
    d = f.total_degree()
    deg = pole_order * d - 5
    pts = _validate_sigma(f, sigma)
    cols = monomial_count(deg, 5)
    if not pts:
        return {"rows": 0, "cols": cols, "rank": 0, "kernel_dim": cols,
                "numerator_degree": deg}
    M = vanishing_matrix(pts, deg, adjoint_order, 5)
    r = rank(M)
    return {"rows": M.nrows, "cols": M.ncols, "rank": r,
            "kernel_dim": M.ncols - r, "numerator_degree": deg}


def _multi_indices(total: int, slots: int):
    if slots == 1:
        yield (total,)
        return
    for e in range(total + 1):
        for rest in _multi_indices(total - e, slots - 1):
            yield (e,) + rest


def _chart_partial_classes(pa, mono, affine_vars, sub_poly, adjoint_order, p):
    """Classes in F_p[T]/(m) of all chart partials of x^mono of order
    < adjoint_order, evaluated at the point coordinates."""
    from . import modpoly
    F = PrimeField(p)
    nv = len(affine_vars)
    poly = Polynomial.constant(F.one, nv, F)
    for slot, i in enumerate(affine_vars):
        if mono[i]:
            poly = poly * Polynomial.variable(slot, nv, F) ** mono[i]
    j0 = next(i for i in range(len(mono)) if i not in affine_vars)
    if mono[j0]:
        poly = poly * sub_poly ** mono[j0]
    maxe = max((max(m) for m in poly.terms), default=0)
    powers = []
    for i in affine_vars:
        cp = pa.coord_polys[i]
        ps = [[1]]
        for _ in range(maxe):
            ps.append(modpoly.mod(modpoly.mul(ps[-1], cp, p), pa.minpoly, p))
        powers.append(ps)
    rows = []
    for total in range(adjoint_order):
        for alpha in sorted(_multi_indices(total, nv)):
            q = poly
            for slot, a in enumerate(alpha):
                for _ in range(a):
                    q = q.diff(slot)
            acc = []
            for mono_q, c in q.terms.items():
                term = [c % p]
                for slot, e in enumerate(mono_q):
                    if e:
                        term = modpoly.mod(
                            modpoly.mul(term, powers[slot][e], p),
                            pa.minpoly, p)
                acc = modpoly.add(acc, term, p)
            rows.append(acc)
    return rows


def modular_adjoint_report(f: Polynomial, pole_order: int, adjoint_order: int,
                           primes=DEFAULT_PRIMES, seed: int = 0) -> dict:
    """Rank of the adjoint conditions matrix at the singular scheme of f,
    computed mod each prime by extracting the node coordinates as a quotient
    algebra F_p[T]/(eliminant) — no splitting field needed.

    The per-prime ranks must agree; the kernel dimension is the reported
    adjoint-space dimension cut out by the first adjunction condition.
    """
    if f.field is not QQ:
        raise ValueError("expects a rational polynomial")
    from .polyring import is_homogeneous
    if not is_homogeneous(f):
        raise ValueError("hypersurface polynomial must be homogeneous")
    d = f.total_degree()
    deg = pole_order * d - 5
    if deg < 0:
        raise ValueError("numerator degree %d negative" % deg)
    per_prime = []
    for i, p in enumerate(primes):
        F = PrimeField(p)
        fp = f.map_coeffs(F, lambda c: F.from_fraction(c))
        gb = buchberger(jacobian_ideal(fp))
        D = zero_dim_degree(gb)
        if D == NOT_ZERO_DIMENSIONAL or D == 0:
            per_prime.append({"prime": p, "scheme_degree": D, "rank": None,
                              "kernel_dim": None})
            continue
        pa = build_point_algebra(gb, rng=random.Random(seed + 7919 * i))
        monos = monomial_basis(deg, f.nvars)
        if adjoint_order == 1:
            cols = []
            for mono in monos:
                cls = pa.evaluate_poly(
                    Polynomial.monomial(mono, F.one, f.nvars, F))
                cols.append(list(cls) + [0] * (pa.D - len(cls)))
            M = [[cols[j][k] for j in range(len(cols))]
                 for k in range(pa.D)]
        else:
            j0 = max(i2 for i2, c in enumerate(pa.h_coeffs) if c)
            affine_vars = [i2 for i2 in range(f.nvars) if i2 != j0]
            nv = len(affine_vars)
            hinv = pow(pa.h_coeffs[j0], -1, p)
            sub_terms = {(0,) * nv: hinv % p}
            for slot, i2 in enumerate(affine_vars):
                c = pa.h_coeffs[i2]
                if c:
                    m2 = tuple(1 if s == slot else 0 for s in range(nv))
                    sub_terms[m2] = (-hinv * c) % p
            sub_poly = Polynomial(nv, F, {m: c for m, c in sub_terms.items()
                                          if c})
            all_rows = []
            for mono in monos:
                rows = _chart_partial_classes(pa, mono, affine_vars, sub_poly,
                                              adjoint_order, p)
                all_rows.append(rows)
            nrows = len(all_rows[0]) * pa.D
            M = [[0] * len(monos) for _ in range(nrows)]
            for j, rows in enumerate(all_rows):
                for bi, cls in enumerate(rows):
                    for k, c in enumerate(cls):
                        M[bi * pa.D + k][j] = c
        r = np_mod_rank(M, p)
        per_prime.append({"prime": p, "scheme_degree": D, "rank": r,
                          "kernel_dim": len(monos) - r})
    ranks = {e["rank"] for e in per_prime}
    degrees = {e["scheme_degree"] for e in per_prime}
    agreement = len(ranks) == 1 and len(degrees) == 1 and None not in ranks
    return {
        "per_prime": per_prime,
        "agreement": agreement,
        "numerator_degree": deg,
        "cols": monomial_count(deg, f.nvars),
        "rank": per_prime[0]["rank"] if agreement else None,
        "kernel_dim": per_prime[0]["kernel_dim"] if agreement else None,
    }


# ---- generalized Euler polynomials ---------------------------------------


class EulerPolynomial:
    """Finitely supported integer combination of x^p xbar^q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cleaned = {}
        if coeffs:
            for (p, q), c in coeffs.items():
                if c:
                    cleaned[(int(p), int(q))] = int(c)
        self.coeffs = cleaned

    @staticmethod
    def constant(c: int):
        return EulerPolynomial({(0, 0): c})

    def coefficient(self, p: int, q: int) -> int:
        return self.coeffs.get((p, q), 0)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return EulerPolynomial(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) - c
        return EulerPolynomial(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return EulerPolynomial({k: c * other
                                    for k, c in self.coeffs.items()})
        out = {}
        for (p1, q1), c1 in self.coeffs.items():
            for (p2, q2), c2 in other.coeffs.items():
                k = (p1 + p2, q1 + q2)
                out[k] = out.get(k, 0) + c1 * c2
        return EulerPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, EulerPolynomial) and \
            self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_symmetric(self) -> bool:
        return all(self.coefficient(q, p) == c
                   for (p, q), c in self.coeffs.items())

    def to_json_dict(self):
        terms = [{"p": p, "q": q, "c": c}
                 for (p, q), c in sorted(self.coeffs.items())]
        return {"terms": terms}

    def __repr__(self):
        if not self.coeffs:
            return "0"
        text = ""
        for (p, q), c in sorted(self.coeffs.items()):
            mono = ""
            if p:
                mono += "x" if p == 1 else "x^%d" % p
            if q:
                mono += "X" if q == 1 else "X^%d" % q
            mag = abs(c)
            body = mono if (mono and mag == 1) else "%d%s" % (mag, mono)
            if not text:
                text = ("-" if c < 0 else "") + body
            else:
                text += (" - " if c < 0 else " + ") + body
        return text


def euler_of_Pn(n: int) -> EulerPolynomial:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return EulerPolynomial({(k, k): 1 for k in range(n + 1)})


def euler_sum(parts) -> EulerPolynomial:
    out = EulerPolynomial()
    for e in parts:
        out = out + e
    return out


def euler_product(a: EulerPolynomial, b: EulerPolynomial) -> EulerPolynomial:
    return a * b


def euler_blowup(eX: EulerPolynomial, eY: EulerPolynomial,
                 r: int) -> EulerPolynomial:
    """Blow-up along a center with exceptional fibers P^r:
    e(X) + e(Y) * (x xbar + ... + (x xbar)^r)."""
    if r < 1:
        raise ValueError("codimension minus one must be at least 1")
    band = EulerPolynomial({(k, k): 1 for k in range(1, r + 1)})
    return eX + eY * band


def _check_node_data(m, a, b):
    if m < 0 or a < 0 or b < 0:
        raise ValueError("negative Hodge data")
    if m > b:
        raise ValueError("node count %d exceeds the smooth-model bound "
                         "h^{2,1} = %d" % (m, b))


def euler_nodal_threefold(m: int, a: int, b: int) -> EulerPolynomial:
    """Euler polynomial of a degree-d nodal threefold with m nodes, where the
    smooth model has h^{3,0} = a and h^{2,1} = b."""
    _check_node_data(m, a, b)
    return EulerPolynomial({
        (0, 0): 1, (1, 1): 1 - m, (3, 0): a, (2, 1): b - m,
        (1, 2): b - m, (0, 3): a, (2, 2): 1, (3, 3): 1,
    })


def euler_resolution(m: int, a: int, b: int) -> EulerPolynomial:
    """Euler polynomial of the blow-up of the nodal threefold at its m nodes
    (each node replaced by a smooth quadric surface)."""
    _check_node_data(m, a, b)
    return EulerPolynomial({
        (0, 0): 1, (1, 1): m + 1, (3, 0): a, (2, 1): b - m,
        (1, 2): b - m, (0, 3): a, (2, 2): 1 + m, (3, 3): 1,
    })


# ---- mixed Hodge structure bookkeeping -----------------------------------


@dataclass(frozen=True)
class MhsReport:
    """Dimension bookkeeping for H^3 of the nodal threefold.

    The weight filtration has W_1 = 0; Gr^W_3 is pure of the displayed Hodge
    type and matches H^3 of the resolution; W_2 is computed by exactness of
    the blow-up five-term sequence given dim H^2(X) as an input assumption.
    """

    gr3_types: tuple
    h3_resolution: int
    w2_dim: int
    dim_h3: int
    l_range: tuple
    s_range: tuple
    e11_W: int
    h2X: int

    def to_json_dict(self):
        return {
            "gr3_types": list(self.gr3_types),
            "h3_resolution": self.h3_resolution,
            "w2_dim": self.w2_dim,
            "dim_h3": self.dim_h3,
            "l_range": list(self.l_range),
            "s_range": list(self.s_range),
            "e11_W": self.e11_W,
            "relation": "l - s = 1 - m",
            "assumptions": {"h2X": self.h2X},
        }


def mhs_dims(m: int, a: int, b: int, h2X: int = 1) -> MhsReport:
    """Weight-graded dimensions of H^3 of a threefold with m nodes.

    gr3_types = (a, b-m, b-m, a) is the Hodge type of the pure top weight;
    w2_dim = 2m - (m+1) + h2X comes from the exact sequence relating the
    resolution, the exceptional quadrics, and H^2; the l, s intervals are
    reported as intervals, not resolved.
    """
    _check_node_data(m, a, b)
    if h2X < 1:
        raise ValueError("h2X must be at least 1 (hyperplane class)")
    h3res = 2 * a + 2 * (b - m)
    w2 = 2 * m - (m + 1) + h2X
    return MhsReport(
        gr3_types=(a, b - m, b - m, a),
        h3_resolution=h3res,
        w2_dim=w2,
        dim_h3=w2 + h3res,
        l_range=(0, m + 1),
        s_range=(max(0, m - 1), 2 * m),
        e11_W=1 - m,
        h2X=h2X,
    )
