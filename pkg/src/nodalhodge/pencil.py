"""Picard-Fuchs operators for one-parameter pencils of hypersurfaces.

A pencil f_t = F - t*G of degree-d forms in nu variables determines a family
of projective hypersurfaces; the periods of the holomorphic residue form
satisfy a linear ODE in t.  The operator is found by pole-order reduction:
differentiating Omega/f_t^k under the integral raises the pole order, and any
numerator lying in the Jacobian ideal of f_t drops it again at the cost of a
divergence term.  Iterating gives canonical coordinates for each derivative
of the period, and the first linear dependency among those coordinate vectors
yields the (monic, minimal) operator.

Two reduction engines share that contract:

* a symbolic one over Q(t), practical for small rings (plane cubics), and
* a permutation-invariant one that restricts every step to the subspace of
  symmetric polynomials, runs the linear algebra modulo word-sized primes at
  sampled parameter values, and recovers the exact rational coefficients by
  Cauchy interpolation, CRT and rational reconstruction.

The second half of the module is local analysis of the resulting operator:
theta-form calculus, indicial polynomials and exponents, a coordinate change
z = c*t^-k with a power conjugation (recorded, never silently applied), a
unipotency classification of the local monodromy, and power-series solvers
used to cross-check operators against period expansions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt

import numpy as np

from . import modpoly
from .linalg import (ExactMatrix, kernel_basis, np_mod_kernel, np_mod_matmul,
                     np_mod_rref, np_mod_solve_any)
from .groebner import GroebnerBasis, buchberger
from .polyring import GREVLEX, Polynomial, is_homogeneous
from .scalars import (DEFAULT_PRIMES, QQ, QQ_T, PrimeField, RatFun, UPoly,
                      crt_pair, rational_reconstruction)

INFINITY = "infinity"

# Third word-sized prime, reserved for verifying interpolated coefficients
# at parameter values that never entered the interpolation.
_VERIFY_PRIME = 2147483587

_SAMPLE_SCHEDULE = (36, 80, 170)


class SingularPencilError(ValueError):
    """The generic fiber failed the smoothness certificate."""


class NoOperatorFound(RuntimeError):
    """No dependency among period derivatives within the order cap."""

    def __init__(self, message, reduction_data=None):
        super().__init__(message)
        self.reduction_data = reduction_data or {}


# ---------------------------------------------------------------------------
# pencils and rational form representatives
# ---------------------------------------------------------------------------


def lift_to_ratfun(f: Polynomial) -> Polynomial:
    """Reinterpret a Q-polynomial over Q(t)."""
    if f.field is QQ_T:
        return f
    if f.field is not QQ:
        raise ValueError("expected a polynomial over QQ or QQ_T")
    return f.map_coeffs(QQ_T, RatFun.const)


def _poly_permute(f: Polynomial, perm) -> Polynomial:
    terms = {}
    for mono, c in f.terms.items():
        terms[tuple(mono[perm[i]] for i in range(len(mono)))] = c
    return Polynomial(f.nvars, f.field, terms)


def is_symmetric_poly(f: Polynomial) -> bool:
    """Invariance under all coordinate permutations (checked on generators)."""
    n = f.nvars
    if n <= 1:
        return True
    swap = list(range(n))
    swap[0], swap[1] = swap[1], swap[0]
    cyc = list(range(1, n)) + [0]
    return _poly_permute(f, swap) == f and _poly_permute(f, cyc) == f


class Pencil:
    """f_t = F - t*G with F, G homogeneous of the same degree over Q.

    G may be zero (a constant family).  The parameter enters linearly; use
    from_parameter_poly to split an explicit polynomial in t.
    """

    def __init__(self, F: Polynomial, G: Polynomial):
        if F.field is not QQ or G.field is not QQ:
            raise ValueError("pencil members must be defined over QQ")
        if F.nvars != G.nvars:
            raise ValueError("pencil members in different rings")
        if F.is_zero():
            raise ValueError("F must be nonzero")
        if not is_homogeneous(F) or not is_homogeneous(G):
            raise ValueError("pencil members must be homogeneous")
        if not G.is_zero() and G.total_degree() != F.total_degree():
            raise ValueError("F and G must have equal degree")
        self.F = F
        self.G = G
        self.nvars = F.nvars
        self.degree = F.total_degree()
        self._family = None
        self._jacobian_gb = None
        self._sym_tables = {}

    @staticmethod
    def from_parameter_poly(poly: Polynomial) -> "Pencil":
        """Split a polynomial over Q(t), affine in t, into F - t*G."""
        if poly.field is not QQ_T:
            raise ValueError("expected a polynomial over QQ(t)")
        fterms, gterms = {}, {}
        for mono, c in poly.terms.items():
            if not c.den == UPoly.const(1):
                raise ValueError("pencil coefficients must be polynomial in t")
            if c.num.degree > 1:
                raise ValueError("pencil must be affine in the parameter")
            cs = c.num.coeffs
            if len(cs) >= 1 and cs[0]:
                fterms[mono] = cs[0]
            if len(cs) >= 2 and cs[1]:
                gterms[mono] = -cs[1]
        n = poly.nvars
        return Pencil(Polynomial(n, QQ, fterms), Polynomial(n, QQ, gterms))

    def family(self) -> Polynomial:
        """f_t as a polynomial over Q(t)."""
        if self._family is None:
            ft = lift_to_ratfun(self.F)
            if not self.G.is_zero():
                ft = ft - lift_to_ratfun(self.G).scale(RatFun.t())
            self._family = ft
        return self._family

    def fiber_at(self, tau) -> Polynomial:
        tau = Fraction(tau)
        if self.G.is_zero():
            return self.F
        return self.F - self.G.scale(tau)

    @property
    def is_symmetric(self) -> bool:
        return is_symmetric_poly(self.F) and is_symmetric_poly(self.G)

    def jacobian_gb(self) -> GroebnerBasis:
        """Groebner basis (with cofactors) of the Jacobian ideal over Q(t)."""
        if self._jacobian_gb is None:
            ft = self.family()
            parts = [ft.diff(i) for i in range(self.nvars)]
            if any(p.is_zero() for p in parts):
                raise SingularPencilError(
                    "a partial derivative of f_t vanishes identically")
            self._jacobian_gb = buchberger(parts, GREVLEX, track_cofactors=True)
        return self._jacobian_gb

    def __repr__(self):
        return "Pencil(deg %d in %d vars)" % (self.degree, self.nvars)


class RationalFormRep:
    """Numerator representative P of the form P * Omega / f_t^k.

    For a degree-d pencil in nu variables the numerator at pole order k is
    homogeneous of degree k*d - nu.
    """

    def __init__(self, numerator: Polynomial, pole_order: int):
        if pole_order < 1:
            raise ValueError("pole order must be positive")
        numerator = lift_to_ratfun(numerator)
        if not numerator.is_zero() and not is_homogeneous(numerator):
            raise ValueError("numerator must be homogeneous")
        self.numerator = numerator
        self.pole_order = pole_order

    def expected_degree(self, pencil: Pencil) -> int:
        return self.pole_order * pencil.degree - pencil.nvars

    def __repr__(self):
        return "RationalFormRep(pole %d, deg %d)" % (
            self.pole_order, self.numerator.total_degree())


def _dt(poly: Polynomial) -> Polynomial:
    """Coefficientwise d/dt of a polynomial over Q(t)."""
    terms = {}
    for mono, c in poly.terms.items():
        dc = c.derivative()
        if not dc.is_zero():
            terms[mono] = dc
    return Polynomial(poly.nvars, QQ_T, terms)


def _cofactors_from_quotients(gb: GroebnerBasis, quotients):
    """Writing sum_l q_l g_l as sum_i A_i * input_i via tracked cofactors."""
    n_inputs = len(gb.inputs)
    A = [Polynomial.zero(gb.nvars, gb.field) for _ in range(n_inputs)]
    for q, cofs in zip(quotients, gb.cofactors):
        if q.is_zero():
            continue
        for i in range(n_inputs):
            if not cofs[i].is_zero():
                A[i] = A[i] + q * cofs[i]
    return A


def gd_reduce(form: RationalFormRep, pencil: Pencil):
    """One pole-order reduction step.

    When the numerator lies in the Jacobian ideal of f_t, returns an
    equivalent representative of pole order k-1 and True; otherwise returns
    the input unchanged and False.  Requires pole order >= 2: order-1 forms
    have nothing to reduce into.
    """
    k = form.pole_order
    if k < 2:
        raise ValueError("reduction needs pole order at least 2")
    if form.numerator.total_degree() != form.expected_degree(pencil) \
            and not form.numerator.is_zero():
        raise ValueError("numerator degree does not match the pole order")
    gb = pencil.jacobian_gb()
    nf, quotients = gb.normal_form(form.numerator, with_quotients=True)
    if not nf.is_zero():
        return form, False
    A = _cofactors_from_quotients(gb, quotients)
    div = Polynomial.zero(pencil.nvars, QQ_T)
    for i, a in enumerate(A):
        div = div + a.diff(i)
    scaled = div.scale(RatFun.const(Fraction(1, k - 1)))
    return RationalFormRep(scaled, k - 1), True


# ---------------------------------------------------------------------------
# derivative chain and coordinates (symbolic engine)
# ---------------------------------------------------------------------------


def _raw_chain(pencil: Pencil, jmax: int):
    """Numerators N_j with d^j/dt^j [Omega/f] = N_j Omega / f^{j+1}.

    N_0 = 1 and N_{j+1} = (dN_j/dt) f_t + (j+1) N_j G; no reduction is
    performed, so N_j is polynomial in t as well.
    """
    ft = pencil.family()
    GT = lift_to_ratfun(pencil.G)
    chain = [Polynomial.constant(RatFun.const(1), pencil.nvars, QQ_T)]
    for j in range(jmax):
        N = chain[-1]
        nxt = _dt(N) * ft
        if not GT.is_zero():
            nxt = nxt + (N * GT).scale(RatFun.const(j + 1))
        chain.append(nxt)
    return chain


def _coords_blocks_symbolic(gb: GroebnerBasis, pencil: Pencil,
                            numerator: Polynomial, top_level: int):
    """Reduce a raw numerator through all pole levels; returns {level: poly}.

    Level-k blocks are normal forms (degree k*d - nu), the part of the class
    not killed by the Jacobian ideal at that level; what is killed cascades
    to level k-1 as a divergence.
    """
    d, nu = pencil.degree, pencil.nvars
    blocks = {}
    N = numerator
    for k in range(top_level, 1, -1):
        if not N.is_zero() and N.total_degree() != k * d - nu:
            raise AssertionError("inhomogeneous numerator in reduction")
        nf, quotients = gb.normal_form(N, with_quotients=True)
        blocks[k] = nf
        A = _cofactors_from_quotients(gb, quotients)
        div = Polynomial.zero(nu, QQ_T)
        for i, a in enumerate(A):
            div = div + a.diff(i)
        N = div.scale(RatFun.const(Fraction(1, k - 1)))
    blocks[1] = gb.normal_form(N)
    return blocks


def _picard_fuchs_symbolic(pencil: Pencil, max_order: int, meta: dict):
    gb = pencil.jacobian_gb()
    d, nu = pencil.degree, pencil.nvars
    kmax = max_order + 1
    std = {k: gb.standard_monomials(k * d - nu) for k in range(1, kmax + 1)}
    layout = [(k, m) for k in range(1, kmax + 1) for m in std[k]]
    index = {km: i for i, km in enumerate(layout)}
    total = len(layout)

    chain = _raw_chain(pencil, max_order)
    cols = []
    for j, Nj in enumerate(chain):
        blocks = _coords_blocks_symbolic(gb, pencil, Nj, j + 1)
        col = [QQ_T.zero] * total
        for k, block in blocks.items():
            for mono, c in block.terms.items():
                col[index[(k, mono)]] = c
        cols.append(col)
        if j == 0:
            continue
        rows = [[cols[i][s] for i in range(j + 1)] for s in range(total)]
        ker = kernel_basis(ExactMatrix(rows, QQ_T, ncols=j + 1))
        ker = [v for v in ker if not v[j].is_zero()]
        if ker:
            v = ker[0]
            inv = v[j].inv()
            coeffs = [v[i] * inv for i in range(j)] + [RatFun.const(1)]
            meta.update(levels_used=j + 1,
                        coordinate_dims=[len(std[k]) for k in range(1, kmax + 1)])
            return PFOperator(coeffs, meta=meta)
    raise NoOperatorFound(
        "no dependency among period derivatives up to order %d" % max_order,
        reduction_data={"max_order": max_order,
                        "coordinate_dims": [len(std[k])
                                            for k in range(1, kmax + 1)]})


# ---------------------------------------------------------------------------
# symmetric (permutation-invariant) reduction tables
# ---------------------------------------------------------------------------


def _partitions_desc(total: int, slots: int):
    """Partitions of `total` into at most `slots` parts, as descending
    exponent tuples of length `slots`, largest first part first."""
    out = []

    def rec(prefix, remaining, maxpart, left):
        if left == 1:
            if remaining <= maxpart:
                out.append(tuple(prefix) + (remaining,))
            return
        lo = -(-remaining // left)
        for a in range(min(maxpart, remaining), lo - 1, -1):
            rec(prefix + [a], remaining - a, a, left - 1)

    if total == 0:
        return [(0,) * slots]
    rec([], total, total, slots)
    return out


def _msym_poly(lam, field=QQ) -> Polynomial:
    """Monomial symmetric polynomial: sum over distinct permutations."""
    n = len(lam)
    terms = {}
    for perm in set(itertools.permutations(lam)):
        terms[perm] = field.one
    return Polynomial(n, field, terms)


def _sym_coords(poly: Polynomial, parts, index):
    """Coordinates of a symmetric polynomial on the monomial-symmetric
    basis: the coefficient at each descending representative monomial."""
    vec = [Fraction(0)] * len(parts)
    for lam in parts:
        c = poly.coefficient(lam)
        if c:
            vec[index[lam]] = c
    return vec


class SymmetricTables:
    """Invariant-subspace reduction data for a symmetric pencil.

    Everything parameter-dependent is linear in t, so the tables store
    integer matrix pairs (F-part, G-part) plus exact divergence and raw
    derivative-chain data; per-prime reductions are derived on demand.
    """

    def __init__(self, pencil: Pencil, max_order: int):
        if not pencil.is_symmetric:
            raise ValueError("symmetric reduction needs a symmetric pencil")
        d, nu = pencil.degree, pencil.nvars
        if d < nu:
            raise ValueError("pencil degree below variable count")
        self.pencil = pencil
        self.max_order = max_order
        self.kmax = max_order + 1
        self.parts = {}
        self.index = {}
        for k in range(1, self.kmax + 1):
            delta = k * d - nu
            self.parts[k] = _partitions_desc(delta, nu)
            self.index[k] = {lam: i for i, lam in enumerate(self.parts[k])}
        self.offsets = {}
        pos = 0
        for k in range(1, self.kmax + 1):
            self.offsets[k] = pos
            pos += len(self.parts[k])
        self.total = pos

        # sum_i x_i^e * dF/dx_i for e = 0..nu-1; equivariant cofactor images
        # of (mu, e) are then mu * SF[e], and likewise for G.
        SF = [self._power_contraction(pencil.F, e) for e in range(nu)]
        SG = [self._power_contraction(pencil.G, e) for e in range(nu)]

        self.unknowns = {}
        self.EF = {}
        self.EG = {}
        self.Div = {}
        for k in range(2, self.kmax + 1):
            delta = k * d - nu
            degA = delta - (d - 1)
            unk = [(lam, e) for e in range(nu) if degA - e >= 0
                   for lam in _partitions_desc(degA - e, nu)]
            self.unknowns[k] = unk
            ef, eg, dv = [], [], []
            for lam, e in unk:
                mu = _msym_poly(lam)
                ef.append(_sym_coords(mu * SF[e], self.parts[k], self.index[k]))
                eg.append(_sym_coords(mu * SG[e], self.parts[k], self.index[k])
                          if not pencil.G.is_zero()
                          else [Fraction(0)] * len(self.parts[k]))
                dv.append(_sym_coords(self._divergence_basis(mu, e),
                                      self.parts[k - 1], self.index[k - 1]))
            self.EF[k] = _columns_to_fraction_matrix(ef, len(self.parts[k]))
            self.EG[k] = _columns_to_fraction_matrix(eg, len(self.parts[k]))
            self.Div[k] = _columns_to_fraction_matrix(dv, len(self.parts[k - 1]))

        chain = _raw_chain(pencil, max_order)
        self.chain = []
        for j, Nj in enumerate(chain):
            slices = _tpoly_slices(Nj)
            k = j + 1
            self.chain.append([
                _sym_coords(sl, self.parts[k], self.index[k]) for sl in slices])
        self._prime_cache = {}

    def _power_contraction(self, f: Polynomial, e: int) -> Polynomial:
        nu = self.pencil.nvars
        out = Polynomial.zero(nu, QQ)
        for i in range(nu):
            df = f.diff(i)
            if df.is_zero():
                continue
            xe = Polynomial.monomial(
                tuple(e if j == i else 0 for j in range(nu)), QQ.one, nu, QQ)
            out = out + xe * df
        return out

    def _divergence_basis(self, mu: Polynomial, e: int) -> Polynomial:
        # sum_i d/dx_i (mu * x_i^e), exact and parameter-free
        nu = self.pencil.nvars
        out = Polynomial.zero(nu, QQ)
        for i in range(nu):
            xe = Polynomial.monomial(
                tuple(e if j == i else 0 for j in range(nu)), QQ.one, nu, QQ)
            term = mu * xe
            out = out + term.diff(i)
        return out

    def mod_tables(self, p: int) -> "_PrimeTables":
        if p not in self._prime_cache:
            self._prime_cache[p] = _PrimeTables(self, p)
        return self._prime_cache[p]


def _columns_to_fraction_matrix(cols, nrows):
    if not cols:
        return [[Fraction(0)] * 0 for _ in range(nrows)]
    return [[cols[c][r] for c in range(len(cols))] for r in range(nrows)]


def _tpoly_slices(poly: Polynomial):
    """Split a polynomial over Q(t) with polynomial coefficients into
    t-power slices: [P_0, P_1, ...] over Q with poly = sum t^m P_m."""
    maxdeg = 0
    for c in poly.terms.values():
        if c.den != UPoly.const(1):
            raise ValueError("expected polynomial dependence on t")
        maxdeg = max(maxdeg, c.num.degree)
    slices = [dict() for _ in range(maxdeg + 1)]
    for mono, c in poly.terms.items():
        for m, a in enumerate(c.num.coeffs):
            if a:
                slices[m][mono] = a
    return [Polynomial(poly.nvars, QQ, s) for s in slices]


def _fraction_matrix_mod(M, p):
    rows = len(M)
    cols = len(M[0]) if rows else 0
    out = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        for j, c in enumerate(M[i]):
            if c:
                out[i, j] = c.numerator * pow(c.denominator, -1, p) % p
    return out


class _PrimeTables:
    def __init__(self, tables: SymmetricTables, p: int):
        self.p = p
        self.tables = tables
        self.EF = {k: _fraction_matrix_mod(tables.EF[k], p)
                   for k in tables.EF}
        self.EG = {k: _fraction_matrix_mod(tables.EG[k], p)
                   for k in tables.EG}
        self.Div = {k: _fraction_matrix_mod(tables.Div[k], p)
                    for k in tables.Div}
        self.chain = []
        for j, slices in enumerate(tables.chain):
            self.chain.append([
                _fraction_vector_mod(v, p) for v in slices])
        self.invk = {k: pow(k, -1, p) for k in range(1, tables.kmax + 1)}


def _fraction_vector_mod(v, p):
    out = np.zeros(len(v), dtype=np.int64)
    for i, c in enumerate(v):
        if c:
            out[i] = c.numerator * pow(c.denominator, -1, p) % p
    return out


def _tau_record(pt: _PrimeTables, tau: int, max_order: int):
    """Run the reduction cascade at one sampled parameter value.

    Returns (j, complement_signature, kernel_coefficients) for the first
    derivative order j admitting a dependency, or None when the sample
    misbehaves (non-unique kernel, inconsistent solve), or ("nodep",) when
    no dependency exists up to max_order.
    """
    p = pt.p
    t = pt.tables
    level_data = {}
    cols = []
    for j in range(max_order + 1):
        vec = np.zeros(len(t.parts[j + 1]), dtype=np.int64)
        tm = 1
        for m, slice_vec in enumerate(pt.chain[j]):
            if m:
                tm = tm * tau % p
            vec = (vec + tm * slice_vec) % p
        col = np.zeros(t.total, dtype=np.int64)
        N = vec
        for k in range(j + 1, 1, -1):
            if k not in level_data:
                E = (pt.EF[k] - tau * pt.EG[k]) % p
                _, piv = np_mod_rref(E.T, p)
                pivset = set(int(x) for x in piv)
                L = E.shape[0]
                C = [r for r in range(L) if r not in pivset]
                IC = np.zeros((L, len(C)), dtype=np.int64)
                for ci, r in enumerate(C):
                    IC[r, ci] = 1
                level_data[k] = (C, E.shape[1], np.concatenate([E, IC], axis=1))
            C, U, aug = level_data[k]
            x = np_mod_solve_any(aug, N, p)
            if x is None:
                return None
            c, rho = x[:U], x[U:]
            off = t.offsets[k]
            for ci, r in enumerate(C):
                col[off + r] = rho[ci]
            N = np_mod_matmul(pt.Div[k], c.reshape(-1, 1), p).ravel()
            N = N * pt.invk[k - 1] % p
        off = t.offsets[1]
        col[off:off + len(t.parts[1])] = N
        cols.append(col)
        if j == 0:
            continue
        M = np.stack(cols, axis=1)
        ker = np_mod_kernel(M, p)
        if ker:
            if len(ker) != 1:
                return None
            v = np.array([int(x) for x in ker[0]], dtype=object)
            if int(v[j]) % p == 0:
                return None
            inv = pow(int(v[j]), -1, p)
            coeffs = tuple(int(v[i]) * inv % p for i in range(j))
            sig = tuple((k, tuple(level_data[k][0]))
                        for k in sorted(level_data))
            return (j, sig, coeffs)
    return ("nodep",)


def _collect_prime_samples(tables: SymmetricTables, p: int, rng, count,
                           max_order):
    pt = tables.mod_tables(p)
    groups = {}
    nodep = 0
    seen = set()
    attempts = 0
    while sum(len(g) for g in groups.values()) < count:
        attempts += 1
        if attempts > 6 * count:
            break
        tau = rng.randrange(2, p - 1)
        if tau in seen:
            continue
        seen.add(tau)
        rec = _tau_record(pt, tau, max_order)
        if rec is None:
            continue
        if rec[0] == "nodep":
            nodep += 1
            if nodep > count // 2:
                raise NoOperatorFound(
                    "no dependency among period derivatives up to order %d"
                    % max_order,
                    reduction_data={"max_order": max_order, "prime": p})
            continue
        j, sig, coeffs = rec
        groups.setdefault((j, sig), []).append((tau, coeffs))
    if not groups:
        raise ArithmeticError("no usable parameter samples mod %d" % p)
    key = max(groups, key=lambda k: len(groups[k]))
    picked = groups[key]
    if len(picked) < max(3, count // 2):
        raise ArithmeticError("no stable complement structure mod %d" % p)
    return key[0], picked


def _interpolate_coeffs(samples, order, p):
    """Cauchy-interpolate each kernel coefficient from (tau, value) pairs."""
    out = []
    for i in range(order):
        pts = [(tau, coeffs[i]) for tau, coeffs in samples]
        out.append(modpoly.rational_interpolate(pts, p))
    return out


def _crt_rational_functions(nd1, p1, nd2, p2):
    """Combine per-prime (num, den) images into a RatFun over Q."""
    m = p1 * p2
    combined = []
    for (n1, d1), (n2, d2) in zip(nd1, nd2):
        if len(n1) != len(n2) or len(d1) != len(d2):
            raise ArithmeticError("degree mismatch between primes")
        num = [rational_reconstruction(crt_pair(a, p1, b, p2), m)
               for a, b in zip(n1, n2)]
        den = [rational_reconstruction(crt_pair(a, p1, b, p2), m)
               for a, b in zip(d1, d2)]
        combined.append(RatFun(UPoly(num), UPoly(den)))
    return combined


def _ratfun_eval_mod(r: RatFun, tau: int, p: int):
    num = _upoly_mod(r.num, p)
    den = _upoly_mod(r.den, p)
    dv = modpoly.evaluate(den, tau, p) if den else 0
    if dv == 0:
        return None
    nv = modpoly.evaluate(num, tau, p) if num else 0
    return nv * pow(dv, -1, p) % p


def _upoly_mod(u: UPoly, p: int):
    return modpoly.trim([c.numerator * pow(c.denominator, -1, p) % p
                         for c in u.coeffs])


def _verify_reconstruction(tables, coeffs, order, max_order, rng):
    """Check interpolated coefficients at fresh samples over a third prime."""
    p = _VERIFY_PRIME
    pt = tables.mod_tables(p)
    checked = 0
    attempts = 0
    while checked < 4 and attempts < 60:
        attempts += 1
        tau = rng.randrange(2, p - 1)
        rec = _tau_record(pt, tau, max_order)
        if rec is None or rec[0] == "nodep":
            continue
        j, _, sample = rec
        if j != order:
            return False
        vals = [_ratfun_eval_mod(c, tau, p) for c in coeffs]
        if any(v is None for v in vals):
            continue
        if tuple(vals) != sample:
            return False
        checked += 1
    return checked >= 2


def symmetric_reduce(pencil: Pencil, max_order=None) -> SymmetricTables:
    """Reduction tables restricted to the permutation-invariant subspace.

    Raises ValueError when the pencil is not symmetric.  The tables are
    cached on the pencil per order cap.
    """
    if max_order is None:
        max_order = pencil.nvars - 1
    if max_order not in pencil._sym_tables:
        pencil._sym_tables[max_order] = SymmetricTables(pencil, max_order)
    return pencil._sym_tables[max_order]


def _picard_fuchs_symmetric(pencil: Pencil, max_order: int, primes, seed,
                            meta: dict):
    tables = symmetric_reduce(pencil, max_order)
    rng = random.Random(seed ^ 0x9E3779B9)
    last_error = None
    for count in _SAMPLE_SCHEDULE:
        try:
            per_prime = []
            orders = []
            for p in primes[:2]:
                order, samples = _collect_prime_samples(
                    tables, p, rng, count, max_order)
                nd = _interpolate_coeffs(samples, order, p)
                per_prime.append(nd)
                orders.append(order)
            if orders[0] != orders[1]:
                raise ArithmeticError("derivative order disagrees between primes")
            order = orders[0]
            coeffs = _crt_rational_functions(per_prime[0], primes[0],
                                             per_prime[1], primes[1])
            if not _verify_reconstruction(tables, coeffs, order, max_order,
                                          rng):
                raise ArithmeticError("verification prime rejected the result")
            meta.update(levels_used=order + 1,
                        primes=list(primes[:2]),
                        verification_prime=_VERIFY_PRIME,
                        samples_per_prime=count,
                        coordinate_dims=[len(tables.parts[k])
                                         for k in range(1, tables.kmax + 1)])
            full = coeffs + [RatFun.const(1)]
            return PFOperator(full, meta=meta)
        except NoOperatorFound:
            raise
        except ArithmeticError as exc:
            last_error = exc
            continue
    raise ArithmeticError(
        "symmetric reduction failed to stabilize: %s" % last_error)


# ---------------------------------------------------------------------------
# the driver
# ---------------------------------------------------------------------------


def _assert_generic_smooth(pencil: Pencil, seed: int):
    """Certificate that the generic fiber is smooth: the Jacobian scheme of a
    random fiber is empty modulo a word-sized prime.  An empty special fiber
    forces an empty generic fiber, so this is a sound (one-sided) check."""
    rng = random.Random(seed ^ 0x5EED5EED)
    p = DEFAULT_PRIMES[0]
    F = PrimeField(p)
    for _ in range(3):
        tau = Fraction(rng.randint(2, 10 ** 6))
        fiber = pencil.fiber_at(tau)
        fp = fiber.map_coeffs(F, F.from_fraction)
        parts = [fp.diff(i) for i in range(fp.nvars)]
        if any(g.is_zero() for g in parts):
            continue
        gb = buchberger(parts, GREVLEX)
        if gb.zero_dim_degree() == 0:
            return tau
    raise SingularPencilError(
        "random fibers kept a nonempty singular locus mod %d" % p)


def picard_fuchs(pencil: Pencil, max_order=None, method="auto", seed=0,
                 primes=DEFAULT_PRIMES, allow_singular=False) -> "PFOperator":
    """Minimal monic operator in d/dt annihilating the period of Omega/f_t.

    method: "auto" picks the invariant fast path for symmetric pencils and
    the symbolic engine otherwise; "symbolic" and "symmetric" force a route.
    max_order caps the search (default: nvars - 1, the number of pole
    levels).  allow_singular skips the generic-smoothness certificate; the
    reduction theory degrades there, so results carry an "experimental"
    marker and no guarantee.
    """
    if pencil.degree < pencil.nvars:
        raise ValueError("pencil degree below variable count is unsupported")
    if max_order is None:
        max_order = pencil.nvars - 1
    if max_order < 1:
        raise ValueError("order cap must be at least 1")
    meta = {"degree": pencil.degree, "nvars": pencil.nvars,
            "max_order": max_order}
    if allow_singular:
        meta["experimental_singular"] = True
    else:
        _assert_generic_smooth(pencil, seed)
    if pencil.G.is_zero():
        meta["method"] = "constant"
        return PFOperator([QQ_T.zero, QQ_T.one], meta=meta)
    if method == "auto":
        method = "symmetric" if pencil.is_symmetric else "symbolic"
    if method == "symmetric":
        if not pencil.is_symmetric:
            raise ValueError("symmetric route needs a symmetric pencil")
        meta["method"] = "symmetric"
        return _picard_fuchs_symmetric(pencil, max_order, primes, seed, meta)
    if method == "symbolic":
        meta["method"] = "symbolic"
        return _picard_fuchs_symbolic(pencil, max_order, meta)
    raise ValueError("unknown method %r" % method)


# ---------------------------------------------------------------------------
# the operator and its local analysis
# ---------------------------------------------------------------------------


def _upoly_gcd_list(polys):
    g = UPoly()
    for q in polys:
        g = q if g.is_zero() else g.gcd(q)
        if g.degree == 0:
            break
    return g


class PFOperator:
    """Linear differential operator sum_i c_i(t) (d/dt)^i with c_r != 0."""

    def __init__(self, coeffs, meta=None):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if len(coeffs) < 2:
            raise ValueError("operator must have positive order")
        self.coeffs = coeffs
        self.meta = dict(meta or {})

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def monic(self) -> "PFOperator":
        lead = self.coeffs[-1]
        if lead == RatFun.const(1):
            return self
        inv = lead.inv()
        return PFOperator([c * inv for c in self.coeffs], meta=self.meta)

    def cleared(self):
        """Polynomial coefficients P_i with the same solution space:
        common denominator cleared, integer content and any common
        polynomial factor removed, leading coefficient sign-normalized."""
        den = UPoly.const(1)
        for c in self.coeffs:
            g = den.gcd(c.den)
            den = den * (c.den.exact_div(g) if g.degree >= 1 else c.den)
        polys = [c.num * den.exact_div(c.den) for c in self.coeffs]
        g = _upoly_gcd_list([q for q in polys if not q.is_zero()])
        if g.degree >= 1:
            polys = [q.exact_div(g) if not q.is_zero() else q for q in polys]
        num_g = 0
        den_l = 1
        for q in polys:
            for c in q.coeffs:
                if c:
                    num_g = gcd(num_g, abs(c.numerator))
                    den_l = den_l * c.denominator // gcd(den_l, c.denominator)
        scale = Fraction(den_l, num_g if num_g else 1)
        polys = [q.scale(scale) for q in polys]
        lead = polys[-1]
        if lead.coeffs[-1] < 0:
            polys = [-q for q in polys]
        return polys

    def theta_form(self):
        """Cleared theta-form in t: coefficients b_j with
        t^r * (operator) = sum_j b_j(t) theta^j."""
        return _theta_cleared(self.cleared())

    def singular_points(self):
        """Roots of the cleared leading coefficient, split into exact
        rational roots (with multiplicity) and a residual factor; infinity
        is always reported as a candidate point."""
        lead = self.cleared()[-1]
        roots, residual = _rational_roots(lead)
        out = {"rational": roots, "includes_infinity": True}
        if residual.degree >= 1:
            sf = residual.squarefree_part()
            intervals, complex_pairs = _isolate_real_roots(sf)
            out["residual_factor"] = sf.str_in("t")
            out["residual_real_intervals"] = [
                (str(a), str(b)) for a, b in intervals]
            out["residual_complex_pairs"] = complex_pairs
        else:
            out["residual_factor"] = None
        return out

    def exponents_report(self):
        pts = self.singular_points()
        report = {}
        for root, _mult in pts["rational"]:
            report[str(root)] = indicial_exponents(self, root).to_json_dict()
        report[INFINITY] = indicial_exponents(self, INFINITY).to_json_dict()
        return report

    def to_json_dict(self):
        mon = self.monic()
        pts = dict(self.singular_points())
        pts["rational"] = [{"root": str(r), "multiplicity": m}
                           for r, m in pts["rational"]]
        return {
            "order": self.order,
            "coeffs": [str(c) for c in mon.coeffs],
            "singular_points": pts,
            "exponents": self.exponents_report(),
        }

    def __eq__(self, other):
        if not isinstance(other, PFOperator):
            return NotImplemented
        return self.monic().coeffs == other.monic().coeffs

    def __repr__(self):
        return "PFOperator(order %d)" % self.order


# ---- theta calculus ------------------------------------------------------


def _stirling1_rows(n):
    """Signed Stirling numbers: falling(x, i) = sum_j rows[i][j] x^j."""
    rows = [[1]]
    for i in range(n):
        prev = rows[-1]
        nxt = [0] * (len(prev) + 1)
        for j, c in enumerate(prev):
            nxt[j + 1] += c
            nxt[j] -= i * c
        rows.append(nxt)
    return rows


def _stirling2_rows(n):
    """theta^j = sum_i rows[j][i] t^i (d/dt)^i."""
    rows = [[1]]
    for _ in range(n):
        prev = rows[-1]
        nxt = [0] * (len(prev) + 1)
        for i, c in enumerate(prev):
            nxt[i] += i * c
            nxt[i + 1] += c
        rows.append(nxt)
    return rows


def to_theta(coeffs):
    """theta-form over Q(t) of an operator given by d/dt coefficients."""
    r = len(coeffs) - 1
    s1 = _stirling1_rows(r)
    out = [QQ_T.zero] * (r + 1)
    for i, c in enumerate(coeffs):
        if c.is_zero():
            continue
        tinv = RatFun(UPoly.const(1), UPoly.const(1).shift(i))
        base = c * tinv
        for j, s in enumerate(s1[i]):
            if s:
                out[j] = out[j] + base * RatFun.const(s)
    return out


def from_theta(theta_coeffs):
    """d/dt coefficients of an operator given in theta-form over Q(t)."""
    r = len(theta_coeffs) - 1
    s2 = _stirling2_rows(r)
    out = [QQ_T.zero] * (r + 1)
    for j, b in enumerate(theta_coeffs):
        if b.is_zero():
            continue
        for i, s in enumerate(s2[j]):
            if s:
                ti = RatFun.from_upoly(UPoly.const(s).shift(i))
                out[i] = out[i] + b * ti
    return out


def theta_conjugate(theta_coeffs, lam):
    """Conjugation by t^lam: substitutes theta -> theta + lam."""
    lam = Fraction(lam)
    r = len(theta_coeffs) - 1
    out = [QQ_T.zero] * (r + 1)
    for j, b in enumerate(theta_coeffs):
        if b.is_zero():
            continue
        for k in range(j + 1):
            c = comb(j, k) * lam ** (j - k)
            if c:
                out[k] = out[k] + b * RatFun.const(c)
    return out


def _ratfun_inverse_power_sub(r: RatFun, k: int, c: Fraction) -> RatFun:
    """Rewrite r(t) through z = c * t^-k; requires r to be a rational
    function of t^k up to a common t-power."""
    if r.is_zero():
        return r
    c = Fraction(c)
    num, den = r.num, r.den
    a = _ord0(num)
    b = _ord0(den)
    if (a - b) % k:
        raise ValueError("coefficient is not a function of t^%d" % k)
    ncore = list(num.coeffs[a:])
    dcore = list(den.coeffs[b:])
    for poly in (ncore, dcore):
        for m, cm in enumerate(poly):
            if cm and m % k:
                raise ValueError("coefficient is not a function of t^%d" % k)
    M = (len(ncore) - 1) // k
    Mp = (len(dcore) - 1) // k
    # t^{km} = (c/z)^m; clear z powers so both sides are polynomial
    Nz = [Fraction(0)] * (M + 1)
    for m in range(M + 1):
        cm = ncore[k * m] if k * m < len(ncore) else Fraction(0)
        Nz[M - m] = cm * c ** m
    Dz = [Fraction(0)] * (Mp + 1)
    for m in range(Mp + 1):
        cm = dcore[k * m] if k * m < len(dcore) else Fraction(0)
        Dz[Mp - m] = cm * c ** m
    gamma = (a - b) // k
    shift = Mp - M - gamma
    scal = c ** gamma
    numpoly = UPoly(Nz).scale(scal)
    denpoly = UPoly(Dz)
    if shift >= 0:
        numpoly = numpoly.shift(shift)
    else:
        denpoly = denpoly.shift(-shift)
    return RatFun(numpoly, denpoly)


def theta_inverse_power_substitution(theta_coeffs, k: int, c) -> list:
    """Substitute z = c * t^-k in a theta-form: theta_t = -k * theta_z.

    The form is first multiplied on the left by a power of t (a unit, fixed
    by the coefficients' valuations) so that every coefficient becomes a
    genuine function of t^k; raises when no single power achieves that.
    """
    s = None
    for b in theta_coeffs:
        if b.is_zero():
            continue
        res = (_ord0(b.den) - _ord0(b.num)) % k
        if s is None:
            s = res
        elif res != s:
            raise ValueError("theta-form is not a function of t^%d" % k)
    if s is None:
        raise ValueError("zero theta-form")
    unit = RatFun.from_upoly(UPoly.const(1).shift(s)) if s else None
    out = []
    for j, b in enumerate(theta_coeffs):
        if unit is not None and not b.is_zero():
            b = b * unit
        bz = _ratfun_inverse_power_sub(b, k, c)
        out.append(bz * RatFun.const(Fraction((-k) ** j)))
    return out


def clear_theta_form(theta_coeffs):
    """Canonical polynomial theta-form: common denominator and common
    polynomial factor removed, integer-primitive, first nonzero coefficient
    of the leading entry positive."""
    den = UPoly.const(1)
    for b in theta_coeffs:
        g = den.gcd(b.den)
        den = den * (b.den.exact_div(g) if g.degree >= 1 else b.den)
    polys = [b.num * den.exact_div(b.den) for b in theta_coeffs]
    g = _upoly_gcd_list([q for q in polys if not q.is_zero()])
    if g.degree >= 1:
        polys = [q.exact_div(g) if not q.is_zero() else q for q in polys]
    num_g, den_l = 0, 1
    for q in polys:
        for coef in q.coeffs:
            if coef:
                num_g = gcd(num_g, abs(coef.numerator))
                den_l = den_l * coef.denominator // gcd(den_l,
                                                        coef.denominator)
    polys = [q.scale(Fraction(den_l, num_g if num_g else 1)) for q in polys]
    lead = polys[-1]
    if not lead.is_zero() and lead.coeffs[_ord0(lead)] < 0:
        polys = [-q for q in polys]
    return polys


def mum_transform(op: PFOperator, k: int, c, sigma):
    """Distinguished-coordinate form of the operator.

    Conjugates by t^-sigma (the period is t^-sigma times a power series in
    z) and substitutes z = c * t^-k.  Returns the cleared theta-form in z
    together with a record of the transformation; the original operator is
    left untouched.
    """
    sigma = Fraction(sigma)
    c = Fraction(c)
    theta = to_theta(op.monic().coeffs)
    theta = theta_conjugate(theta, -sigma)
    theta_z = theta_inverse_power_substitution(theta, k, c)
    cleared = clear_theta_form(theta_z)
    record = {"substitution": "z = %s * t^-%d" % (c, k),
              "k": k, "c": str(c), "conjugated_by": "t^-%s" % sigma}
    return cleared, record


# ---- indicial data and unipotency ----------------------------------------


def _ord0(u: UPoly) -> int:
    for i, c in enumerate(u.coeffs):
        if c:
            return i
    return -1


def _theta_cleared(P):
    """theta-form of sum P_i (d/dt)^i, premultiplied by t^r to stay
    polynomial: b_j = sum_{i>=j} t^{r-i} P_i s1(i, j)."""
    r = len(P) - 1
    s1 = _stirling1_rows(r)
    out = [UPoly() for _ in range(r + 1)]
    for i, Pi in enumerate(P):
        if Pi.is_zero():
            continue
        shifted = Pi.shift(r - i)
        for j, s in enumerate(s1[i]):
            if s:
                out[j] = out[j] + shifted.scale(s)
    return out


@dataclass(frozen=True)
class IndicialData:
    point: object
    order: int
    indicial_poly: UPoly
    exponents: tuple
    residual_factor: UPoly
    residual_intervals: tuple
    residual_complex_pairs: int
    regular_singular: bool

    @property
    def apparent(self) -> bool:
        """Exponents 0..r-1 each once: the local solutions look like an
        ordinary point's."""
        return (self.regular_singular
                and sorted(self.exponents) == list(map(Fraction,
                                                       range(self.order))))

    def to_json_dict(self):
        out = {
            "point": str(self.point),
            "exponents": [str(e) for e in self.exponents],
            "regular_singular": self.regular_singular,
            "apparent": self.apparent,
        }
        if self.residual_factor.degree >= 1:
            out["residual_factor"] = self.residual_factor.str_in("r")
            out["residual_real_intervals"] = [
                (str(a), str(b)) for a, b in self.residual_intervals]
            out["residual_complex_pairs"] = self.residual_complex_pairs
        return out


def _indicial_from_local(loc, r, point) -> IndicialData:
    m = min(_ord0(q) for q in loc if not q.is_zero())
    ind = UPoly(tuple(q.coeffs[m] if m < len(q.coeffs) else Fraction(0)
                      for q in loc))
    regular = (not loc[r].is_zero()) and _ord0(loc[r]) == m
    roots, residual = _rational_roots(ind)
    exponents = []
    for root, mult in roots:
        exponents.extend([root] * mult)
    intervals, cpairs = ((), 0)
    if residual.degree >= 1:
        iv, cpairs = _isolate_real_roots(residual)
        intervals = tuple(iv)
    return IndicialData(point=point, order=r, indicial_poly=ind,
                        exponents=tuple(sorted(exponents)),
                        residual_factor=residual,
                        residual_intervals=intervals,
                        residual_complex_pairs=cpairs,
                        regular_singular=regular)


def indicial_exponents(op: PFOperator, point) -> IndicialData:
    """Exponents of the operator at a rational point or at infinity.

    Rational roots of the indicial polynomial are returned exactly with
    multiplicity; what remains is reported as a residual factor with
    isolating intervals for its real roots.  regular_singular is False when
    the leading coefficient drops out of the indicial polynomial (an
    irregular point: the exponent list is then incomplete by design).
    """
    P = op.cleared()
    r = op.order
    if point == INFINITY:
        B = _theta_cleared(P)
        D = max(q.degree for q in B if not q.is_zero())
        loc = []
        for j, q in enumerate(B):
            cs = list(q.coeffs) + [Fraction(0)] * (D + 1 - len(q.coeffs))
            rev = UPoly(tuple(reversed(cs)))
            loc.append(rev.scale(Fraction((-1) ** j)))
    else:
        a = Fraction(point)
        shift = UPoly((a, Fraction(1)))
        loc = _theta_cleared([q.compose(shift) for q in P])
    return _indicial_from_local(loc, r, point)


def theta_indicial(theta_coeffs, point_label=Fraction(0)) -> IndicialData:
    """Indicial data at the origin straight from a cleared theta-form
    (as produced by mum_transform)."""
    return _indicial_from_local(list(theta_coeffs), len(theta_coeffs) - 1,
                                point_label)


MAXIMAL_UNIPOTENT = "MAXIMAL_UNIPOTENT"
UNIPOTENT = "UNIPOTENT"
QUASI_UNIPOTENT = "QUASI_UNIPOTENT"
NON_LOCAL_MONODROMY = "NON_LOCAL_MONODROMY"


@dataclass(frozen=True)
class UnipotencyReport:
    kind: str
    nilpotency_index: object
    multiplicity_bound: object
    detail: str

    def to_json_dict(self):
        return {"kind": self.kind,
                "nilpotency_index": self.nilpotency_index,
                "multiplicity_bound": self.multiplicity_bound,
                "detail": self.detail}


def unipotency_class(ind: IndicialData) -> UnipotencyReport:
    """Classify the local monodromy from the indicial exponents.

    All exponents zero gives the distinguished class with nilpotency index
    exactly the order r (log N has N^{r-1} != 0 and N^r == 0); all-integer
    exponents give a unipotent class with the largest exponent multiplicity
    as Jordan-block bound; rational exponents give quasi-unipotence; and
    irrational or missing exponents leave nothing to certify.
    """
    r = ind.order
    if not ind.regular_singular:
        return UnipotencyReport(NON_LOCAL_MONODROMY, None, None,
                                "irregular singular point")
    if ind.residual_factor.degree >= 1:
        return UnipotencyReport(NON_LOCAL_MONODROMY, None, None,
                                "non-rational indicial exponents")
    if len(ind.exponents) != r:
        return UnipotencyReport(NON_LOCAL_MONODROMY, None, None,
                                "indicial polynomial degenerates")
    if all(e == 0 for e in ind.exponents):
        return UnipotencyReport(
            MAXIMAL_UNIPOTENT, r, r,
            "N^%d != 0 and N^%d == 0" % (r - 1, r))
    if all(e.denominator == 1 for e in ind.exponents):
        counts = {}
        for e in ind.exponents:
            counts[e] = counts.get(e, 0) + 1
        bound = max(counts.values())
        return UnipotencyReport(
            UNIPOTENT, None, bound,
            "integral exponents; Jordan blocks of size at most %d" % bound)
    lcm_den = 1
    for e in ind.exponents:
        lcm_den = lcm_den * e.denominator // gcd(lcm_den, e.denominator)
    return UnipotencyReport(
        QUASI_UNIPOTENT, None, None,
        "rational exponents; monodromy order divides %d up to unipotent part"
        % lcm_den)


# ---- rational roots and Sturm isolation -----------------------------------


def _divisors(n: int):
    n = abs(n)
    if n == 0:
        return [1]
    small = {}
    m = n
    for q in range(2, 10 ** 6):
        if q * q > m:
            break
        while m % q == 0:
            small[q] = small.get(q, 0) + 1
            m //= q
    if m > 1:
        # leftover cofactor treated as prime; a large composite here only
        # costs us root candidates, never correctness
        small[m] = small.get(m, 0) + 1
    divs = [1]
    for q, e in small.items():
        divs = [d * q ** i for d in divs for i in range(e + 1)]
    return sorted(set(divs))


def _rational_roots(q: UPoly):
    """((root, multiplicity) list, residual monic factor without rational
    roots).  Candidates come from the rational root theorem on the
    integer-cleared polynomial."""
    if q.is_zero():
        raise ValueError("zero polynomial")
    roots = []
    v = _ord0(q)
    if v > 0:
        roots.append((Fraction(0), v))
        q = UPoly(q.coeffs[v:])
    if q.degree < 1:
        return roots, UPoly.const(1)
    ints, _ = q.int_cleared()
    lead = ints[-1]
    low = ints[0]
    cands = set()
    for a in _divisors(low):
        for b in _divisors(lead):
            if gcd(a, b) == 1:
                cands.add(Fraction(a, b))
                cands.add(Fraction(-a, b))
    for cand in sorted(cands):
        mult = 0
        while q.degree >= 1 and q(cand) == 0:
            q = q.exact_div(UPoly((-cand, Fraction(1))))
            mult += 1
        if mult:
            roots.append((cand, mult))
    return roots, q.monic()


def _sign_changes(chain, x):
    signs = []
    for q in chain:
        v = q(x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _isolate_real_roots(q: UPoly):
    """Disjoint rational intervals each holding one real root of the
    squarefree polynomial q, plus the count of complex-conjugate pairs."""
    q = q.squarefree_part()
    if q.degree < 1:
        return [], 0
    chain = [q, q.derivative()]
    while chain[-1].degree >= 1:
        chain.append(-(chain[-2] % chain[-1]))
        if chain[-1].is_zero():
            chain.pop()
            break
    lead = abs(q.coeffs[-1])
    bound = Fraction(1) + max(abs(c) for c in q.coeffs) / lead
    work = [(-bound, bound)]
    done = []
    while work:
        a, b = work.pop()
        n = _sign_changes(chain, a) - _sign_changes(chain, b)
        if n == 0:
            continue
        if n == 1:
            done.append((a, b))
            continue
        mid = (a + b) / 2
        if q(mid) == 0:
            # rational midpoint root: shrink around it
            eps = (b - a) / 4
            done.append((mid - eps, mid + eps))
            work.append((a, mid - eps))
            work.append((mid + eps, b))
        else:
            work.append((a, mid))
            work.append((mid, b))
    done.sort()
    complex_pairs = (q.degree - len(done)) // 2
    return done, complex_pairs


# ---- exponent sums without root extraction --------------------------------


def _upoly_invmod(a: UPoly, q: UPoly) -> UPoly:
    """Inverse of a modulo q over Q (extended Euclid); a, q coprime."""
    r0, r1 = q, a % q
    s0, s1 = UPoly(), UPoly.const(1)
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
    if r0.degree != 0:
        raise ArithmeticError("element not invertible modulo q")
    return s0.scale(1 / r0.coeffs[0]) % q


def _trace_mod(g: UPoly, q: UPoly) -> Fraction:
    """Trace of multiplication by g on Q[t]/(q): sum of g over the roots."""
    m = q.degree
    tr = Fraction(0)
    cur = g % q
    for j in range(m):
        if j:
            cur = (cur.shift(1)) % q
        cs = cur.coeffs
        tr += cs[j] if j < len(cs) else Fraction(0)
    return tr


def exponent_sum_over_factor(op: PFOperator, q: UPoly) -> Fraction:
    """Sum of the indicial exponents over all roots of q.

    q must be a squarefree divisor of the cleared leading coefficient with
    only simple roots of that coefficient; then each root is regular
    singular and the exponent sum there is r(r-1)/2 - P_{r-1}/P_r'
    evaluated at the root, which sums to a trace over Q[t]/(q).
    """
    P = op.cleared()
    r = op.order
    q = q.monic()
    if q.degree < 1:
        raise ValueError("factor must be nonconstant")
    if not (P[-1] % q).is_zero():
        raise ValueError("factor does not divide the leading coefficient")
    if q.gcd(q.derivative()).degree != 0:
        raise ValueError("factor must be squarefree")
    dP = P[-1].derivative()
    if q.gcd(dP).degree != 0:
        raise ValueError("roots must be simple in the leading coefficient")
    g = (P[-2] * _upoly_invmod(dP % q, q)) % q
    return q.degree * Fraction(comb(r, 2)) - _trace_mod(g, q)


# ---- power series sides ---------------------------------------------------


def holomorphic_solution(theta_coeffs, nterms: int):
    """Coefficients u_0..u_{nterms-1} of the exponent-0 power-series
    solution at z = 0 of a cleared theta-form; u_0 = 1.  Raises on
    resonance (indicial polynomial vanishing at a positive integer)."""
    E = max(q.degree for q in theta_coeffs if not q.is_zero())
    Q = []
    for e in range(E + 1):
        Q.append(UPoly(tuple(q.coeffs[e] if e < len(q.coeffs) else Fraction(0)
                             for q in theta_coeffs)))
    out = [Fraction(1)]
    for n in range(1, nterms):
        acc = Fraction(0)
        for e in range(1, min(E, n) + 1):
            if not Q[e].is_zero():
                acc += Q[e](Fraction(n - e)) * out[n - e]
        q0 = Q[0](Fraction(n))
        if q0 == 0:
            raise ArithmeticError("resonant index at n = %d" % n)
        out.append(-acc / q0)
    return out


def period_ct_series(pencil: Pencil, nterms: int):
    """Constant-term period coefficients b_j for a monomial G = c * x^g:
    b_j = [x^{(j+1)g - 1}] F^j / c^{j+1}.  The period for large t is
    -sum_j b_j t^{-j-1} up to normalization."""
    if len(pencil.G.terms) != 1:
        raise ValueError("constant-term series needs a monomial G")
    (gmono, gc), = pencil.G.terms.items()
    out = []
    power = Polynomial.constant(QQ.one, pencil.nvars, QQ)
    for j in range(nterms):
        target = tuple((j + 1) * g - 1 for g in gmono)
        if any(e < 0 for e in target):
            out.append(Fraction(0))
        else:
            out.append(Fraction(power.coefficient(target)) / gc ** (j + 1))
        if j + 1 < nterms:
            power = power * pencil.F
    return out


def annihilates_negative_power_series(op: PFOperator, series) -> bool:
    """Exact check that the operator kills y = sum_j s_j t^{-j-1} through
    every Laurent coefficient the truncation determines."""
    P = op.cleared()
    J = len(series) - 1
    lmax = max(q.degree for q in P if not q.is_zero())
    acc = {}
    for i, q in enumerate(P):
        for l, a in enumerate(q.coeffs):
            if not a:
                continue
            for j, s in enumerate(series):
                if not s:
                    continue
                ff = Fraction(1)
                for step in range(i):
                    ff *= Fraction(-j - 1 - step)
                e = l - j - 1 - i
                acc[e] = acc.get(e, Fraction(0)) + a * ff * s
    # tail terms j > J can only reach exponents <= lmax - J - 2
    safe_floor = lmax - J - 1
    checked = [e for e in acc if e >= safe_floor]
    if not checked:
        return False
    return all(acc[e] == 0 for e in checked)
