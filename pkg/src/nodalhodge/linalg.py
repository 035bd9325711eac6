"""Exact dense linear algebra over Q, F_p and Q(t).

Rank is computed fraction-free (Bareiss) after clearing each row to an
integral domain: Q rows become int rows, Q(t) rows become Q[t] rows; prime
fields use vectorized elimination on int64 arrays (p < 2^31 keeps every
intermediate product inside int64, so this stays exact).  Kernels come from
reduced row echelon form over the field.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from .scalars import QQ, QQ_T, PrimeField, RatFun, UPoly


class ExactMatrix:
    """Dense matrix over one of the scalar fields; rows of raw field values."""

    def __init__(self, rows, field=QQ, ncols=None):
        self.rows = [list(r) for r in rows]
        self.field = field
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged matrix")
        else:
            self.ncols = 0 if ncols is None else ncols

    def shape(self):
        return (self.nrows, self.ncols)

    def mat_vec(self, v):
        F = self.field
        out = []
        for row in self.rows:
            acc = F.zero
            for a, x in zip(row, v):
                acc = F.add(acc, F.mul(a, x))
            out.append(acc)
        return out

    def __repr__(self):
        return "ExactMatrix(%dx%d over %s)" % (self.nrows, self.ncols,
                                               self.field.name)


# ---- fraction-free elimination ----------------------------------------


def _bareiss_rank(rows, is_zero, mul, sub, exact_div, size):
    """Rank via Bareiss with full pivoting; rows are domain elements."""
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    a = [list(r) for r in rows]
    prev = None
    rank = 0
    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if not is_zero(a[i][j]):
                    s = size(a[i][j])
                    if best is None or s < best[0]:
                        best = (s, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
        pivot = a[k][k]
        for i in range(k + 1, m):
            aik = a[i][k]
            for j in range(k + 1, n):
                val = sub(mul(a[i][j], pivot), mul(aik, a[k][j]))
                if prev is not None:
                    val = exact_div(val, prev)
                a[i][j] = val
            a[i][k] = 0 if isinstance(aik, int) else type(aik)()
        prev = pivot
        rank += 1
    return rank


def _clear_row_to_int(row):
    den = 1
    for c in row:
        den = den * c.denominator // gcd(den, c.denominator)
    cleared = [int(c * den) for c in row]
    g = 0
    for c in cleared:
        g = gcd(g, abs(c))
    if g > 1:
        cleared = [c // g for c in cleared]
    return cleared


def _clear_row_to_upoly(row):
    den = UPoly.const(1)
    for c in row:
        g = den.gcd(c.den)
        den = den * c.den.exact_div(g) if g.degree >= 0 and not g.is_zero() \
            else den * c.den
    return [c.num * den.exact_div(c.den) for c in row]


def rank(M: ExactMatrix) -> int:
    F = M.field
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if isinstance(F, PrimeField):
        arr = np.array([[c % F.p for c in r] for r in M.rows], dtype=np.int64)
        _, pivots = np_mod_rref(arr, F.p)
        return len(pivots)
    if F is QQ:
        rows = [_clear_row_to_int([Fraction(c) for c in r]) for r in M.rows]
        return _bareiss_rank(rows, lambda x: x == 0,
                             lambda x, y: x * y, lambda x, y: x - y,
                             lambda x, y: x // y, lambda x: x.bit_length())
    if F is QQ_T:
        rows = [_clear_row_to_upoly(r) for r in M.rows]
        return _bareiss_rank(rows, UPoly.is_zero,
                             lambda x, y: x * y, lambda x, y: x - y,
                             lambda x, y: x.exact_div(y),
                             lambda x: x.degree)
    rr, piv = rref(M)
    return len(piv)


def rref(M: ExactMatrix):
    """Reduced row echelon form over the field; returns (rows, pivot cols)."""
    F = M.field
    a = [list(r) for r in M.rows]
    m, n = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if not F.is_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, x) for x in a[r]]
        for i in range(m):
            if i != r and not F.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def kernel_basis(M: ExactMatrix):
    """Basis of the right kernel; rank(M) + len(basis) == ncols."""
    F = M.field
    if M.ncols == 0:
        return []
    if M.nrows == 0:
        basis = []
        for j in range(M.ncols):
            v = [F.zero] * M.ncols
            v[j] = F.one
            basis.append(v)
        return basis
    if isinstance(F, PrimeField):
        arr = np.array([[c % F.p for c in r] for r in M.rows], dtype=np.int64)
        R, pivots = np_mod_rref(arr, F.p)
        return [[int(c) for c in v] for v in np_mod_kernel_from_rref(R, pivots, F.p)]
    rr, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivset:
            continue
        v = [F.zero] * M.ncols
        v[free] = F.one
        for r, c in enumerate(pivots):
            v[c] = F.neg(rr[r][free])
        basis.append(v)
    return basis


# ---- vectorized prime-field elimination --------------------------------


def np_mod_matmul(A, B, p):
    """A @ B mod p on int64 without overflow (p < 2^31, inner dim < 2^17).

    Splits the left factor into 16-bit halves so partial dot products stay
    below 2^63.
    """
    A = np.array(A, dtype=np.int64) % p
    B = np.array(B, dtype=np.int64) % p
    hi, lo = np.divmod(A, 1 << 16)
    shift = (1 << 16) % p
    return ((hi @ B) % p * shift + (lo @ B) % p) % p


def np_mod_rref(M, p):
    """RREF of an int64 array mod p (p < 2^31); returns (R, pivot cols)."""
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            M[mask] = (M[mask] - np.outer(col[mask], M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def np_mod_kernel_from_rref(R, pivots, p):
    cols = R.shape[1]
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[free] = 1
        for r, c in enumerate(pivots):
            v[c] = (-int(R[r, free])) % p
        basis.append(v)
    return basis


def np_mod_kernel(M, p):
    R, pivots = np_mod_rref(np.array(M, dtype=np.int64), p)
    return np_mod_kernel_from_rref(R, pivots, p)


def np_mod_rank(M, p):
    arr = np.array(M, dtype=np.int64)
    if arr.size == 0:
        return 0
    _, pivots = np_mod_rref(arr, p)
    return len(pivots)


def np_mod_solve_any(A, b, p):
    """A particular solution of A x = b mod p (free variables set to zero),
    or None when inconsistent."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    aug = np.concatenate([A, np.array(b, dtype=np.int64).reshape(rows, 1) % p],
                         axis=1)
    R, pivots = np_mod_rref(aug, p)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, cols]
    return x


def np_mod_solve_square(A, b, p):
    """Solve A x = b mod p for square invertible A; None when singular."""
    A = np.array(A, dtype=np.int64) % p
    n = A.shape[0]
    aug = np.concatenate([A, np.array(b, dtype=np.int64).reshape(n, 1) % p], axis=1)
    R, pivots = np_mod_rref(aug, p)
    if pivots != list(range(n)):
        return None
    return R[:n, n].copy()


# ---- vanishing matrices -------------------------------------------------


def _falling(e, a):
    out = 1
    for i in range(a):
        out *= e - i
    return out


def vanishing_matrix(points, deg: int, adjoint_order: int, nvars: int,
                     field=QQ) -> ExactMatrix:
    """Rows: per point, all chart partials of order < adjoint_order; columns:
    degree-deg monomials in descending grevlex.

    Each point is normalized in the affine chart of its largest-index nonzero
    coordinate; row blocks follow input point order, and within a block the
    multi-indices come in (total order, lex) ascending order over the chart
    variables.  Entry = (d^alpha of the dehomogenized monomial)(point).
    """
    from .polyring import monomial_basis

    if adjoint_order < 1:
        raise ValueError("adjoint order must be >= 1")
    if deg < 0:
        raise ValueError("negative degree")
    F = field
    columns = monomial_basis(deg, nvars)
    rows = []
    for pt in points:
        pt = list(pt)
        if len(pt) != nvars:
            raise ValueError("point arity mismatch")
        chart = None
        for i in range(nvars - 1, -1, -1):
            if not F.is_zero(pt[i]):
                chart = i
                break
        if chart is None:
            raise ValueError("zero vector is not a projective point")
        inv = F.inv(pt[chart])
        pt = [F.mul(inv, c) for c in pt]
        affine = [i for i in range(nvars) if i != chart]
        alphas = []

        def rec(prefix, total, slots):
            if slots == 0:
                alphas.append(tuple(prefix))
                return
            for e in range(adjoint_order - total):
                rec(prefix + [e], total + e, slots - 1)

        rec([], 0, len(affine))
        alphas.sort(key=lambda a: (sum(a), a))
        for alpha in alphas:
            row = []
            for mono in columns:
                if any(mono[v] < a for v, a in zip(affine, alpha)):
                    row.append(F.zero)
                    continue
                coef = 1
                val = F.one
                ok = True
                for v, a in zip(affine, alpha):
                    coef *= _falling(mono[v], a)
                    if coef == 0:
                        ok = False
                        break
                if not ok:
                    row.append(F.zero)
                    continue
                for v, a in zip(affine, alpha):
                    e = mono[v] - a
                    for _ in range(e):
                        val = F.mul(val, pt[v])
                row.append(F.mul(F.from_int(coef), val))
            rows.append(row)
    return ExactMatrix(rows, field=F, ncols=len(columns))
