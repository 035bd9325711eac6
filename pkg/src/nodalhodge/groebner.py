"""Buchberger Groebner-basis engine with staircase combinatorics.

Reduced bases over any of the scalar fields, deterministic normal pair
selection (lowest lcm degree, ties broken in the monomial order), product and
chain criteria via the Gebauer-Moller pair update.  Optional cofactor
tracking expresses every basis element as a combination of the input
generators; the Griffiths-Dwork reduction needs that.

Hilbert data comes from the staircase alone: the numerator N(t) with
series(R/I) = N(t)/(1-t)^nvars is computed by the standard pivot-variable
recursion on the monomial lead ideal, so hilbert_function(k) is O(1) in k
once the basis is known.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

from . import modpoly
from .linalg import (ExactMatrix, np_mod_matmul, np_mod_rref,
                     np_mod_solve_square, rref)
from .polyring import (GREVLEX, MonomialOrder, Polynomial, mono_div,
                       mono_divides, mono_lcm, mono_mul, monomial_basis)
from .scalars import QQ, PrimeField, UPoly

NOT_ZERO_DIMENSIONAL = "NOT_ZERO_DIMENSIONAL"


def _order_keyfn(order: MonomialOrder):
    cache = {}
    okey = order.key

    def key(m):
        k = cache.get(m)
        if k is None:
            k = okey(m)
            cache[m] = k
        return k

    return key


def _reduce_dict(work, basis_leads, basis_terms, field, key,
                 top_only=False, quotients=None):
    """Divide work by the monic basis; returns the remainder dict.

    quotients, when given, is a parallel list of dicts receiving the monomial
    multiples used per basis element.
    """
    out = {}
    is_zero = field.is_zero
    sub = field.sub
    mul = field.mul
    nb = len(basis_leads)
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = -1
        for i in range(nb):
            lead = basis_leads[i]
            ok = True
            for a, b in zip(lead, m):
                if a > b:
                    ok = False
                    break
            if ok:
                hit = i
                break
        if hit < 0:
            out[m] = c
            if top_only:
                out.update(work)
                return out
            continue
        lead = basis_leads[hit]
        shift = tuple(b - a for a, b in zip(lead, m))
        if quotients is not None:
            qd = quotients[hit]
            prev = qd.get(shift)
            qd[shift] = c if prev is None else field.add(prev, c)
        for mg, cg in basis_terms[hit].items():
            if mg == lead:
                continue
            mono = tuple(x + y for x, y in zip(mg, shift))
            cur = work.get(mono)
            v = field.neg(mul(c, cg)) if cur is None else sub(cur, mul(c, cg))
            if is_zero(v):
                if cur is not None:
                    del work[mono]
            else:
                work[mono] = v
    return out


def _monic_dict(terms, lead, field):
    lc = terms[lead]
    if lc == field.one:
        return terms, field.one
    inv = field.inv(lc)
    return {m: field.mul(inv, c) for m, c in terms.items()}, inv


class GroebnerBasis:
    """Reduced Groebner basis; generators are monic, sorted by leading term.

    cofactors[i][j] expresses generators[i] as sum_j cofactors[i][j] *
    inputs[j] when the basis was computed with track_cofactors=True.
    """

    def __init__(self, generators, order, nvars, field,
                 inputs=None, cofactors=None):
        self.generators = generators
        self.order = order
        self.nvars = nvars
        self.field = field
        self.inputs = inputs
        self.cofactors = cofactors
        self.leads = [g.leading_monomial(order) for g in generators]
        self._numerator = None

    @property
    def staircase(self):
        """Minimal generators of the lead-term ideal."""
        return list(self.leads)

    def normal_form(self, f: Polynomial, with_quotients=False):
        if f.nvars != self.nvars or f.field != self.field:
            raise ValueError("polynomial from a different ring")
        key = _order_keyfn(self.order)
        terms = [g.terms for g in self.generators]
        quotients = [{} for _ in self.generators] if with_quotients else None
        rem = _reduce_dict(dict(f.terms), self.leads, terms, self.field, key,
                           quotients=quotients)
        nf = Polynomial(self.nvars, self.field, rem)
        if not with_quotients:
            return nf
        qs = [Polynomial(self.nvars, self.field, q) for q in quotients]
        return nf, qs

    def hilbert_numerator(self):
        if self._numerator is None:
            self._numerator = hilbert_numerator(self.leads, self.nvars)
        return self._numerator

    def hilbert_function(self, k: int) -> int:
        if k < 0:
            return 0
        n = self.nvars
        num = self.hilbert_numerator()
        total = 0
        for i, c in enumerate(num):
            if i > k:
                break
            if c:
                total += c * comb(k - i + n - 1, n - 1)
        return total

    def standard_monomials(self, k: int):
        """Degree-k monomials outside the staircase, descending order."""
        stair = self.leads
        return [m for m in monomial_basis(k, self.nvars, self.order)
                if not any(mono_divides(s, m) for s in stair)]

    def zero_dim_degree(self):
        return zero_dim_degree(self)

    def __repr__(self):
        return "GroebnerBasis(%d gens, %s, %s)" % (
            len(self.generators), self.order.kind, self.field.name)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX):
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    L = mono_lcm(lf, lg)
    F = f.field
    mf = Polynomial.monomial(mono_div(L, lf), F.inv(f.terms[lf]), f.nvars, F)
    mg = Polynomial.monomial(mono_div(L, lg), F.inv(g.terms[lg]), g.nvars, F)
    return mf * f - mg * g


def buchberger(gens, order: MonomialOrder = GREVLEX,
               track_cofactors=False) -> GroebnerBasis:
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    nvars, field = gens[0].nvars, gens[0].field
    for g in gens:
        if g.nvars != nvars or g.field != field:
            raise ValueError("generators from different rings")
    key = _order_keyfn(order)

    leads = []
    terms_list = []
    cofs = [] if track_cofactors else None
    pairs = {}

    def gm_update(t):
        """Gebauer-Moller pair update after basis element t arrives."""
        lt = leads[t]
        fresh = {}
        for g in range(t):
            fresh[g] = mono_lcm(leads[g], lt)
        kept = []
        order_c = sorted(fresh, key=lambda g: (key(fresh[g]), g))
        dropped = set()
        for g in order_c:
            L = fresh[g]
            coprime = all(a == 0 or b == 0 for a, b in zip(leads[g], lt))
            dominated = False
            for g2 in order_c:
                if g2 == g or g2 in dropped:
                    continue
                L2 = fresh[g2]
                if L2 != L and mono_divides(L2, L):
                    dominated = True
                    break
                if L2 == L and g2 < g:
                    dominated = True
                    break
            if coprime or dominated:
                dropped.add(g)
            else:
                kept.append(g)
        for (i, j) in list(pairs):
            L = pairs[(i, j)]
            if mono_divides(lt, L) and \
                    mono_lcm(leads[i], lt) != L and mono_lcm(leads[j], lt) != L:
                del pairs[(i, j)]
        for g in kept:
            pairs[(g, t)] = fresh[g]

    def add_element(tdict, cof):
        lead = max(tdict, key=key)
        tdict, scale = _monic_dict(tdict, lead, field)
        if cofs is not None:
            if scale != field.one:
                cof = [{m: field.mul(scale, c) for m, c in d.items()}
                       for d in cof]
            cofs.append(cof)
        leads.append(lead)
        terms_list.append(tdict)
        gm_update(len(leads) - 1)

    for idx, g in enumerate(gens):
        cof = None
        if track_cofactors:
            cof = [{} for _ in gens]
            cof[idx] = {(0,) * nvars: field.one}
        add_element(dict(g.terms), cof)

    while pairs:
        (i, j) = min(pairs, key=lambda p: (sum(pairs[p]), key(pairs[p]), p))
        L = pairs.pop((i, j))
        si = mono_div(L, leads[i])
        sj = mono_div(L, leads[j])
        work = {}
        for m, c in terms_list[i].items():
            work[mono_mul(m, si)] = c
        for m, c in terms_list[j].items():
            mono = mono_mul(m, sj)
            cur = work.get(mono)
            v = field.neg(c) if cur is None else field.sub(cur, c)
            if field.is_zero(v):
                if cur is not None:
                    del work[mono]
            else:
                work[mono] = v
        quotients = [{} for _ in leads] if track_cofactors else None
        rem = _reduce_dict(work, leads, terms_list, field, key,
                           top_only=True, quotients=quotients)
        if not rem:
            continue
        cof = None
        if track_cofactors:
            cof = [dict() for _ in gens]
            _cof_accumulate(cof, cofs[i], si, field.one, field)
            _cof_accumulate(cof, cofs[j], sj, field.neg(field.one), field)
            for h, q in enumerate(quotients):
                for shift, c in q.items():
                    _cof_accumulate(cof, cofs[h], shift, field.neg(c), field)
        add_element(rem, cof)

    return _interreduce(gens, leads, terms_list, cofs, order, nvars, field, key,
                        track_cofactors)


def _cof_accumulate(target, source, shift, factor, field):
    """target += factor * x^shift * source, per input generator."""
    for idx, d in enumerate(source):
        td = target[idx]
        for m, c in d.items():
            mono = mono_mul(m, shift)
            v = field.mul(factor, c)
            cur = td.get(mono)
            s = v if cur is None else field.add(cur, v)
            if field.is_zero(s):
                if cur is not None:
                    del td[mono]
            else:
                td[mono] = s


def _interreduce(gens, leads, terms_list, cofs, order, nvars, field, key,
                 track_cofactors):
    n = len(leads)
    keep = []
    for i in range(n):
        redundant = False
        for j in range(n):
            if i == j:
                continue
            if mono_divides(leads[j], leads[i]):
                if leads[j] != leads[i] or j < i:
                    redundant = True
                    break
        if not redundant:
            keep.append(i)
    keep.sort(key=lambda i: key(leads[i]))

    final_terms = []
    final_cofs = []
    for pos, i in enumerate(keep):
        others = [k for k in keep if k != i]
        o_leads = [leads[k] for k in others]
        o_terms = [terms_list[k] for k in others]
        quotients = [{} for _ in others] if track_cofactors else None
        rem = _reduce_dict(dict(terms_list[i]), o_leads, o_terms, field, key,
                           quotients=quotients)
        lead = max(rem, key=key)
        rem, scale = _monic_dict(rem, lead, field)
        if track_cofactors:
            cof = [dict(d) for d in cofs[i]]
            for h, q in zip(others, quotients):
                for shift, c in q.items():
                    _cof_accumulate(cof, cofs[h], shift, field.neg(c), field)
            if scale != field.one:
                cof = [{m: field.mul(scale, c) for m, c in d.items()}
                       for d in cof]
            final_cofs.append(cof)
        final_terms.append((lead, rem))

    polys = [Polynomial(nvars, field, t) for _, t in final_terms]
    cof_polys = None
    if track_cofactors:
        cof_polys = [[Polynomial(nvars, field, d) for d in cof]
                     for cof in final_cofs]
    return GroebnerBasis(polys, order, nvars, field,
                         inputs=list(gens), cofactors=cof_polys)


def normal_form(f: Polynomial, gb: GroebnerBasis, with_quotients=False):
    return gb.normal_form(f, with_quotients=with_quotients)


# ---- Hilbert data from the staircase ------------------------------------


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    out = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return out


def _num_mul_one_minus_td(num, d):
    out = list(num) + [0] * d
    for i, c in enumerate(num):
        out[i + d] -= c
    while out and out[-1] == 0:
        out.pop()
    return out


def _num_add_shift(a, b, shift):
    out = list(a) + [0] * max(0, shift + len(b) - len(a))
    for i, c in enumerate(b):
        out[shift + i] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def hilbert_numerator(staircase, nvars: int):
    """Coefficients of N(t) with Hilbert series N(t)/(1-t)^nvars."""
    gens = _minimalize(tuple(m) for m in staircase)

    def rec(gens):
        if not gens:
            return [1]
        mixed = [g for g in gens if sum(1 for e in g if e) > 1]
        if not mixed:
            num = [1]
            for g in gens:
                num = _num_mul_one_minus_td(num, sum(g))
            return num
        counts = [0] * nvars
        for g in mixed:
            for v, e in enumerate(g):
                if e:
                    counts[v] += 1
        pivot = max(range(nvars), key=lambda v: (counts[v], -v))
        quot = _minimalize(
            g[:pivot] + (max(g[pivot] - 1, 0),) + g[pivot + 1:] for g in gens)
        xj = tuple(1 if v == pivot else 0 for v in range(nvars))
        summed = _minimalize([g for g in gens if g[pivot] == 0] + [xj])
        return _num_add_shift(rec(summed), rec(quot), 1)

    return rec(gens)


def hilbert_function(gb: GroebnerBasis, k: int) -> int:
    return gb.hilbert_function(k)


def zero_dim_degree(gb: GroebnerBasis):
    """Degree of the projective scheme when zero-dimensional (0 for empty),
    else NOT_ZERO_DIMENSIONAL; decided by Hilbert-function stabilization at
    two consecutive degrees past nvars * (largest generator degree)."""
    maxdeg = max((g.total_degree() for g in gb.generators), default=0)
    bound = gb.nvars * max(maxdeg, 1)
    a = gb.hilbert_function(bound)
    b = gb.hilbert_function(bound + 1)
    if a == b:
        return a
    return NOT_ZERO_DIMENSIONAL


# ---- graded quotient linear algebra -------------------------------------


def multiplication_matrix(gb: GroebnerBasis, poly: Polynomial, k: int):
    """Matrix of R_k -> R_{k+deg(poly)} on standard monomial bases.

    Rows indexed by the target standard monomials, columns by the source
    ones, both in descending order.
    """
    src = gb.standard_monomials(k)
    dst = gb.standard_monomials(k + poly.total_degree())
    dst_index = {m: i for i, m in enumerate(dst)}
    F = gb.field
    cols = []
    for s in src:
        prod = poly * Polynomial.monomial(s, F.one, gb.nvars, F)
        nf = gb.normal_form(prod)
        col = [F.zero] * len(dst)
        for m, c in nf.terms.items():
            col[dst_index[m]] = c
        cols.append(col)
    rows = [[cols[j][i] for j in range(len(src))] for i in range(len(dst))]
    return rows, src, dst


def _random_linear(gb, rng):
    F = gb.field
    while True:
        if isinstance(F, PrimeField):
            coeffs = [rng.randrange(F.p) for _ in range(gb.nvars)]
        else:
            coeffs = [Fraction(rng.randint(-19, 19)) for _ in range(gb.nvars)]
        if any(c != 0 for c in coeffs):
            mono = lambda i: tuple(1 if j == i else 0 for j in range(gb.nvars))
            terms = {mono(i): F.from_int(c) if isinstance(F, PrimeField)
                     else F.from_fraction(c)
                     for i, c in enumerate(coeffs) if c != 0}
            return Polynomial(gb.nvars, F, terms)


def _solve_matrix(B, A, field, p=None):
    """X with B X = A over the field; None when B is singular."""
    n = len(B)
    if p is not None:
        import numpy as np
        aug = np.concatenate([np.array(B, dtype=np.int64) % p,
                              np.array(A, dtype=np.int64) % p], axis=1)
        R, pivots = np_mod_rref(aug, p)
        if pivots[:n] != list(range(n)) or len(pivots) > n:
            return None
        return [[int(c) for c in row[n:]] for row in R[:n]]
    aug = [list(b) + list(a) for b, a in zip(B, A)]
    R, pivots = rref(ExactMatrix(aug, field=field))
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        return None
    return [row[n:] for row in R[:n]]


def _krylov_minpoly(matvec, v0, D, field):
    """Monic minimal polynomial of the operator on the cyclic span of v0.

    Returns (coefficients c_0..c_r, Krylov vectors w_0..w_{r-1}).
    """
    if isinstance(field, PrimeField):
        return _krylov_minpoly_p(matvec, v0, D, field.p)
    pivots = []
    krylov = []
    v = list(v0)
    for r in range(D + 1):
        row = list(v)
        comb_vec = [field.zero] * r + [field.one]
        for (pc, prow, pcomb) in pivots:
            c = row[pc]
            if not field.is_zero(c):
                row = [field.sub(x, field.mul(c, y))
                       for x, y in zip(row, prow)]
                pcomb_pad = pcomb + [field.zero] * (len(comb_vec) - len(pcomb))
                comb_vec = [field.sub(x, field.mul(c, y))
                            for x, y in zip(comb_vec, pcomb_pad)]
        pc = next((i for i, x in enumerate(row) if not field.is_zero(x)), None)
        if pc is None:
            return comb_vec, krylov
        inv = field.inv(row[pc])
        prow = [field.mul(inv, x) for x in row]
        pcomb = [field.mul(inv, x) for x in comb_vec]
        pivots.append((pc, prow, pcomb))
        krylov.append(list(v))
        v = matvec(v)
    raise AssertionError("no dependency among D+1 Krylov vectors")


def _krylov_minpoly_p(matvec, v0, D, p):
    import numpy as np
    pivots = []
    krylov = []
    v = [int(x) % p for x in v0]
    for r in range(D + 1):
        row = np.array(v, dtype=np.int64)
        comb_vec = np.zeros(r + 1, dtype=np.int64)
        comb_vec[r] = 1
        for (pc, prow, pcomb) in pivots:
            c = int(row[pc])
            if c:
                row = (row - c * prow) % p
                comb_vec[:len(pcomb)] = (comb_vec[:len(pcomb)]
                                         - c * pcomb) % p
        nz = np.nonzero(row)[0]
        if len(nz) == 0:
            return [int(x) for x in comb_vec], krylov
        pc = int(nz[0])
        inv = pow(int(row[pc]), -1, p)
        pivots.append((pc, (inv * row) % p, (inv * comb_vec) % p))
        krylov.append(list(v))
        v = matvec(v)
    raise AssertionError("no dependency among D+1 Krylov vectors")


def _stable_degree(gb, D):
    maxdeg = max((g.total_degree() for g in gb.generators), default=1)
    bound = gb.nvars * max(maxdeg, 1)
    for k in range(bound + 1):
        if gb.hilbert_function(k) == D and gb.hilbert_function(k + 1) == D:
            return k
    return bound


def _quotient_operators(gb, k, forms):
    """Multiplication operators R_k -> R_{k+1} for degree-1 forms."""
    mats = []
    for f in forms:
        rows, src, dst = multiplication_matrix(gb, f, k)
        mats.append(rows)
    return mats


def reducedness_probe(gb: GroebnerBasis, trials: int = 3, rng=None) -> bool:
    """Probabilistic check that the projective scheme is D distinct reduced
    points: the eliminant of a random linear functional on the degree-k part
    must be squarefree of degree D in every trial.

    False on any repeated root or degree drop, which also catches unlucky
    non-separating draws (false negatives are possible, false positives only
    with probability on the order of D^2/|field|).
    """
    if rng is None:
        rng = random.Random(0)
    D = zero_dim_degree(gb)
    if D == NOT_ZERO_DIMENSIONAL:
        raise ValueError("reducedness probe needs a zero-dimensional scheme")
    if D == 0:
        return True
    F = gb.field
    p = F.p if isinstance(F, PrimeField) else None
    for attempt in range(2):
        k = _stable_degree(gb, D) + 3 * attempt
        ok = _probe_at_degree(gb, D, k, trials, rng, F, p)
        if ok:
            return True
    return False


def _probe_at_degree(gb, D, k, trials, rng, F, p):
    if len(gb.standard_monomials(k)) != D or \
            len(gb.standard_monomials(k + 1)) != D:
        return False
    h = None
    for _ in range(8):
        cand = _random_linear(gb, rng)
        B = _quotient_operators(gb, k, [cand])[0]
        Binv_cols = _solve_matrix(B, _identity(D, F, p), F, p)
        if Binv_cols is not None:
            h = cand
            break
    if h is None:
        return False
    hk = gb.normal_form(h ** k)
    src = gb.standard_monomials(k)
    idx = {m: i for i, m in enumerate(src)}
    v0 = [F.zero] * D
    for m, c in hk.terms.items():
        v0[idx[m]] = c
    for _ in range(trials):
        ell = _random_linear(gb, rng)
        A = _quotient_operators(gb, k, [ell])[0]
        M = _mat_mul(Binv_cols, A, F, p)
        matvec = _matvec_fn(M, F, p)
        coeffs, _ = _krylov_minpoly(matvec, v0, D, F)
        if len(coeffs) - 1 != D:
            return False
        if not _squarefree(coeffs, F, p):
            return False
    return True


def _identity(D, field, p):
    return [[field.one if i == j else field.zero for j in range(D)]
            for i in range(D)]


def _mat_mul(A, B, field, p):
    if p is not None:
        return np_mod_matmul(A, B, p).tolist()
    n, mid, m = len(A), len(B), len(B[0])
    out = [[field.zero] * m for _ in range(n)]
    for i in range(n):
        for l in range(mid):
            a = A[i][l]
            if field.is_zero(a):
                continue
            row = B[l]
            oi = out[i]
            for j in range(m):
                oi[j] = field.add(oi[j], field.mul(a, row[j]))
    return out


def _matvec_fn(M, field, p):
    if p is not None:
        def mv(v):
            return [int(x) for x in np_mod_matmul(M, v, p)]

        return mv

    def mv(v):
        out = []
        for row in M:
            acc = field.zero
            for a, x in zip(row, v):
                acc = field.add(acc, field.mul(a, x))
            out.append(acc)
        return out

    return mv


def _squarefree(coeffs, field, p):
    if p is not None:
        poly = [c % p for c in coeffs]
        return modpoly.is_squarefree(poly, p)
    u = UPoly([Fraction(c) for c in coeffs])
    return u.gcd(u.derivative()).degree == 0


# ---- node counting over independent primes ------------------------------


def jacobian_ideal(f: Polynomial):
    parts = [f.diff(i) for i in range(f.nvars)]
    parts = [g for g in parts if not g.is_zero()]
    if not parts:
        raise ValueError("all partial derivatives vanish")
    return parts


def _node_count_one_prime(args):
    f_terms, nvars, p, trials, seed = args
    F = PrimeField(p)
    terms = {}
    for mono, (num, den) in f_terms.items():
        terms[mono] = F.from_fraction(Fraction(num, den))
    fp = Polynomial(nvars, F, terms)
    gb = buchberger(jacobian_ideal(fp))
    deg = zero_dim_degree(gb)
    reduced = None
    if deg != NOT_ZERO_DIMENSIONAL and deg > 0:
        reduced = reducedness_probe(gb, trials=trials,
                                    rng=random.Random(seed))
    return {"prime": p, "degree": deg, "reduced": reduced,
            "staircase_size": len(gb.staircase)}


def node_count_modular(f: Polynomial, primes, trials: int = 3, seed: int = 0,
                       threads: int = 1):
    """Degree and reducedness of the singular scheme of f over each prime.

    f is homogeneous over Q; its Jacobian ideal is reduced mod every prime
    and the per-prime results must agree.  Returns a report dict.
    """
    if f.field is not QQ:
        raise ValueError("node counting starts from a rational polynomial")
    f_terms = {m: (c.numerator, c.denominator) for m, c in f.terms.items()}
    jobs = [(f_terms, f.nvars, p, trials, seed + 1000 * i)
            for i, p in enumerate(primes)]
    if threads > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as ex:
            per_prime = list(ex.map(_node_count_one_prime, jobs))
    else:
        per_prime = [_node_count_one_prime(j) for j in jobs]
    degrees = {r["degree"] for r in per_prime}
    reduceds = {r["reduced"] for r in per_prime}
    agreement = len(degrees) == 1 and len(reduceds) == 1
    report = {
        "per_prime": per_prime,
        "agreement": agreement,
        "degree": per_prime[0]["degree"] if agreement else None,
        "reduced": per_prime[0]["reduced"] if agreement else None,
    }
    return report


# ---- point algebra for mod-p node coordinates ---------------------------


class PointAlgebra:
    """The scheme's affine coordinates packaged as F_p[T]/(m(T)).

    m is the monic eliminant (degree D, squarefree) of a separating linear
    functional ell/h on the chart h = 1; coordinate i of the points is the
    class of coord_polys[i](T).  Rank computations against point conditions
    reduce to F_p linear algebra on T-power coefficients, with no splitting
    into extension fields.
    """

    def __init__(self, p, D, minpoly, coord_polys, h_coeffs, ell_coeffs):
        self.p = p
        self.D = D
        self.minpoly = minpoly
        self.coord_polys = coord_polys
        self.h_coeffs = h_coeffs
        self.ell_coeffs = ell_coeffs

    def evaluate_poly(self, poly: Polynomial):
        """Class of poly(x_0/h, ..., x_{n-1}/h) in F_p[T]/(m)."""
        p = self.p
        maxe = max((max(m) for m in poly.terms), default=0)
        powers = []
        for cp in self.coord_polys:
            ps = [[1]]
            for _ in range(maxe):
                ps.append(modpoly.mod(modpoly.mul(ps[-1], cp, p),
                                      self.minpoly, p))
            powers.append(ps)
        acc = []
        for mono, c in poly.terms.items():
            term = [c % p]
            for i, e in enumerate(mono):
                if e:
                    term = modpoly.mod(modpoly.mul(term, powers[i][e], p),
                                       self.minpoly, p)
            acc = modpoly.add(acc, term, p)
        return acc


def build_point_algebra(gb: GroebnerBasis, rng=None, max_tries: int = 8):
    """PointAlgebra for a reduced zero-dimensional scheme over F_p.

    Raises ArithmeticError when no separating functional is found (scheme
    non-reduced, or persistent bad luck).
    """
    if rng is None:
        rng = random.Random(0)
    F = gb.field
    if not isinstance(F, PrimeField):
        raise ValueError("point algebra needs a prime field basis")
    p = F.p
    D = zero_dim_degree(gb)
    if D == NOT_ZERO_DIMENSIONAL or D == 0:
        raise ValueError("point algebra needs a nonempty zero-dim scheme")
    k = _stable_degree(gb, D)
    src = gb.standard_monomials(k)
    if len(src) != D:
        raise ArithmeticError("quotient dimension mismatch at degree %d" % k)
    idx = {m: i for i, m in enumerate(src)}
    var_forms = [Polynomial.variable(i, gb.nvars, F) for i in range(gb.nvars)]
    A_list = _quotient_operators(gb, k, var_forms)

    for _ in range(max_tries):
        hc = [rng.randrange(p) for _ in range(gb.nvars)]
        if not any(hc):
            continue
        B = _combine(A_list, hc, p)
        Binv = _solve_matrix(B, _identity(D, F, p), F, p)
        if Binv is None:
            continue
        X_list = [_mat_mul(Binv, A, F, p) for A in A_list]
        h_poly = Polynomial(gb.nvars, F,
                            {tuple(1 if j == i else 0
                                   for j in range(gb.nvars)): c
                             for i, c in enumerate(hc) if c})
        hk = gb.normal_form(h_poly ** k)
        v0 = [0] * D
        for m, c in hk.terms.items():
            v0[idx[m]] = c
        for _ in range(max_tries):
            lc = [rng.randrange(p) for _ in range(gb.nvars)]
            L = _combine(X_list, lc, p)
            matvec = _matvec_fn(L, F, p)
            coeffs, krylov = _krylov_minpoly(matvec, v0, D, F)
            if len(coeffs) - 1 != D:
                continue
            m_poly = [c % p for c in coeffs]
            if not modpoly.is_squarefree(m_poly, p):
                continue
            W = [[krylov[j][i] for j in range(D)] for i in range(D)]
            coord_polys = []
            for X in X_list:
                target = _matvec_fn(X, F, p)(v0)
                sol = np_mod_solve_square(W, target, p)
                if sol is None:
                    coord_polys = None
                    break
                coord_polys.append(modpoly.trim([int(c) for c in sol]))
            if coord_polys is not None:
                return PointAlgebra(p, D, m_poly, coord_polys, hc, lc)
    raise ArithmeticError("no separating functional found; "
                          "scheme may be non-reduced")


def _combine(mats, coeffs, p):
    import numpy as np
    acc = np.zeros((len(mats[0]), len(mats[0][0])), dtype=np.int64)
    for M, c in zip(mats, coeffs):
        if c:
            acc = (acc + c * np.array(M, dtype=np.int64)) % p
    return acc.tolist()
