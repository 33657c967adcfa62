"""Sheaves on posets: cellular complexes, duality, and the C/D operations.

A sheaf stores per-element stalk dimensions and exact rational restriction
matrices on cover pairs; arbitrary restrictions are composed along cover
paths (well defined because commutation is validated).  Cellular complexes
carry simplicial incidence signs, so they only exist over bases whose
elements know their vertex tuples (order complexes and face posets); for
an arbitrary poset base everything routes through the order complex via
the chain-to-largest-element pullback.

The D operation needs a surjection alpha: C(F)-dual -> C(F) assembled from
a "generic enough" random rational combination of the per-cell maps
alpha_f; the randomness source is explicit and the seed-independent part
of the construction (duals, the alpha_f family) is cached per input sheaf,
so seed sweeps only redo the cheap assembly, surjectivity check and kernel
extraction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import constructions, flags, homology
from .linalg import (identity, mat_inverse, mat_mul, mat_nullspace, mat_rank,
                     solve_in_span, sparse_nullspace, sparse_rank)
from .ncpoly import cd_split_with_a
from .poset import GradedPoset


class NotSimplicial(Exception):
    pass


class BadSupport(Exception):
    pass


class NotCohenMacaulay(Exception):
    pass


class BadBase(Exception):
    pass


class SurjectivityFailed(Exception):
    pass


def _zeros(rows, cols):
    return [[Fraction(0)] * cols for _ in range(rows)]


class Sheaf:
    """Stalk dimensions plus restriction matrices on cover pairs.

    res[(sigma, tau)] maps F_sigma -> F_tau for a cover sigma > tau and has
    shape (dim F_tau, dim F_sigma).  Pairs with a zero-dimensional end are
    omitted; compositions through them are zero.
    """

    def __init__(self, base, stalk_dim, res, validate=False):
        self.base = base
        self.stalk_dim = {e: stalk_dim.get(e, 0) for e in base.elements()}
        self.res = dict(res)
        self._res_memo = {}
        if validate:
            self.validate()

    def dim(self, x):
        return self.stalk_dim.get(x, 0)

    def _down_covers(self, x):
        cache = self.base._cache.setdefault("down_covers", {})
        if not cache:
            for lo, hi in self.base.covers():
                cache.setdefault(hi, []).append(lo)
            for e in self.base.elements():
                cache.setdefault(e, [])
        return cache[x]

    def res_between(self, sigma, tau):
        """Composite restriction F_sigma -> F_tau for sigma >= tau."""
        if sigma == tau:
            return identity(self.dim(sigma))
        key = (sigma, tau)
        if key in self._res_memo:
            return self._res_memo[key]
        if self.dim(sigma) == 0 or self.dim(tau) == 0:
            out = _zeros(self.dim(tau), self.dim(sigma))
        else:
            step = next(d for d in self._down_covers(sigma)
                        if self.base.leq(tau, d))
            first = self.res.get((sigma, step))
            if first is None:
                first = _zeros(self.dim(step), self.dim(sigma))
            out = mat_mul(self.res_between(step, tau), first)
        self._res_memo[key] = out
        return out

    def validate(self):
        """Shapes on covers and commutation of all two-step compositions
        (which forces commutation of all paths, by induction on rank)."""
        for (s, t), m in self.res.items():
            if len(m) != self.dim(t) or (m and len(m[0]) != self.dim(s)):
                raise ValueError(f"restriction {s}->{t} has the wrong shape")
        for s in self.base.elements():
            for t in self.base.elements():
                if s == t or not self.base.leq(t, s):
                    continue
                mats = []
                for d in self._down_covers(s):
                    if self.base.leq(t, d):
                        first = self.res.get((s, d))
                        if first is None:
                            first = _zeros(self.dim(d), self.dim(s))
                        mats.append(mat_mul(self.res_between(d, t), first))
                if any(m != mats[0] for m in mats[1:]):
                    raise ValueError(f"restrictions {s}->{t} do not commute")
        return True

    def __repr__(self):
        total = sum(self.stalk_dim.values())
        return f"Sheaf(base rank {self.base.n}, total stalk dim {total})"


def constant_sheaf(base, support=None):
    """Stalk 1 on the support (default: everywhere), identity restrictions.

    The support must be interval-closed: no element outside it may sit
    between two elements inside it.
    """
    if support is None:
        supp = set(base.elements())
    else:
        supp = set(support)
        for e in supp:
            base._index(e)
        for x in base.elements():
            if x in supp:
                continue
            below = any(base.leq(t, x) and t != x for t in supp)
            above = any(base.leq(x, t) and t != x for t in supp)
            if below and above:
                raise BadSupport(f"{x!r} lies between support elements")
    stalks = {e: 1 if e in supp else 0 for e in base.elements()}
    res = {}
    for lo, hi in base.covers():
        if lo in supp and hi in supp:
            res[(hi, lo)] = [[Fraction(1)]]
    return Sheaf(base, stalks, res)


def zero_sheaf(base):
    return Sheaf(base, {}, {})


def _simplices_of(base):
    """Vertex tuples of a simplicial face poset, from provenance.

    Validated (once per poset): every element's tuple has length equal to
    its rank and covers drop exactly one vertex, which rules out posets
    whose provenance happens to hold tuples of other shapes.
    """
    if "simplices_ok" not in base._cache:
        prov = base.provenance
        ok = bool(prov) and all(
            isinstance(v, tuple) and len(v) == base.rank(e)
            for e, v in prov.items())
        if ok:
            for lo, hi in base.covers():
                s_lo, s_hi = set(prov[lo]), set(prov[hi])
                if not (s_lo < s_hi and len(s_hi - s_lo) == 1):
                    ok = False
                    break
        base._cache["simplices_ok"] = ok
    if not base._cache["simplices_ok"]:
        raise NotSimplicial("base poset does not carry simplex provenance")
    return base.provenance


def _order_complex_of(P):
    if "order_complex" not in P._cache:
        P._cache["order_complex"] = constructions.order_complex(P)
    return P._cache["order_complex"]


def pullback(F):
    """beta^*(F) on the order complex of the base: the stalk at a chain is
    the stalk at its largest element."""
    base = F.base
    oc = _order_complex_of(base)
    stalks = {}
    for e in oc.elements():
        chain = oc.provenance[e]
        top = chain[-1] if chain else base.bottom
        stalks[e] = F.dim(top)
    res = {}
    for lo, hi in oc.covers():
        c_lo, c_hi = oc.provenance[lo], oc.provenance[hi]
        if stalks[hi] == 0 or stalks[lo] == 0:
            continue
        top_hi = c_hi[-1]
        top_lo = c_lo[-1] if c_lo else base.bottom
        if top_hi == top_lo:
            res[(hi, lo)] = identity(stalks[hi])
        else:
            res[(hi, lo)] = F.res_between(top_hi, top_lo)
    return Sheaf(oc, stalks, res)


# -- cellular complexes -------------------------------------------------------


@dataclass
class CellularComplex:
    """C^k = direct sum of stalks at corank-k elements, with simplicial
    incidence signs; d o d = 0 is checked at construction."""

    coords: list          # coords[k]: list of (element, local index)
    diff_rows: list       # diff_rows[k]: rows of d_k: C^k -> C^(k+1),
                          # indexed by C^(k+1) coordinates

    def term_dims(self):
        return [len(c) for c in self.coords]

    def cohomology_dims(self):
        dims = self.term_dims()
        ranks = [sparse_rank(rows) for rows in self.diff_rows]
        out = []
        for k in range(len(dims)):
            r_out = ranks[k] if k < len(ranks) else 0
            r_in = ranks[k - 1] if k >= 1 else 0
            out.append(dims[k] - r_out - r_in)
        return out

    def kernel_deg0(self):
        """Basis of H^0 = ker(d_0) as dicts keyed by (element, local)."""
        if not self.coords:
            return []
        ncols = len(self.coords[0])
        rows = self.diff_rows[0] if self.diff_rows else []
        basis = sparse_nullspace(rows, ncols)
        keys = self.coords[0]
        return [{keys[i]: v for i, v in vec.items()} for vec in basis]


def _incidence_sign(simp_hi, simp_lo):
    missing = next(v for v in simp_hi if v not in simp_lo)
    return -1 if simp_hi.index(missing) % 2 else 1


def cellular_complex(F, support=None, check=True):
    """The cellular complex of F (restricted to `support` when given, which
    must make the restriction a sheaf, e.g. an up-set or interval-closed)."""
    base = F.base
    simp = _simplices_of(base)
    n = base.n
    members = set(base.elements()) if support is None else set(support)
    by_deg = {}
    for e in sorted(members, key=lambda e: (base.rank(e), e)):
        if F.dim(e):
            by_deg.setdefault(n - base.rank(e), []).append(e)
    top_deg = max(by_deg) if by_deg else -1
    coords, coord_idx = [], []
    for k in range(top_deg + 1):
        cs = [(e, j) for e in by_deg.get(k, []) for j in range(F.dim(e))]
        coords.append(cs)
        coord_idx.append({key: i for i, key in enumerate(cs)})
    diff_rows = []
    for k in range(top_deg):
        rows = [dict() for _ in coords[k + 1]]
        for y in by_deg.get(k + 1, []):
            for z in _up_covers(base, y):
                if z not in members or not F.dim(z):
                    continue
                sign = _incidence_sign(simp[z], simp[y])
                m = F.res.get((z, y))
                if m is None:
                    continue
                for r in range(F.dim(y)):
                    row = rows[coord_idx[k + 1][(y, r)]]
                    for c in range(F.dim(z)):
                        v = m[r][c] * sign
                        if v:
                            row[coord_idx[k][(z, c)]] = row.get(
                                coord_idx[k][(z, c)], 0) + v
        diff_rows.append(rows)
    cc = CellularComplex(coords, diff_rows)
    if check:
        _check_d_squared(cc)
    return cc


def _check_d_squared(cc):
    for k in range(len(cc.diff_rows) - 1):
        lower, upper = cc.diff_rows[k], cc.diff_rows[k + 1]
        for row in upper:
            acc = {}
            for mid, v in row.items():
                for col, w in lower[mid].items():
                    acc[col] = acc.get(col, 0) + v * w
            if any(acc.values()):
                raise ValueError("cellular differential does not square to zero")


def _up_covers(base, y):
    cache = base._cache.setdefault("up_covers", {})
    if not cache:
        for lo, hi in base.covers():
            cache.setdefault(lo, []).append(hi)
        for e in base.elements():
            cache.setdefault(e, [])
    return cache[y]


def _upset_ids(base, x):
    return base.up_set(x)


def is_cm_sheaf(F):
    """Cohen-Macaulay: upper-interval cellular cohomology vanishes above
    degree 0, for every element; poset bases are checked via the pullback."""
    if getattr(F, "_is_cm", None) is not None:
        return F._is_cm
    try:
        _simplices_of(F.base)
    except NotSimplicial:
        out = is_cm_sheaf(pullback(F))
        F._is_cm = out
        return out
    out = True
    for x in F.base.elements():
        cc = cellular_complex(F, _upset_ids(F.base, x), check=False)
        dims = cc.cohomology_dims()
        if any(d for d in dims[1:]):
            out = False
            break
    F._is_cm = out
    return out


def is_gorenstein_sheaf(F):
    """Cohen-Macaulay with dim H^0 over [x, top) equal to dim F_x."""
    if not is_cm_sheaf(F):
        return False
    base = F.base
    try:
        _simplices_of(base)
    except NotSimplicial:
        return is_gorenstein_sheaf(pullback(F))
    for x in base.elements():
        cc = cellular_complex(F, _upset_ids(base, x), check=False)
        if len(cc.kernel_deg0()) != F.dim(x):
            return False
    return True


def _h0_basis(F, up_ids):
    """H^0 kernel basis of C(F, up-set) as dicts keyed (element, local)."""
    cc = cellular_complex(F, up_ids, check=False)
    return cc.kernel_deg0()


def _project_and_solve(basis_small, vec, small_elems):
    """Project `vec` to the coordinates over `small_elems` and express it
    in `basis_small`; returns the coefficient list."""
    proj = {k: v for k, v in vec.items() if k[0] in small_elems}
    out = solve_in_span(basis_small, proj)
    if out is None:
        raise ArithmeticError("projected cocycle escaped the target kernel")
    return out


def dual_sheaf(F, check_cm=True):
    """The Cohen-Macaulay dual: stalks are degree-zero upper-interval
    cohomologies, restrictions the transposed projection maps.  Poset
    bases go through the order complex, reading the stalk at sigma off the
    minimal chain {0 < sigma}."""
    if check_cm and not is_cm_sheaf(F):
        raise NotCohenMacaulay("dual_sheaf needs a Cohen-Macaulay input")
    try:
        _simplices_of(F.base)
    except NotSimplicial:
        return _dual_poset(F)
    return _dual_simplicial(F)


def _dual_simplicial(F):
    base = F.base
    h0 = {}
    for x in base.elements():
        h0[x] = _h0_basis(F, _upset_ids(base, x))
    stalks = {x: len(b) for x, b in h0.items()}
    res = {}
    for lo, hi in base.covers():
        if stalks[hi] == 0 or stalks[lo] == 0:
            continue
        hi_set = set(_upset_ids(base, hi))
        cols = [_project_and_solve(h0[hi], vec, hi_set) for vec in h0[lo]]
        # cols[i][j]: coefficient of basis_hi[j] in image of basis_lo[i];
        # the map H0(lo) -> H0(hi) has matrix M[j][i], dual is its transpose
        mat = [[cols[i][j] for j in range(stalks[hi])] for i in range(stalks[lo])]
        res[(hi, lo)] = mat
    dual = Sheaf(base, stalks, res)
    dual._h0 = h0
    return dual


def _chain_elements(oc):
    cache = oc._cache.setdefault("chain_elem", {})
    if not cache:
        for e in oc.elements():
            cache[oc.provenance[e]] = e
    return cache


def _dual_poset(F):
    base = F.base
    oc = _order_complex_of(base)
    pf = pullback(F)
    chain_of = _chain_elements(oc)
    h0 = {}
    for sigma in base.elements():
        x = chain_of[()] if sigma == base.bottom else chain_of[(sigma,)]
        h0[sigma] = _h0_basis(pf, _upset_ids(oc, x))
    stalks = {s: len(b) for s, b in h0.items()}
    res = {}
    for lo, hi in base.covers():
        if stalks[hi] == 0 or stalks[lo] == 0:
            continue
        y = chain_of[(hi,)] if lo == base.bottom else chain_of[(lo, hi)]
        h0_y = _h0_basis(pf, _upset_ids(oc, y))
        if len(h0_y) != stalks[hi]:
            raise NotCohenMacaulay(
                f"fiber chain over {hi!r} breaks the constant-dual isomorphism")
        y_set = set(_upset_ids(oc, y))
        # A: H0(x_hi) -> H0(y) is an isomorphism; B: H0(x_lo) -> H0(y)
        a_cols = [_project_and_solve(h0_y, vec, y_set) for vec in h0[hi]]
        b_cols = [_project_and_solve(h0_y, vec, y_set) for vec in h0[lo]]
        a_mat = [[a_cols[i][j] for i in range(stalks[hi])] for j in range(len(h0_y))]
        b_mat = [[b_cols[i][j] for i in range(stalks[lo])] for j in range(len(h0_y))]
        # dual restriction: B^T o (A^T)^(-1): F-dual_hi -> F-dual_lo
        at_inv = mat_inverse([[a_mat[j][i] for j in range(len(h0_y))]
                              for i in range(stalks[hi])])
        bt = [[b_mat[j][i] for j in range(len(h0_y))] for i in range(stalks[lo])]
        res[(hi, lo)] = mat_mul(bt, at_inv)
    dual = Sheaf(base, stalks, res)
    dual._h0 = h0
    dual._oc_context = (oc, pf, chain_of)
    return dual


def dual_dimension_formula(F, sigma):
    """The numeric shadow of duality: sum over pi >= sigma of
    (-1)^(n - rank(pi)) * dim F_pi (non-strict at sigma)."""
    base = F.base
    return sum((-1) ** (base.n - base.rank(p)) * F.dim(p)
               for p in base.up_set(sigma))


# -- skeletons and the C / D operations ---------------------------------------


def skeleton_poset(P, k):
    cache = P._cache.setdefault("skeleton", {})
    if k not in cache:
        ids = [e for e in P.elements() if P.rank(e) <= k]
        ranks = {e: P.rank(e) for e in ids}
        keep = set(ids)
        covers = [(a, b) for a, b in P.covers() if a in keep and b in keep]
        labels = {e: P.label(e) for e in ids}
        prov = {e: P.provenance.get(e, e) for e in ids}
        cache[k] = GradedPoset.from_covers(k, ranks, covers,
                                           labels=labels, provenance=prov)
    return cache[k]


def _intervals_gorenstein(P):
    """Every [0, sigma) must be Gorenstein* (cached per poset)."""
    if "intervals_gor" not in P._cache:
        root = P._root
        ok = True
        for e in P.elements():
            i = root._index(e)
            mask = root._leq[i] & ~(1 << i)
            if not homology.certify_gorenstein(root, mask, root._bottom_idx,
                                               P.rank(e) - 1):
                ok = False
                break
        P._cache["intervals_gor"] = ok
    return P._cache["intervals_gor"]


def op_C(F, check=True):
    """Restriction to the (n-1)-skeleton; Cohen-Macaulay stays."""
    base = F.base
    if check:
        if not _intervals_gorenstein(base):
            raise BadBase("every [0, sigma) of the base must be Gorenstein*")
        if not is_cm_sheaf(F):
            raise NotCohenMacaulay("op_C needs a Cohen-Macaulay sheaf")
    sk = skeleton_poset(base, base.n - 1)
    keep = set(sk.elements())
    stalks = {e: F.dim(e) for e in keep}
    res = {pair: m for pair, m in F.res.items()
           if pair[0] in keep and pair[1] in keep}
    return Sheaf(sk, stalks, res)


def _alpha_family(F, check=True):
    """Seed-independent data for op_D: the restriction C(F), its dual, and
    the stalkwise matrices of every alpha_f (one per basis section at each
    top-rank element).  Cached on the sheaf instance."""
    cached = getattr(F, "_alpha_family_cache", None)
    if cached is not None:
        return cached
    base = F.base
    cf = op_C(F, check=check)
    sk = cf.base
    cf_dual = _dual_poset(cf)
    oc, _pf, _chain_of = cf_dual._oc_context
    h0_cf = cf_dual._h0
    beta = {}  # oc element -> largest chain element (or base bottom)
    for e in oc.elements():
        chain = oc.provenance[e]
        beta[e] = chain[-1] if chain else sk.bottom
    family = []
    for s in base.maximal_elements():
        if F.dim(s) == 0:
            continue
        supp = [t for t in base.down_set(s) if t != s]
        r_dual = _dual_poset(constant_sheaf(sk, supp))
        # sign normalization: the dual generator at the bottom with positive
        # leading coordinate maps to 1
        bottom_vec = r_dual._h0[sk.bottom][0]
        norm = Fraction(1) / bottom_vec[min(bottom_vec)]
        # eta_sigma: the scalar of the iso R-dual -> R, via the bottom
        eta = {sigma: r_dual.res_between(sigma, sk.bottom)[0][0] * norm
               for sigma in supp}
        for k in range(F.dim(s)):
            # phi_f stalk columns for the k-th basis section at s
            phi_col = {t: [row[k] for row in F.res_between(s, t)] for t in supp}
            stalk_maps = {}
            for sigma in supp:
                if cf_dual.dim(sigma) == 0 or cf.dim(sigma) == 0:
                    continue
                basis_r = r_dual._h0[sigma]
                if not basis_r:
                    continue
                if len(basis_r) != 1:
                    raise ArithmeticError(
                        "support dual is not one-dimensional; the interval "
                        "below a top cell is not Gorenstein*")
                # induced H0 map of phi_f on the up-set of sigma's chain
                image = {}
                for (elem, _j), v in basis_r[0].items():
                    col = phi_col.get(beta[elem])
                    if col is None:
                        continue
                    for i, entry in enumerate(col):
                        if entry:
                            image[(elem, i)] = image.get((elem, i), 0) + v * entry
                t_col = solve_in_span(h0_cf[sigma], image)
                if t_col is None:
                    raise ArithmeticError("phi_f image escaped H0 of C(F)")
                # alpha_f at sigma: (phi column) * eta * (induced map)^T
                dim_cf = cf.dim(sigma)
                dim_dual = cf_dual.dim(sigma)
                mat = _zeros(dim_cf, dim_dual)
                col = phi_col[sigma]
                for i in range(dim_cf):
                    if not col[i]:
                        continue
                    for j in range(dim_dual):
                        mat[i][j] += col[i] * eta[sigma] * t_col[j]
                stalk_maps[sigma] = mat
            family.append(stalk_maps)
    out = (cf, cf_dual, family)
    F._alpha_family_cache = out
    return out


def op_D(F, rng, retries=8, check=True):
    """Kernel of a generic surjection C(F)-dual -> C(F), landing on the
    (n-2)-skeleton.  Retries with fresh randomness; raises
    SurjectivityFailed naming the offending element after that."""
    cf, cf_dual, family = _alpha_family(F, check=check)
    sk = cf.base
    n1 = sk.n
    failed_at = None
    for _attempt in range(retries):
        coeffs = [Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6))
                  for _ in family]
        alpha = {}
        for sigma in sk.elements():
            rows, cols = cf.dim(sigma), cf_dual.dim(sigma)
            mat = _zeros(rows, cols)
            for c, maps in zip(coeffs, family):
                m = maps.get(sigma)
                if m is None:
                    continue
                for i in range(rows):
                    for j in range(cols):
                        if m[i][j]:
                            mat[i][j] += c * m[i][j]
            alpha[sigma] = mat
        ok = True
        for tau in sk.elements():
            if sk.rank(tau) == n1 and cf.dim(tau):
                if mat_rank(alpha[tau]) != cf.dim(tau):
                    ok = False
                    failed_at = tau
                    break
        if not ok:
            continue
        return _kernel_sheaf(cf, cf_dual, alpha)
    raise SurjectivityFailed(
        f"no surjective combination found after {retries} tries "
        f"(last failure at {failed_at!r})")


def _kernel_sheaf(cf, cf_dual, alpha):
    sk = cf.base
    target = skeleton_poset(sk, sk.n - 1)
    keep = set(target.elements())
    bases = {}
    for sigma in keep:
        vecs = mat_nullspace(alpha[sigma], cf_dual.dim(sigma))
        bases[sigma] = vecs
    stalks = {s: len(v) for s, v in bases.items()}
    res = {}
    for lo, hi in target.covers():
        if stalks[hi] == 0 or stalks[lo] == 0:
            continue
        w = cf_dual.res_between(hi, lo)
        cols = []
        for vec in bases[hi]:
            image = [sum((w[r][c] * vec[c] for c in range(len(vec))), Fraction(0))
                     for r in range(len(w))]
            span = [{i: v for i, v in enumerate(b) if v} for b in bases[lo]]
            coeffs = solve_in_span(span, {i: v for i, v in enumerate(image) if v})
            if coeffs is None:
                raise ArithmeticError("kernel restriction escaped the kernel")
            cols.append(coeffs)
        res[(hi, lo)] = [[cols[i][r] for i in range(stalks[hi])]
                         for r in range(stalks[lo])]
    return Sheaf(target, stalks, res)


# -- flag polynomials of sheaves ----------------------------------------------


def sheaf_ab_index(F):
    """Sum over chains of wt(chain) * dim F at the largest chain element."""
    base = F.base
    root = base._root
    return flags.sheaf_weighted_ab_index(
        base, lambda i: F.dim(root._ids[i]))


def sheaf_cd_split(F):
    """Express the ab-index of F as f(c,d) + g(c,d)a (NotExpressible when
    no such split exists)."""
    return cd_split_with_a(sheaf_ab_index(F))


def cd_coefficient_via_CD(P, word, seed=0, retries=8):
    """Coefficient of the degree-n cd-word `word` in the cd-index of P,
    extracted as a stalk dimension at the bottom.

    w(C,D) is an operator composition, so the rightmost letter of the word
    acts first on the constant sheaf (the trailing run of c's is cached on
    the poset: it is the seed-independent part every word shares).
    """
    from .ncpoly import word_degree

    if word_degree("cd", word) != P.n:
        raise ValueError(f"word {word!r} must have degree {P.n}")
    if not _intervals_gorenstein(P):
        raise BadBase("every [0, sigma) of the base must be Gorenstein*")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    prefix = P._cache.setdefault("cd_prefix", {})
    if 0 not in prefix:
        const = constant_sheaf(P)
        if not is_cm_sheaf(const):
            raise NotCohenMacaulay("the constant sheaf on P is not Cohen-Macaulay")
        prefix[0] = const
    trailing = 0
    while trailing < len(word) and word[-1 - trailing] == "c":
        trailing += 1
    for k in range(1, trailing + 1):
        if k not in prefix:
            prefix[k] = op_C(prefix[k - 1], check=False)
    current = prefix[trailing]
    for letter in reversed(word[:len(word) - trailing]):
        if letter == "c":
            current = op_C(current, check=False)
        else:
            current = op_D(current, rng, retries=retries, check=False)
    return current.dim(current.base.bottom)
