"""Exact simplicial homology and Gorenstein*/near-Gorenstein* certification.

Two routes compute the same facts:

* a generic simplicial route (SimplicialComplex, reduced_homology, link,
  is_gorenstein_complex) that follows the definitions literally, and

* a fast poset route used by the certification predicates, which walks the
  chains of a poset and assembles each link's Betti vector from memoized
  open-interval homologies (the link of a chain in an order complex is the
  join of the order complexes of its gap intervals, and reduced homology
  turns joins into shifted products).

The generic route is the independent oracle for the fast one; the test
suite checks they agree across the corpus.  All ranks are computed by
fraction-free elimination over the integers, never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .linalg import sparse_rank
from .poset import GradedPoset, _bits


class SimplexNotFound(Exception):
    pass


class NotPure(Exception):
    pass


class BoundaryNotIdeal(Exception):
    pass


class BoundaryWrongRank(Exception):
    pass


class NotNearGorenstein(Exception):
    pass


# -- simplicial complexes ----------------------------------------------------


class SimplicialComplex:
    """Finite abstract simplicial complex; the empty simplex is implicit.

    Simplices are stored by dimension as sorted vertex tuples and the
    collection is validated to be closed under taking faces.
    """

    __slots__ = ("by_dim", "dim")

    def __init__(self, simplices):
        by_dim = {}
        seen = set()
        for s in simplices:
            t = tuple(sorted(s))
            if len(set(t)) != len(t):
                raise ValueError(f"repeated vertex in simplex {s!r}")
            if t and t not in seen:
                seen.add(t)
                by_dim.setdefault(len(t) - 1, []).append(t)
        for d, group in by_dim.items():
            group.sort()
            if d > 0:
                lower = set(by_dim.get(d - 1, ()))
                for s in group:
                    for face in combinations(s, d):
                        if face not in lower:
                            raise ValueError(f"complex not closed: missing {face}")
        self.by_dim = by_dim
        self.dim = max(by_dim) if by_dim else -1

    @classmethod
    def closure_of(cls, maximal):
        faces = set()
        for s in maximal:
            t = tuple(sorted(s))
            for k in range(1, len(t) + 1):
                faces.update(combinations(t, k))
        return cls(faces)

    def simplices(self, d):
        return self.by_dim.get(d, [])

    def all_simplices(self):
        """Every simplex including the empty one, ordered by dimension."""
        out = [()]
        for d in sorted(self.by_dim):
            out.extend(self.by_dim[d])
        return out

    def __contains__(self, s):
        t = tuple(sorted(s))
        if not t:
            return True
        return t in set(self.by_dim.get(len(t) - 1, ()))

    def f_vector(self):
        return tuple(len(self.by_dim.get(d, ())) for d in range(self.dim + 1))

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, f={self.f_vector()})"


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers; betti[i] is the dimension in degree i-1, so
    the empty-simplex degree -1 (nonzero exactly for the empty complex)
    sits at index 0."""

    betti: tuple

    @classmethod
    def from_dict(cls, d):
        if not d:
            return cls(())
        top = max(d)
        return cls(tuple(d.get(i, 0) for i in range(-1, top + 1)))

    def degree(self, d):
        i = d + 1
        return self.betti[i] if 0 <= i < len(self.betti) else 0

    def as_dict(self):
        return {i - 1: b for i, b in enumerate(self.betti) if b}

    def is_zero(self):
        return all(b == 0 for b in self.betti)

    def is_real_in_degree(self, d):
        """Exactly one dimension of homology, sitting in degree d."""
        return self.as_dict() == {d: 1}

    def euler_characteristic_reduced(self):
        return sum((-1) ** (i - 1) * b for i, b in enumerate(self.betti))


def _boundary_rows(K, d):
    """Rows of the boundary map C_d -> C_(d-1), one sparse row per
    d-simplex; d = 0 maps every vertex to the empty simplex."""
    if d == 0:
        return [{0: 1} for _ in K.simplices(0)]
    lower = {s: i for i, s in enumerate(K.simplices(d - 1))}
    rows = []
    for s in K.simplices(d):
        row = {}
        for j in range(len(s)):
            face = s[:j] + s[j + 1:]
            row[lower[face]] = (-1) ** j
        rows.append(row)
    return rows


def reduced_homology(K):
    """Reduced Betti numbers over Q via exact ranks of the augmented
    boundary matrices."""
    dims = {-1: 1}
    for d in range(K.dim + 1):
        dims[d] = len(K.simplices(d))
    ranks = {}
    for d in range(K.dim + 1):
        ranks[d] = sparse_rank(_boundary_rows(K, d))
    betti = {}
    for d in range(-1, K.dim + 1):
        betti[d] = dims[d] - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return HomologyProfile.from_dict({d: b for d, b in betti.items() if b})


def link(K, s):
    """Link of a simplex: all t disjoint from s with t u s in K."""
    t = tuple(sorted(s))
    if t not in K:
        raise SimplexNotFound(f"{s!r} is not a simplex of the complex")
    sset = set(t)
    out = []
    for u in K.all_simplices():
        if u and not (sset & set(u)) and tuple(sorted(t + u)) in K:
            out.append(u)
    return SimplicialComplex(out)


def is_gorenstein_complex(K):
    """Real homology sphere test: the complex must be pure and the link of
    every simplex x (the empty one included) must have its reduced homology
    equal to R concentrated in degree dim(K) - #vertices(x)."""
    maximal_dims = {d for d in K.by_dim
                    if any(_is_maximal(K, s) for s in K.simplices(d))}
    if K.dim >= 0 and maximal_dims != {K.dim}:
        raise NotPure(f"maximal simplices in dimensions {sorted(maximal_dims)}")
    for s in K.all_simplices():
        want = K.dim - len(s)
        if not reduced_homology(link(K, s)).is_real_in_degree(want):
            return False
    return True


def _is_maximal(K, s):
    d = len(s) - 1
    upper = K.simplices(d + 1)
    sset = set(s)
    return not any(sset <= set(u) for u in upper)


def order_complex_simplicial(P):
    """Chains of P avoiding the bottom, as a simplicial complex of
    dimension n-1 on the vertex set P minus the bottom."""
    root = P._root
    chains = []
    from .poset import iter_chain_indices
    for c in iter_chain_indices(P):
        if c:
            chains.append(tuple(root._ids[i] for i in c))
    return SimplicialComplex(chains)


def face_poset(K, labels=None):
    """The face poset of a simplicial complex (bottom = empty simplex),
    with each element's simplex recorded in `provenance`."""
    ids = {(): 0}
    ranks = {0: 0}
    for s in K.all_simplices():
        if s:
            ids[s] = len(ids)
            ranks[ids[s]] = len(s)
    covers = []
    for s, i in ids.items():
        for j in range(len(s)):
            covers.append((ids[s[:j] + s[j + 1:]], i))
    labs = {i: ",".join(map(str, s)) if s else "{}" for s, i in ids.items()}
    prov = {i: s for s, i in ids.items()}
    return GradedPoset.from_covers(K.dim + 1, ranks, covers,
                                   labels=labs, provenance=prov)


# -- fast chain-link engine ---------------------------------------------------


def _betti_mul(p, q):
    out = {}
    for d1, b1 in p.items():
        for d2, b2 in q.items():
            d = d1 + d2
            out[d] = out.get(d, 0) + b1 * b2
    return out


def _chains_of_mask(root, mask):
    """All nonempty chains inside a vertex mask, ascending index tuples."""
    first = sorted(_bits(mask), key=lambda i: (root._rank[i], i))

    def rec(prefix, candidates):
        for k, i in enumerate(candidates):
            nxt = [j for j in root._up_list[i] if (mask >> j) & 1]
            yield prefix + (i,)
            yield from rec(prefix + (i,), nxt)

    yield from rec((), first)


def _subset_betti(root, mask):
    """Betti polynomial (dict degree -> dim, degree -1 allowed) of the
    complex of chains inside the vertex mask; memoized on the root poset."""
    cache = root._cache.setdefault("subset_betti", {})
    if mask in cache:
        return cache[mask]
    if mask == 0:
        out = {-1: 1}
        cache[mask] = out
        return out
    by_dim = {}
    index = {}
    for c in _chains_of_mask(root, mask):
        d = len(c) - 1
        index[c] = len(by_dim.setdefault(d, []))
        by_dim[d].append(c)
    top = max(by_dim)
    ranks = {}
    for d in range(top + 1):
        if d == 0:
            rows = [{0: 1} for _ in by_dim[0]]
        else:
            rows = []
            for c in by_dim[d]:
                row = {}
                for j in range(len(c)):
                    face = c[:j] + c[j + 1:]
                    row[index[face]] = (-1) ** j
                rows.append(row)
        ranks[d] = sparse_rank(rows)
    betti = {}
    dims = {-1: 1}
    for d in range(top + 1):
        dims[d] = len(by_dim[d])
    for d in range(-1, top + 1):
        b = dims[d] - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if b:
            betti[d] = b
    cache[mask] = betti
    return betti


def _link_betti(root, view_mask, bottom_idx, chain):
    """Betti polynomial of the link of `chain` in the chain complex of the
    view: the join of the gap-interval complexes, shifted by the chain
    length (Kunneth for joins over a field)."""
    out = {len(chain): 1}
    prev = bottom_idx
    for el in chain:
        gap = root._geq[prev] & root._leq[el] & view_mask
        gap &= ~(1 << prev) & ~(1 << el)
        out = _betti_mul(out, _subset_betti(root, gap))
        prev = el
    upper = root._geq[prev] & view_mask & ~(1 << prev)
    return _betti_mul(out, _subset_betti(root, upper))


@dataclass(frozen=True)
class CertResult:
    ok: bool
    reason: str = ""
    witness: tuple = ()
    betti: dict | None = None

    def __bool__(self):
        return self.ok


def _structural_check(root, mask, bottom_idx, n):
    """Graded-poset sanity for an element subset: unique bottom, covers
    raise rank by one inside the subset, maximal elements at rank n."""
    if not (mask >> bottom_idx) & 1:
        return CertResult(False, "bottom not in subset")
    base = root._rank[bottom_idx]
    members = list(_bits(mask))
    for i in members:
        if root._rank[i] - base < 0:
            return CertResult(False, "element below the bottom rank", (root._ids[i],))
        if i != bottom_idx and not (root._geq[bottom_idx] >> i) & 1:
            return CertResult(False, "element not above the bottom", (root._ids[i],))
        if root._rank[i] - base > n:
            return CertResult(False, f"element above rank {n}", (root._ids[i],))
    for i in members:
        above = root._geq[i] & mask & ~(1 << i)
        if not above and root._rank[i] - base != n:
            return CertResult(False, "maximal element below top rank", (root._ids[i],))
        for j in _bits(above):
            if root._rank[j] - root._rank[i] >= 2:
                between = root._geq[i] & root._leq[j] & mask & ~(1 << i) & ~(1 << j)
                if not between:
                    return CertResult(False, "cover skips a rank",
                                      (root._ids[i], root._ids[j]))
    return CertResult(True)


def certify_gorenstein(root, mask, bottom_idx, n):
    """Gorenstein* certification of the subposet `mask` (bottom included):
    the link of every chain must have homology R in degree n - k - 1."""
    cache = root._cache.setdefault("gor_cert", {})
    key = (mask, bottom_idx, n)
    if key in cache:
        return cache[key]
    res = _certify_gorenstein(root, mask, bottom_idx, n)
    cache[key] = res
    return res


def _certify_gorenstein(root, mask, bottom_idx, n):
    if mask == 0:
        return CertResult(n == -1, "" if n == -1 else "empty poset of rank != -1")
    st = _structural_check(root, mask, bottom_idx, n)
    if not st:
        return st
    vmask = mask & ~(1 << bottom_idx)
    for chain in _all_chains_with_empty(root, vmask):
        betti = _link_betti(root, mask, bottom_idx, chain)
        if betti != {n - len(chain) - 1: 1}:
            return CertResult(False, "link homology not a sphere",
                              tuple(root._ids[i] for i in chain), betti)
    return CertResult(True)


def _all_chains_with_empty(root, vmask):
    yield ()
    yield from _chains_of_mask(root, vmask)


def certify_near_gorenstein(root, mask, bottom_idx, n, bmask):
    """Homology-ball certification of the pair (mask, bmask)."""
    cache = root._cache.setdefault("ngor_cert", {})
    key = (mask, bottom_idx, n, bmask)
    if key in cache:
        return cache[key]
    res = _certify_near_gorenstein(root, mask, bottom_idx, n, bmask)
    cache[key] = res
    return res


def _certify_near_gorenstein(root, mask, bottom_idx, n, bmask):
    if n == 0:
        ok = mask == (1 << bottom_idx) and bmask == 0
        return CertResult(ok, "" if ok else "rank-0 pair must be a bare point")
    st = _structural_check(root, mask, bottom_idx, n)
    if not st:
        return st
    if bmask & ~mask:
        return CertResult(False, "boundary not inside the poset")
    base = root._rank[bottom_idx]
    branks = [root._rank[i] - base for i in _bits(bmask)]
    if not branks or max(branks) != n - 1:
        return CertResult(False, "boundary rank is not n-1")
    for i in _bits(bmask):
        below = root._leq[i] & mask & ~bmask
        if below:
            return CertResult(False, "boundary is not an ideal",
                              (root._ids[i],))
    bg = certify_gorenstein(root, bmask, bottom_idx, n - 1)
    if not bg:
        return CertResult(False, f"boundary not Gorenstein*: {bg.reason}",
                          bg.witness, bg.betti)
    vmask = mask & ~(1 << bottom_idx)
    bvmask = bmask & ~(1 << bottom_idx)
    for chain in _all_chains_with_empty(root, vmask):
        betti = _link_betti(root, mask, bottom_idx, chain)
        in_boundary = all((bvmask >> i) & 1 for i in chain)
        if in_boundary:
            if betti:
                return CertResult(False, "boundary chain has nonzero link homology",
                                  tuple(root._ids[i] for i in chain), betti)
        elif betti != {n - len(chain) - 1: 1}:
            return CertResult(False, "interior chain link is not a sphere",
                              tuple(root._ids[i] for i in chain), betti)
    return CertResult(True)


# -- public poset-level predicates -------------------------------------------


def is_gorenstein_star(P):
    """True iff the order complex of P is a real homology sphere."""
    return bool(certify_gorenstein(P._root, P._mask, P._bottom_idx, P.n))


def gorenstein_star_report(P):
    return certify_gorenstein(P._root, P._mask, P._bottom_idx, P.n)


def _boundary_mask(P, boundary_ids):
    root = P._root
    mask = 0
    for e in boundary_ids:
        mask |= 1 << root._index(e)
    return mask


def is_near_gorenstein_star(P, boundary_ids):
    """True iff (P, boundary) is a real homology ball with that boundary.

    The boundary must be an ideal of rank n-1 (BoundaryNotIdeal /
    BoundaryWrongRank otherwise); the homology conditions then decide.
    """
    root = P._root
    bmask = _boundary_mask(P, boundary_ids)
    if P.n == 0:
        return bool(certify_near_gorenstein(root, P._mask, P._bottom_idx, 0, bmask))
    base = root._rank[P._bottom_idx]
    branks = [root._rank[i] - base for i in _bits(bmask)]
    if not branks or max(branks) != P.n - 1:
        raise BoundaryWrongRank(f"boundary must have rank {P.n - 1}")
    for i in _bits(bmask):
        if root._leq[i] & P._mask & ~bmask:
            raise BoundaryNotIdeal(f"{root._ids[i]!r} has lower covers outside the boundary")
    return bool(certify_near_gorenstein(root, P._mask, P._bottom_idx, P.n, bmask))


def near_gorenstein_star_report(P, boundary_ids):
    return certify_near_gorenstein(P._root, P._mask, P._bottom_idx, P.n,
                                   _boundary_mask(P, boundary_ids))


def is_cohen_macaulay(P):
    """Link homology of every chain vanishes below its top degree; the top
    degree itself is unconstrained."""
    root = P._root
    vmask = P._mask & ~(1 << P._bottom_idx)
    for chain in _all_chains_with_empty(root, vmask):
        betti = _link_betti(root, P._mask, P._bottom_idx, chain)
        top = P.n - len(chain) - 1
        if any(d != top for d in betti):
            return False
    return True


def derive_boundary(P):
    """Recover the unique boundary of a near-Gorenstein* poset: the
    elements whose singleton-chain link has vanishing homology, as an
    ideal (the bottom included).  Raises NotNearGorenstein otherwise."""
    root = P._root
    vmask = P._mask & ~(1 << P._bottom_idx)
    bmask = 1 << P._bottom_idx
    for i in _bits(vmask):
        if not _link_betti(root, P._mask, P._bottom_idx, (i,)):
            bmask |= 1 << i
    if P.n == 0:
        bmask = 0
    base = root._rank[P._bottom_idx]
    branks = [root._rank[i] - base for i in _bits(bmask)]
    if P.n > 0 and (not branks or max(branks) != P.n - 1):
        raise NotNearGorenstein("no boundary of rank n-1 exists")
    for i in _bits(bmask):
        if root._leq[i] & P._mask & ~bmask:
            raise NotNearGorenstein("candidate boundary is not an ideal")
    if not certify_near_gorenstein(root, P._mask, P._bottom_idx, P.n, bmask):
        raise NotNearGorenstein("candidate boundary fails the homology conditions")
    return frozenset(root._ids[i] for i in _bits(bmask))
