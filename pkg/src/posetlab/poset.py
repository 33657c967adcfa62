"""Graded posets with a bottom element and a virtual top.

A GradedPoset stores elements with ranks and cover relations.  The minimal
element 0-hat is always present; the maximal element 1-hat is never stored.
By convention rho(1-hat) = n + 1, so the rank gap to the top from x is
n + 1 - rho(x).

Internally elements live at contiguous indices 0..m-1 (sorted by rank) and
the full order relation is materialized as per-element bitmasks, which makes
interval, join and chain queries cheap at the few-hundred-element scale this
library targets.  Public APIs speak element ids, which our constructors keep
equal to the internal indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class PosetError(Exception):
    """Base class for structural poset errors."""


class NotGraded(PosetError):
    pass


class NoBottom(PosetError):
    pass


class RankedTooHigh(PosetError):
    pass


class UnreachableElement(PosetError):
    pass


class UnknownElement(PosetError):
    pass


class NotComparable(PosetError):
    pass


class NoUniqueTop(PosetError):
    pass


class NotALattice(PosetError):
    pass


class NotEulerian(PosetError):
    pass


class _Top:
    """Sentinel for the virtual maximal element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TOP"


TOP = _Top()


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class GradedPoset:
    """Immutable graded poset with bottom element and no stored top."""

    __slots__ = ("n", "_ids", "_idx", "_rank", "_covers_up", "_geq", "_leq",
                 "_up_list", "_bottom", "labels", "provenance", "_cache")

    def __init__(self, n, ids, rank_by_idx, covers_up, labels=None, provenance=None):
        # Use from_covers for validated construction from user data.
        self.n = n
        self._ids = tuple(ids)
        self._idx = {e: i for i, e in enumerate(self._ids)}
        self._rank = tuple(rank_by_idx)
        self._covers_up = tuple(tuple(sorted(c)) for c in covers_up)
        m = len(self._ids)
        geq = [0] * m
        for i in sorted(range(m), key=lambda i: -self._rank[i]):
            acc = 1 << i
            for j in self._covers_up[i]:
                acc |= geq[j]
            geq[i] = acc
        self._geq = tuple(geq)
        leq = [0] * m
        for i in range(m):
            for j in _bits(geq[i]):
                leq[j] |= 1 << i
        self._leq = tuple(leq)
        order = sorted(range(m), key=lambda i: (self._rank[i], i))
        pos = {i: p for p, i in enumerate(order)}
        self._up_list = tuple(
            tuple(sorted((j for j in _bits(geq[i] ^ (1 << i))), key=lambda j: pos[j]))
            for i in range(m))
        bottoms = [i for i in range(m) if self._rank[i] == 0]
        if len(bottoms) != 1:
            raise NoBottom(f"expected exactly one rank-0 element, found {len(bottoms)}")
        self._bottom = bottoms[0]
        self.labels = dict(labels or {})
        self.provenance = dict(provenance or {})
        self._cache = {}

    # -- construction -------------------------------------------------------

    @classmethod
    def from_covers(cls, n, ranks, covers, labels=None, provenance=None):
        """Build and validate a poset from a rank map and cover pairs.

        Raises NotGraded, NoBottom, RankedTooHigh or UnreachableElement when
        the data violates the graded-poset invariants.
        """
        ids = sorted(ranks, key=lambda e: (ranks[e], e))
        if not ids:
            raise NoBottom("empty poset")
        for e, r in ranks.items():
            if r < 0 or r > n:
                raise RankedTooHigh(f"element {e} has rank {r} outside [0, {n}]")
        if sum(1 for e in ids if ranks[e] == 0) != 1:
            raise NoBottom("expected exactly one rank-0 element")
        idx = {e: i for i, e in enumerate(ids)}
        covers_up = [[] for _ in ids]
        for lo, hi in covers:
            if lo not in idx or hi not in idx:
                raise UnknownElement(f"cover ({lo}, {hi}) uses unknown element")
            if ranks[hi] != ranks[lo] + 1:
                raise NotGraded(f"cover ({lo}, {hi}) skips from rank {ranks[lo]} to {ranks[hi]}")
            if idx[hi] not in covers_up[idx[lo]]:
                covers_up[idx[lo]].append(idx[hi])
        poset = cls(n, ids, [ranks[e] for e in ids], covers_up,
                    labels=labels, provenance=provenance)
        # reachability from the bottom
        reach = poset._geq[poset._bottom]
        for i, e in enumerate(ids):
            if not (reach >> i) & 1:
                raise UnreachableElement(f"element {e} is not above the bottom")
        for i, e in enumerate(ids):
            if not poset._up_list[i] and poset._rank[i] != n:
                raise NotGraded(f"maximal element {e} has rank {poset._rank[i]} != {n}")
        return poset

    # -- internal protocol shared with SubPoset -----------------------------

    @property
    def _root(self):
        return self

    @property
    def _mask(self):
        return (1 << len(self._ids)) - 1

    @property
    def _bottom_idx(self):
        return self._bottom

    @property
    def _rank_offset(self):
        return 0

    def _vrank(self, i):
        return self._rank[i]

    def _indices(self):
        return sorted(range(len(self._ids)), key=lambda i: (self._rank[i], i))

    def _up_indices(self, i):
        return self._up_list[i]

    # -- public id-space API -------------------------------------------------

    def __len__(self):
        return len(self._ids)

    def elements(self):
        """Element ids sorted by (rank, id)."""
        return [self._ids[i] for i in self._indices()]

    def rank(self, x):
        return self._rank[self._index(x)]

    @property
    def bottom(self):
        return self._ids[self._bottom]

    def covers(self):
        """Sorted list of (lower, upper) cover pairs."""
        out = []
        for i, ups in enumerate(self._covers_up):
            for j in ups:
                out.append((self._ids[i], self._ids[j]))
        return sorted(out)

    def _index(self, x):
        try:
            return self._idx[x]
        except KeyError:
            raise UnknownElement(f"unknown element {x!r}") from None

    def leq(self, x, y):
        """True iff x <= y (reflexive)."""
        return bool((self._geq[self._index(x)] >> self._index(y)) & 1)

    def up_set(self, x):
        """All ids y >= x."""
        return [self._ids[j] for j in _bits(self._geq[self._index(x)])]

    def down_set(self, x):
        """All ids y <= x."""
        return [self._ids[j] for j in _bits(self._leq[self._index(x)])]

    def maximal_elements(self):
        return [self._ids[i] for i in range(len(self._ids)) if not self._up_list[i]]

    def label(self, x):
        return self.labels.get(x, str(x))

    def rho_to_top(self, x):
        """Rank gap rho(x, 1-hat) = n + 1 - rho(x)."""
        return self.n + 1 - self.rank(x)

    # -- intervals -----------------------------------------------------------

    def interval(self, x, upper, closed_upper=False):
        """The interval [x, upper], [x, upper) or [x, 1-hat) as a new poset.

        Ranks are normalized so x has rank 0; provenance maps new ids back
        to the source ids.  `upper` may be TOP (then closed_upper must be
        False, since the virtual top is never stored).
        """
        xi = self._index(x)
        if upper is TOP:
            if closed_upper:
                raise ValueError("the virtual top cannot be included in an interval")
            mask = self._geq[xi]
            new_n = self.n - self._rank[xi]
        else:
            ui = self._index(upper)
            if not (self._geq[xi] >> ui) & 1:
                raise NotComparable(f"{x!r} is not below {upper!r}")
            mask = self._geq[xi] & self._leq[ui]
            if not closed_upper:
                mask ^= 1 << ui
            gap = self._rank[ui] - self._rank[xi]
            new_n = gap if closed_upper else gap - 1
        return self._materialize(mask, new_n, self._rank[xi])

    def _materialize(self, mask, new_n, rank_offset):
        """Renumber the elements in `mask` into a standalone GradedPoset."""
        members = sorted(_bits(mask), key=lambda i: (self._rank[i], i))
        newid = {i: k for k, i in enumerate(members)}
        ranks = [self._rank[i] - rank_offset for i in members]
        covers_up = [[] for _ in members]
        for i in members:
            # covers inside the subset: minimal strictly-above members
            above = self._geq[i] & mask & ~(1 << i)
            for j in _bits(above):
                between = self._geq[i] & self._leq[j] & mask & ~(1 << i) & ~(1 << j)
                if not between:
                    covers_up[newid[i]].append(newid[j])
        labels = {newid[i]: self.label(self._ids[i]) for i in members}
        prov = {newid[i]: self._ids[i] for i in members}
        return GradedPoset(new_n, range(len(members)), ranks, covers_up,
                           labels=labels, provenance=prov)

    def restrict(self, element_ids, n=None, bottom=None):
        """A lightweight SubPoset view on a subset of elements."""
        mask = 0
        for e in element_ids:
            mask |= 1 << self._index(e)
        bot = self._index(bottom) if bottom is not None else self._bottom
        if not (mask >> bot) & 1:
            raise UnknownElement("bottom of the view must belong to it")
        return SubPoset(self, mask, bot, self.n if n is None else n)

    # -- predicates ----------------------------------------------------------

    def dual(self):
        """Order-reversed poset; requires a unique maximal element."""
        maxima = [i for i in range(len(self._ids)) if not self._up_list[i]]
        if len(maxima) != 1:
            raise NoUniqueTop(f"dual needs a unique maximal element, found {len(maxima)}")
        members = sorted(range(len(self._ids)), key=lambda i: (self.n - self._rank[i], i))
        newid = {i: k for k, i in enumerate(members)}
        ranks = [self.n - self._rank[i] for i in members]
        covers_up = [[] for _ in members]
        for i, ups in enumerate(self._covers_up):
            for j in ups:  # i <. j becomes j <. i
                covers_up[newid[j]].append(newid[i])
        labels = {newid[i]: self.label(self._ids[i]) for i in members}
        prov = {newid[i]: self._ids[i] for i in members}
        return GradedPoset(self.n, range(len(members)), ranks, covers_up,
                           labels=labels, provenance=prov)

    def is_eulerian(self):
        """Every interval [tau, pi], pi up to the virtual top, satisfies the
        Euler-Poincare relation (alternating rank sum vanishes)."""
        if "eulerian" in self._cache:
            return self._cache["eulerian"]
        m = len(self._ids)
        sign = [1 - 2 * (self._rank[i] & 1) for i in range(m)]
        ok = True
        for t in range(m):
            # acc[p] accumulates sum of (-1)^rank(s) over s in [t, p]
            acc = {}
            total = 0
            for s in _bits(self._geq[t]):
                sgn = sign[s]
                total += sgn
                for p in _bits(self._geq[s]):
                    acc[p] = acc.get(p, 0) + sgn
            if any(val != 0 for p, val in acc.items() if p != t):
                ok = False
                break
            # interval [t, virtual top]: real part must cancel (-1)^(n+1)
            if total != (1 - 2 * (self.n & 1)):
                ok = False
                break
        self._cache["eulerian"] = ok
        return ok

    def join(self, x, y):
        """Least upper bound of x and y; TOP when only the virtual top works.

        Raises NotALattice when two incomparable minimal upper bounds exist.
        """
        xi, yi = self._index(x), self._index(y)
        ub = self._geq[xi] & self._geq[yi]
        if ub == 0:
            return TOP
        minimal = [i for i in _bits(ub) if ub & self._leq[i] == 1 << i]
        if len(minimal) == 1:
            return self._ids[minimal[0]]
        raise NotALattice(
            f"join({x!r}, {y!r}) has {len(minimal)} minimal upper bounds")

    def is_lattice(self):
        """True iff every pair has a join (possibly the virtual top)."""
        if "lattice" in self._cache:
            return self._cache["lattice"]
        ok = True
        m = len(self._ids)
        for i in range(m):
            for j in range(i + 1, m):
                ub = self._geq[i] & self._geq[j]
                if ub == 0:
                    continue
                minimal = [k for k in _bits(ub) if ub & self._leq[k] == 1 << k]
                if len(minimal) > 1:
                    ok = False
                    break
            if not ok:
                break
        self._cache["lattice"] = ok
        return ok

    def __repr__(self):
        return f"GradedPoset(rank={self.n}, elements={len(self._ids)})"


@dataclass(frozen=True)
class SubPoset:
    """A read-only view on a subset of a GradedPoset's elements.

    Used for fibers, boundaries and half-open upper intervals where we want
    to share the root's order relation and homology caches instead of
    re-materializing a poset.  Ranks are the root's minus `rank_offset`.
    """

    root: GradedPoset
    mask: int
    bottom_idx: int
    n: int

    @property
    def _root(self):
        return self.root

    @property
    def _mask(self):
        return self.mask

    @property
    def _bottom_idx(self):
        return self.bottom_idx

    @property
    def _rank_offset(self):
        return self.root._rank[self.bottom_idx]

    def _vrank(self, i):
        return self.root._rank[i] - self._rank_offset

    def _indices(self):
        return sorted(_bits(self.mask), key=lambda i: (self.root._rank[i], i))

    def _up_indices(self, i):
        return [j for j in self.root._up_list[i] if (self.mask >> j) & 1]

    def __len__(self):
        return self.mask.bit_count()

    def elements(self):
        return [self.root._ids[i] for i in self._indices()]

    def rank(self, x):
        return self._vrank(self.root._index(x))

    @property
    def bottom(self):
        return self.root._ids[self.bottom_idx]

    def leq(self, x, y):
        return self.root.leq(x, y)

    def label(self, x):
        return self.root.label(x)

    def rho_to_top(self, x):
        return self.n + 1 - self.rank(x)


def upper_view(P, x):
    """The half-open upper interval [x, 1-hat) of P as a SubPoset view."""
    root = P._root
    xi = root._index(x)
    mask = root._geq[xi] & P._mask
    return SubPoset(root, mask, xi, P.n - P._vrank(xi))


def iter_chain_indices(view):
    """All chains of the view that avoid the bottom, as ascending index
    tuples (the empty chain included), in deterministic order."""
    root = view._root
    mask = view._mask & ~(1 << view._bottom_idx)
    first = [i for i in view._indices() if (mask >> i) & 1]

    def rec(prefix, candidates):
        yield prefix
        for k, i in enumerate(candidates):
            nxt = [j for j in root._up_list[i] if (mask >> j) & 1]
            yield from rec(prefix + (i,), nxt)

    yield from rec((), first)


# -- JSON format ------------------------------------------------------------
#
# { "n": int,
#   "elements": [ {"id": int, "rank": int, "label": str?}, ... ],
#   "covers": [ [lower, upper], ... ] }
#
# Element id 0 must be the bottom.  Round-trip stable after canonicalization.


def to_json_dict(P):
    ids = P.elements()
    if P.bottom != 0 or sorted(ids) != list(range(len(ids))):
        # renumber deterministically: bottom first, then by (rank, id)
        order = sorted(ids, key=lambda e: (P.rank(e), e))
        remap = {e: k for k, e in enumerate(order)}
    else:
        remap = {e: e for e in ids}
    elements = []
    for e in sorted(ids, key=lambda e: remap[e]):
        entry = {"id": remap[e], "rank": P.rank(e)}
        if e in P.labels:
            entry["label"] = P.labels[e]
        elements.append(entry)
    covers = sorted([remap[a], remap[b]] for a, b in P.covers())
    return {"n": P.n, "elements": elements, "covers": covers}


def from_json_dict(doc):
    ranks = {}
    labels = {}
    for entry in doc["elements"]:
        ranks[entry["id"]] = entry["rank"]
        if "label" in entry:
            labels[entry["id"]] = entry["label"]
    if ranks.get(0) != 0:
        raise NoBottom("JSON posets must use id 0 for the bottom element")
    return GradedPoset.from_covers(doc["n"], ranks,
                                   [tuple(c) for c in doc["covers"]],
                                   labels=labels)


def to_json(P, indent=None):
    return json.dumps(to_json_dict(P), indent=indent, sort_keys=True)


def from_json(text):
    return from_json_dict(json.loads(text))
