"""Subdivision maps, the decomposition theorem, and inequality verifiers.

Every verifier returns a report object carrying witnesses (the failing
target element, the offending cd-monomials, both sides of an inequality)
because a bare boolean is useless for a verification artifact.  Reports are
truthy iff the property holds.

Fiber certifications are cached on the source poset keyed by fiber element
masks, so closed intervals shared between different maps, different nu and
different target elements are certified once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import constructions, flags, homology
from .ncpoly import NcPoly, coeffwise_leq, coeffwise_witness, to_text
from .poset import NotALattice, SubPoset, upper_view


class RankMismatch(Exception):
    pass


class SourceNotGorenstein(Exception):
    pass


class TargetNotGorenstein(Exception):
    pass


class NotASubdivision(Exception):
    pass


class DecompositionMismatch(Exception):
    pass


class NotGorensteinStar(Exception):
    pass


@dataclass(frozen=True)
class SubdivisionReport:
    ok: bool
    reason: str = ""
    failing_sigma: object = None
    detail: object = None

    def __bool__(self):
        return self.ok


def _fiber_masks(phi):
    """For every target element sigma: masks (over source indices) of the
    closed and open fibers phi^-1[0,sigma] and phi^-1[0,sigma)."""
    src, tgt = phi.source, phi.target
    closed = {s: 0 for s in tgt.elements()}
    image_bit = {s: 0 for s in tgt.elements()}
    for x in src.elements():
        y = phi(x)
        xb = 1 << src._index(x)
        image_bit[y] |= xb
    for s in tgt.elements():
        si = tgt._index(s)
        m = 0
        for t in tgt.down_set(s):
            m |= image_bit[t]
        closed[s] = m
    return closed, image_bit


def is_subdivision(phi):
    """Check Def-style subdivision conditions: equal rank Gorenstein* ends,
    surjectivity, and near-Gorenstein* fiber pairs of matching rank."""
    src, tgt = phi.source, phi.target
    if src.n != tgt.n:
        raise RankMismatch(f"source rank {src.n} != target rank {tgt.n}")
    if not homology.is_gorenstein_star(src):
        raise SourceNotGorenstein("source poset is not Gorenstein*")
    if not homology.is_gorenstein_star(tgt):
        raise TargetNotGorenstein("target poset is not Gorenstein*")
    if not phi.is_surjective():
        missing = sorted(set(tgt.elements()) - set(phi.assignment.values()))
        return SubdivisionReport(False, "map is not surjective", missing[0])
    closed, image_bit = _fiber_masks(phi)
    for s in tgt.elements():
        cmask = closed[s]
        omask = cmask & ~image_bit[s]
        cert = homology.certify_near_gorenstein(
            src._root, cmask, src._bottom_idx, tgt.rank(s), omask)
        if not cert:
            return SubdivisionReport(False,
                                     f"fiber pair over {tgt.label(s)} is not "
                                     f"near-Gorenstein*: {cert.reason}",
                                     s, cert)
    return SubdivisionReport(True)


@dataclass(frozen=True)
class Decomposition:
    """Per-sigma Phi polynomials and the assembled sum, which equals the
    cd-index of the source exactly (checked by `decompose`)."""

    terms: dict = field(compare=False)
    assembled: NcPoly = None
    source_cd: NcPoly = None

    def phi(self, sigma):
        return self.terms[sigma]


def decompose(phi):
    """Evaluate the decomposition: Psi(source) = sum over sigma of
    Phi(fiber over sigma) * Psi([sigma, top) in target).

    Raises NotASubdivision when the map fails certification and
    DecompositionMismatch when the assembled sum differs from the source
    cd-index (which would signal a bug or an invalid certificate).
    """
    report = is_subdivision(phi)
    if not report:
        raise NotASubdivision(report.reason)
    src, tgt = phi.source, phi.target
    closed, image_bit = _fiber_masks(phi)
    cache = src._cache.setdefault("fiber_phi", {})
    terms = {}
    assembled = NcPoly.zero("cd")
    for s in tgt.elements():
        cmask = closed[s]
        omask = cmask & ~image_bit[s]
        key = (cmask, omask, tgt.rank(s))
        if key not in cache:
            fiber = SubPoset(src._root, cmask, src._bottom_idx, tgt.rank(s))
            bd_ids = [src._root._ids[i] for i in _mask_bits(omask)]
            cache[key] = flags.near_cd_index(fiber, bd_ids).phi
        terms[s] = cache[key]
        assembled = assembled + terms[s] * flags.cd_index(upper_view(tgt, s))
    source_cd = flags.cd_index(src)
    if assembled != source_cd:
        raise DecompositionMismatch(
            f"assembled {to_text(assembled)} != source {to_text(source_cd)}")
    return Decomposition(terms, assembled, source_cd)


def _mask_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class InequalityReport:
    ok: bool
    left: NcPoly = None
    right: NcPoly = None
    witness: tuple = ()
    note: str = ""

    def __bool__(self):
        return self.ok


def verify_subdivision_inequality(phi):
    """Theorem-level coefficientwise inequality Psi(source) >= Psi(target)."""
    report = is_subdivision(phi)
    if not report:
        raise NotASubdivision(report.reason)
    lo = flags.cd_index(phi.target)
    hi = flags.cd_index(phi.source)
    ok = coeffwise_leq(lo, hi)
    return InequalityReport(ok, hi, lo, tuple(coeffwise_witness(lo, hi)))


def verify_main_inequality(L, nu):
    """Psi(Lambda) >= Psi[0,nu) * Pyr(Psi[nu,top)), coefficientwise, plus
    the dual form with the pyramid on the lower factor.

    The inequality is evaluated even when L is not a lattice (the 2-gon
    counterexample must be reportable); the report notes lattice status.
    """
    if not homology.is_gorenstein_star(L):
        raise NotGorensteinStar("the main inequality needs a Gorenstein* poset")
    if nu == L.bottom:
        raise ValueError("nu must satisfy 0 < nu < top")
    left = flags.cd_index(L)
    lower = L.interval(L.bottom, nu, closed_upper=False)
    upper = upper_view(L, nu)
    from .ncpoly import pyr_op
    right = flags.cd_index(lower) * pyr_op(flags.cd_index(upper))
    right_dual = pyr_op(flags.cd_index(lower)) * flags.cd_index(upper)
    ok1 = coeffwise_leq(right, left)
    ok2 = coeffwise_leq(right_dual, left)
    witness = tuple(coeffwise_witness(right, left)) or tuple(
        coeffwise_witness(right_dual, left))
    note = "" if L.is_lattice() else "input is not a lattice"
    return InequalityReport(ok1 and ok2, left, right, witness, note)


def verify_stanley_minimum(L):
    """cd-index of the Boolean algebra of matching rank is a coefficientwise
    lower bound for any Gorenstein* lattice."""
    if not homology.is_gorenstein_star(L):
        raise NotGorensteinStar("the Boolean-minimum bound needs a Gorenstein* poset")
    boolean = flags.cd_index(constructions.boolean_algebra(L.n + 1))
    mine = flags.cd_index(L)
    ok = coeffwise_leq(boolean, mine)
    return InequalityReport(ok, mine, boolean, tuple(coeffwise_witness(boolean, mine)))


def verify_corollary_semisusp(L, nu):
    """Psi of the semisuspension is coefficientwise at most Psi(Lambda)."""
    if not L.is_lattice():
        raise NotALattice("the semisuspension corollary needs a lattice")
    lo = flags.lambda_nu_prime_cd(L, nu)
    hi = flags.cd_index(L)
    ok = coeffwise_leq(lo, hi)
    return InequalityReport(ok, hi, lo, tuple(coeffwise_witness(lo, hi)))


def identity_map(P):
    return constructions.PosetMap(P, P, {e: e for e in P.elements()})
