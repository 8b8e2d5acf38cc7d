"""Relative ideals of a numerical semigroup and the canonical trace.

A relative ideal I of H is a subset of the integers with I + H inside I
and a finite left end.  Every such ideal is stored exactly as

    (base, window)  with  base = min(I),

where window is a bit mask over [base, base + c) for c = conductor(H),
and every integer >= base + c is an implied member: x - base >= c forces
x - base in H, so x in base + H, which is contained in I.  This makes
sums and duals finite bitwise operations.

The canonical ideal is generated by the negated pseudo-Frobenius numbers;
its trace  tr(H) = canonical + dual(canonical)  is an ideal of H, and the
residue |H \\ tr(H)| (counted below the conductor, since the conductor
ideal always sits inside the trace) measures the distance from symmetric:
residue 0 means symmetric, residue <= 1 means nearly Gorenstein.

:func:`scan_profile` is the mask-level kernel used by the exhaustive
sweeps; the test suite keeps it in lockstep with the RelativeIdeal route.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass

from .errors import ConsistencyError, EmptyGenerators, ParentMismatch
from .semigroup import NumericalSemigroup, _bits_list


@dataclass(frozen=True)
class RelativeIdeal:
    """Exact relative ideal: base offset, membership window, all-in tail."""

    parent: NumericalSemigroup
    base: int
    window: int  # bit i <-> base + i, over [base, base + conductor)

    def __post_init__(self):
        c = self.parent.conductor
        if c and not (self.window & 1):
            raise ConsistencyError("window must mark its own base as a member")
        if self.window >> c:
            raise ConsistencyError("window wider than the conductor")
        # closure under adding generators, testable on the window
        w = c + self.parent.generators[-1] + 1
        ext = self._ext(w)
        clip = (1 << w) - 1
        for n in self.parent.generators:
            if ((ext << n) & clip) & ~ext:
                raise ConsistencyError("window is not closed under the semigroup")

    # -- membership ------------------------------------------------------

    def _ext(self, width: int) -> int:
        """Window extended with the all-in tail, bits [0, width) <-> base+i."""
        c = self.parent.conductor
        if width <= c:
            return self.window & ((1 << width) - 1)
        return self.window | (((1 << width) - 1) ^ ((1 << c) - 1))

    def __contains__(self, x: int) -> bool:
        i = x - self.base
        if i < 0:
            return False
        if i >= self.parent.conductor:
            return True
        return bool((self.window >> i) & 1)

    def members_below(self, stop: int) -> list[int]:
        width = max(stop - self.base, 0)
        return [self.base + i for i in _bits_list(self._ext(width))]

    def issubset(self, other: "RelativeIdeal") -> bool:
        if self.parent != other.parent:
            raise ParentMismatch("ideals of different semigroups")
        lo = min(self.base, other.base)
        width = max(self.base, other.base) + self.parent.conductor + 1 - lo
        a = self._ext(width - (self.base - lo)) << (self.base - lo)
        b = other._ext(width - (other.base - lo)) << (other.base - lo)
        return not (a & ~b)

    # -- ideal arithmetic --------------------------------------------------

    def minimal_generators(self) -> tuple[int, ...]:
        """The unique minimal G with I = union of g + H: members x such that
        x - n is outside I for every generator n of H.  All lie in the window."""
        H = self.parent
        if H.is_whole_line:
            return (self.base,)
        c = H.conductor
        ext = self._ext(c + H.generators[-1] + 1)
        covered = 0
        for n in H.generators:
            covered |= ext << n
        mg = ext & ~covered & ((1 << c) - 1)
        return tuple(self.base + i for i in _bits_list(mg))

    def dual(self) -> "RelativeIdeal":
        """H - I = {z : z + I inside H}, the ideal quotient.

        z + I inside H iff z + g in H for the finitely many minimal
        generators g, so a window scan over [-min(I), -min(I) + 2c)
        suffices (the first member appears within c of the lower bound,
        and the tail rule covers everything beyond it).
        """
        H = self.parent
        c = H.conductor
        if H.is_whole_line:
            return RelativeIdeal(H, -self.base, 0)
        gens = self.minimal_generators()
        width = 2 * c + 1
        hext = H.member_mask(3 * c + 1)
        dm = (1 << width) - 1
        for g in gens:
            dm &= hext >> (g - self.base)
        i0 = (dm & -dm).bit_length() - 1
        if i0 > c:
            raise ConsistencyError("dual window scan missed its first member")
        return RelativeIdeal(H, -self.base + i0, (dm >> i0) & ((1 << c) - 1))

    def __add__(self, other: "RelativeIdeal") -> "RelativeIdeal":
        """Pointwise sum I + J = {i + j}; equals the union of g + J over
        the minimal generators g of I."""
        if not isinstance(other, RelativeIdeal):
            return NotImplemented
        H = self.parent
        if H != other.parent:
            raise ParentMismatch("cannot add ideals of different semigroups")
        c = H.conductor
        base = self.base + other.base
        if H.is_whole_line:
            return RelativeIdeal(H, base, 0)
        gens = self.minimal_generators()
        oext = other._ext(c + (gens[-1] - self.base) + 1)
        window = 0
        for g in gens:
            window |= oext << (g - self.base)
        return RelativeIdeal(H, base, window & ((1 << c) - 1))


# -- constructors ----------------------------------------------------------


def ideal_from_generators(H: NumericalSemigroup, gens) -> RelativeIdeal:
    """Relative ideal generated by gens: the union of g + H."""
    gens = sorted(set(gens))
    if not gens:
        raise EmptyGenerators("a relative ideal needs at least one generator")
    base = gens[0]
    c = H.conductor
    he = H.member_mask(c)
    window = 0
    for g in gens:
        window |= he << (g - base)
    return RelativeIdeal(H, base, window & ((1 << c) - 1))


def semigroup_as_ideal(H: NumericalSemigroup) -> RelativeIdeal:
    return RelativeIdeal(H, 0, H.member_mask(H.conductor))


def maximal_ideal(H: NumericalSemigroup) -> RelativeIdeal:
    """M = H minus {0}, generated by the minimal generators of H."""
    return ideal_from_generators(H, H.generators)


def conductor_ideal(H: NumericalSemigroup) -> RelativeIdeal:
    """C_H = {x : x >= conductor}; minimally generated by the conductor
    and the next multiplicity - 1 integers."""
    c = H.conductor
    return RelativeIdeal(H, c, (1 << c) - 1 if c else 0)


def canonical_ideal(H: NumericalSemigroup) -> RelativeIdeal:
    """The canonical ideal, generated by the negated pseudo-Frobenius
    numbers.  For N (no gaps) it degenerates to H itself."""
    if not H.pseudo_frobenius:
        return semigroup_as_ideal(H)
    return ideal_from_generators(H, [-f for f in H.pseudo_frobenius])


# -- trace and residue -------------------------------------------------------


@dataclass(frozen=True)
class TraceSummary:
    trace: RelativeIdeal
    residue: int
    nearly_gorenstein: bool


def canonical_trace(H: NumericalSemigroup) -> TraceSummary:
    """trace = canonical + anticanonical; residue = |H \\ trace|.

    The residue is counted on [0, conductor) because the conductor ideal
    always lies inside the trace.  residue <= 1 iff M is inside the trace
    iff H is nearly Gorenstein; residue 0 iff H is symmetric.
    """
    omega = canonical_ideal(H)
    trace = omega + omega.dual()
    if trace.base < 0:
        raise ConsistencyError(f"trace of {H!r} escapes the semigroup")
    c = H.conductor
    aligned = (trace._ext(c) << trace.base) & ((1 << c) - 1)
    residue = (H.member_mask(c) & ~aligned).bit_count()
    return TraceSummary(trace, residue, residue <= 1)


def trace_of_ideal(ideal: RelativeIdeal) -> RelativeIdeal:
    """I + (H - I).  Translation invariant, always squeezed between the
    conductor ideal and H; that containment is asserted."""
    H = ideal.parent
    result = ideal + ideal.dual()
    if not conductor_ideal(H).issubset(result) or not result.issubset(semigroup_as_ideal(H)):
        raise ConsistencyError("trace of an ideal left [conductor, H]")
    return result


@dataclass(frozen=True)
class NgReport:
    residue: int
    n_of_h: int
    genus: int
    bound_n_ok: bool        # residue <= n(H): hard, must always hold
    question_gn_ok: bool    # residue <= genus - n(H): open question, report only
    containment_ok: bool    # conductor <= trace <= H, and <= M when not symmetric


def ng_report(H: NumericalSemigroup) -> NgReport:
    summary = canonical_trace(H)
    inv = H.invariants()
    trace = summary.trace
    containment = conductor_ideal(H).issubset(trace) and trace.issubset(semigroup_as_ideal(H))
    if not H.classify().symmetric:
        containment = containment and 0 not in trace
    return NgReport(
        residue=summary.residue,
        n_of_h=inv.n_of_h,
        genus=inv.genus,
        bound_n_ok=summary.residue <= inv.n_of_h,
        question_gn_ok=summary.residue <= inv.genus - inv.n_of_h,
        containment_ok=containment,
    )


# -- mask-level kernel for exhaustive sweeps ---------------------------------

ScanProfile = namedtuple(
    "ScanProfile",
    "residue n_of_h genus pseudo_frobenius symmetric containment_ok divisorial_ok",
)


def scan_profile(member_mask: int, frobenius: int, generators,
                 check_divisorial: bool = False) -> ScanProfile:
    """Trace profile computed directly on bit masks, no objects.

    member_mask covers [0, frobenius + 1); generators is the minimal
    generating tuple.  Used by the Frobenius-bounded and minimal-
    multiplicity sweeps where millions of semigroups are visited; the
    test suite cross-checks it against the RelativeIdeal route.

    containment_ok bundles the hard facts: trace inside H, residue = 0
    exactly for symmetric semigroups, and trace inside M otherwise.
    divisorial_ok (only computed on request) probes whether the canonical
    ideal equals its double dual.
    """
    if frobenius < 0:
        return ScanProfile(0, 0, 0, (), True, True, True)
    fr = frobenius
    c = fr + 1
    maskc = (1 << c) - 1
    width = 3 * c + 2
    hext = member_mask | (((1 << width) - 1) ^ maskc)
    pf = ~member_mask & maskc
    for n in generators:
        pf &= hext >> n
    pf_list = _bits_list(pf)
    mask2c = (1 << 2 * c) - 1
    dual_win = mask2c  # bit i <-> fr + i in the anticanonical ideal
    for f in pf_list:
        dual_win &= hext >> (fr - f)
    dual_win &= mask2c
    tr = 0
    for f in pf_list:
        tr |= dual_win << (fr - f)
    tr &= maskc
    residue = (member_mask & ~tr).bit_count()
    n_of_h = member_mask.bit_count()
    genus = c - n_of_h
    symmetric = genus == n_of_h
    ok = not (tr & ~member_mask) and (residue == 0) == symmetric
    if not symmetric:
        ok = ok and not (tr & 1)

    divisorial = True
    if check_divisorial and pf_list:
        omega = 0  # bit i <-> -fr + i
        for f in pf_list:
            omega |= hext << (fr - f)
        omega &= mask2c
        covered = 0
        for n in generators:
            covered |= dual_win << n
        dual_gens = dual_win & ~covered & mask2c
        double = mask2c
        t = dual_gens
        while t:
            low = t & -t
            double &= hext >> (low.bit_length() - 1)
            t ^= low
        divisorial = (double & mask2c) == omega
    return ScanProfile(residue, n_of_h, genus, tuple(pf_list), symmetric, ok, divisorial)
