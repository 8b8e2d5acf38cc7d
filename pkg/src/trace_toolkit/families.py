"""Closed-form semigroup families and their theorem checkers.

Three families with known trace behaviour:

* arithmetic sequences <a, a+d, ..., a+(e-1)d> -- always nearly
  Gorenstein, with explicit pseudo-Frobenius numbers and symmetry
  criteria in terms of a mod (e-1);
* minimal multiplicity (multiplicity = embedding dimension) -- here
  PF(H) = {n_i - n_1} and nearly Gorenstein is equivalent to almost
  symmetric;
* the maximal-embedding-dimension family <m, qm+1, ..., qm+m-1> whose
  trace is exactly the conductor ideal and whose residue is q (this
  needs m >= 3: for m = 2 the semigroup <2, 2q+1> is symmetric, so its
  residue is 0, not q).

Every closed-form field is cross-checked against the brute-force routes
in :mod:`trace_toolkit.semigroup` / :mod:`trace_toolkit.ideals` before it
is returned.

:func:`iter_minimal_multiplicity` enumerates all minimal-multiplicity
semigroups with bounded Frobenius number by a depth-first search over
Apery sets: choosing, for each nonzero residue r mod m, the least member
w_r = x_r*m + r subject to the closure inequalities
w_i + w_j >= w_{(i+j) mod m} + m (the +m makes every w_r a minimal
generator, which is exactly the minimal-multiplicity condition).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .errors import (
    ConsistencyError,
    NotMinimalMultiplicity,
    PreconditionViolated,
)
from .ideals import canonical_trace, conductor_ideal, scan_profile
from .semigroup import NumericalSemigroup, frontier_split, iter_semigroups


@dataclass(frozen=True)
class ArithmeticFamily:
    semigroup: NumericalSemigroup
    tau: int                 # type, the unique 1 <= tau <= e-1 with a = k(e-1)+tau+1
    k: int
    frobenius: int
    pseudo_frobenius: tuple[int, ...]
    symmetric: bool
    almost_symmetric: bool
    nearly_gorenstein: bool


def arithmetic_family(a: int, d: int, e: int) -> ArithmeticFamily:
    """Semigroup of the arithmetic sequence a, a+d, ..., a+(e-1)d.

    Closed forms: tau = ((a-2) mod (e-1)) + 1, k = (a-2)//(e-1),
    Frobenius = a*k + d*(a-1), PF = {Frobenius - i*d : i < tau},
    symmetric iff a = 2 mod (e-1), almost symmetric iff a = e or
    symmetric, nearly Gorenstein always.  Everything is cross-checked
    against the brute computation; a mismatch raises ConsistencyError.
    """
    if e <= 2:
        raise PreconditionViolated(f"need e > 2, got {e}")
    if d < 1:
        raise PreconditionViolated(f"need d >= 1, got {d} (non-coprime steps are rejected, not reduced)")
    if gcd(a, d) != 1:
        raise PreconditionViolated(f"gcd(a, d) = {gcd(a, d)} != 1")
    if e > a:
        raise PreconditionViolated(f"need e <= a, got e = {e} > a = {a}")
    H = NumericalSemigroup(tuple(a + i * d for i in range(e)))
    tau = (a - 2) % (e - 1) + 1
    k = (a - 2) // (e - 1)
    frob = a * k + d * (a - 1)
    pf = tuple(frob - i * d for i in range(tau - 1, -1, -1))
    symmetric = a % (e - 1) == 2 % (e - 1)
    almost = a == e or symmetric
    cls = H.classify()
    summary = canonical_trace(H)
    checks = (
        frob == H.frobenius
        and pf == H.pseudo_frobenius
        and symmetric == cls.symmetric
        and almost == cls.almost_symmetric
        and summary.nearly_gorenstein
    )
    if not checks:
        raise ConsistencyError(f"arithmetic closed forms disagree with brute force for {H!r}")
    return ArithmeticFamily(H, tau, k, frob, pf, symmetric, almost, True)


@dataclass(frozen=True)
class MinimalMultiplicitySuite:
    pf_formula_ok: bool      # PF == {n_i - n_1, i >= 2}
    almost_symmetric: bool   # via the generator pairing n_i + n_{e-i+1} = n_e + n_1
    nearly_gorenstein: bool  # via the brute trace
    equivalence_ok: bool     # nearly Gorenstein <=> almost symmetric


def minimal_multiplicity_suite(H: NumericalSemigroup) -> MinimalMultiplicitySuite:
    """Check the minimal-multiplicity package on H: the PF formula, the
    pairing criterion for almost symmetric, and the equivalence of nearly
    Gorenstein with almost symmetric (the two sides computed independently:
    windowed trace vs generator pairing)."""
    if H.multiplicity != H.embedding_dimension:
        raise NotMinimalMultiplicity(f"{H!r}: multiplicity != embedding dimension")
    gens = H.generators
    e = len(gens)
    pf_ok = H.pseudo_frobenius == tuple(n - gens[0] for n in gens[1:])
    # pairing range runs through floor((e+1)/2): for odd e the middle
    # generator must pair with itself (at e = 3 the shorter floor(e/2)
    # range is vacuous and would call <3,7,8> almost symmetric)
    pairing = all(gens[i] + gens[e - 1 - i] == gens[e - 1] + gens[0]
                  for i in range(1, (e - 1) // 2 + 1))
    ng = canonical_trace(H).nearly_gorenstein
    return MinimalMultiplicitySuite(pf_ok, pairing, ng, ng == pairing)


@dataclass(frozen=True)
class MaxEmbdimFamily:
    semigroup: NumericalSemigroup
    trace_is_conductor: bool
    residue: int


def max_embdim_family(m: int, q: int) -> MaxEmbdimFamily:
    """H = <m, qm+1, ..., qm+m-1>: trace = conductor ideal, residue = q.

    Requires m > 2: for m = 2 the family degenerates to the symmetric
    <2, 2q+1> with residue 0, and the closed form fails.  Both fields are
    recomputed from the trace engine and asserted.
    """
    if m <= 2:
        raise PreconditionViolated(
            f"need m > 2 (m = 2 gives the symmetric <2, {2 * q + 1}> with residue 0)"
        )
    if q < 1:
        raise PreconditionViolated(f"need q > 0, got {q}")
    H = NumericalSemigroup((m, *range(q * m + 1, q * m + m)))
    summary = canonical_trace(H)
    is_conductor = summary.trace == conductor_ideal(H)
    if not is_conductor or summary.residue != q:
        raise ConsistencyError(
            f"max-embdim family (m={m}, q={q}) residue {summary.residue} != {q}"
        )
    return MaxEmbdimFamily(H, is_conductor, summary.residue)


# -- enumeration of minimal-multiplicity semigroups ---------------------------


def iter_minimal_multiplicity(max_frobenius: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield (multiplicity, apery_tuple) for every minimal-multiplicity
    semigroup with 1 <= Frobenius <= max_frobenius.

    apery_tuple lists w_1..w_{m-1}, the least member of each nonzero
    residue class mod m; the minimal generators are (m, *apery_tuple) and
    the Frobenius number is max(apery_tuple) - m.  The DFS assigns the
    Kunz coordinate x_r = (w_r - r) // m class by class; the constraint
    w_i + w_j >= w_{(i+j) mod m} + m is checked as soon as all three
    classes involved are assigned, so leaves are exactly the valid sets.
    """
    F = max_frobenius
    if F < 1:
        return
    for m in range(2, F + 2):
        xmax = [0] + [(F + m - r) // m for r in range(1, m)]
        if min(xmax[1:]) < 1:
            continue
        x = [0] * m

        def walk(r: int) -> Iterator[tuple[int, tuple[int, ...]]]:
            if r == m:
                yield m, tuple(x[i] * m + i for i in range(1, m))
                return
            lo, hi = 1, xmax[r]
            for i in range(1, r // 2 + 1):
                hi = min(hi, x[i] + x[r - i] - 1)  # w_i + w_{r-i} >= w_r + m
            for i in range(max(1, m - r + 1), r):
                t = i + r - m
                if t >= 1:
                    lo = max(lo, x[t] - x[i])      # w_i + w_r >= w_t + m
            if 2 * r > m:
                lo = max(lo, (x[2 * r - m] + 1) // 2)  # w_r + w_r >= w_{2r-m} + m
            for v in range(lo, hi + 1):
                x[r] = v
                yield from walk(r + 1)
            x[r] = 0

        yield from walk(1)


def minmult_member_mask(m: int, apery: tuple[int, ...], width: int) -> int:
    """Membership mask on [0, width) of the semigroup with Apery data."""
    rep = 1
    step = m
    while step < width:
        rep |= rep << step
        step *= 2
    clip = (1 << width) - 1
    mask = rep
    for w in apery:
        mask |= rep << w
    return mask & clip


@dataclass(frozen=True)
class MinmultSweep:
    multiplicity: int
    count: int
    nearly_gorenstein: int
    almost_symmetric: int
    mismatches: tuple[tuple[int, ...], ...]   # generator tuples, expect none
    pf_mismatches: tuple[tuple[int, ...], ...]


def minmult_multiplicity_sweep(m: int, max_frobenius: int,
                               check_pf: bool = False) -> MinmultSweep:
    """Fused sweep of one multiplicity class, entirely on bit masks.

    Walks the same tree as :func:`iter_minimal_multiplicity` but keeps the
    membership mask, the generator mask and max(w) incrementally on the
    DFS stack.  At each leaf:

    * nearly Gorenstein is decided by its definition M inside trace: a
      generator n lies in the trace iff n + w_r - w_s is a member for
      some r and all s, which is one AND-of-shifted-masks (Q) plus one
      lookup per generator;
    * almost symmetric is the Nari pairing f_i + f_{tau-i} = Fr applied
      to PF = {w_r - m} (the minimal-multiplicity PF formula; with
      check_pf=True the formula is re-derived per leaf from the gap and
      membership masks and compared).

    17.1 million semigroups fit in Fr <= 60; this runs them in a couple
    of minutes of one core, and the CLI fans multiplicities out to a
    process pool.
    """
    F = max_frobenius
    out_count = ng_count = as_count = 0
    mismatches: list[tuple[int, ...]] = []
    pf_bad: list[tuple[int, ...]] = []
    xmax = [0] + [(F + m - r) // m for r in range(1, m)]
    if m < 2 or min(xmax[1:], default=0) < 1:
        return MinmultSweep(m, 0, 0, 0, (), ())
    width = 2 * (F + m) + 4
    clip = (1 << width) - 1
    rep = 1
    step = m
    while step < width:
        rep |= rep << step
        step *= 2
    rep &= clip
    up_pairs = [tuple((i, r - i) for i in range(1, r // 2 + 1)) for r in range(m)]
    low_pairs = [
        tuple((i, i + r - m) for i in range(max(1, m - r + 1), r) if i + r - m >= 1)
        for r in range(m)
    ]
    half = [2 * r - m if 2 * r > m else 0 for r in range(m)]
    x = [0] * m
    w = [0] * m

    def leaf(mask: int, pf_bits: int, maxw: int):
        nonlocal out_count, ng_count, as_count
        out_count += 1
        clip2 = (1 << (2 * maxw + 2)) - 1
        q = clip2
        for s in range(1, m):
            q &= (mask << w[s]) & clip2
        # n in trace iff some pseudo-Frobenius shift n + w_r hits Q
        ng = bool((q >> m) & pf_bits)
        if ng:
            for r in range(1, m):
                if not (q >> w[r]) & pf_bits:
                    ng = False
                    break
        sw = sorted(w[1:])
        top = sw[-1] + m
        almost = all(sw[i - 1] + sw[m - 2 - i] == top for i in range(1, (m - 1) // 2 + 1))
        if ng:
            ng_count += 1
        if almost:
            as_count += 1
        if ng != almost:
            mismatches.append(tuple(sorted([m] + sw)))
        if check_pf:
            fr = maxw - m
            c = fr + 1
            pf = ~mask & ((1 << c) - 1) & (mask >> m)
            for wr in w[1:]:
                pf &= mask >> wr
            expected = 0
            for wr in w[1:]:
                expected |= 1 << (wr - m)
            if pf != expected:
                pf_bad.append(tuple(sorted([m] + sw)))

    def walk(r: int, mask: int, pf_bits: int, maxw: int):
        if r == m:
            leaf(mask, pf_bits, maxw)
            return
        lo, hi = 1, xmax[r]
        for i, j in up_pairs[r]:
            b = x[i] + x[j] - 1
            if b < hi:
                hi = b
        for i, t in low_pairs[r]:
            b = x[t] - x[i]
            if b > lo:
                lo = b
        if half[r]:
            b = (x[half[r]] + 1) // 2
            if b > lo:
                lo = b
        for v in range(lo, hi + 1):
            x[r] = v
            wr = v * m + r
            w[r] = wr
            walk(r + 1, mask | ((rep << wr) & clip), pf_bits | (1 << wr),
                 wr if wr > maxw else maxw)
        x[r] = 0

    walk(1, rep, 0, 0)
    return MinmultSweep(m, out_count, ng_count, as_count,
                        tuple(mismatches), tuple(pf_bad))


def _minmult_worker(args) -> MinmultSweep:
    m, max_frobenius, check_pf = args
    return minmult_multiplicity_sweep(m, max_frobenius, check_pf)


def minimal_multiplicity_scan(max_frobenius: int, check_pf: bool = False,
                              multiplicities=None, threads: int = 1) -> list[MinmultSweep]:
    """Sweep all (or the given) multiplicities up to max_frobenius + 1,
    fanning multiplicity classes out to a process pool when threads > 1."""
    if multiplicities is None:
        multiplicities = range(2, max_frobenius + 2)
    jobs = [(m, max_frobenius, check_pf) for m in multiplicities]
    if threads <= 1 or len(jobs) <= 1:
        return [_minmult_worker(job) for job in jobs]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_minmult_worker, jobs))


# -- full enumeration scan (Frobenius-bounded) ---------------------------------


@dataclass
class EnumerateAggregate:
    """Tallies from a walk over every semigroup with Fr <= the bound."""

    count: int = 0
    max_residue: int = 0
    symmetric: int = 0
    nearly_gorenstein: int = 0
    trace_equals_conductor: int = 0   # residue == n(H)
    bound_violations: int = 0          # residue > n(H): hard, expect 0
    containment_violations: int = 0    # trace outside [conductor, H]: hard, expect 0
    gn_violations: int = 0             # residue > genus - n(H): open question, report only
    gn_examples: tuple = ()
    divisorial_violations: int = 0     # double-dual probe, report only
    divisorial_examples: tuple = ()

    def merge(self, other: "EnumerateAggregate") -> None:
        self.count += other.count
        self.max_residue = max(self.max_residue, other.max_residue)
        self.symmetric += other.symmetric
        self.nearly_gorenstein += other.nearly_gorenstein
        self.trace_equals_conductor += other.trace_equals_conductor
        self.bound_violations += other.bound_violations
        self.containment_violations += other.containment_violations
        self.gn_violations += other.gn_violations
        self.gn_examples = (self.gn_examples + other.gn_examples)[:EXAMPLE_CAP]
        self.divisorial_violations += other.divisorial_violations
        self.divisorial_examples = (
            self.divisorial_examples + other.divisorial_examples
        )[:EXAMPLE_CAP]


EXAMPLE_CAP = 25


def _tally_node(agg: EnumerateAggregate, node, check_divisorial: bool) -> None:
    mask, fr, gens = node
    profile = scan_profile(mask, fr, gens, check_divisorial)
    agg.count += 1
    if profile.residue > agg.max_residue:
        agg.max_residue = profile.residue
    if profile.symmetric:
        agg.symmetric += 1
    if profile.residue <= 1:
        agg.nearly_gorenstein += 1
    if profile.residue == profile.n_of_h and fr >= 0:
        agg.trace_equals_conductor += 1
    if profile.residue > profile.n_of_h:
        agg.bound_violations += 1
    if not profile.containment_ok:
        agg.containment_violations += 1
    if profile.residue > profile.genus - profile.n_of_h:
        agg.gn_violations += 1
        if len(agg.gn_examples) < EXAMPLE_CAP:
            agg.gn_examples += (gens,)
    if not profile.divisorial_ok:
        agg.divisorial_violations += 1
        if len(agg.divisorial_examples) < EXAMPLE_CAP:
            agg.divisorial_examples += (gens,)


def _enumerate_worker(args) -> EnumerateAggregate:
    root, max_frobenius, check_divisorial = args
    agg = EnumerateAggregate()
    for node in iter_semigroups(max_frobenius, root=root):
        _tally_node(agg, node, check_divisorial)
    return agg


def enumerate_scan(max_frobenius: int, check_divisorial: bool = False,
                   threads: int = 1) -> EnumerateAggregate:
    """Walk every numerical semigroup with Fr <= max_frobenius, tallying
    residues, the hard containment/bound facts, and the report-only
    probes (the residue <= genus - n question and the double-dual check).

    threads > 1 splits the enumeration tree at a breadth-first frontier
    and fans the subtrees out to a process pool.
    """
    agg = EnumerateAggregate()
    if threads <= 1:
        for node in iter_semigroups(max_frobenius):
            _tally_node(agg, node, check_divisorial)
        return agg
    from concurrent.futures import ProcessPoolExecutor

    shallow, frontier = frontier_split(max_frobenius, threads * 8)
    for node in shallow:
        _tally_node(agg, node, check_divisorial)
    jobs = [(root, max_frobenius, check_divisorial) for root in frontier]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(_enumerate_worker, jobs):
            agg.merge(part)
    return agg
