"""Numerical semigroups and their elementary invariants.

A numerical semigroup H is a cofinite additive subsemigroup of the
nonnegative integers containing 0.  Everything downstream (relative
ideals, trace, residue) hammers membership queries, so construction
precomputes the Apery table of the multiplicity m (the least member of
each residue class mod m) and answers ``x in H`` in O(1): x is a member
iff x >= table[x % m].

Membership below the conductor c = frobenius + 1 is also kept as a bit
mask (bit x set iff x in H), which is what the windowed ideal arithmetic
in :mod:`trace_toolkit.ideals` operates on.

All sets here are plain integers used as bit masks; there is no floating
point anywhere in the package.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from heapq import heappop, heappush
from math import gcd
from typing import Iterator

from .errors import (
    ConsistencyError,
    EmptyInput,
    FrobeniusBoundExceeded,
    NonCoprime,
    NotAMember,
    PreconditionViolated,
)

DEFAULT_MAX_FROBENIUS = 10**7
MAX_FROBENIUS_ENV = "TRACE_TOOLKIT_MAX_FROBENIUS"


def frobenius_bound() -> int:
    """Safety cap on Frobenius numbers (keeps windows in memory).

    Overridable through the TRACE_TOOLKIT_MAX_FROBENIUS environment variable.
    """
    raw = os.environ.get(MAX_FROBENIUS_ENV, "")
    return int(raw) if raw.strip() else DEFAULT_MAX_FROBENIUS


def _closure_mask(gens, width: int) -> int:
    """Bit mask of <gens> on [0, width): reachable sums of the generators."""
    clip = (1 << width) - 1
    reach = 1
    for g in gens:
        # saturate under +g by doubling the shift
        step = g
        while step < width:
            reach |= (reach << step) & clip
            step *= 2
    return reach


def normalize_generators(raw) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Reduce a generator list to the minimal generating set of <raw>.

    Returns (minimal, removed) where removed lists the redundant inputs.
    Raises EmptyInput, PreconditionViolated (non-positive entries) or
    NonCoprime (gcd > 1).
    """
    gens = sorted(set(raw))
    if not gens:
        raise EmptyInput("no generators given")
    if gens[0] < 1:
        raise PreconditionViolated(f"generators must be >= 1, got {gens[0]}")
    g_all = 0
    for g in gens:
        g_all = gcd(g_all, g)
    if g_all != 1:
        raise NonCoprime(f"gcd of generators is {g_all}, must be 1")
    reach = _closure_mask(gens, gens[-1] + 1)
    minimal, removed = [], []
    for g in gens:
        # g is redundant iff g - h lies in <gens> for some smaller generator h
        if any(0 < g - h and (reach >> (g - h)) & 1 for h in gens):
            removed.append(g)
        else:
            minimal.append(g)
    return tuple(minimal), tuple(removed)


def _apery_of_multiplicity(gens, cap: int) -> list[int]:
    """Least member of <gens> in each residue class mod gens[0].

    Shortest-path relaxation over the residue graph (edges +g, weight g).
    Raises FrobeniusBoundExceeded as soon as a class representative would
    exceed cap (so the Frobenius number would exceed cap - gens[0]).
    """
    m = gens[0]
    dist = [-1] * m
    dist[0] = 0
    heap = [(0, 0)]
    others = gens[1:]
    while heap:
        d, r = heappop(heap)
        if dist[r] != -1 and d > dist[r]:
            continue
        if d > cap:
            raise FrobeniusBoundExceeded(
                f"Apery value {d} exceeds bound {cap}; raise "
                f"{MAX_FROBENIUS_ENV} if this is intentional"
            )
        for g in others:
            nd = d + g
            nr = nd % m
            if dist[nr] == -1 or nd < dist[nr]:
                dist[nr] = nd
                heappush(heap, (nd, nr))
    if -1 in dist:
        raise NonCoprime(f"generators {gens} do not reach every class mod {m}")
    return dist


@dataclass(frozen=True)
class SemigroupInvariants:
    frobenius: int
    gaps: tuple[int, ...]
    genus: int
    n_of_h: int
    conductor_number: int
    multiplicity: int
    embedding_dimension: int
    has_minimal_multiplicity: bool


@dataclass(frozen=True)
class Classification:
    symmetric: bool
    pseudo_symmetric: bool
    almost_symmetric: bool


class NumericalSemigroup:
    """Immutable numerical semigroup with memoized invariants.

    Construct via :func:`from_generators`; the constructor itself expects
    an already-minimal generating tuple.  After construction the object is
    never mutated and is safe to share between workers.
    """

    __slots__ = (
        "generators",
        "multiplicity",
        "embedding_dimension",
        "frobenius",
        "conductor",
        "genus",
        "n_of_h",
        "gaps",
        "pseudo_frobenius",
        "type",
        "_apery_mult",
        "_mask",
    )

    def __init__(self, minimal_generators: tuple[int, ...], max_frobenius: int | None = None):
        gens = tuple(minimal_generators)
        m = gens[0]
        bound = frobenius_bound() if max_frobenius is None else max_frobenius
        apery = _apery_of_multiplicity(gens, bound + m)
        self.generators = gens
        self.multiplicity = m
        self.embedding_dimension = len(gens)
        self.frobenius = max(apery) - m
        self.conductor = self.frobenius + 1
        self._apery_mult = tuple(apery)
        c = self.conductor
        # membership mask on [0, c): union of (apery value + multiples of m)
        step = _closure_mask((m,), c) if c else 0
        mask = 0
        for a in apery:
            if a < c:
                mask |= step << a
        mask &= (1 << c) - 1 if c else 0
        self._mask = mask
        self.n_of_h = mask.bit_count()  # members below frobenius (frobenius is a gap)
        self.genus = c - self.n_of_h
        gaps_mask = ~mask & ((1 << c) - 1)
        self.gaps = _bits(gaps_mask)
        ext = self.member_mask(c + gens[-1] + 1)
        pf_mask = gaps_mask
        for n in gens:
            pf_mask &= ext >> n
        self.pseudo_frobenius = _bits(pf_mask)
        self.type = len(self.pseudo_frobenius)

    # -- basic protocol ------------------------------------------------

    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        if x >= self.conductor:
            return True
        return bool((self._mask >> x) & 1)

    def contains(self, x: int) -> bool:
        return x in self

    def __eq__(self, other) -> bool:
        return isinstance(other, NumericalSemigroup) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return f"NumericalSemigroup{self.generators}"

    # -- views ----------------------------------------------------------

    def member_mask(self, width: int) -> int:
        """Membership bit mask on [0, width); everything >= conductor is set."""
        c = self.conductor
        if width <= c:
            return self._mask & ((1 << width) - 1)
        return self._mask | (((1 << width) - 1) ^ ((1 << c) - 1))

    def members_below(self, stop: int) -> list[int]:
        return _bits_list(self.member_mask(max(stop, 0)))

    @property
    def is_whole_line(self) -> bool:
        """True for <1> = N, the degenerate semigroup with no gaps."""
        return self.generators == (1,)

    # -- invariants ------------------------------------------------------

    def apery(self, a: int) -> tuple[int, ...]:
        """Apery set of a member a > 0: the h in H with h - a not in H.

        Exactly one element per residue class mod a (the least member of
        the class).  Raises NotAMember if a is not a positive member.
        """
        if a <= 0 or a not in self:
            raise NotAMember(f"{a} is not a positive element of {self!r}")
        out = []
        for r in range(a):
            x = r
            while x not in self:
                x += a
            out.append(x)
        return tuple(sorted(out))

    def invariants(self) -> SemigroupInvariants:
        return SemigroupInvariants(
            frobenius=self.frobenius,
            gaps=self.gaps,
            genus=self.genus,
            n_of_h=self.n_of_h,
            conductor_number=self.conductor,
            multiplicity=self.multiplicity,
            embedding_dimension=self.embedding_dimension,
            has_minimal_multiplicity=self.multiplicity == self.embedding_dimension,
        )

    def classify(self) -> Classification:
        """Symmetry classifications.

        symmetric: every integer x satisfies exactly one of x in H,
        frobenius - x in H (equivalently genus = n(H), equivalently type 1);
        pseudo_symmetric: frobenius even and PF = {frobenius/2, frobenius};
        almost_symmetric: the pseudo-Frobenius numbers pair up as
        f_i + f_{type-i} = frobenius for i = 1..floor(type/2).
        """
        symmetric = self.genus == self.n_of_h
        if not self.is_whole_line and symmetric != (self.type == 1):
            raise ConsistencyError(f"symmetry routes disagree on {self!r}")
        pf = self.pseudo_frobenius
        fr = self.frobenius
        pseudo_symmetric = fr >= 0 and fr % 2 == 0 and pf == (fr // 2, fr)
        tau = len(pf)
        almost_symmetric = all(pf[i] + pf[tau - 2 - i] == fr for i in range(tau // 2))
        return Classification(symmetric, pseudo_symmetric, almost_symmetric)


def _bits(mask: int) -> tuple[int, ...]:
    return tuple(_bits_list(mask))


def _bits_list(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def from_generators(raw, max_frobenius: int | None = None) -> NumericalSemigroup:
    """Numerical semigroup generated by raw (minimalized, gcd-checked)."""
    minimal, _removed = normalize_generators(raw)
    return NumericalSemigroup(minimal, max_frobenius=max_frobenius)


# -- exhaustive enumeration ----------------------------------------------


def iter_semigroups(max_frobenius: int, root: tuple[int, int] | None = None
                    ) -> Iterator[tuple[int, int, tuple[int, ...]]]:
    """Walk every numerical semigroup with Frobenius number <= max_frobenius.

    Yields (member_mask, frobenius, minimal_generators) with member_mask
    covering [0, frobenius + 1).  The walk is the classic removal tree: a
    child deletes one minimal generator g with frobenius < g <= max_frobenius
    (the child's Frobenius number is then g), so every semigroup in range
    appears exactly once.  N itself is yielded first as (0, -1, (1,)).

    root, if given, is a (full_mask, frobenius) node from a previous walk
    at the same bound; only that subtree is visited (used to fan subtrees
    out to worker processes).  full_mask covers [0, max_frobenius].

    The per-node cost is a handful of word operations on ~2*max_frobenius
    bit integers, which keeps full sweeps up to max_frobenius ~ 40 cheap.
    """
    F = max_frobenius
    if F < 0:
        raise PreconditionViolated("max_frobenius must be >= 0")
    tail = ((1 << (2 * F + 6)) - 1) ^ ((1 << (F + 1)) - 1)
    stack: list[tuple[int, int]] = [root if root else ((1 << (F + 1)) - 1, -1)]
    while stack:
        mask, fr = stack.pop()
        node, children = _expand_node(mask, fr, F, tail)
        yield node
        stack.extend(children)


def _expand_node(mask: int, fr: int, F: int, tail: int):
    """One tree node: ((mask_below_conductor, fr, minimal_generators),
    children as (full_mask, frobenius) pairs)."""
    h_ext = mask | tail
    p_ext = h_ext & ~1
    m = (p_ext & -p_ext).bit_length() - 1
    hi = fr + m if fr >= 0 else 1
    sums = 0
    y = p_ext & ((1 << (hi // 2 + 1)) - 1)
    while y:
        low = y & -y
        sums |= p_ext << (low.bit_length() - 1)
        y ^= low
    mingens_mask = p_ext & ~sums & (((1 << (hi + 1)) - 1) & ~1)
    gens = tuple(_bits_list(mingens_mask))
    node = (mask & ((1 << (fr + 1)) - 1), fr, gens)
    child_mask = mingens_mask & ((1 << (F + 1)) - 1)
    if fr >= 0:
        child_mask &= ~((1 << (fr + 1)) - 1)
    children = []
    while child_mask:
        low = child_mask & -child_mask
        children.append((mask ^ low, low.bit_length() - 1))
        child_mask ^= low
    return node, children


def frontier_split(max_frobenius: int, min_size: int):
    """Breadth-first prefix of the enumeration tree for process fanout.

    Returns (shallow_nodes, frontier): shallow_nodes are emitted
    (mask_c, fr, gens) records, frontier the unexpanded (full_mask, fr)
    subtree roots, at least min_size of them unless the tree is smaller.
    """
    F = max_frobenius
    tail = ((1 << (2 * F + 6)) - 1) ^ ((1 << (F + 1)) - 1)
    frontier: list[tuple[int, int]] = [((1 << (F + 1)) - 1, -1)]
    shallow = []
    while frontier and len(frontier) < min_size:
        nxt = []
        for mask, fr in frontier:
            node, children = _expand_node(mask, fr, F, tail)
            shallow.append(node)
            nxt.extend(children)
        frontier = nxt
    return shallow, frontier
