"""Finite posets and the combinatorial Hibi-ring classification.

A poset is given by labeled elements and Hasse cover pairs.  The toric
ring of its lattice of order ideals is Gorenstein exactly when the poset
is pure (all maximal chains share one length), and nearly Gorenstein
exactly when every connected component is pure and the component ranks
pairwise differ by at most one.  Both criteria, the a-invariant
-(rank + 2), and the interval-purity necessary condition are computed
here from chains alone; the ring itself is never constructed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    CapExceeded,
    ConsistencyError,
    CycleDetected,
    DuplicateLabel,
    EmptyPoset,
    MalformedInput,
)


@dataclass(frozen=True)
class FinitePoset:
    """Elements plus transitively reduced cover pairs (lower, upper)."""

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]
    removed_covers: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    @property
    def upper(self) -> dict[str, tuple[str, ...]]:
        up: dict[str, list[str]] = {e: [] for e in self.elements}
        for lo, hi in self.covers:
            up[lo].append(hi)
        return {e: tuple(v) for e, v in up.items()}

    @property
    def lower(self) -> dict[str, tuple[str, ...]]:
        down: dict[str, list[str]] = {e: [] for e in self.elements}
        for lo, hi in self.covers:
            down[hi].append(lo)
        return {e: tuple(v) for e, v in down.items()}


def parse_poset(source) -> FinitePoset:
    """Build a validated poset from JSON text or an already-decoded dict.

    Expected shape: {"elements": [labels...], "covers": [[lower, upper]...]}.
    Rejects duplicate labels, unknown labels, and cycles; covers implied by
    transitivity are dropped (recorded in removed_covers)."""
    if isinstance(source, (str, bytes)):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"not valid JSON: {exc}") from exc
    else:
        data = source
    if not isinstance(data, dict) or "elements" not in data:
        raise MalformedInput('expected {"elements": [...], "covers": [...]}')
    elements = data["elements"]
    covers = data.get("covers", [])
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise MalformedInput("elements must be a list of string labels")
    if len(set(elements)) != len(elements):
        dupes = sorted({e for e in elements if elements.count(e) > 1})
        raise DuplicateLabel(f"duplicate labels: {dupes}")
    known = set(elements)
    pairs = []
    for item in covers:
        if (not isinstance(item, (list, tuple))) or len(item) != 2:
            raise MalformedInput(f"cover {item!r} is not a [lower, upper] pair")
        lo, hi = item
        if lo not in known or hi not in known:
            raise MalformedInput(f"cover {item!r} references unknown labels")
        if lo == hi:
            raise CycleDetected(f"self-cover {lo!r}")
        pairs.append((lo, hi))
    pairs = sorted(set(pairs))

    up: dict[str, set[str]] = {e: set() for e in elements}
    for lo, hi in pairs:
        up[lo].add(hi)
    order = _topological_order(elements, up)

    # strict reachability, then transitive reduction
    reach: dict[str, set[str]] = {e: set() for e in elements}
    for e in reversed(order):
        for child in up[e]:
            reach[e].add(child)
            reach[e] |= reach[child]
    kept, removed = [], []
    for lo, hi in pairs:
        if any(hi in reach[mid] for mid in up[lo] if mid != hi):
            removed.append((lo, hi))
        else:
            kept.append((lo, hi))
    return FinitePoset(tuple(elements), tuple(kept), tuple(removed))


def _topological_order(elements, up) -> list[str]:
    state: dict[str, int] = {}
    order: list[str] = []

    def visit(node, trail):
        mark = state.get(node)
        if mark == 2:
            return
        if mark == 1:
            cycle = trail[trail.index(node):] + [node]
            raise CycleDetected(" < ".join(cycle))
        state[node] = 1
        trail.append(node)
        for child in sorted(up[node]):
            visit(child, trail)
        trail.pop()
        state[node] = 2
        order.append(node)

    for e in elements:
        visit(e, [])
    order.reverse()
    return order


@dataclass(frozen=True)
class PosetStructure:
    components: tuple[tuple[str, ...], ...]
    rank: int
    is_pure: bool
    component_ranks: tuple[int, ...]
    interval_purity_ok: bool


def _chain_length_sets(elements, adjacency) -> dict[str, frozenset[int]]:
    """lengths of maximal chains leaving each node along `adjacency`."""
    memo: dict[str, frozenset[int]] = {}

    def lengths(node) -> frozenset[int]:
        if node not in memo:
            nxt = adjacency[node]
            if not nxt:
                memo[node] = frozenset([0])
            else:
                memo[node] = frozenset(1 + l for m in nxt for l in lengths(m))
        return memo[node]

    for e in elements:
        lengths(e)
    return memo


def poset_structure(poset: FinitePoset) -> PosetStructure:
    """Connected components, rank, purity, and interval purity.

    Interval purity looks at each element a inside the bounded extension
    (virtual bottom and top adjoined): the down-interval is pure iff all
    maximal chains of {b <= a} ending at a have one length, dually for
    the up-interval.  Nothing is materialized for the virtual bounds."""
    up = poset.upper
    down = poset.lower
    elements = poset.elements

    seen: set[str] = set()
    components = []
    for e in elements:
        if e in seen:
            continue
        comp = {e}
        frontier = [e]
        while frontier:
            x = frontier.pop()
            for y in (*up[x], *down[x]):
                if y not in comp:
                    comp.add(y)
                    frontier.append(y)
        seen |= comp
        components.append(tuple(sorted(comp)))
    components.sort()

    up_lengths = _chain_length_sets(elements, up)
    down_lengths = _chain_length_sets(elements, down)
    maximal_chain_lengths = {
        l for e in elements if not down[e] for l in up_lengths[e]
    }
    rank = max(maximal_chain_lengths, default=0)
    is_pure = len(maximal_chain_lengths) <= 1
    component_ranks = tuple(
        max((l for e in comp if not down[e] for l in up_lengths[e]), default=0)
        for comp in components
    )
    interval_ok = all(
        len(up_lengths[e]) == 1 and len(down_lengths[e]) == 1 for e in elements
    )
    return PosetStructure(tuple(components), rank, is_pure, component_ranks, interval_ok)


@dataclass(frozen=True)
class HibiClassification:
    gorenstein: bool
    nearly_gorenstein: bool
    a_invariant: int


def hibi_classify(poset: FinitePoset) -> HibiClassification:
    """Gorenstein iff the poset is pure; nearly Gorenstein iff every
    component is pure and component ranks differ pairwise by at most 1;
    a-invariant = -(rank + 2)."""
    if not poset.elements:
        raise EmptyPoset("classification needs at least one element")
    structure = poset_structure(poset)
    up_lengths = _chain_length_sets(poset.elements, poset.upper)
    down = poset.lower
    components_pure = all(
        len({l for e in comp if not down[e] for l in up_lengths[e]}) == 1
        for comp in structure.components
    )
    ranks = structure.component_ranks
    ng = components_pure and (max(ranks) - min(ranks) <= 1)
    gor = structure.is_pure
    if gor and not ng:
        raise ConsistencyError("pure poset failed the component criterion")
    if ng and not structure.interval_purity_ok:
        raise ConsistencyError("nearly Gorenstein poset with impure interval")
    return HibiClassification(gor, ng, -(structure.rank + 2))


def count_poset_ideals(poset: FinitePoset, cap: int = 10**6) -> int:
    """Number of down-closed subsets, by splitting on a minimal element x:
    ideals avoiding x live in P minus the up-set of x, ideals containing x
    live in P minus x.  Aborts with CapExceeded beyond cap."""
    up = poset.upper
    down = poset.lower

    def up_closure(x, live):
        out = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for z in up[y]:
                if z in live and z not in out:
                    out.add(z)
                    frontier.append(z)
        return out

    @lru_cache(maxsize=None)
    def count(live: frozenset) -> int:
        if not live:
            return 1
        x = min(e for e in live if not any(b in live for b in down[e]))
        total = count(live - {x}) + count(live - frozenset(up_closure(x, live)))
        if total > cap:
            raise CapExceeded(f"more than {cap} order ideals")
        return total

    try:
        return count(frozenset(poset.elements))
    finally:
        count.cache_clear()
