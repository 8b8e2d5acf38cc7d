"""Exponent-vector computations for graded monomial subalgebras.

Monomials are exponent tuples throughout; no coordinate ring is ever
constructed.  Three constructions are covered:

* squarefree Veronese subalgebras (generated by the squarefree degree-d
  monomials in n variables): membership, the canonical-ideal generators,
  the anti-canonical fractions u / (x_1 ... x_n) including the sorted
  pattern set P_{n,d}, and the Gorenstein = nearly Gorenstein
  classification with its trace degree-gap witness;
* Segre products of two polynomial rings, with monomials encoded as
  pairs of exponent vectors of equal total degree: the canonical and
  anti-canonical generators and the identity trace = m^|r-s|, verified
  degree level by degree level inside a finite window;
* Veronese submodules of a polynomial ring: the explicit factorization
  witnessing that every degree-d monomial lies in the trace of each
  submodule.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Iterator

from .errors import (
    ConsistencyError,
    LengthMismatch,
    PreconditionViolated,
    RangeUnsupported,
)

ExponentVector = tuple[int, ...]


def compositions(total: int, parts: int) -> Iterator[ExponentVector]:
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def bounded_partitions(total: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """Partitions of total into nonincreasing parts, each <= max_part."""
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in bounded_partitions(total - first, first):
            yield (first,) + rest


def distinct_permutations(vec: ExponentVector) -> Iterator[ExponentVector]:
    # orbit sizes stay small for the n <= 12 contexts used here
    yield from sorted(set(permutations(vec)))


@dataclass(frozen=True)
class AnticanonicalDescription:
    """Generators of the anti-canonical ideal as fractions u/(x_1...x_n).

    squarefree_part holds the 0/1 numerators with n-d ones; p_set holds
    the remaining numerators in nonincreasing sorted form (consumers
    expand permutations lazily via iter_numerators)."""

    n: int
    d: int
    squarefree_part: tuple[ExponentVector, ...]
    p_set: tuple[ExponentVector, ...]

    def iter_numerators(self) -> Iterator[ExponentVector]:
        yield from self.squarefree_part
        for pattern in self.p_set:
            yield from distinct_permutations(pattern)

    def p_set_trimmed(self) -> tuple[tuple[int, ...], ...]:
        """Nonzero entries only, the compact form used to publish P_{n,d}."""
        return tuple(tuple(e for e in v if e) for v in self.p_set)


@dataclass(frozen=True)
class TraceGapWitness:
    min_product_degree: int
    required_degree: int       # n - d, a lower bound for every product degree
    generator_degree: int      # d, the ambient degree of the algebra generators
    products_checked: int
    ok: bool


@dataclass(frozen=True)
class VeroneseClassification:
    gorenstein: bool
    nearly_gorenstein: bool
    trace_gap_witness: TraceGapWitness | None


class SquarefreeVeronese:
    """The subalgebra of K[x_1..x_n] generated by squarefree degree-d
    monomials.  Exponent vectors are tuples of length n."""

    def __init__(self, n: int, d: int):
        if not 1 <= d <= n:
            raise PreconditionViolated(f"need 1 <= d <= n, got d={d}, n={n}")
        self.n = n
        self.d = d

    def contains(self, vec: ExponentVector) -> bool:
        """Membership: total degree divisible by d and d * max entry <= total."""
        if len(vec) != self.n:
            raise LengthMismatch(f"expected {self.n} entries, got {len(vec)}")
        if any(e < 0 for e in vec):
            return False
        total = sum(vec)
        return total % self.d == 0 and self.d * max(vec, default=0) <= total

    def _in_canonical(self, vec: ExponentVector) -> bool:
        # interior lattice points: strictly positive, strict inequalities
        total = sum(vec)
        return (
            all(e >= 1 for e in vec)
            and total % self.d == 0
            and all(self.d * e <= total - 1 for e in vec)
        )

    def omega_generator_candidates(self) -> tuple[ExponentVector, ...]:
        """Vectors with entries in [1, n-d], at most d-1 entries >= 2,
        degree divisible by d and d * entry <= degree - 1 throughout."""
        n, d = self.n, self.d
        if not (n >= 2 * d >= 4):
            raise RangeUnsupported(f"generator enumeration needs n >= 2d >= 4, got ({n}, {d})")
        out = []
        for big in range(d):  # number of entries >= 2
            for positions in combinations(range(n), big):
                for values in _value_boxes(big, 2, n - d):
                    total = (n - big) + sum(values)
                    if total % d:
                        continue
                    if d * max(values, default=1) > total - 1:
                        continue
                    vec = [1] * n
                    for pos, val in zip(positions, values):
                        vec[pos] = val
                    out.append(tuple(vec))
        return tuple(sorted(out))

    def omega_generators(self) -> tuple[ExponentVector, ...]:
        """Minimal generators of the canonical ideal.

        Obtained from the candidate list by pruning anything of the form
        (member of the ideal) + (squarefree degree-d vector).  The prune
        is provably a no-op -- subtracting a squarefree degree-d vector
        from a candidate with at most d-1 entries >= 2 always produces a
        zero entry -- but it is still executed, and pre/post counts are
        exposed via omega_generator_counts.
        """
        return tuple(v for v in self.omega_generator_candidates()
                     if not self._reducible(v))

    def omega_generator_counts(self) -> tuple[int, int]:
        cands = self.omega_generator_candidates()
        return len(cands), sum(1 for v in cands if not self._reducible(v))

    def _reducible(self, vec: ExponentVector) -> bool:
        for support in combinations(range(self.n), self.d):
            reduced = list(vec)
            for pos in support:
                reduced[pos] -= 1
            if min(reduced) >= 0 and self._in_canonical(tuple(reduced)):
                return True
        return False

    def anticanonical(self) -> AnticanonicalDescription:
        """Anti-canonical generators u/(x_1...x_n): u is either a product
        of n-d distinct variables, or a permutation of a P_{n,d} pattern

            (c,...,c [d+1 times], b_{d+2} >= ... >= 0, 0,...,0)

        with 2 <= c <= n-2d and the b's a partition of n-2d-c into parts
        <= c.  P_{n,d} is empty exactly when n = 2d+1; that equivalence
        is asserted here."""
        n, d = self.n, self.d
        if not (n > 2 * d >= 4):
            raise RangeUnsupported(f"anticanonical description needs n > 2d >= 4, got ({n}, {d})")
        squarefree = tuple(
            tuple(1 if i in support else 0 for i in range(n))
            for support in combinations(range(n), n - d)
        )
        patterns = []
        for c in range(2, n - 2 * d + 1):
            for tail in bounded_partitions(n - 2 * d - c, c):
                vec = (c,) * (d + 1) + tail
                patterns.append(vec + (0,) * (n - len(vec)))
        p_set = tuple(sorted(patterns, reverse=True))
        if (not p_set) != (n == 2 * d + 1):
            raise ConsistencyError(f"P_({n},{d}) emptiness does not match n = 2d+1")
        return AnticanonicalDescription(n, d, squarefree, p_set)

    def classify(self) -> VeroneseClassification:
        """Gorenstein iff d = 1 or d = n-1 or n = 2d; nearly Gorenstein is
        the same class.  (The corner d = n, a univariate polynomial ring
        in disguise, is reported non-Gorenstein by this criterion for
        n > 2; the interesting range is d < n.)

        For non-Gorenstein algebras with n > 2d >= 4 the witness records
        that every product of a canonical generator and an anti-canonical
        fraction has ambient degree >= n - d > d, so the trace misses the
        algebra generators (which sit in ambient degree d)."""
        n, d = self.n, self.d
        gor = d == 1 or d == n - 1 or n == 2 * d
        witness = None
        if not gor and n > 2 * d >= 4:
            witness = self.trace_gap_witness()
        return VeroneseClassification(gor, gor, witness)

    def trace_gap_witness(self) -> TraceGapWitness:
        n, d = self.n, self.d
        gens = self.omega_generators()
        fractions = tuple(self.anticanonical().iter_numerators())
        checked = 0
        min_deg = None
        ok = True
        for g in gens:
            for u in fractions:
                product = tuple(ge + ue - 1 for ge, ue in zip(g, u))
                deg = sum(product)
                checked += 1
                if min_deg is None or deg < min_deg:
                    min_deg = deg
                if deg < n - d or not self.contains(product):
                    ok = False
        ok = ok and n - d > d
        return TraceGapWitness(min_deg if min_deg is not None else 0,
                               n - d, d, checked, ok)


def _value_boxes(count: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    if count == 0:
        yield ()
        return
    if hi < lo:
        return
    for first in range(lo, hi + 1):
        for rest in _value_boxes(count - 1, lo, hi):
            yield (first,) + rest


# -- Segre products of polynomial rings ---------------------------------------


@dataclass(frozen=True)
class SegreTrace:
    r: int
    s: int
    trace_equals_power: int
    omega_generators: tuple[tuple[ExponentVector, ExponentVector], ...]
    # numerators alpha of the anti-canonical fractions x^alpha / x_1^{|r-s|}
    anticanonical_generators: tuple[ExponentVector, ...]
    colength: int
    verified: bool


def segre_trace(r: int, s: int) -> SegreTrace:
    """Trace of the canonical module of the Segre product of polynomial
    rings in r and s variables (both >= 2).

    Monomials of the product are pairs (u, v) of exponent vectors with
    equal total degree.  With k = |r - s| (orienting r >= s):

    * the canonical ideal is generated by the pairs ((k, 0...), beta),
      |beta| = k;
    * the anti-canonical module by the fractions x^alpha / x_1^k,
      |alpha| = k (re-derived here by a windowed search, not assumed);
    * their products are exactly all pairs of bidegree k, so the trace is
      the k-th power of the graded maximal ideal.  Equality is checked
      monomial by monomial for every bidegree <= k + 2.

    colength counts the monomials of bidegree < k, the dimension of the
    quotient by the trace.
    """
    if r < 2 or s < 2:
        raise PreconditionViolated(f"Segre factors need dimension >= 2, got ({r}, {s})")
    big, small = max(r, s), min(r, s)
    k = big - small
    omega = tuple(
        ((k,) + (0,) * (big - 1), beta) for beta in compositions(k, small)
    )
    # windowed re-derivation of the anti-canonical generators: a fraction
    # (p, q) with |p| = |q| multiplies every omega generator into the ring
    # iff p + k*e1 >= 0 and q >= 0; minimal ones must have q = 0.
    numerators = []
    for level in range(0, 3):
        for p_shift in compositions(level + k, big):
            for q in compositions(level, small):
                # reducible iff some bidegree-1 monomial pair divides the
                # fraction and the quotient stays in the dual box
                reducible = any(p_shift) and any(q)
                if not reducible:
                    numerators.append(p_shift)
    expected = tuple(sorted(compositions(k, big)))
    if tuple(sorted(numerators)) != expected:
        raise ConsistencyError("anticanonical window search disagrees with x^alpha/x_1^k")

    products = {(alpha, beta) for alpha in expected for _, beta in omega}
    verified = True
    for t in range(0, k + 3):
        for u in compositions(t, big):
            for v in compositions(t, small):
                in_trace = t >= k and any(
                    all(x >= y for x, y in zip(u, alpha))
                    and all(x >= y for x, y in zip(v, beta))
                    for alpha, beta in products
                )
                if in_trace != (t >= k):
                    verified = False
    colength = sum(comb(t + big - 1, big - 1) * comb(t + small - 1, small - 1)
                   for t in range(k))
    return SegreTrace(r, s, k, omega, expected, colength, verified)


# -- Veronese submodules of a polynomial ring ----------------------------------


def veronese_submodule_witness(n: int, d: int, j: int) -> bool:
    """Every degree-d monomial of K[x_1..x_n] lies in the trace of the j-th
    Veronese submodule (0 <= j < d).

    Constructive check: split each exponent vector alpha = beta + gamma
    with |beta| = j (greedily), so that x_1^{d-j} x^beta is a degree-d
    member of the shifted submodule and x^gamma / x_1^{d-j} multiplies
    every degree-j shift generator back into the subalgebra.  All steps
    are explicit integer checks; returns True when every alpha passes.
    """
    if n < 1 or d < 1:
        raise PreconditionViolated(f"need n, d >= 1, got ({n}, {d})")
    if not 0 <= j < d:
        raise PreconditionViolated(f"need 0 <= j < d, got j={j}")
    shift_gens = tuple(compositions(j, n))
    for alpha in compositions(d, n):
        remaining = j
        beta = []
        for e in alpha:
            take = min(e, remaining)
            beta.append(take)
            remaining -= take
        if remaining:
            return False
        gamma = tuple(a - b for a, b in zip(alpha, beta))
        factor1 = tuple(b + (d - j if i == 0 else 0) for i, b in enumerate(beta))
        if sum(factor1) != d or sum(beta) != j:
            return False
        for delta in shift_gens:
            product = tuple(g + dl for g, dl in zip(gamma, delta))
            if any(e < 0 for e in product) or sum(product) % d:
                return False
    return True
