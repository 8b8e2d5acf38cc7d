"""Structure-matrix machinery for non-symmetric 3-generated semigroups.

A non-symmetric H = <n1, n2, n3> has three minimal relations

    c1*n1 = b2*n2 + a3*n3
    c2*n2 = a1*n1 + b3*n3
    c3*n3 = b1*n1 + a2*n2

with positive, unique coefficients and c_i = a_i + b_i.  The exponents
(a_i, b_i) fill a 2x3 matrix that determines everything this module
computes: the residue (product of min(a_i, b_i)), the Frobenius number,
a genus identity, the two families with maximal trace, the
trace-equals-conductor classification, and the eventual periodicity of
the residue in shifted families <j, j+a, j+b>.

Two corrections to formulas this module implements are validated against
brute force on every call or in the exhaustive test sweeps:

* the Frobenius number is max{c1*n1 + b3*n3, c2*n2 + a3*n3} MINUS
  n1 + n2 + n3 (the subtraction is routinely dropped when the formula is
  quoted; without it <3,4,5> would get 14 instead of 2);
* the genus identity reads 2g - (Fr + 1) in {a1*a2*a3, b1*b2*b3} (the
  product-by-rows form; the mixed form {a1*b1*c1, a2*b2*c2} fails on
  pseudo-symmetric semigroups such as <3,4,5>).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .errors import (
    ConsistencyError,
    CoprimalityViolated,
    DegenerateTriple,
    InvalidRange,
    NonCoprime,
    NotMinimalTriple,
    PreconditionViolated,
    SymmetricInput,
)
from .ideals import canonical_trace, conductor_ideal, maximal_ideal
from .semigroup import NumericalSemigroup, normalize_generators


def member_of_two_generated(x: int, p: int, q: int) -> bool:
    """x in <p, q>?  O(1) via a modular inverse once reduced to gcd 1."""
    if x < 0:
        return False
    if x == 0:
        return True
    d = gcd(p, q)
    if x % d:
        return False
    x, p, q = x // d, p // d, q // d
    if p == 1 or q == 1:
        return True
    # least member of x's class mod p is ((x * q^-1) mod p) * q
    return ((x * pow(q, -1, p)) % p) * q <= x


def is_symmetric_triple(n1: int, n2: int, n3: int, validate: bool = True) -> bool:
    """Symmetry test for a minimal generating triple: some permutation has
    d = gcd(n_i, n_j) > 1 with n_k in <n_i/d, n_j/d>."""
    if validate:
        try:
            minimal, _ = normalize_generators((n1, n2, n3))
        except NonCoprime as exc:
            raise NotMinimalTriple(str(exc)) from exc
        if minimal != tuple(sorted((n1, n2, n3))):
            raise NotMinimalTriple(f"({n1}, {n2}, {n3}) is not a minimal triple")
    for i, j, k in ((n1, n2, n3), (n1, n3, n2), (n2, n3, n1)):
        d = gcd(i, j)
        if d > 1 and member_of_two_generated(k, i // d, j // d):
            return True
    return False


@dataclass(frozen=True)
class StructureMatrix:
    """Exponents of the three minimal relations, rows a and b, c = a + b."""

    generators: tuple[int, int, int]
    a: tuple[int, int, int]
    b: tuple[int, int, int]
    c: tuple[int, int, int]

    def residue_formula(self) -> int:
        d1, d2, d3 = (min(x, y) for x, y in zip(self.a, self.b))
        return d1 * d2 * d3

    def frobenius_formula(self) -> int:
        n1, n2, n3 = self.generators
        big = max(self.c[0] * n1 + self.b[2] * n3, self.c[1] * n2 + self.a[2] * n3)
        return big - (n1 + n2 + n3)

    def genus_products(self) -> tuple[int, int]:
        a1, a2, a3 = self.a
        b1, b2, b3 = self.b
        return a1 * a2 * a3, b1 * b2 * b3


def _minimal_relation(t: int, p: int, q: int) -> tuple[int, int, int]:
    """Least c >= 1 with c*t = u*p + v*q solvable in nonnegative u, v.

    For a non-symmetric minimal triple the solution at the minimal c is
    unique with u, v both positive; that is asserted, not assumed.
    """
    c = 1
    while True:
        target = c * t
        sols = []
        for u in range(target // p + 1):
            rem = target - u * p
            if rem % q == 0:
                sols.append((u, rem // q))
        if sols:
            if len(sols) != 1 or sols[0][0] <= 0 or sols[0][1] <= 0:
                raise ConsistencyError(
                    f"relation {c}*{t} = u*{p} + v*{q} not uniquely positive: {sols}"
                )
            return c, sols[0][0], sols[0][1]
        c += 1


def structure_matrix_of_triple(n1: int, n2: int, n3: int,
                               validate: bool = True) -> StructureMatrix:
    """Structure matrix of the non-symmetric minimal triple (n1, n2, n3).

    The triple is used in the given order (the matrix is not permutation
    invariant); pass the sorted minimal generators for the canonical form.
    """
    if is_symmetric_triple(n1, n2, n3, validate=validate):
        raise SymmetricInput(f"<{n1},{n2},{n3}> is symmetric, matrix undefined")
    c1, b2, a3 = _minimal_relation(n1, n2, n3)
    c2, a1, b3 = _minimal_relation(n2, n1, n3)
    c3, b1, a2 = _minimal_relation(n3, n1, n2)
    a = (a1, a2, a3)
    b = (b1, b2, b3)
    c = (c1, c2, c3)
    if any(ci != ai + bi for ai, bi, ci in zip(a, b, c)):
        raise ConsistencyError(f"c != a + b for <{n1},{n2},{n3}>: {a} {b} {c}")
    recon = (
        a2 * a3 + b2 * a3 + b2 * b3,
        a1 * a3 + a1 * b3 + b1 * b3,
        a1 * a2 + b1 * a2 + b1 * b2,
    )
    if recon != (n1, n2, n3):
        raise ConsistencyError(f"matrix does not reconstruct <{n1},{n2},{n3}>: {recon}")
    return StructureMatrix((n1, n2, n3), a, b, c)


def structure_matrix(H: NumericalSemigroup) -> StructureMatrix:
    if H.embedding_dimension != 3:
        raise PreconditionViolated(f"{H!r} is not 3-generated")
    return structure_matrix_of_triple(*H.generators, validate=False)


@dataclass(frozen=True)
class MatrixInvariants:
    matrix: StructureMatrix
    residue_formula: int
    frobenius_from_matrix: int
    genus_identity_ok: bool
    residue_ok: bool       # formula == windowed brute trace
    frobenius_ok: bool     # corrected formula == brute Frobenius
    gn_bound_ok: bool      # residue <= genus - n(H), proved for 3-generated


def matrix_invariants(H: NumericalSemigroup) -> MatrixInvariants:
    """Closed-form matrix invariants, each cross-checked against the brute
    values from the semigroup and trace engines."""
    matrix = structure_matrix(H)
    residue = matrix.residue_formula()
    frob = matrix.frobenius_formula()
    brute = canonical_trace(H).residue
    inv = H.invariants()
    identity = 2 * inv.genus - (inv.frobenius + 1)
    return MatrixInvariants(
        matrix=matrix,
        residue_formula=residue,
        frobenius_from_matrix=frob,
        genus_identity_ok=identity in matrix.genus_products(),
        residue_ok=residue == brute,
        frobenius_ok=frob == inv.frobenius,
        gn_bound_ok=brute <= inv.genus - inv.n_of_h,
    )


# -- the two maximal-trace families ------------------------------------------


@dataclass(frozen=True)
class MaxTraceFamily:
    case: str
    params: tuple[int, int, int]
    generators: tuple[int, int, int]   # as constructed, then sorted
    predicted_frobenius: int
    verified: bool                     # trace == M and Frobenius matches


def max_trace_family(case: str, a: int, b: int, c: int) -> MaxTraceFamily:
    """Construct the case (i)/(ii) family member and verify trace = M.

    Case (i):  <ab+b+1, b+c+1, ac+a+c>, needs gcd(b+c+1, ab-c) = 1
               (the coprimality is gcd(n2, n1-n2); quoting it with b+c-1
               admits degenerate triples like (a,b,c)=(1,1,4) -> (3,6,9)),
               Frobenius = abc + bc - b - 1 + max(0, ab-c).
    Case (ii): <bc+b+1, ca+c+1, ab+a+1>, needs gcd(bc+b+1, ca+c+1) = 1,
               Frobenius = 2abc - 2; these are the pseudo-symmetric ones.
    """
    if case not in ("i", "ii"):
        raise PreconditionViolated(f"case must be 'i' or 'ii', got {case!r}")
    if min(a, b, c) < 1:
        raise PreconditionViolated("family parameters must be positive")
    if case == "i":
        if gcd(b + c + 1, a * b - c) != 1:
            raise CoprimalityViolated(
                f"gcd(b+c+1, ab-c) = gcd({b + c + 1}, {a * b - c}) != 1"
            )
        gens = (a * b + b + 1, b + c + 1, a * c + a + c)
        predicted = a * b * c + b * c - b - 1 + max(0, a * b - c)
    else:
        if gcd(b * c + b + 1, c * a + c + 1) != 1:
            raise CoprimalityViolated(
                f"gcd(bc+b+1, ca+c+1) = gcd({b * c + b + 1}, {c * a + c + 1}) != 1"
            )
        gens = (b * c + b + 1, c * a + c + 1, a * b + a + 1)
        predicted = 2 * a * b * c - 2
    if len(set(gens)) < 3:
        raise DegenerateTriple(f"repeated generators {gens}")
    minimal, removed = normalize_generators(gens)
    if removed or len(minimal) != 3:
        raise DegenerateTriple(f"{gens} is not a minimal generating triple")
    H = NumericalSemigroup(minimal)
    summary = canonical_trace(H)
    verified = summary.trace == maximal_ideal(H) and H.frobenius == predicted
    return MaxTraceFamily(case, (a, b, c), gens, predicted, verified)


def trace_conductor_classifier(H: NumericalSemigroup) -> bool:
    """True iff the generators are {3, 3a+1, 3a+2}; agreement with the
    direct window comparison trace == conductor ideal is asserted."""
    if H.embedding_dimension != 3:
        raise PreconditionViolated(f"{H!r} is not 3-generated")
    if H.classify().symmetric:
        raise SymmetricInput(f"{H!r} is symmetric")
    n1, n2, n3 = H.generators
    shape = n1 == 3 and n2 % 3 == 1 and n3 == n2 + 1 and n2 >= 4
    direct = canonical_trace(H).trace == conductor_ideal(H)
    if shape != direct:
        raise ConsistencyError(
            f"trace-conductor pattern and window comparison disagree on {H!r}"
        )
    return shape


# -- shifted families ----------------------------------------------------------


def shift_constant(a: int, b: int) -> int:
    """k_{a,b} = max(b*((b-a)/D - 1), b*a/D) with D = gcd(a, b); residues in
    the shifted family are b-periodic beyond 2*k_{a,b}."""
    D = gcd(a, b)
    return max(b * ((b - a) // D - 1), b * a // D)


def symmetry_period(a: int, b: int) -> int:
    """Principal period T of the symmetric members: product of p^{v_p(b)}
    over primes p with v_p(a) < v_p(b).  For j > k_{a,b}, <j, j+a, j+b> is
    symmetric exactly when T divides j."""
    T = 1
    rest = b
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            ea = 0
            aa = a
            while aa % p == 0:
                aa //= p
                ea += 1
            if ea < e:
                T *= p**e
        p += 1
    if rest > 1:
        p = rest
        ea = 0
        aa = a
        while aa % p == 0:
            aa //= p
            ea += 1
        if ea < 1:
            T *= p
    return T


def shifted_residue(j: int, a: int, b: int) -> tuple[int, bool]:
    """(residue, symmetric) of <j, j+a, j+b> under the extended residue
    definition: divide by gcd(j, a, b) first, and res = 0 for the symmetric
    (including 2-generated and N) cases."""
    if j < 1:
        raise InvalidRange("shift j must be >= 1")
    d = gcd(gcd(j, a), b)
    minimal, _ = normalize_generators((j // d, (j + a) // d, (j + b) // d))
    if len(minimal) < 3:
        return 0, True  # N or 2-generated, always symmetric
    if is_symmetric_triple(*minimal, validate=False):
        return 0, True
    return structure_matrix_of_triple(*minimal, validate=False).residue_formula(), False


@dataclass(frozen=True)
class ShiftRecord:
    j: int
    generators: tuple[int, int, int]
    reduced_generators: tuple[int, ...]
    residue: int
    symmetric: bool


@dataclass(frozen=True)
class ShiftReport:
    a: int
    b: int
    d: int
    k: int
    period: int
    first_j: int
    last_j: int
    records: tuple[ShiftRecord, ...]
    periodicity_ok: bool
    symmetry_period_ok: bool
    divisibility_ok: bool
    bound_ok: bool


def shift_analysis(a: int, b: int, periods: int = 5) -> ShiftReport:
    """Walk the shifted family <j, j+a, j+b> across (k, 2k + (periods+1)*b].

    Asserted facts (all exact integer comparisons):
    * residue(j) == residue(j + b) for j in (2k, 2k + periods*b];
    * symmetric <=> period T divides j, for every walked j > k;
    * beyond 2k, non-symmetric members have residue divisible by
      (b-a)*a/D^2 and strictly below 8*b^3 / (27*D^3).
    """
    if not 0 < a < b:
        raise InvalidRange(f"need 0 < a < b, got ({a}, {b})")
    if periods < 1:
        raise InvalidRange("periods must be >= 1")
    D = gcd(a, b)
    k = shift_constant(a, b)
    T = symmetry_period(a, b)
    first, last = k + 1, 2 * k + (periods + 1) * b
    records = []
    res = {}
    sym = {}
    for j in range(first, last + 1):
        r, s = shifted_residue(j, a, b)
        res[j], sym[j] = r, s
        d = gcd(gcd(j, a), b)
        minimal, _ = normalize_generators((j // d, (j + a) // d, (j + b) // d))
        records.append(ShiftRecord(j, (j, j + a, j + b), minimal, r, s))
    periodicity = all(
        res[j] == res[j + b] for j in range(2 * k + 1, 2 * k + periods * b + 1)
    )
    symmetry_ok = all(sym[j] == (j % T == 0) for j in range(first, last + 1))
    unit = (b - a) * a // (D * D)
    div_ok = all(
        res[j] % unit == 0
        for j in range(2 * k + 1, last + 1)
        if not sym[j]
    )
    bound = all(
        27 * res[j] * D**3 < 8 * b**3
        for j in range(2 * k + 1, last + 1)
        if not sym[j]
    )
    return ShiftReport(a, b, D, k, T, first, last, tuple(records),
                       periodicity, symmetry_ok, div_ok, bound)


# -- exhaustive triple enumeration ---------------------------------------------


def iter_nonsymmetric_triples(max_generator: int) -> Iterator[tuple[int, int, int]]:
    """All minimal non-symmetric triples n1 < n2 < n3 <= max_generator."""
    for n1 in range(2, max_generator + 1):
        for n2 in range(n1 + 1, max_generator + 1):
            if n2 % n1 == 0:
                continue
            for n3 in range(n2 + 1, max_generator + 1):
                if gcd(gcd(n1, n2), n3) != 1:
                    continue
                if member_of_two_generated(n3, n1, n2):
                    continue
                if is_symmetric_triple(n1, n2, n3, validate=False):
                    continue
                yield (n1, n2, n3)


def shifted_tuple_probe(shift_tuple, j_start: int, j_count: int):
    """Report-only probe of residue periodicity for e > 3 shifted tuples.

    Yields (j, residue) of <t_1 + j, ..., t_e + j> with the extended
    residue computed by the brute trace engine; no assertion is made (the
    general periodicity question is open).
    """
    base = tuple(sorted(set(shift_tuple)))
    for j in range(j_start, j_start + j_count):
        gens = [t + j for t in base]
        d = 0
        for g in gens:
            d = gcd(d, g)
        minimal, _ = normalize_generators([g // d for g in gens])
        H = NumericalSemigroup(minimal)
        yield j, canonical_trace(H).residue
