import pytest
from hypothesis import given, settings, strategies as st

from trace_toolkit.errors import EmptyGenerators, ParentMismatch
from trace_toolkit.ideals import (
    RelativeIdeal,
    canonical_ideal,
    canonical_trace,
    conductor_ideal,
    ideal_from_generators,
    maximal_ideal,
    ng_report,
    scan_profile,
    semigroup_as_ideal,
    trace_of_ideal,
)
from trace_toolkit.semigroup import from_generators, iter_semigroups

from oracles import naive_ideal_members, naive_trace


def members(ideal, lo, hi):
    return [x for x in range(lo, hi) if x in ideal]


class TestConstruction:
    def test_conductor_of_378(self):
        H = from_generators([3, 7, 8])
        ideal = ideal_from_generators(H, [6, 7, 8])
        assert ideal == conductor_ideal(H)
        assert members(ideal, 0, 14) == [6, 7, 8, 9, 10, 11, 12, 13]

    def test_zero_generates_h(self):
        H = from_generators([3, 7, 8])
        assert ideal_from_generators(H, [0]) == semigroup_as_ideal(H)

    def test_canonical_567(self):
        H = from_generators([5, 6, 7])
        omega = canonical_ideal(H)
        assert omega == ideal_from_generators(H, [-8, -9])
        assert omega.base == -9

    def test_empty(self):
        with pytest.raises(EmptyGenerators):
            ideal_from_generators(from_generators([3, 7, 8]), [])

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(-12, 12), min_size=1, max_size=4))
    def test_window_matches_naive_members(self, gens):
        H = from_generators([5, 7, 9])
        ideal = ideal_from_generators(H, gens)
        lo, hi = min(gens) - 3, min(gens) + 3 * H.conductor + 5
        expected = naive_ideal_members([5, 7, 9], gens, lo, hi)
        assert set(members(ideal, lo, hi + 1)) == expected


class TestDual:
    def test_dual_of_h_is_h(self):
        H = from_generators([5, 6, 7])
        assert semigroup_as_ideal(H).dual() == semigroup_as_ideal(H)

    def test_symmetric_dual_shifts(self):
        H = from_generators([4, 5, 6])  # symmetric, frobenius 7
        omega = canonical_ideal(H)
        assert omega == ideal_from_generators(H, [-7])
        assert omega.dual() == ideal_from_generators(H, [7])

    def test_378_dual_minimum(self):
        H = from_generators([3, 7, 8])
        omega = canonical_ideal(H)
        dual = omega.dual()
        assert dual.base == 11
        assert omega + dual == conductor_ideal(H)

    def test_double_dual_probe(self):
        # the canonical ideal always sits inside its double dual, but the
        # two can differ: <3,4,5> is the smallest case, where the double
        # dual additionally picks up 0.  Equality is therefore a logged
        # probe, never asserted; here the containment and the smallest
        # counterexample are pinned down.
        violations = []
        for _mask, fr, gens in iter_semigroups(14):
            if fr < 1:
                continue
            H = from_generators(gens)
            omega = canonical_ideal(H)
            double = omega.dual().dual()
            assert omega.issubset(double)
            if double != omega:
                violations.append(gens)
        assert (3, 4, 5) in violations
        H = from_generators([3, 4, 5])
        omega = canonical_ideal(H)
        double = omega.dual().dual()
        assert 0 not in omega and 0 in double
        assert [x for x in range(-4, 3) if x in double] == [-2, -1, 0, 1, 2]


class TestAdd:
    def test_trace_of_567_is_maximal_ideal(self):
        H = from_generators([5, 6, 7])
        omega = canonical_ideal(H)
        assert omega + omega.dual() == maximal_ideal(H)

    def test_neutral_element(self):
        H = from_generators([5, 6, 7])
        ideal = ideal_from_generators(H, [-8, -9])
        assert ideal + semigroup_as_ideal(H) == ideal

    def test_conductor_plus_conductor(self):
        H = from_generators([3, 7, 8])
        square = conductor_ideal(H) + conductor_ideal(H)
        assert members(square, 0, 16) == [12, 13, 14, 15]

    def test_commutative_associative(self):
        H = from_generators([4, 7, 9])
        a = ideal_from_generators(H, [-3, 2])
        b = ideal_from_generators(H, [1, 5])
        c = conductor_ideal(H)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)

    def test_parent_mismatch(self):
        with pytest.raises(ParentMismatch):
            semigroup_as_ideal(from_generators([2, 3])) + semigroup_as_ideal(
                from_generators([3, 4, 5])
            )


class TestMinimalGenerators:
    def test_conductor_generator_run(self):
        # conductor ideal is minimally generated by c, c+1, ..., c+m-1
        H = from_generators([3, 7, 8])
        assert conductor_ideal(H).minimal_generators() == (6, 7, 8)

    def test_h_itself(self):
        H = from_generators([3, 7, 8])
        assert semigroup_as_ideal(H).minimal_generators() == (0,)

    def test_trace_567(self):
        H = from_generators([5, 6, 7])
        assert canonical_trace(H).trace.minimal_generators() == (5, 6, 7)

    def test_regenerating(self):
        H = from_generators([4, 7, 9])
        for gens in ([-5, -2, 0], [3, 4], [-9, 11]):
            ideal = ideal_from_generators(H, gens)
            assert ideal_from_generators(H, ideal.minimal_generators()) == ideal


class TestCanonicalTrace:
    @pytest.mark.parametrize(
        "gens,residue,ng",
        [([5, 6, 7], 1, True), ([3, 7, 8], 2, False), ([4, 5, 6], 0, True)],
    )
    def test_examples(self, gens, residue, ng):
        summary = canonical_trace(from_generators(gens))
        assert summary.residue == residue
        assert summary.nearly_gorenstein == ng

    def test_378_trace_is_conductor(self):
        H = from_generators([3, 7, 8])
        assert canonical_trace(H).trace == conductor_ideal(H)

    def test_whole_line(self):
        H = from_generators([1])
        summary = canonical_trace(H)
        assert summary.residue == 0
        assert summary.trace == semigroup_as_ideal(H)

    def test_residue_vs_naive_oracle(self):
        for gens in ([5, 6, 7], [3, 7, 8], [4, 5, 6], [5, 7, 9, 11],
                     [4, 6, 9], [7, 9, 11, 13], [6, 10, 15], [8, 9, 10, 11, 12, 13]):
            H = from_generators(gens)
            trace_set, residue = naive_trace(sorted(set(gens)))
            summary = canonical_trace(H)
            assert summary.residue == residue
            window = {x for x in range(3 * H.conductor + 1) if x in summary.trace}
            assert window == trace_set

    def test_residue_zero_iff_symmetric(self):
        for _mask, fr, gens in iter_semigroups(16):
            if fr < 1:
                continue
            H = from_generators(gens)
            assert (canonical_trace(H).residue == 0) == H.classify().symmetric


class TestTraceOfIdeal:
    def test_h(self):
        H = from_generators([5, 6, 7])
        assert trace_of_ideal(semigroup_as_ideal(H)) == semigroup_as_ideal(H)

    def test_translation_invariance_on_canonical(self):
        for gens in ([5, 6, 7], [3, 7, 8], [4, 6, 9], [5, 7, 9, 11]):
            H = from_generators(gens)
            assert trace_of_ideal(canonical_ideal(H)) == canonical_trace(H).trace

    def test_conductor_containment(self):
        H = from_generators([5, 6, 7])
        result = trace_of_ideal(conductor_ideal(H))
        assert conductor_ideal(H).issubset(result)

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.integers(1, 30), min_size=1, max_size=3))
    def test_conductor_always_inside(self, gens):
        # for any ideal I inside H, conductor <= trace(I) <= H
        H = from_generators([4, 7, 9])
        ideal = ideal_from_generators(H, [g for g in gens])
        result = trace_of_ideal(ideal)  # raises ConsistencyError on violation
        assert conductor_ideal(H).issubset(result)


class TestNgReport:
    def test_567(self):
        rep = ng_report(from_generators([5, 6, 7]))
        assert (rep.residue, rep.n_of_h, rep.genus) == (1, 4, 6)
        assert rep.bound_n_ok and rep.containment_ok and rep.question_gn_ok

    def test_378_equality_flags_conductor_trace(self):
        rep = ng_report(from_generators([3, 7, 8]))
        assert rep.residue == rep.n_of_h == 2

    def test_symmetric_zero(self):
        rep = ng_report(from_generators([4, 5, 6]))
        assert rep.residue == 0
        assert rep.genus == rep.n_of_h


class TestScanProfileKernel:
    def test_matches_object_route_exhaustively(self):
        for mask, fr, gens in iter_semigroups(16):
            profile = scan_profile(mask, fr, gens, check_divisorial=True)
            if fr < 1:
                continue
            H = from_generators(gens)
            summary = canonical_trace(H)
            assert profile.residue == summary.residue
            assert profile.n_of_h == H.n_of_h
            assert profile.genus == H.genus
            assert profile.pseudo_frobenius == H.pseudo_frobenius
            assert profile.symmetric == H.classify().symmetric
            assert profile.containment_ok
            omega = canonical_ideal(H)
            assert profile.divisorial_ok == (omega.dual().dual() == omega)

    def test_spot_values(self):
        H = from_generators([13, 14, 15, 16, 17, 18, 21, 23])
        profile = scan_profile(H.member_mask(H.conductor), H.frobenius, H.generators)
        # the first counterexample to residue <= genus - n(H): see ledger
        assert profile.residue == 9
        assert profile.genus - profile.n_of_h == 8


class TestWindowSufficiency:
    def test_longer_windows_change_nothing(self):
        # membership computed from the definition over a window three
        # conductors long agrees with the (one-conductor) representation
        H = from_generators([5, 7, 9])
        for gens in ([-8, -9], [2, 3], [-1, 4, 6]):
            ideal = ideal_from_generators(H, gens)
            lo = min(gens)
            for x in range(lo, lo + 3 * H.conductor + 1):
                expected = any((x - g) in H for g in gens)
                assert (x in ideal) == expected

    def test_dual_window_sufficiency(self):
        H = from_generators([5, 7, 9])
        for gens in ([-8, -9], [0], [3, 11]):
            ideal = ideal_from_generators(H, gens)
            dual = ideal.dual()
            mingens = ideal.minimal_generators()
            lo = -max(mingens)
            for z in range(lo - 2, lo + 3 * H.conductor + 1):
                expected = all((z + g) in H for g in mingens)
                assert (z in dual) == expected
