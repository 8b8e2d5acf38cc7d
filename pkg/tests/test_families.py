import pytest

from trace_toolkit.errors import NotMinimalMultiplicity, PreconditionViolated
from trace_toolkit.families import (
    arithmetic_family,
    enumerate_scan,
    iter_minimal_multiplicity,
    max_embdim_family,
    minimal_multiplicity_scan,
    minimal_multiplicity_suite,
    minmult_member_mask,
    minmult_multiplicity_sweep,
)
from trace_toolkit.ideals import canonical_trace
from trace_toolkit.semigroup import from_generators, iter_semigroups


class TestArithmeticFamily:
    def test_5_1_3(self):
        fam = arithmetic_family(5, 1, 3)
        assert fam.semigroup.generators == (5, 6, 7)
        assert fam.tau == 2 and fam.frobenius == 9
        assert fam.pseudo_frobenius == (8, 9)
        assert fam.nearly_gorenstein and not fam.almost_symmetric

    def test_4_1_3_symmetric(self):
        fam = arithmetic_family(4, 1, 3)
        assert fam.semigroup.generators == (4, 5, 6)
        assert fam.symmetric and fam.tau == 1

    def test_4_3_4_almost(self):
        fam = arithmetic_family(4, 3, 4)
        assert fam.semigroup.generators == (4, 7, 10, 13)
        assert fam.almost_symmetric and not fam.symmetric  # a = e case

    @pytest.mark.parametrize(
        "a,d,e",
        [(5, 1, 2), (6, 2, 3), (4, 1, 5), (5, 0, 3)],
    )
    def test_preconditions(self, a, d, e):
        with pytest.raises(PreconditionViolated):
            arithmetic_family(a, d, e)


class TestMinimalMultiplicitySuite:
    def test_4567(self):
        H = from_generators([4, 5, 6, 7])
        suite = minimal_multiplicity_suite(H)
        assert suite.pf_formula_ok
        assert suite.almost_symmetric and suite.nearly_gorenstein
        assert suite.equivalence_ok
        assert H.pseudo_frobenius == (1, 2, 3)

    def test_4679(self):
        H = from_generators([4, 6, 7, 9])
        suite = minimal_multiplicity_suite(H)
        assert H.pseudo_frobenius == (2, 3, 5)
        assert suite.almost_symmetric and suite.nearly_gorenstein
        assert canonical_trace(H).residue == 1

    def test_56789(self):
        suite = minimal_multiplicity_suite(from_generators([5, 6, 7, 8, 9]))
        assert suite.almost_symmetric and suite.nearly_gorenstein

    def test_378_not_almost(self):
        # multiplicity 3 = embedding dimension, but PF = {4, 5} fails the
        # middle self-pairing 4 + 4 = 5, so neither side holds
        suite = minimal_multiplicity_suite(from_generators([3, 7, 8]))
        assert not suite.almost_symmetric
        assert not suite.nearly_gorenstein
        assert suite.equivalence_ok

    def test_rejects_other_semigroups(self):
        with pytest.raises(NotMinimalMultiplicity):
            minimal_multiplicity_suite(from_generators([5, 6, 7]))


class TestMaxEmbdimFamily:
    @pytest.mark.parametrize("m,q,gens", [
        (3, 2, (3, 7, 8)),
        (4, 1, (4, 5, 6, 7)),
        (5, 3, (5, 16, 17, 18, 19)),
    ])
    def test_examples(self, m, q, gens):
        fam = max_embdim_family(m, q)
        assert fam.semigroup.generators == gens
        assert fam.residue == q and fam.trace_is_conductor

    def test_m2_rejected(self):
        # <2, 2q+1> is symmetric with residue 0, so the closed form
        # residue = q fails there; the operation requires m > 2
        with pytest.raises(PreconditionViolated):
            max_embdim_family(2, 2)
        assert canonical_trace(from_generators([2, 5])).residue == 0

    def test_q0_rejected(self):
        with pytest.raises(PreconditionViolated):
            max_embdim_family(4, 0)


def minmult_from_tree(fmax):
    """Independent oracle: filter the full enumeration tree."""
    found = set()
    for _mask, fr, gens in iter_semigroups(fmax):
        if fr >= 1 and gens and len(gens) == gens[0]:
            found.add(gens)
    return found


class TestMinimalMultiplicityEnumeration:
    def test_matches_tree_walk(self):
        from_dfs = {
            tuple(sorted((m, *apery)))
            for m, apery in iter_minimal_multiplicity(16)
        }
        assert from_dfs == minmult_from_tree(16)

    def test_member_mask(self):
        H = from_generators([4, 5, 6, 7])
        width = 30
        mask = minmult_member_mask(4, (5, 6, 7), width)
        assert mask == H.member_mask(width)

    def test_sweep_matches_object_route(self):
        by_gens = {}
        for sweep in minimal_multiplicity_scan(18, check_pf=True):
            assert not sweep.mismatches and not sweep.pf_mismatches
            by_gens[sweep.multiplicity] = sweep
        total = ng = asym = 0
        for m, apery in iter_minimal_multiplicity(18):
            H = from_generators((m, *apery))
            assert H.multiplicity == H.embedding_dimension == m
            suite = minimal_multiplicity_suite(H)
            assert suite.equivalence_ok and suite.pf_formula_ok
            total += 1
            ng += suite.nearly_gorenstein
            asym += suite.almost_symmetric
        assert total == sum(s.count for s in by_gens.values())
        assert ng == sum(s.nearly_gorenstein for s in by_gens.values())
        assert asym == sum(s.almost_symmetric for s in by_gens.values())

    def test_parallel_path_agrees(self):
        seq = minimal_multiplicity_scan(14)
        par = minimal_multiplicity_scan(14, threads=2)
        assert [(s.multiplicity, s.count, s.nearly_gorenstein) for s in seq] == [
            (s.multiplicity, s.count, s.nearly_gorenstein) for s in par
        ]


class TestEnumerateScan:
    def test_census_and_flags(self):
        agg = enumerate_scan(20, check_divisorial=True)
        # 3515 semigroups with 1 <= Fr <= 20, plus N itself
        assert agg.count == 3516
        assert agg.bound_violations == 0
        assert agg.containment_violations == 0
        assert agg.gn_violations == 0
        assert agg.divisorial_violations > 0  # <3,4,5> and friends, report only

    def test_first_gn_counterexample(self):
        agg = enumerate_scan(25)
        assert agg.gn_violations == 1
        assert agg.gn_examples == ((13, 14, 15, 16, 17, 18, 21, 23),)

    def test_parallel_agrees(self):
        seq = enumerate_scan(18)
        par = enumerate_scan(18, threads=2)
        assert (seq.count, seq.max_residue, seq.symmetric, seq.nearly_gorenstein) == (
            par.count, par.max_residue, par.symmetric, par.nearly_gorenstein
        )
