import pytest

from trace_toolkit.errors import (
    CoprimalityViolated,
    InvalidRange,
    NotMinimalTriple,
    PreconditionViolated,
    SymmetricInput,
)
from trace_toolkit.ideals import canonical_trace, conductor_ideal, maximal_ideal
from trace_toolkit.semigroup import from_generators
from trace_toolkit.threegen import (
    iter_nonsymmetric_triples,
    is_symmetric_triple,
    matrix_invariants,
    max_trace_family,
    member_of_two_generated,
    shifted_tuple_probe,
    shift_analysis,
    shift_constant,
    shifted_residue,
    structure_matrix,
    structure_matrix_of_triple,
    symmetry_period,
    trace_conductor_classifier,
)

from oracles import naive_two_gen_member


class TestTwoGenerated:
    def test_against_naive(self):
        for p, q in ((3, 5), (4, 6), (5, 7), (6, 10), (2, 9)):
            for x in range(-2, 40):
                assert member_of_two_generated(x, p, q) == naive_two_gen_member(x, p, q)


class TestSymmetricTriple:
    def test_examples(self):
        assert is_symmetric_triple(4, 6, 9)       # gcd(4,6)=2, 9 in <2,3>
        assert not is_symmetric_triple(3, 4, 5)
        assert not is_symmetric_triple(5, 6, 7)

    def test_not_minimal(self):
        with pytest.raises(NotMinimalTriple):
            is_symmetric_triple(4, 6, 10)  # 10 = 4 + 6
        with pytest.raises(NotMinimalTriple):
            is_symmetric_triple(2, 4, 6)   # gcd 2

    def test_agrees_with_classify(self):
        for triple in ((4, 6, 9), (3, 4, 5), (5, 6, 7), (6, 10, 15), (4, 7, 9),
                       (5, 8, 11), (9, 12, 16), (4, 9, 11), (7, 8, 18)):
            H = from_generators(triple)
            if H.embedding_dimension != 3:
                continue
            assert is_symmetric_triple(*triple) == H.classify().symmetric


class TestStructureMatrix:
    @pytest.mark.parametrize(
        "triple,a,b,c",
        [
            ((5, 6, 7), (1, 1, 2), (3, 1, 1), (4, 2, 3)),
            ((3, 4, 5), (1, 1, 1), (2, 1, 1), (3, 2, 2)),
            ((3, 7, 8), (2, 1, 1), (3, 1, 1), (5, 2, 2)),
        ],
    )
    def test_examples(self, triple, a, b, c):
        mat = structure_matrix_of_triple(*triple)
        assert (mat.a, mat.b, mat.c) == (a, b, c)

    def test_symmetric_rejected(self):
        with pytest.raises(SymmetricInput):
            structure_matrix(from_generators([4, 6, 9]))

    def test_relations_hold(self):
        for triple in ((5, 6, 7), (3, 7, 8), (4, 7, 9), (5, 8, 11)):
            n1, n2, n3 = triple
            mat = structure_matrix_of_triple(*triple)
            a1, a2, a3 = mat.a
            b1, b2, b3 = mat.b
            c1, c2, c3 = mat.c
            assert c1 * n1 == b2 * n2 + a3 * n3
            assert c2 * n2 == a1 * n1 + b3 * n3
            assert c3 * n3 == b1 * n1 + a2 * n2


class TestMatrixInvariants:
    def test_567(self):
        mi = matrix_invariants(from_generators([5, 6, 7]))
        assert mi.residue_formula == 1
        assert mi.frobenius_from_matrix == 9
        assert mi.matrix.genus_products() == (2, 3)  # identity value is 2
        assert mi.genus_identity_ok and mi.residue_ok and mi.frobenius_ok

    def test_378(self):
        mi = matrix_invariants(from_generators([3, 7, 8]))
        assert mi.residue_formula == 2
        assert mi.residue_ok

    @pytest.mark.parametrize("a", range(1, 6))
    def test_conductor_family_residue(self, a):
        mi = matrix_invariants(from_generators([3, 3 * a + 1, 3 * a + 2]))
        assert mi.residue_formula == a and mi.residue_ok

    def test_pseudo_symmetric_needs_row_products(self):
        # 2g - (Fr+1) = 1 on <3,4,5> while the mixed products a_i b_i c_i
        # give {6, 2}; only the row products {1, 2} contain the value
        mi = matrix_invariants(from_generators([3, 4, 5]))
        assert 2 * 2 - (2 + 1) == 1
        assert mi.matrix.genus_products() == (1, 2)
        assert mi.genus_identity_ok


class TestMaxTraceFamily:
    def test_case_ii_345(self):
        fam = max_trace_family("ii", 2, 1, 1)
        assert sorted(fam.generators) == [3, 4, 5]
        assert fam.predicted_frobenius == 2
        assert fam.verified

    def test_case_ii_457(self):
        fam = max_trace_family("ii", 2, 2, 1)
        assert fam.generators == (5, 4, 7)
        assert fam.predicted_frobenius == 6
        H = from_generators(fam.generators)
        assert H.pseudo_frobenius == (3, 6)
        assert H.classify().pseudo_symmetric
        assert fam.verified

    def test_case_i_345(self):
        fam = max_trace_family("i", 1, 1, 2)
        assert sorted(fam.generators) == [3, 4, 5]
        assert fam.predicted_frobenius == 2
        assert fam.verified

    def test_coprimality_case_ii(self):
        with pytest.raises(CoprimalityViolated):
            max_trace_family("ii", 1, 1, 1)  # gcd(3, 3) = 3

    def test_coprimality_case_i_corrected(self):
        # (a,b,c) = (1,1,4) passes the b+c-1 form of the condition but the
        # triple (3,6,9) has gcd 3; the corrected gcd(b+c+1, ab-c) rejects it
        with pytest.raises(CoprimalityViolated):
            max_trace_family("i", 1, 1, 4)

    def test_sweep_small(self):
        verified = skipped = 0
        for case in ("i", "ii"):
            for a in range(1, 4):
                for b in range(1, 4):
                    for c in range(1, 4):
                        try:
                            fam = max_trace_family(case, a, b, c)
                        except CoprimalityViolated:
                            skipped += 1
                            continue
                        assert fam.verified, (case, a, b, c)
                        H = from_generators(fam.generators)
                        assert canonical_trace(H).trace == maximal_ideal(H)
                        verified += 1
        assert verified > 30 and skipped > 0


class TestTraceConductorClassifier:
    def test_positive(self):
        assert trace_conductor_classifier(from_generators([3, 7, 8]))
        assert trace_conductor_classifier(from_generators([3, 4, 5]))

    def test_negative(self):
        assert not trace_conductor_classifier(from_generators([5, 6, 7]))

    def test_symmetric_rejected(self):
        with pytest.raises(SymmetricInput):
            trace_conductor_classifier(from_generators([4, 6, 9]))

    def test_agrees_with_windows_on_sweep(self):
        # the classifier asserts agreement with trace == conductor internally
        for triple in iter_nonsymmetric_triples(24):
            H = from_generators(triple)
            shape = trace_conductor_classifier(H)
            if shape:
                assert canonical_trace(H).trace == conductor_ideal(H)


class TestShiftedFamilies:
    def test_constants(self):
        assert shift_constant(1, 2) == 2
        assert shift_constant(4, 9) == 36
        assert symmetry_period(1, 2) == 2
        assert symmetry_period(2, 4) == 4  # nu_2(2) < nu_2(4)
        assert symmetry_period(4, 9) == 9
        assert symmetry_period(6, 9) == 9

    def test_shifted_residue_reduces_gcd(self):
        # <4, 6, 8> reduces to <2, 3, 4> = <2, 3>, which is symmetric
        assert shifted_residue(4, 2, 4) == (0, True)
        # <6, 8, 10> reduces to <3, 4, 5>, pseudo-symmetric with residue 1
        assert shifted_residue(6, 2, 4) == (1, False)

    def test_arithmetic_shift_family(self):
        rep = shift_analysis(1, 2, periods=5)
        assert rep.k == 2 and rep.period == 2
        assert rep.periodicity_ok and rep.symmetry_period_ok
        assert rep.divisibility_ok and rep.bound_ok
        for record in rep.records:
            assert record.residue in (0, 1)  # arithmetic: nearly Gorenstein
            assert record.symmetric == (record.j % 2 == 0)

    def test_4_9_window(self):
        rep = shift_analysis(4, 9, periods=3)
        assert rep.k == 36
        assert rep.periodicity_ok and rep.symmetry_period_ok

    def test_invalid_ranges(self):
        with pytest.raises(InvalidRange):
            shift_analysis(2, 2)
        with pytest.raises(InvalidRange):
            shift_analysis(0, 3)
        with pytest.raises(InvalidRange):
            shift_analysis(1, 3, periods=0)
        with pytest.raises(InvalidRange):
            shifted_residue(0, 1, 2)


class TestTripleEnumeration:
    def test_small_count_and_filters(self):
        triples = list(iter_nonsymmetric_triples(12))
        assert (5, 6, 7) in triples and (3, 7, 8) in triples
        assert (4, 6, 9) not in triples      # symmetric
        assert (2, 4, 7) not in triples      # 4 redundant over 2? no: 4 = 2+2
        for triple in triples:
            H = from_generators(triple)
            assert H.generators == triple
            assert not H.classify().symmetric


class TestShiftedTupleProbe:
    def test_runs_and_reports(self):
        records = list(shifted_tuple_probe((0, 1, 3, 7), 40, 6))
        assert len(records) == 6
        assert all(res >= 0 for _j, res in records)
