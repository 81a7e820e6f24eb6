import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilb11.hilbseq import (
    binomial_expansion,
    check_admissible,
    enumerate_local_hilbert_functions,
    is_admissible_local,
    macaulay_growth,
    persistence_onset,
    quadric_span_analysis,
    respects_nonincreasing_rule,
    trim,
)
from hilb11.rings import RingContext

T = RingContext(["a", "b", "c"])

TABLE_11 = {
    (1, 3, 1, 1, 1, 1, 1, 1, 1),
    (1, 3, 2, 1, 1, 1, 1, 1),
    (1, 3, 2, 2, 1, 1, 1),
    (1, 3, 3, 1, 1, 1, 1),
    (1, 3, 4, 1, 1, 1),
    (1, 3, 5, 1, 1),
    (1, 3, 3, 4),
    (1, 3, 4, 3),
    (1, 3, 5, 2),
    (1, 3, 4, 2, 1),
    (1, 3, 2, 2, 2, 1),
    (1, 3, 3, 2, 2),
    (1, 3, 3, 3, 1),
    (1, 3, 3, 2, 1, 1),
    (1, 3, 6, 1),
}


class TestBinomialExpansion:
    def test_five_two(self):
        assert binomial_expansion(5, 2).pairs == ((3, 2), (2, 1))

    def test_four_two(self):
        assert binomial_expansion(4, 2).pairs == ((3, 2), (1, 1))

    def test_small_h(self):
        assert binomial_expansion(3, 5).pairs == ((5, 5), (4, 4), (3, 3))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            binomial_expansion(0, 2)

    def test_roundtrip_range(self):
        for d in range(1, 7):
            for h in range(1, 1001):
                exp = binomial_expansion(h, d)
                assert sum(comb(k, i) for k, i in exp.pairs) == h
                ks = [k for k, _ in exp.pairs]
                assert all(x > y for x, y in zip(ks, ks[1:]))
                k_last, i_last = exp.pairs[-1]
                assert k_last >= i_last >= 1


class TestMacaulayGrowth:
    def test_reference_values(self):
        assert macaulay_growth(5, 2) == 7
        assert macaulay_growth(4, 2) == 5
        assert macaulay_growth(0, 3) == 0

    def test_small_h_fixed(self):
        for d in range(1, 8):
            for h in range(0, d + 1):
                assert macaulay_growth(h, d) == h

    def test_monotone_in_h(self):
        for d in range(1, 6):
            values = [macaulay_growth(h, d) for h in range(201)]
            assert all(x <= y for x, y in zip(values, values[1:]))


class TestAdmissibility:
    def test_table_rows_pass(self):
        for seq in TABLE_11:
            ok, witness = check_admissible(seq, 3)
            assert ok and witness is None

    def test_growth_after_small_value_rejected_by_both(self):
        # 2^<2> = 2, so Macaulay itself forbids 2 -> 3; the nonincreasing
        # rule flags the same step independently.
        seq = (1, 3, 2, 3)
        ok_m, where_m = check_admissible(seq, 3)
        ok_c, where_c = respects_nonincreasing_rule(seq)
        assert not ok_m and where_m == 2
        assert not ok_c and where_c == 3
        assert not is_admissible_local(seq, 3)
        assert macaulay_growth(2, 2) == 2

    def test_macaulay_violation_witness(self):
        ok, where = check_admissible((1, 3, 6, 11), 3)
        assert not ok and where == 2

    def test_curvilinear(self):
        assert is_admissible_local((1, 1, 1, 1), 3)

    def test_malformed(self):
        with pytest.raises(ValueError):
            check_admissible((2, 1), 3)
        with pytest.raises(ValueError):
            check_admissible((1, 4), 3)

    def test_trim(self):
        assert trim((1, 3, 0, 0)) == (1, 3)


class TestPersistence:
    def test_onset_detected(self):
        # 6^<2> = 10, so (1,3,6,10) attains the bound at step 2.
        assert persistence_onset((1, 3, 6, 10), 2)
        assert not persistence_onset((1, 3, 6, 9), 2)
        assert not persistence_onset((1, 3, 6), 2)


class TestEnumeration:
    def test_eleven_points_table(self):
        found = set(enumerate_local_hilbert_functions(3, 11))
        assert found == TABLE_11

    def test_degree_four(self):
        assert enumerate_local_hilbert_functions(3, 4) == [(1, 3)]

    def test_degree_eight_matches_bruteforce(self):
        def brute(d):
            out = set()
            stack = [(1, 3)]
            while stack:
                seq = stack.pop()
                total = sum(seq)
                if total == d:
                    if is_admissible_local(seq, 3):
                        out.add(seq)
                    continue
                if total > d:
                    continue
                for v in range(1, d - total + 1):
                    stack.append(seq + (v,))
            return out

        assert set(enumerate_local_hilbert_functions(3, 8)) == brute(8)

    def test_all_outputs_admissible(self):
        for seq in enumerate_local_hilbert_functions(3, 11):
            assert is_admissible_local(seq, 3)
            assert sum(seq) == 11


class TestQuadricSpan:
    def test_three_coordinate_products(self):
        qs = [T.parse("a*b"), T.parse("a*c"), T.parse("b*c")]
        report = quadric_span_analysis(qs)
        assert report.cubic_dimension == 7
        assert report.lower_bound == 6
        assert report.common_factor is None
        assert not report.attains_bound

    def test_shared_factor_equality_case(self):
        qs = [T.parse("c*a"), T.parse("c*b")]
        report = quadric_span_analysis(qs)
        assert report.cubic_dimension == 5
        assert report.lower_bound == 5
        assert str(report.common_factor) == "c"

    def test_generic_pencil_through_line(self):
        ell = T.parse("a+2b-c")
        qs = [ell * T.parse("a"), ell * T.parse("b"), ell * T.parse("c")]
        report = quadric_span_analysis(qs)
        assert report.cubic_dimension == 6 == report.lower_bound
        assert report.common_factor == ell.monic()

    def test_dependent_rejected(self):
        with pytest.raises(ValueError):
            quadric_span_analysis([T.parse("a*b"), T.parse("2a*b")])

    def test_randomized_bound_and_equality(self):
        rng = random.Random(17)
        monos = T.monomials_of_degree(2)
        lins = T.monomials_of_degree(1)

        def random_quadric():
            out = T.zero()
            for _ in range(3):
                out = out + T.monomial(rng.choice(monos), rng.randint(-4, 4))
            return out

        def random_linear():
            out = T.zero()
            for _ in range(2):
                out = out + T.monomial(rng.choice(lins), rng.randint(-3, 4))
            return out

        checked = 0
        while checked < 60:
            planted = rng.random() < 0.5
            if planted:
                ell = random_linear()
                if ell.is_zero():
                    continue
                qs = [ell * random_linear() for _ in range(rng.randint(2, 3))]
            else:
                qs = [random_quadric() for _ in range(rng.randint(2, 3))]
            if any(q.is_zero() or q.total_degree() != 2 for q in qs):
                continue
            try:
                report = quadric_span_analysis(qs)
            except ValueError:
                continue  # dependent draw
            checked += 1
            assert report.cubic_dimension >= report.lower_bound
            assert report.attains_bound == (report.common_factor is not None)
            if planted:
                assert report.common_factor is not None


@settings(max_examples=100)
@given(st.integers(1, 400), st.integers(1, 6))
def test_hypothesis_expansion_reconstructs(h, d):
    exp = binomial_expansion(h, d)
    assert sum(comb(k, i) for k, i in exp.pairs) == h
    assert macaulay_growth(h, d) >= h
