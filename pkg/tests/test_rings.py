import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilb11.errors import ParseError, RingMismatchError
from hilb11.rings import (
    Polynomial,
    RingContext,
    apolar_apply,
    apolar_pairing,
    parse_polynomial,
)

T = RingContext(["a", "b", "c"])
S = RingContext(["x", "y", "z"])
RT = RingContext(["a", "b", "c", "t"], parameter="t")


def p(text, ring=T):
    return parse_polynomial(text, ring)


def random_poly(ring, rng, max_degree=3, terms=4):
    out = ring.zero()
    monos = ring.monomials_up_to_degree(max_degree)
    for _ in range(terms):
        out = out + ring.monomial(rng.choice(monos), rng.randint(-5, 5))
    return out


class TestOrder:
    def test_grevlex_on_degree(self):
        assert T.monomial_key((2, 0, 0)) > T.monomial_key((1, 1, 0))
        assert T.monomial_key((0, 0, 3)) > T.monomial_key((1, 1, 0))

    def test_grevlex_ties(self):
        # a^2*c > b*c^2 and a*b > b^2 > c^2 under grevlex a > b > c.
        assert T.monomial_key((2, 0, 1)) > T.monomial_key((0, 1, 2))
        assert T.monomial_key((1, 1, 0)) > T.monomial_key((0, 2, 0))
        assert T.monomial_key((0, 2, 0)) > T.monomial_key((0, 0, 2))

    def test_lex(self):
        L = RingContext(["a", "b", "c"], order="lex")
        assert L.monomial_key((1, 0, 0)) > L.monomial_key((0, 5, 5))

    def test_block_eliminates_first_variables(self):
        B = RingContext(["w", "a", "b"], order="block", block=1)
        # Any monomial containing w beats every w-free monomial.
        assert B.monomial_key((1, 0, 0)) > B.monomial_key((0, 7, 7))


class TestParsePrint:
    def test_roundtrip_examples(self):
        # Canonical printing orders factors by the ring's variable list.
        cases = [
            ("a^3-6*b*c", "a^3-6*b*c"),
            ("b^5+t*b^4", "b^5+b^4*t"),
            ("a^2*c", "a^2*c"),
            ("-x+2", "-x+2"),
            ("1/2*x^2-3", "1/2*x^2-3"),
        ]
        for text, expected in cases:
            ring = RT if "t" in text else (S if "x" in text else T)
            q = parse_polynomial(text, ring)
            assert str(q) == expected
            assert parse_polynomial(str(q), ring) == q

    def test_star_optional(self):
        assert p("2ab") == p("2*a*b")
        assert p("a^2c") == p("a^2*c")

    def test_fraction_coefficients(self):
        q = p("1/3*a+2/3*a")
        assert q == T.variable("a")

    def test_unknown_variable(self):
        with pytest.raises(ParseError):
            p("x+y")

    def test_garbage(self):
        with pytest.raises(ParseError):
            p("a++")
        with pytest.raises(ParseError):
            p("")
        with pytest.raises(ParseError):
            p("a?b")

    def test_canonical_print_sorted_descending(self):
        q = p("c^2+a^3")
        assert str(q) == "a^3+c^2"
        assert str(p("b*c+a*b")) == "a*b+b*c"


class TestArithmetic:
    def test_exactness_add_sub(self):
        rng = random.Random(7)
        for _ in range(50):
            f = random_poly(T, rng)
            g = random_poly(T, rng)
            assert (f + g) - g == f

    def test_product_leading_form_multiplicative(self):
        rng = random.Random(11)
        for _ in range(50):
            f = random_poly(T, rng)
            g = random_poly(T, rng)
            if f.is_zero() or g.is_zero():
                continue
            assert (f * g).leading_form() == f.leading_form() * g.leading_form()

    def test_pow(self):
        f = p("a+b")
        assert f ** 3 == p("a^3+3a^2b+3ab^2+b^3")
        assert f ** 0 == T.one()

    def test_ring_mismatch(self):
        with pytest.raises(RingMismatchError):
            p("a") + parse_polynomial("x", S)


class TestGradedParts:
    def test_mixed(self):
        q = parse_polynomial("x^3+y^2", S)
        parts = q.graded_parts()
        assert [(d, str(f)) for d, f in parts] == [(2, "y^2"), (3, "x^3")]
        assert str(q.leading_form()) == "x^3"
        assert str(q.initial_form()) == "y^2"

    def test_homogeneous_single_part(self):
        q = parse_polynomial("x^2*y+y^2*z", S)
        assert q.graded_parts() == [(3, q)]

    def test_parameter_counts_toward_degree(self):
        q = parse_polynomial("x^5-t*x^4", RingContext(["x", "t"], parameter="t"))
        assert q.is_homogeneous()
        assert q.graded_parts()[0][0] == 5

    def test_zero_rejects_accessors(self):
        with pytest.raises(ValueError):
            T.zero().leading_form()


class TestEvaluate:
    def test_hand_value(self):
        q = p("b^5+b^4")
        assert q.evaluate([0, -1, 0]) == 0

    def test_origin_gives_constant(self):
        q = p("a^3-c^2+7")
        assert q.evaluate([0, 0, 0]) == 7

    def test_generator_vanishes_at_origin(self):
        assert p("a^3-c^2").evaluate([0, 0, 0]) == 0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            p("a").evaluate([1, 2])


class TestApolarity:
    def test_single_derivative(self):
        assert apolar_apply(p("a"), parse_polynomial("x^3", S)) == parse_polynomial("3x^2", S)

    def test_cubic_annihilator(self):
        f = parse_polynomial("x^3+y*z", S)
        assert apolar_apply(p("a^3-6b*c"), f).is_zero()

    def test_second_example_annihilator(self):
        f = parse_polynomial("x^2*y+y^2*z", S)
        assert apolar_apply(p("c^2"), f).is_zero()
        assert apolar_apply(p("a^2-b*c"), f).is_zero()

    def test_module_action(self):
        rng = random.Random(3)
        for _ in range(200):
            t1 = random_poly(T, rng, max_degree=2, terms=2)
            t2 = random_poly(T, rng, max_degree=2, terms=2)
            f = random_poly(S, rng, max_degree=5, terms=4)
            lhs = apolar_apply(t1 * t2, f)
            rhs = apolar_apply(t1, apolar_apply(t2, f))
            assert lhs == rhs

    def test_bilinear(self):
        rng = random.Random(5)
        for _ in range(60):
            t1 = random_poly(T, rng, max_degree=2)
            t2 = random_poly(T, rng, max_degree=2)
            f = random_poly(S, rng, max_degree=4)
            g = random_poly(S, rng, max_degree=4)
            assert apolar_apply(t1 + t2, f) == apolar_apply(t1, f) + apolar_apply(t2, f)
            assert apolar_apply(t1, f + g) == apolar_apply(t1, f) + apolar_apply(t1, g)

    def test_pairing_is_perfect_up_to_degree_six(self):
        # Diagonal with factorial entries, hence invertible.
        for d in range(7):
            monos = S.monomials_of_degree(d)
            for i, m1 in enumerate(monos):
                for j, m2 in enumerate(monos):
                    value = apolar_pairing(T.monomial(m1), S.monomial(m2))
                    assert (value != 0) == (i == j)

    def test_variable_count_mismatch(self):
        S2 = RingContext(["x", "y"])
        with pytest.raises(RingMismatchError):
            apolar_apply(p("a"), parse_polynomial("x", S2))


class TestSubstitution:
    def test_substitute_value(self):
        q = parse_polynomial("b^5+t*b^4", RT)
        assert q.substitute_value(3, 0) == parse_polynomial("b^5", RT)
        assert q.substitute_value(3, 1) == parse_polynomial("b^5+b^4", RT)

    def test_project_drops_unused(self):
        q = parse_polynomial("b^5+b^4", RT)
        assert str(q.project(T)) == "b^5+b^4"
        with pytest.raises(RingMismatchError):
            parse_polynomial("t*b", RT).project(T)

    def test_project_renames(self):
        q = p("a*b-c^2")
        img = q.project(S, var_map={"a": "x", "b": "y", "c": "z"})
        assert str(img) == "x*y-z^2"


@settings(max_examples=60)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4),
                           st.integers(-9, 9)), max_size=6))
def test_hypothesis_add_commutes(triples):
    f = T.zero()
    g = T.zero()
    for i, (e1, e2, e3, c) in enumerate(triples):
        target = f if i % 2 else g
        term = T.monomial((e1, e2, e3), c)
        if i % 2:
            f = f + term
        else:
            g = g + term
    assert f + g == g + f
    assert (f - g) + g == f
