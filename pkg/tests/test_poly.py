"""Tests for the exact polynomial ring, its parser, and its invariants."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieschouten.poly import (
    DEFAULT_TABLE,
    ParseError,
    Polynomial,
    PolynomialError,
    VariableTable,
    parse_polynomial,
)

T = DEFAULT_TABLE


def p(text: str) -> Polynomial:
    return parse_polynomial(text, T)


class TestArithmetic:
    def test_add_doubles(self):
        assert p("1/2*beta^2") + p("1/2*beta^2") == p("beta^2")

    def test_add_identity(self):
        q = p("alpha^2 - 3/7*gamma + 2")
        assert q + T.zero == q

    def test_add_cancellation(self):
        # hand expansion: (alpha^2 - alpha*beta) + alpha*beta = alpha^2
        assert p("alpha^2 - alpha*beta") + p("alpha*beta") == p("alpha^2")

    def test_mul_difference_of_squares(self):
        assert p("(alpha+beta)*(alpha-beta)") == p("alpha^2 - beta^2")

    def test_mul_identity(self):
        q = p("alpha*beta - 5*delta^3")
        assert q * T.one == q

    def test_mul_then_substitute_eta(self):
        # (2*eta - beta)*(2*eta + alpha) = 4*eta^2 + 2*alpha*eta - 2*beta*eta
        # - alpha*beta; at eta=1 this is 4 + 2*alpha - 2*beta - alpha*beta.
        q = p("(2*eta-beta)*(2*eta+alpha)").substitute("eta", T.one)
        assert q == p("4 + 2*alpha - 2*beta - alpha*beta")

    def test_mismatched_tables_error(self):
        other = VariableTable(("x", "y"))
        with pytest.raises(PolynomialError):
            p("alpha") + other.var("x")
        with pytest.raises(PolynomialError):
            p("alpha") * other.var("y")

    def test_pow(self):
        assert p("alpha+1") ** 3 == p("alpha^3 + 3*alpha^2 + 3*alpha + 1")
        assert p("alpha") ** 0 == T.one

    def test_scalar_coercion(self):
        assert 2 * p("alpha") - 1 == p("2*alpha - 1")
        assert Fraction(1, 2) * p("beta^2") == p("1/2*beta^2")


class TestEvaluate:
    def test_direct_arithmetic(self):
        assert p("3/2*beta^2").evaluate({"beta": 2}) == 6

    def test_scalar_curvature_sample(self):
        # -2*(alpha^2 + 1/2*beta^2) at alpha=1, beta=0 is -2
        q = p("-2*(alpha^2 + 1/2*beta^2)")
        assert q.evaluate({"alpha": 1, "beta": 0}) == -2

    def test_system_line_at_solution(self):
        # 3/2*alpha*beta^2*lambda0 + alpha*(3/2*beta^2 + c) vanishes at
        # alpha=1, beta=0, c=0 for any lambda0.
        q = p("3/2*alpha*beta^2*lambda0 + alpha*(3/2*beta^2 + c)")
        assert q.evaluate({"alpha": 1, "beta": 0, "c": 0, "lambda0": 7}) == 0

    def test_unassigned_variable(self):
        with pytest.raises(PolynomialError):
            p("alpha*beta").evaluate({"alpha": 1})

    def test_float_values_give_float(self):
        v = p("alpha^2 + 1").evaluate({"alpha": 0.5})
        assert isinstance(v, float) and abs(v - 1.25) < 1e-15

    def test_exact_rational_point(self):
        v = p("alpha^2 - beta").evaluate({"alpha": Fraction(1, 3), "beta": Fraction(1, 9)})
        assert v == 0


class TestSubstitute:
    def test_forced_cancellation(self):
        q = p("beta - eta").substitute("beta", T.var("eta")).substitute("eta", T.one)
        assert q.is_zero

    def test_gamma_equals_alpha_plus_beta(self):
        q = p("gamma*(alpha+beta-gamma)").substitute("gamma", p("alpha+beta"))
        assert q.is_zero

    def test_delta_equals_half_alpha(self):
        q = p("(alpha+delta)*(2*delta-alpha)").substitute("delta", p("1/2*alpha"))
        assert q.is_zero

    def test_substitute_by_constant(self):
        q = p("eta^2 + eta").substitute("eta", -1)
        assert q == T.zero


class TestReduceSquare:
    def test_generator_maps_to_zero(self):
        q = p("alpha^2 - gamma^2 - delta^2 + beta^2")
        assert q.reduce_square("alpha", p("gamma^2 + delta^2 - beta^2")).is_zero

    def test_repeated_rewrite(self):
        assert p("alpha^3").reduce_square("alpha", T.one) == p("alpha")
        assert p("alpha^4").reduce_square("alpha", T.one) == T.one

    def test_rhs_must_not_contain_var(self):
        with pytest.raises(PolynomialError):
            p("alpha^2").reduce_square("alpha", p("alpha"))

    def test_result_degree_bound(self):
        q = p("(alpha^2 + alpha + 1)*(beta + alpha^3)")
        r = q.reduce_square("alpha", p("beta - 1"))
        assert r.degree_in("alpha") <= 1

    def test_ideal_membership_numerically(self):
        # p - reduce(p) must vanish whenever alpha = +/- sqrt(rhs); checked
        # by float sampling at 100 constrained points
        import random

        q = p("alpha^4*beta - 2*alpha^3 + alpha*gamma + 5")
        rhs = p("beta^2 + 1")
        r = q.reduce_square("alpha", rhs)
        rng = random.Random(17)
        for _ in range(100):
            point = {
                "beta": rng.uniform(-3, 3),
                "gamma": rng.uniform(-3, 3),
            }
            root = rng.choice((1, -1)) * float(rhs.evaluate(point)) ** 0.5
            full = dict(point, alpha=root)
            assert abs(q.evaluate(full) - r.evaluate(full)) < 1e-9


class TestParser:
    def test_unknown_variable(self):
        with pytest.raises(ParseError):
            p("alpha*e + 0")

    def test_literal(self):
        assert p("1/2*beta^2").terms == {
            (0, 2, 0, 0, 0, 0, 0): Fraction(1, 2)
        }

    def test_negated_group(self):
        q = p("-(alpha^2 + 1/2*beta*gamma)")
        assert q == -(p("alpha^2") + p("1/2*beta*gamma"))

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as exc:
            p("alpha + * beta")
        assert exc.value.position == 8

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            p("3/0")

    def test_greek_aliases(self):
        assert p("α*β + λ0") == p("alpha*beta + lambda0")
        assert p("λ₀") == p("lambda0")

    def test_unary_minus_binds_factor(self):
        assert p("-alpha^2") == -p("alpha^2")
        assert p("1 - -alpha") == p("1 + alpha")

    def test_rational_power(self):
        assert p("2^3") == T.const(8)

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            p("alpha beta")


class TestPrinting:
    @pytest.mark.parametrize(
        "text",
        [
            "0",
            "1/2*beta^2",
            "-alpha^2 - 1/2*beta*gamma",
            "alpha*beta^2 - 3/2*gamma + 7",
            "2*alpha^2 + 1/2*beta^2 - c + lambda0",
            "eta^4 - eta",
        ],
    )
    def test_parse_print_roundtrip(self, text):
        q = p(text)
        assert parse_polynomial(str(q), T) == q

    def test_deterministic_order(self):
        assert str(p("beta + alpha + gamma^2")) == "gamma^2 + alpha + beta"


# -- randomized ring and homomorphism properties -----------------------------

_small_table = VariableTable(("alpha", "beta", "gamma", "delta"))


@st.composite
def polynomials(draw):
    n_terms = draw(st.integers(0, 5))
    terms = {}
    for _ in range(n_terms):
        mono = tuple(draw(st.integers(0, 3)) for _ in range(4))
        if sum(mono) > 3:
            continue
        num = draw(st.integers(-6, 6))
        den = draw(st.integers(1, 3))
        terms[mono] = terms.get(mono, Fraction(0)) + Fraction(num, den)
    return Polynomial(_small_table, terms)


@st.composite
def points(draw):
    return {
        name: Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
        for name in _small_table.names
    }


@settings(max_examples=1000, deadline=None)
@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=200, deadline=None)
@given(polynomials(), polynomials(), polynomials(), points())
def test_eval_is_ring_homomorphism(a, b, c, pt):
    assert (a * b + c).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt) + c.evaluate(pt)


@settings(max_examples=200, deadline=None)
@given(polynomials(), polynomials(), points())
def test_substitute_then_eval_composes(a, q, pt):
    direct = a.substitute("beta", q).evaluate(pt)
    composed = dict(pt)
    composed["beta"] = q.evaluate(pt)
    assert direct == a.evaluate(composed)


@settings(max_examples=200, deadline=None)
@given(polynomials())
def test_parse_print_random(a):
    assert parse_polynomial(str(a), _small_table) == a
