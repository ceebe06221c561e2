from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieosc import InvalidScalarError, Surd
from lieosc.scalar import squarefree_split

RADICANDS = (1, 2, 3, 5, 6, 7, 10, 15)
small_q = st.fractions(min_value=-6, max_value=6, max_denominator=7)


@st.composite
def surds(draw, max_terms=3):
    raw = draw(
        st.lists(
            st.tuples(st.sampled_from(RADICANDS), small_q, small_q),
            max_size=max_terms,
        )
    )
    return Surd.normalize(raw)


def close(a: complex, b: complex, tol=1e-12) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


class TestNormalize:
    def test_square_factor_is_extracted(self):
        s = Surd.normalize([(8, 1, 0)])
        assert s.terms == {2: (Fraction(2), Fraction(0))}

    def test_cancellation_gives_zero(self):
        s = Surd.normalize([(2, 1, 0), (8, Fraction(-1, 2), 0)])
        assert s.is_zero() and s == 0

    def test_rationals_merge(self):
        s = Surd.normalize([(1, Fraction(3, 2), 0), (4, 1, 0)])
        assert s.terms == {1: (Fraction(7, 2), Fraction(0))}

    @pytest.mark.parametrize("bad", [0, -3, 2.0])
    def test_rejects_bad_radicand(self, bad):
        with pytest.raises(InvalidScalarError):
            Surd.normalize([(bad, 1, 0)])

    def test_float_coercion_refused(self):
        with pytest.raises(InvalidScalarError):
            Surd.coerce(0.5)

    @pytest.mark.parametrize("n, split", [(1, (1, 1)), (12, (2, 3)), (50, (5, 2)), (30, (1, 30))])
    def test_squarefree_split(self, n, split):
        assert squarefree_split(n) == split


class TestArithmetic:
    def test_root_two_squared(self):
        r2 = Surd.sqrt(2)
        assert r2 * r2 == 2

    def test_conjugate_pair(self):
        r2 = Surd.sqrt(2)
        assert (1 + r2) * (1 - r2) == -1

    def test_products_of_different_radicands(self):
        assert Surd.sqrt(6) * Surd.sqrt(10) == 2 * Surd.sqrt(15)

    def test_sqrt_of_fraction(self):
        assert Surd.sqrt(Fraction(1, 2)) == Surd.sqrt(2) / 2

    def test_sqrt_of_negative_is_imaginary(self):
        assert Surd.sqrt(-3) * Surd.sqrt(-3) == -3

    def test_division_by_surd_refused(self):
        with pytest.raises(InvalidScalarError):
            Surd.rational(1) / Surd.sqrt(2)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            Surd.sqrt(2) / 0

    @pytest.mark.parametrize(
        "value, expected",
        [
            (Surd.sqrt(2), 2 ** 0.5),
            (Surd(), 0),
            (Surd.normalize([(1, Fraction(3, 2), 0), (3, 0, 1)]), 1.5 + 1j * 3 ** 0.5),
        ],
    )
    def test_to_float(self, value, expected):
        assert close(value.to_float(), expected)


@settings(max_examples=150, deadline=None)
@given(surds(), surds(), surds())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    assert a * 1 == a and a + 0 == a


@settings(max_examples=150, deadline=None)
@given(surds(), surds())
def test_float_homomorphism(a, b):
    assert close((a + b).to_float(), a.to_float() + b.to_float())
    assert close((a * b).to_float(), a.to_float() * b.to_float())


@settings(max_examples=150, deadline=None)
@given(surds(), surds())
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert close(a.conj().to_float(), a.to_float().conjugate())


@given(st.lists(st.tuples(st.sampled_from((1, 2, 4, 8, 12, 18, 27, 45)), small_q, small_q), max_size=4))
def test_normalize_is_idempotent(raw):
    once = Surd.normalize(raw)
    twice = Surd.normalize((d, re, im) for d, (re, im) in once.terms.items())
    assert once == twice
    assert all(squarefree_split(d)[0] == 1 for d in once.terms)


@given(surds())
def test_hash_agrees_with_equality(a):
    b = Surd.parse(str(a))
    assert a == b and hash(a) == hash(b)


class TestSerialisation:
    def test_json_shape(self):
        half_root2 = Surd.sqrt(2) / 2
        assert half_root2.to_json() == {"terms": [{"d": 2, "re": "1/2", "im": "0"}]}

    @given(surds())
    def test_json_round_trip(self, a):
        assert Surd.from_json(a.to_json()) == a

    @given(surds())
    def test_string_round_trip(self, a):
        assert Surd.parse(str(a)) == a

    @pytest.mark.parametrize("text", ["1/2 + 3/4*sqrt(2)", "-1*i*sqrt(3)", "(1+2*i)*sqrt(5)", "0"])
    def test_canonical_strings_are_fixed_points(self, text):
        assert str(Surd.parse(text)) == text

    def test_garbage_rejected(self):
        with pytest.raises(InvalidScalarError):
            Surd.parse("sqrt(two)")
