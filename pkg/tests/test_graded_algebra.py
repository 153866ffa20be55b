import pytest
from hypothesis import given, settings, strategies as st

from errors import ModeMismatchError, ParameterError, ParseError
from exact_linalg import CoefficientMode
from graded_algebra import (
    Element,
    basis_of_degree,
    degrees,
    format_monomial,
    parse_element,
    poincare_polynomial,
    reduce_collision,
    verify_associativity,
)
from presentations import arnold_ring, evaluate_expression, orbit_ring


def betti(p):
    return [len(basis_of_degree(p, d)) for d in degrees(p)]


class TestBases:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_orbit_poincare(self, n):
        assert betti(orbit_ring(n, 2)) == [1, 4, 3]
        assert betti(orbit_ring(n, 3)) == [1, 9, 23, 15]
        assert poincare_polynomial(orbit_ring(n, 4)) == betti(orbit_ring(n, 4))

    def test_arnold_poincare(self):
        assert betti(arnold_ring(3, 2)) == [1, 1]
        assert betti(arnold_ring(3, 3)) == [1, 3, 2]
        assert poincare_polynomial(arnold_ring(4, 5)) == betti(arnold_ring(4, 5))

    def test_single_generator(self):
        p = orbit_ring(2, 1)
        assert [str(g) for g in p.generators()] == ["A[1,0]"]
        assert betti(p) == [1, 1]

    def test_finite_field(self):
        p = orbit_ring(4, 3, CoefficientMode(3))
        assert len(p.generators()) == 9
        assert betti(p) == [1, 9, 23, 15]

    def test_degree_one_basis_order(self):
        p = orbit_ring(3, 2)
        assert basis_of_degree(p, 0) == ((),)
        labels = [format_monomial(mono) for mono in basis_of_degree(p, 2)]
        assert labels == ["A[1,0]", "A[2,0]", "A[2,1]", "A[2,-1]"]

    def test_top_degree(self):
        p = orbit_ring(3, 2)
        labels = [format_monomial(mono) for mono in basis_of_degree(p, 4)]
        assert labels == ["A[1,0]*A[2,0]", "A[1,0]*A[2,1]", "A[1,0]*A[2,-1]"]

    def test_degree_off_the_grid(self):
        assert basis_of_degree(orbit_ring(4, 2), 4) == ()


class TestNormalForm:
    def test_zero_index_collision(self):
        p = orbit_ring(3, 2)
        expected = parse_element(p, "A[1,0]*A[2,1] - A[1,0]*A[2,0]")
        assert reduce_collision(p, 2, 0, 1) == expected

    def test_squares_vanish(self):
        for n in (2, 3):
            p = orbit_ring(n, 2)
            assert reduce_collision(p, 2, 1, 1).is_zero()
            assert parse_element(p, "A[1,0]*A[1,0]").is_zero()

    def test_nonzero_index_collision(self):
        p = orbit_ring(4, 3)
        expected = parse_element(p, "(A[1,0] + A[2,0] - A[2,-1])*(A[3,-2] - A[3,1])")
        assert reduce_collision(p, 3, 1, -2) == expected

    def test_orbit_products_of_derived_classes(self):
        p = orbit_ring(3, 3)
        product = evaluate_expression(p, "C-[3,2]*C0[3]")
        assert product == parse_element(p, "-A[2,0]*A[3,-2] + A[2,0]*A[3,0] - A[2,0]*A[3,2]")
        assert product == evaluate_expression(p, "-C+[3,2]*C0[2]")

    def test_arnold_three_term(self):
        p = arnold_ring(3, 3)
        assert parse_element(p, "A'[3,1]*A'[3,2]") == parse_element(p, "A'[2,1]*A'[3,2] - A'[2,1]*A'[3,1]")

    def test_unit(self):
        p = orbit_ring(4, 2)
        x = parse_element(p, "A[2,1] - 2*A[1,0]*A[2,0]")
        assert Element.one(p) * x == x

    def test_graded_commutativity(self):
        odd = orbit_ring(4, 2)
        assert parse_element(odd, "A[2,1]*A[1,0]") == -parse_element(odd, "A[1,0]*A[2,1]")
        even = orbit_ring(3, 2)
        assert parse_element(even, "A[2,1]*A[1,0]") == parse_element(even, "A[1,0]*A[2,1]")

    def test_leading_monomial_printed_first(self):
        p = orbit_ring(3, 2)
        assert str(parse_element(p, "A[2,0]*A[2,1]")) == "A[1,0]*A[2,1] - A[1,0]*A[2,0]"


class TestParsing:
    def test_print_parse_round_trip(self):
        p = orbit_ring(4, 3)
        x = parse_element(p, "1/2*A[3,-2] - 3*A[1,0]*A[2,1] + A[1,0]*A[2,-1]*A[3,0] + 7")
        assert parse_element(p, str(x)) == x

    def test_whitespace_is_ignored(self):
        p = orbit_ring(3, 2)
        assert parse_element(p, " A [ 2 , -1 ]*A[1,0] ") == parse_element(p, "A[1,0]*A[2,-1]")

    def test_unexpected_character(self):
        with pytest.raises(ParseError) as error:
            parse_element(orbit_ring(3, 2), "A[1,0] + $")
        assert error.value.position == 9

    def test_dangling_operator(self):
        with pytest.raises(ParseError):
            parse_element(orbit_ring(3, 2), "A[1,0] +")

    def test_generator_out_of_range(self):
        with pytest.raises(ParseError):
            parse_element(orbit_ring(3, 2), "A[3,0]")
        with pytest.raises(ParseError):
            parse_element(orbit_ring(3, 2), "A[2,2]")

    def test_wrong_family(self):
        with pytest.raises(ParseError):
            parse_element(orbit_ring(3, 2), "A'[2,1]")

    def test_unbound_index(self):
        with pytest.raises(ParseError):
            parse_element(orbit_ring(3, 2), "A[i,0]")
        assert parse_element(orbit_ring(3, 2), "A[i,-j]", bindings={"i": 2, "j": 1}) == \
            parse_element(orbit_ring(3, 2), "A[2,-1]")


class TestElements:
    def test_mode_mismatch(self):
        x = Element.generator(orbit_ring(3, 2), 1, 0)
        y = Element.generator(orbit_ring(3, 2, CoefficientMode(3)), 1, 0)
        with pytest.raises(ModeMismatchError):
            x + y

    def test_vector_round_trip(self):
        p = orbit_ring(3, 3)
        x = parse_element(p, "A[1,0]*A[3,-1] - 2*A[2,1]*A[3,2]")
        assert Element.from_vector(p, 4, x.to_vector(4)) == x
        assert x.degree == 4

    def test_inhomogeneous_degree(self):
        x = parse_element(orbit_ring(3, 2), "1 + A[1,0]")
        with pytest.raises(ParameterError):
            x.degree


class TestAssociativity:
    @pytest.mark.parametrize("n", [3, 4])
    def test_harness_passes(self, n):
        report = verify_associativity(orbit_ring(n, 3), 200, 0)
        assert report.passed
        assert report.counterexample is None
        assert report.commutativity_pairs == 36

    def test_arnold_harness(self):
        assert verify_associativity(arnold_ring(2, 4), 100, 1).passed

    def test_trials_must_be_positive(self):
        with pytest.raises(ParameterError):
            verify_associativity(orbit_ring(3, 2), 0, 0)

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.integers(-2, 2), min_size=8, max_size=8),
        st.lists(st.integers(-2, 2), min_size=8, max_size=8),
        st.lists(st.integers(-2, 2), min_size=8, max_size=8),
    )
    def test_associative_on_the_whole_basis(self, a, b, c):
        p = orbit_ring(4, 2)
        basis = [mono for d in degrees(p) for mono in basis_of_degree(p, d)]

        def element(coefficients):
            return Element(p, {mono: p.mode.scalar(v) for mono, v in zip(basis, coefficients)})

        x, y, z = element(a), element(b), element(c)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
