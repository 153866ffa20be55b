import pytest
from hypothesis import given, settings, strategies as st

from errors import ParameterError
from exact_linalg import Matrix
from graded_algebra import Element, basis_of_degree, degrees, parse_element
from group_action import (
    GroupElement,
    action_matrix,
    b_formula,
    epsilon_apply,
    epsilon_on_adjunct,
    epsilon_on_generator,
    group_matrix,
    verify_action_properties,
)
from presentations import DerivedClass, arnold_ring, derived_class_element, evaluate_expression, orbit_ring


class TestGroupElement:
    def test_product_is_symmetric_difference(self):
        g = GroupElement.generator(1) * GroupElement.generator(2)
        assert g == GroupElement((1, 2))
        assert g * GroupElement.generator(2) == GroupElement.generator(1)
        assert GroupElement.generator(3) * GroupElement.generator(3) == GroupElement()


class TestGenerators:
    def test_eps_one_flips_a_one_zero(self):
        p = orbit_ring(3, 2)
        assert epsilon_on_generator(p, 1, 1, 0) == -Element.generator(p, 1, 0)

    def test_eps_two_on_a_one_zero(self):
        assert epsilon_on_generator(orbit_ring(3, 2), 2, 1, 0) == -Element.generator(orbit_ring(3, 2), 1, 0)
        assert epsilon_on_generator(orbit_ring(4, 2), 2, 1, 0) == Element.generator(orbit_ring(4, 2), 1, 0)

    def test_eps_three_on_a_two_one(self):
        p = orbit_ring(4, 2)
        assert epsilon_on_generator(p, 3, 2, 1) == parse_element(p, "A[1,0] + A[2,0] - A[2,-1]")

    def test_untouched_generator(self):
        p = orbit_ring(3, 3)
        assert epsilon_on_generator(p, 4, 2, 1) == Element.generator(p, 2, 1)

    def test_index_out_of_range(self):
        with pytest.raises(ParameterError):
            epsilon_on_generator(orbit_ring(3, 2), 4, 1, 0)

    def test_orbit_rings_only(self):
        p = arnold_ring(3, 3)
        with pytest.raises(ParameterError):
            epsilon_apply(p, GroupElement.generator(1), Element.one(p))


class TestApply:
    def test_identity(self):
        p = orbit_ring(3, 2)
        x = parse_element(p, "A[2,1] - A[1,0]*A[2,-1]")
        assert epsilon_apply(p, GroupElement(), x) == x

    def test_swap(self):
        p = orbit_ring(3, 2)
        assert epsilon_apply(p, GroupElement.generator(2), Element.generator(p, 2, 1)) == \
            Element.generator(p, 2, -1)

    def test_multiplicative(self):
        p = orbit_ring(3, 2)
        x = parse_element(p, "A[1,0]*A[2,0]")
        assert epsilon_apply(p, GroupElement.generator(1), x) == x

    def test_sparse_d_minus(self):
        p = orbit_ring(4, 2)
        x = evaluate_expression(p, "D-[2,1]")
        assert epsilon_apply(p, GroupElement.generator(2), x) == -x

    def test_b_formula_agrees(self):
        p = orbit_ring(4, 3)
        for l in range(1, 5):
            for i in range(2, 4):
                for j in p.second_indices(i):
                    b = derived_class_element(p, DerivedClass("B", (i, j)))
                    assert epsilon_apply(p, GroupElement.generator(l), b) == b_formula(p, l, i, j)


class TestMatrices:
    def test_single_point(self):
        p = orbit_ring(3, 1)
        assert action_matrix(p, 1, 2).entries() == [[-1]]

    def test_unit_is_fixed(self):
        p = orbit_ring(4, 2)
        for l in range(1, 4):
            assert action_matrix(p, l, 0).entries() == [[1]]

    def test_swap_block(self):
        p = orbit_ring(3, 2)
        assert action_matrix(p, 2, 2).entries() == [
            [-1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
        ]

    def test_group_matrix_of_identity(self):
        p = orbit_ring(3, 2)
        assert group_matrix(p, GroupElement(), 4) == Matrix.identity(p.mode, 3)

    def test_eps_one_is_the_product_for_odd_n(self):
        p = orbit_ring(3, 2)
        for d in (0, 2, 4):
            assert action_matrix(p, 1, d) == group_matrix(p, GroupElement((2, 3)), d)


class TestAdjuncts:
    def test_signs(self):
        assert epsilon_on_adjunct(3, 1, "iota") == 1
        assert epsilon_on_adjunct(4, 1, "iota") == -1
        assert epsilon_on_adjunct(4, 1, "lambda") == -1
        assert epsilon_on_adjunct(4, 1, "omega") == 1
        assert epsilon_on_adjunct(4, 2, "iota") == 1

    def test_unknown_adjunct(self):
        with pytest.raises(ParameterError):
            epsilon_on_adjunct(3, 1, "kappa")


class TestPropertySuite:
    def test_odd(self):
        report = verify_action_properties(orbit_ring(3, 2), samples=20)
        assert report.passed, [c for c in report.checks if not c.passed]
        assert "eps1 equals the product of the others" in [c.name for c in report.checks]

    def test_even(self):
        report = verify_action_properties(orbit_ring(4, 2), samples=20)
        assert report.passed, [c for c in report.checks if not c.passed]
        names = [c.name for c in report.checks]
        assert "eps1 equals the signed product on permanent cycles" in names
        assert "sparse D action" in names

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [2, 3])
    def test_three_points(self, n):
        assert verify_action_properties(orbit_ring(n, 3), samples=20).passed


coefficients = st.lists(st.integers(-3, 3), min_size=8, max_size=8)
group_elements = st.sets(st.integers(1, 3)).map(lambda bits: GroupElement(tuple(bits)))


class TestHomomorphism:
    @staticmethod
    def element(p, values):
        basis = [mono for d in degrees(p) for mono in basis_of_degree(p, d)]
        return Element(p, {mono: p.mode.scalar(v) for mono, v in zip(basis, values)})

    @settings(max_examples=40, deadline=None)
    @given(group_elements, coefficients, coefficients)
    def test_ring_map(self, g, a, b):
        p = orbit_ring(3, 2)
        x, y = self.element(p, a), self.element(p, b)
        assert epsilon_apply(p, g, x * y) == epsilon_apply(p, g, x) * epsilon_apply(p, g, y)
        assert epsilon_apply(p, g, x + y) == epsilon_apply(p, g, x) + epsilon_apply(p, g, y)

    @settings(max_examples=40, deadline=None)
    @given(group_elements, group_elements, coefficients)
    def test_group_law(self, g, h, a):
        p = orbit_ring(4, 2)
        x = self.element(p, a)
        assert epsilon_apply(p, g * h, x) == epsilon_apply(p, g, epsilon_apply(p, h, x))
