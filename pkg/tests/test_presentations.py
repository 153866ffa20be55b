from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from errors import NonInvertibleTwoError, ParameterError, ParityMismatchError
from exact_linalg import CoefficientMode
from graded_algebra import Element, parse_element
from presentations import (
    DerivedClass,
    a_in_derived_basis,
    arnold_ring,
    combination_element,
    derived_class_element,
    evaluate_expression,
    format_combination,
    orbit_ring,
    verify_arnold_embedding,
    verify_relation_tables,
)
from relation_tables import TABLE_NAMES, relation_families


def derived(p, kind, *indices):
    return derived_class_element(p, DerivedClass(kind, indices))


class TestDerivedClasses:
    def test_c_zero_is_a_generator(self):
        p = orbit_ring(3, 3)
        assert derived(p, "C0", 2) == Element.generator(p, 2, 0)

    def test_d_minus_cancels_the_shift(self):
        p = orbit_ring(4, 2)
        assert derived(p, "D-", 2, 1) == parse_element(p, "A[2,1] - A[2,-1]")

    def test_b_one_zero_vanishes(self):
        assert derived(orbit_ring(4, 2), "B", 1, 0).is_zero()

    def test_i_with_zero_index(self):
        p = orbit_ring(4, 3)
        assert derived(p, "I-", 3, 2, 0) == derived(p, "I0", 3, 2)
        assert derived(p, "I0", 3, 2) == derived(p, "D0", 2) * derived(p, "D0", 3)

    def test_printing(self):
        assert str(DerivedClass("C+", (3, 2))) == "C+[3,2]"
        assert str(DerivedClass("A10", ())) == "A[1,0]"

    def test_even_classes_need_even_n(self):
        with pytest.raises(ParityMismatchError):
            derived(orbit_ring(3, 2), "D+", 2, 1)

    def test_out_of_range(self):
        with pytest.raises(ParameterError):
            derived(orbit_ring(3, 2), "C+", 3, 1)
        with pytest.raises(ParameterError):
            derived(orbit_ring(4, 3), "I+", 3, 3, 1)

    def test_unknown_kind(self):
        with pytest.raises(ParameterError):
            derived(orbit_ring(3, 2), "E", 2, 1)


class TestChangeOfBasis:
    def test_c_layer_examples(self):
        p = orbit_ring(3, 2)
        assert a_in_derived_basis(p, 2, 0, "C") == {DerivedClass("C0", (2,)): 1}
        assert a_in_derived_basis(p, 2, 1, "C") == {
            DerivedClass("C+", (2, 1)): Fraction(1, 2),
            DerivedClass("C-", (2, 1)): Fraction(-1, 2),
            DerivedClass("C0", (2,)): Fraction(1, 2),
            DerivedClass("C0", (1,)): Fraction(-1, 2),
        }

    def test_d_layer_drops_d_one(self):
        combo = a_in_derived_basis(orbit_ring(4, 2), 2, -1, "D")
        assert DerivedClass("D0", (1,)) not in combo
        assert combo[DerivedClass("A10", ())] == 1
        assert combo[DerivedClass("D-", (2, 1))] == Fraction(-1, 2)

    @pytest.mark.parametrize("n, layer", [(3, "C"), (5, "C"), (4, "C"), (4, "D"), (2, "D")])
    def test_every_generator_is_recovered(self, n, layer):
        p = orbit_ring(n, 3)
        for g in p.generators():
            combo = a_in_derived_basis(p, g.i, g.j, layer)
            assert combination_element(p, combo) == Element.generator(p, g.i, g.j), format_combination(combo)

    @settings(max_examples=30, deadline=None)
    @given(st.data(), st.sampled_from(["C", "D"]))
    def test_products_survive_the_change_of_basis(self, data, layer):
        p = orbit_ring(4, 4)
        pair = data.draw(st.lists(st.sampled_from(p.generators()), min_size=2, max_size=2))
        expected = Element.one(p)
        rebuilt = Element.one(p)
        for g in pair:
            expected = expected * Element.generator(p, g.i, g.j)
            rebuilt = rebuilt * combination_element(p, a_in_derived_basis(p, g.i, g.j, layer))
        assert rebuilt == expected

    def test_needs_two_invertible(self):
        with pytest.raises(NonInvertibleTwoError):
            a_in_derived_basis(orbit_ring(3, 2, CoefficientMode(2)), 2, 1, "C")

    def test_d_layer_needs_even_n(self):
        with pytest.raises(ParityMismatchError):
            a_in_derived_basis(orbit_ring(3, 2), 2, 1, "D")


class TestRelationTables:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_defining_relations(self, n):
        report = verify_relation_tables(orbit_ring(n, 3), "A-table")
        assert report.passed, [r.identity for r in report.identities if not r.passed]

    def test_arnold_relations(self):
        assert verify_relation_tables(arnold_ring(3, 4), "arnold-table").passed
        assert verify_relation_tables(arnold_ring(2, 4), "arnold-table").passed

    @pytest.mark.parametrize("n", [3, 5])
    def test_c_table(self, n):
        report = verify_relation_tables(orbit_ring(n, 3), "C-table")
        assert report.passed, [r.identity for r in report.identities if not r.passed]
        first = next(r for r in report.identities
                     if r.identity == "C+[r,i]*C+[r,j] = -C+[i,j]*C+[r,j] + C+[i,j]*C+[r,i]")
        assert first.instances == 1

    def test_k_table(self):
        assert verify_relation_tables(orbit_ring(3, 4), "K-table").passed

    @pytest.mark.parametrize("n", [2, 4])
    def test_d_table(self, n):
        report = verify_relation_tables(orbit_ring(n, 3), "D-table")
        assert report.passed, [r.identity for r in report.identities if not r.passed]
        squares = [r for r in report.identities if r.label == "squares"]
        assert len(squares) == 4
        assert all(r.instances == 3 for r in squares)

    def test_i_times_d_zero(self):
        assert verify_relation_tables(orbit_ring(4, 4), "ID0-table").passed

    def test_i_table_small(self):
        report = verify_relation_tables(orbit_ring(4, 4), "I-table")
        assert report.passed, [r.identity for r in report.identities if not r.passed]

    @pytest.mark.slow
    def test_i_table_full(self):
        report = verify_relation_tables(orbit_ring(4, 6), "I-table")
        assert report.passed, [r.identity for r in report.identities if not r.passed]
        pairing = next(r for r in report.identities if r.identity == "I-[i,s,j]*I-[r,t,j] = I-[s,t,j]*I-[r,i,j]")
        assert pairing.passed
        assert pairing.instances == 21

    def test_punctured_table(self):
        assert verify_relation_tables(orbit_ring(2, 4), "J'-table").passed

    def test_parity_guard(self):
        with pytest.raises(ParityMismatchError):
            verify_relation_tables(orbit_ring(4, 3), "C-table")
        with pytest.raises(ParityMismatchError):
            verify_relation_tables(orbit_ring(3, 3), "I-table")

    def test_family_guard(self):
        with pytest.raises(ParameterError):
            verify_relation_tables(orbit_ring(3, 3), "arnold-table")

    def test_unknown_table(self):
        with pytest.raises(ParameterError):
            relation_families("X-table", 3)

    def test_every_table_has_families(self):
        for table in TABLE_NAMES:
            assert relation_families(table, 4)

    def test_squares_and_mixed_c_products(self):
        p = orbit_ring(3, 2)
        assert evaluate_expression(p, "A[2,0]*A[2,0]").is_zero()
        assert evaluate_expression(p, "C+[2,1]*C-[2,1]") == evaluate_expression(p, "-C0[1]*C0[2]")


class TestArnoldEmbedding:
    @pytest.mark.parametrize("n", [3, 4])
    def test_injective_ring_map(self, n):
        report = verify_arnold_embedding(n, 3)
        assert report.relations_preserved
        assert report.injective
        assert report.image_ranks == [1, 6, 11, 6]
