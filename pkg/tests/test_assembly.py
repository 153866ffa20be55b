import pytest

from assembly_service import (
    TWO_TORSION,
    InvariantRing,
    comparison_reports,
    d_n_matrix,
    exterior_adjuncts,
    k_dimensions,
    permanent_cycles,
    projective_cohomology,
    punctured_projective_cohomology,
    spectral_report,
    sphere_configuration_poincare,
    sphere_orbit_cohomology,
)
from errors import NonInvertibleTwoError, ParameterError, ParityMismatchError
from exact_linalg import CoefficientMode, rank
from invariant_service import SubgroupSpec
from presentations import orbit_ring

Z = CoefficientMode(0, integral=True)


class TestDifferential:
    def test_degree_zero_is_the_zero_map(self):
        m = d_n_matrix(4, 3, 0)
        assert m.cols == 1
        assert rank(m) == 0
        assert len(permanent_cycles(4, 3, 0)) == 1

    def test_generators_all_hit_two_iota(self):
        m = d_n_matrix(4, 3, 3)
        assert m.shape == (1, 4)
        assert m.entries() == [[2, 2, 2, 2]]
        assert len(permanent_cycles(4, 3, 1)) == 3

    def test_top_products_are_not_cycles(self):
        assert permanent_cycles(4, 3, 2) == []

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_kernel_dimensions(self, k):
        assert [len(permanent_cycles(4, k, j)) for j in range(k)] == k_dimensions(k)

    def test_closed_form(self):
        assert k_dimensions(3) == [1, 3, 0]
        assert k_dimensions(4) == [1, 8, 15, 0]

    def test_needs_even_n(self):
        with pytest.raises(ParityMismatchError):
            d_n_matrix(3, 3, 2)

    def test_degree_off_the_grid(self):
        with pytest.raises(ParameterError):
            d_n_matrix(4, 3, 4)


class TestSphereOrbit:
    def test_odd(self):
        assert sphere_orbit_cohomology(3, 2).ranks() == {0: 1, 2: 1, 3: 1, 5: 1}

    def test_even_integral_torsion(self):
        table = sphere_orbit_cohomology(4, 3, Z)
        assert table.rank(7) == 1
        assert table.torsion(7) == [TWO_TORSION] * 3
        assert table.torsion(4) == [TWO_TORSION]
        assert table.coeff == "Z"

    def test_even_rational(self):
        table = sphere_orbit_cohomology(4, 2)
        assert table.ranks() == {0: 1, 7: 1}
        assert all(not g.torsion for g in table.groups)

    def test_even_characteristic_two(self):
        with pytest.raises(NonInvertibleTwoError):
            sphere_orbit_cohomology(4, 3, CoefficientMode(2))

    def test_point_count(self):
        with pytest.raises(ParameterError):
            sphere_orbit_cohomology(3, 1)


class TestProjective:
    def test_odd(self):
        table, ring = projective_cohomology(3, 3)
        assert table.ranks() == {0: 1, 2: 1, 3: 1, 5: 1}
        assert ring.adjunct == exterior_adjuncts(3)["iota"]
        assert ring.dims() == [1, 1, 0]

    def test_even_two_points(self):
        assert projective_cohomology(4, 2)[0].ranks() == {0: 1, 7: 1}

    def test_even_four_points(self):
        table, ring = projective_cohomology(4, 4)
        assert table.rank(6) == 3
        assert ring.cycles_only

    def test_needs_two_invertible(self):
        with pytest.raises(NonInvertibleTwoError):
            projective_cohomology(3, 3, CoefficientMode(2))

    def test_smallest_point_count(self):
        with pytest.raises(ParameterError):
            projective_cohomology(4, 1)


class TestInvariantRing:
    def test_adjunct_must_be_fixed(self):
        iota = exterior_adjuncts(4)["iota"]
        with pytest.raises(ParameterError):
            InvariantRing(orbit_ring(4, 2), SubgroupSpec.full(2), adjunct=iota)

    def test_punctured_subgroup_fixes_iota(self):
        ring = InvariantRing(orbit_ring(4, 2), SubgroupSpec.punctured(2), adjunct=exterior_adjuncts(4)["iota"])
        assert ring.degree_ranks()[4] == 1


class TestPunctured:
    def test_odd(self):
        assert punctured_projective_cohomology(3, 2)[0].ranks() == {0: 1, 2: 1}

    def test_even(self):
        assert punctured_projective_cohomology(2, 2)[0].ranks() == {0: 1, 1: 2, 2: 1}
        assert punctured_projective_cohomology(4, 2)[0].ranks() == {0: 1, 3: 2, 6: 1}


class TestComparisons:
    def test_sphere_configuration_fixture(self):
        assert sphere_configuration_poincare(3, 3) == {0: 1, 2: 1, 3: 1, 5: 1}
        with pytest.raises(ParityMismatchError):
            sphere_configuration_poincare(4, 3)

    def test_odd(self):
        report = comparison_reports(3, 3)
        assert report.sphere.equal is True
        assert report.witness.projective_rank == 1
        assert report.witness.punctured_rank == 0
        assert report.witness.differs
        assert report.field_ranks.equal
        assert report.field_ranks.coeffs == ["Q", "F3", "F5", "F7"]

    def test_even_skips_the_sphere(self):
        report = comparison_reports(2, 2)
        assert report.sphere.skipped
        assert report.sphere.reason == "n even"
        assert report.field_ranks.equal

    def test_field_ranks_odd_two_points(self):
        assert comparison_reports(3, 2).field_ranks.mismatches == []

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_whole_grid(self, n, k):
        report = comparison_reports(n, k)
        assert report.field_ranks.equal, report.field_ranks.mismatches
        if n % 2:
            assert report.sphere.equal


class TestSpectral:
    def test_rows(self):
        report = spectral_report(4, 3)
        assert report.passed
        assert [row.kernel_dim for row in report.rows] == [1, 3, 0]
        assert [row.rank for row in report.rows] == [0, 1, 3]
        assert report.table.torsion(7) == [TWO_TORSION] * 3

    def test_four_points(self):
        assert spectral_report(2, 4).passed

    def test_needs_even_n(self):
        with pytest.raises(ParityMismatchError):
            spectral_report(3, 3)
