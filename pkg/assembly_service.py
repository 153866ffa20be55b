"""Additive cohomology of the sphere orbit space and the projective configuration spaces."""

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from config import SPACE_LABELS, TORSION_PROBE_PRIMES
from errors import NonInvertibleTwoError, ParameterError, ParityMismatchError
from exact_linalg import Q, CoefficientMode, Matrix, kernel_basis, rank
from graded_algebra import Element, Presentation, basis_index, basis_of_degree, degrees, poincare_polynomial
from group_action import epsilon_on_adjunct
from invariant_service import SubgroupSpec, invariant_basis, invariant_dims
from models import (
    ComparisonReport,
    FieldRankComparison,
    GradedGroupTable,
    GroupEntry,
    SpectralReport,
    SpectralRow,
    SphereComparison,
    WitnessComparison,
)
from presentations import orbit_ring
from utils import elementary_symmetric, log, product_coefficients, spread_degrees

TWO_TORSION = "Z/2"


@dataclass(frozen=True)
class ExteriorAdjunct:
    """Exterior class adjoined to a ring; torsion_order None means infinite order."""
    name: str
    degree: int
    torsion_order: Optional[int] = None


def exterior_adjuncts(n: int) -> Dict[str, ExteriorAdjunct]:
    """The classes iota and lambda in degree n and omega in degree 2n-1."""
    return {
        "iota": ExteriorAdjunct("iota", n),
        "lambda": ExteriorAdjunct("lambda", n, torsion_order=2),
        "omega": ExteriorAdjunct("omega", 2 * n - 1),
    }


def _require_even(n: int, what: str) -> None:
    if n % 2:
        raise ParityMismatchError(f"{what} needs n even, got n={n}")


def d_n_matrix(n: int, k: int, q: int, mode: CoefficientMode = Q) -> Matrix:
    """
    Matrix of the differential sending every generator A[i,j] to 2*iota.

    The source is the orbit ring on k-1 points in degree q and the target the
    same ring in degree q-(n-1), the iota factor being implicit. The map
    extends to products by the Leibniz rule.

    Args:
        n: Even sphere dimension
        k: Point count of the sphere orbit space
        q: Fiber degree, a multiple of n-1
        mode: Coefficient mode

    Returns:
        Matrix with one column per source basis monomial
    """
    _require_even(n, "the differential d_n")
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    if q < 0 or q % (n - 1):
        raise ParameterError(f"fiber degree {q} is not a multiple of {n - 1}")
    p = orbit_ring(n, k - 1, mode)
    target = basis_index(p, q - (n - 1))
    columns = []
    for mono in basis_of_degree(p, q):
        column = [0] * len(target)
        for t in range(len(mono)):
            column[target[mono[:t] + mono[t + 1:]]] += 2 if t % 2 == 0 else -2
        columns.append(column)
    return Matrix.from_columns(mode, columns, len(target))


def permanent_cycles(n: int, k: int, j: int, mode: CoefficientMode = Q) -> List[List]:
    """Basis of K^j, the kernel of d_n on j-fold products, as coordinate vectors."""
    if j < 0:
        return []
    return kernel_basis(d_n_matrix(n, k, j * (n - 1), mode))


def k_dimensions(k: int) -> List[int]:
    """Closed-form dim K^j = e_j(3, 5, ..., 2k-3) for j = 0..k-1."""
    values = [2 * i - 1 for i in range(2, k)]
    return [elementary_symmetric(values, j) for j in range(k)]


def _table(space: str, n: int, k: int, mode: CoefficientMode, ranks: Dict[int, int],
           torsion: Optional[Dict[int, int]] = None) -> GradedGroupTable:
    torsion = torsion or {}
    groups = [
        GroupEntry(degree=d, rank=ranks.get(d, 0), torsion=[TWO_TORSION] * torsion.get(d, 0))
        for d in sorted(set(ranks) | set(torsion))
        if ranks.get(d, 0) or torsion.get(d, 0)
    ]
    return GradedGroupTable(space=SPACE_LABELS[space].format(k=k), n=n, k=k, coeff=mode.label, groups=groups)


def _shifted(dims: List[int], step: int, shifts: Tuple[int, ...]) -> Dict[int, int]:
    total: Dict[int, int] = defaultdict(int)
    for shift in shifts:
        for d, r in spread_degrees(dims, step, shift).items():
            total[d] += r
    return dict(total)


def sphere_orbit_cohomology(n: int, k: int, coeff: CoefficientMode = Q) -> GradedGroupTable:
    """
    Cohomology of the orbit configuration space of k points in S^n.

    n odd: the orbit ring on k-1 points tensored with an exterior class of
    degree n. n even: K^j in degrees j(n-1) and j(n-1)+2n-1, plus in
    integral mode a Z/2 for each dimension of K^j in degree j(n-1)+n.

    Args:
        n: Sphere dimension
        k: Point count, at least 2
        coeff: Coefficient mode; characteristic 2 is rejected for n even

    Returns:
        Group table
    """
    if k < 2:
        raise ParameterError(f"k must be at least 2, got {k}")
    log(f"Assembling the sphere orbit table for n={n}, k={k}, {coeff.label}")
    step = n - 1
    if n % 2:
        dims = poincare_polynomial(orbit_ring(n, k - 1, coeff))
        return _table("sphere-orbit", n, k, coeff, _shifted(dims, step, (0, n)))
    if coeff.characteristic == 2:
        raise NonInvertibleTwoError("the even-n sphere orbit table needs characteristic 0 or odd")
    dims = [len(permanent_cycles(n, k, j, coeff)) for j in range(k)]
    torsion = spread_degrees(dims, step, n) if coeff.integral else {}
    return _table("sphere-orbit", n, k, coeff, _shifted(dims, step, (0, 2 * n - 1)), torsion)


@dataclass(frozen=True)
class InvariantRing:
    """Handle on an invariant subring, possibly tensored with an exterior class."""
    presentation: Presentation
    subgroup: SubgroupSpec
    cycles_only: bool = False
    adjunct: Optional[ExteriorAdjunct] = None

    def __post_init__(self):
        if self.adjunct is None:
            return
        flipped = [l for l in self.subgroup.generators
                   if epsilon_on_adjunct(self.presentation.n, l, self.adjunct.name) != 1]
        if flipped:
            raise ParameterError(
                f"{self.adjunct.name} is not fixed by eps_{flipped[0]}, so it cannot be tensored on as an invariant")

    def basis(self, d: int) -> List[Element]:
        """Basis of the invariant ring itself in degree d, without the adjunct."""
        return invariant_basis(self.presentation, self.subgroup, d, self.cycles_only)

    def dims(self) -> List[int]:
        return invariant_dims(self.presentation, self.subgroup, self.cycles_only)

    def degree_ranks(self) -> Dict[int, int]:
        shifts = (0, self.adjunct.degree) if self.adjunct else (0,)
        return _shifted(self.dims(), self.presentation.generator_degree, shifts)


def projective_cohomology(n: int, k: int, coeff: CoefficientMode = Q) -> Tuple[GradedGroupTable, InvariantRing]:
    """
    Cohomology of the configuration space of k points in RP^n.

    n odd: exterior class iota of degree n tensored with the full-group
    invariants of the orbit ring on k-1 points. n even: exterior class omega
    of degree 2n-1 tensored with the full-group invariants of the permanent
    cycles.

    Args:
        n: Sphere dimension
        k: Point count
        coeff: Coefficient mode with 2 invertible

    Returns:
        Tuple of the group table and the ring handle
    """
    coeff.require_invertible_two("the projective table")
    smallest = 1 if n % 2 else 2
    if k < smallest:
        raise ParameterError(f"k must be at least {smallest} for n={n}, got {k}")
    m = k - 1
    p = orbit_ring(n, m, coeff)
    adjuncts = exterior_adjuncts(n)
    if n % 2:
        ring = InvariantRing(p, SubgroupSpec.full(m), adjunct=adjuncts["iota"])
    else:
        ring = InvariantRing(p, SubgroupSpec.full(m), cycles_only=True, adjunct=adjuncts["omega"])
    log(f"Assembling the projective table for n={n}, k={k}, {coeff.label}")
    return _table("rpn", n, k, coeff, ring.degree_ranks()), ring


def punctured_projective_cohomology(n: int, k: int,
                                    coeff: CoefficientMode = Q) -> Tuple[GradedGroupTable, InvariantRing]:
    """
    Cohomology of the configuration space of k points in RP^n minus a point.

    Args:
        n: Sphere dimension
        k: Point count
        coeff: Coefficient mode with 2 invertible

    Returns:
        Tuple of the group table and the ring handle
    """
    coeff.require_invertible_two("the punctured projective table")
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    ring = InvariantRing(orbit_ring(n, k, coeff), SubgroupSpec.punctured(k))
    log(f"Assembling the punctured projective table for n={n}, k={k}, {coeff.label}")
    return _table("rpn-punctured", n, k, coeff, ring.degree_ranks()), ring


def sphere_configuration_poincare(n: int, k: int) -> Dict[int, int]:
    """Known Betti numbers of the configuration space of k points in S^n, n odd."""
    if n % 2 == 0:
        raise ParityMismatchError(f"the sphere configuration fixture needs n odd, got n={n}")
    dims = product_coefficients([1, i] for i in range(1, k - 1))
    return _shifted(dims, n - 1, (0, n))


def _rank_mismatches(label: str, reference: GradedGroupTable, other: GradedGroupTable) -> List[str]:
    return [
        f"{label} degree {d}: {reference.coeff} rank {reference.rank(d)}, {other.coeff} rank {other.rank(d)}"
        for d in sorted(set(reference.ranks()) | set(other.ranks()))
        if reference.rank(d) != other.rank(d)
    ]


def comparison_reports(n: int, k: int) -> ComparisonReport:
    """
    Cross-space comparisons.

    The odd-n projective table against the sphere configuration table, the
    degree n-1 ranks of the projective space against the punctured projective
    space one dimension up, and ranks over Q against ranks over small odd
    primes.

    Args:
        n: Sphere dimension
        k: Point count

    Returns:
        Comparison report
    """
    projective, _ = projective_cohomology(n, k)
    if n % 2:
        reference = sphere_configuration_poincare(n, k)
        entries = [GroupEntry(degree=d, rank=r) for d, r in sorted(reference.items())]
        sphere = SphereComparison(
            skipped=False,
            reference=entries,
            computed=projective.groups,
            equal=reference == projective.ranks(),
        )
    else:
        sphere = SphereComparison(skipped=True, reason="n even")

    punctured, _ = punctured_projective_cohomology(n + 1, k)
    witness = WitnessComparison(
        degree=n - 1,
        projective_rank=projective.rank(n - 1),
        punctured_rank=punctured.rank(n - 1),
        differs=projective.rank(n - 1) != punctured.rank(n - 1),
    )

    rational_punctured, _ = punctured_projective_cohomology(n, k)
    mismatches: List[str] = []
    coeffs = [Q.label]
    for prime in TORSION_PROBE_PRIMES:
        mode = CoefficientMode(prime)
        coeffs.append(mode.label)
        mismatches += _rank_mismatches("rpn", projective, projective_cohomology(n, k, mode)[0])
        mismatches += _rank_mismatches("rpn-punctured", rational_punctured, punctured_projective_cohomology(n, k, mode)[0])
    return ComparisonReport(
        n=n,
        k=k,
        sphere=sphere,
        witness=witness,
        field_ranks=FieldRankComparison(coeffs=coeffs, equal=not mismatches, mismatches=mismatches),
    )


def spectral_report(n: int, k: int, coeff: CoefficientMode = Q) -> SpectralReport:
    """
    The differential d_n fiber degree by fiber degree, with the integral table it produces.

    Args:
        n: Even sphere dimension
        k: Point count, at least 2
        coeff: Coefficient mode for the ranks; characteristic 2 is rejected

    Returns:
        Spectral report; passed when every kernel has its closed-form dimension
    """
    _require_even(n, "the spectral report")
    if k < 2:
        raise ParameterError(f"k must be at least 2, got {k}")
    if coeff.characteristic == 2:
        raise NonInvertibleTwoError("d_n is zero in characteristic 2")
    predicted = k_dimensions(k)
    rows = []
    for q in range(k):
        matrix = d_n_matrix(n, k, q * (n - 1), coeff)
        r = rank(matrix)
        rows.append(SpectralRow(
            q=q,
            degree=q * (n - 1),
            source_dim=matrix.cols,
            rank=r,
            kernel_dim=matrix.cols - r,
            predicted_kernel_dim=predicted[q],
        ))
    table = sphere_orbit_cohomology(n, k, CoefficientMode(0, integral=True))
    return SpectralReport(
        n=n,
        k=k,
        rows=rows,
        table=table,
        passed=all(row.kernel_dim == row.predicted_kernel_dim for row in rows),
    )
