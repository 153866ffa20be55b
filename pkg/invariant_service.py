"""Invariant subrings of the orbit ring and their predicted combinatorial bases."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple

from config import THREADS
from errors import ParameterError, ParityMismatchError
from exact_linalg import Q, CoefficientMode, Matrix, kernel_basis, rank_of_vectors, stack
from graded_algebra import Element, Presentation, basis_of_degree, degrees, poincare_polynomial
from group_action import GroupElement, action_matrix, epsilon_apply
from models import CheckResult, DegreeReport, InvariantReport, PresentationCheckReport
from presentations import (
    DerivedClass,
    arnold_ring,
    check_families,
    derived_class_element,
    orbit_ring,
)
from relation_tables import relation_families
from utils import log

KINDS = ("odd-full", "even-full", "odd-punctured", "even-punctured")
MAX_WITNESSES = 10

_KIND_ORDER = {"A10": 0, "C+": 1, "D0": 2, "I+": 3, "I-": 4, "I0": 5}


@dataclass(frozen=True)
class SubgroupSpec:
    """Generators eps_l of a subgroup of (Z2)^(m+1)."""
    generators: Tuple[int, ...]

    @classmethod
    def full(cls, m: int) -> "SubgroupSpec":
        return cls(tuple(range(1, m + 2)))

    @classmethod
    def punctured(cls, m: int) -> "SubgroupSpec":
        return cls(tuple(range(2, m + 2)))

    @classmethod
    def for_kind(cls, kind: str, m: int) -> "SubgroupSpec":
        return cls.full(m) if kind.endswith("full") else cls.punctured(m)

    def validate(self, p: Presentation) -> None:
        for l in self.generators:
            if not 1 <= l <= p.m + 1:
                raise ParameterError(f"eps_{l} is not in the group acting on {p.label}")


def _check_kind(kind: str, n: int) -> None:
    if kind not in KINDS:
        raise ParameterError(f"unknown invariant kind '{kind}', expected one of {', '.join(KINDS)}")
    if kind.startswith("odd") and n % 2 == 0:
        raise ParityMismatchError(f"{kind} needs n odd, got n={n}")
    if kind.startswith("even") and n % 2:
        raise ParityMismatchError(f"{kind} needs n even, got n={n}")


def invariant_vectors(p: Presentation, sub: SubgroupSpec, d: int, cycles_only: bool = False) -> List[List]:
    """Coordinates of a basis of the invariants in degree d."""
    # avoids a circular import: assembly builds on this module
    from assembly_service import d_n_matrix

    p.mode.require_invertible_two("invariant computation")
    sub.validate(p)
    size = len(basis_of_degree(p, d))
    if size == 0:
        return []
    identity = Matrix.identity(p.mode, size)
    blocks = [action_matrix(p, l, d) - identity for l in sub.generators]
    if cycles_only:
        if p.n % 2:
            raise ParityMismatchError(f"permanent cycles need n even, got n={p.n}")
        blocks.append(d_n_matrix(p.n, p.m + 1, d, p.mode))
    if not blocks:
        return identity.entries()
    return kernel_basis(stack(blocks))


def invariant_basis(p: Presentation, sub: SubgroupSpec, d: int, cycles_only: bool = False) -> List[Element]:
    """
    Exact basis of the degree d elements fixed by every generator of a subgroup.

    Args:
        p: Orbit presentation; 2 must be invertible in its coefficients
        sub: Subgroup generators
        d: Degree
        cycles_only: Intersect with the kernel of d_n (n even)

    Returns:
        Basis elements
    """
    return [Element.from_vector(p, d, v) for v in invariant_vectors(p, sub, d, cycles_only)]


@dataclass(frozen=True)
class PredictedBasis:
    """Combinatorial basis of an invariant ring in one degree, as products of derived classes."""
    kind: str
    n: int
    m: int
    degree: int
    monomials: Tuple[Tuple[DerivedClass, ...], ...]

    def elements(self, p: Presentation) -> List[Element]:
        result = []
        for mono in self.monomials:
            value = Element.one(p)
            for c in mono:
                value = value * derived_class_element(p, c)
            result.append(value)
        return result

    def labels(self) -> List[str]:
        return ["*".join(str(c) for c in mono) or "1" for mono in self.monomials]


def _flat_key(mono: Sequence[DerivedClass]) -> Tuple:
    return tuple(v for c in mono for v in (_KIND_ORDER[c.kind],) + c.indices)


def _i_class(r: int, i: int, j: int) -> DerivedClass:
    if j > 0:
        return DerivedClass("I+", (r, i, j))
    if j < 0:
        return DerivedClass("I-", (r, i, -j))
    return DerivedClass("I0", (r, i))


def _admissible_i_products(factors: Sequence[Tuple[int, int, int]]) -> bool:
    """Ordering, disjointness and sign conditions on a product of I factors (r, i, j)."""
    rs = [f[0] for f in factors]
    if any(a >= b for a, b in zip(rs, rs[1:])):
        return False
    used = [v for r, i, _ in factors for v in (r, i)]
    if len(set(used)) != len(used):
        return False
    for a, (ra, ia, ja) in enumerate(factors):
        for b, (rb, ib, jb) in enumerate(factors):
            if a == b:
                continue
            if ja == jb and ja <= 0 and ra < rb and not ra < ib:
                return False
            if ja > 0 and ia == -jb and not ra < ib:
                return False
    return True


def _i_products(m: int, count: int, allow_zero: bool) -> List[Tuple[Tuple[int, int, int], ...]]:
    singles = [(r, i, j) for r in range(3, m + 1) for i in range(2, r) for j in range(-(i - 1), i)
               if allow_zero or j != 0]
    return [combo for combo in combinations(singles, count) if _admissible_i_products(combo)]


def predicted_invariant_basis(kind: str, n: int, m: int, d: int) -> PredictedBasis:
    """
    Combinatorial invariant basis in degree d.

    odd kinds: products of C+[i,j] with increasing i. even-full: admissible
    products of I classes. even-punctured: A[1,0]^e times products of D0[s]
    times admissible products of I classes with nonzero last index, where
    the s avoid every index the I factors use.

    Args:
        kind: One of KINDS
        n: Sphere dimension, parity must match the kind
        m: Point count
        d: Degree

    Returns:
        Predicted basis, ordered lexicographically on flattened indices
    """
    _check_kind(kind, n)
    if m < 0:
        raise ParameterError(f"point count must be nonnegative, got {m}")
    step = n - 1
    monomials: List[Tuple[DerivedClass, ...]] = []
    if d >= 0 and d % step == 0:
        q = d // step
        if kind.startswith("odd"):
            for firsts in combinations(range(2, m + 1), q):
                for js in product(*[range(1, i) for i in firsts]):
                    monomials.append(tuple(DerivedClass("C+", (i, j)) for i, j in zip(firsts, js)))
        elif kind == "even-full":
            if q % 2 == 0:
                for combo in _i_products(m, q // 2, allow_zero=True):
                    monomials.append(tuple(_i_class(*f) for f in combo))
        else:
            for e in (0, 1):
                for t in range(0, (q - e) // 2 + 1):
                    c = q - e - 2 * t
                    for combo in _i_products(m, t, allow_zero=False):
                        used = {v for r, i, _ in combo for v in (r, i)}
                        free = [s for s in range(2, m + 1) if s not in used]
                        for ss in combinations(free, c):
                            head = (DerivedClass("A10", ()),) if e else ()
                            zeros = tuple(DerivedClass("D0", (s,)) for s in ss)
                            monomials.append(head + zeros + tuple(_i_class(*f) for f in combo))
    monomials.sort(key=_flat_key)
    return PredictedBasis(kind=kind, n=n, m=m, degree=d, monomials=tuple(monomials))


def _degree_report(p: Presentation, sub: SubgroupSpec, kind: str, d: int) -> DegreeReport:
    computed = invariant_vectors(p, sub, d, cycles_only=kind == "even-full")
    predicted = predicted_invariant_basis(kind, p.n, p.m, d)
    size = len(basis_of_degree(p, d))
    vectors = [x.to_vector(d) for x in predicted.elements(p)]
    base = len(computed)
    contained = all(rank_of_vectors(p.mode, computed + [v], size) == base for v in vectors)
    independent = rank_of_vectors(p.mode, vectors, size) == len(vectors)
    return DegreeReport(
        degree=d,
        computed_dim=base,
        predicted_dim=len(vectors),
        match=contained and independent and len(vectors) == base,
        witnesses=predicted.labels()[:MAX_WITNESSES],
    )


def invariants_match_prediction(p: Presentation, sub: SubgroupSpec, kind: str) -> InvariantReport:
    """
    Compare computed invariants with the predicted basis in every degree.

    Args:
        p: Orbit presentation
        sub: Subgroup generators
        kind: One of KINDS; even-full is computed on permanent cycles

    Returns:
        Degreewise report
    """
    _check_kind(kind, p.n)
    log(f"Comparing {kind} invariants of {p.label} under eps{list(sub.generators)}")
    degree_list = degrees(p)
    with ThreadPoolExecutor(max_workers=THREADS) as executor:
        reports = list(executor.map(lambda d: _degree_report(p, sub, kind, d), degree_list))
    return InvariantReport(
        kind=kind,
        n=p.n,
        m=p.m,
        subgroup=list(sub.generators),
        degrees=reports,
        poincare=[r.computed_dim for r in reports],
        passed=all(r.match for r in reports),
    )


def invariant_dims(p: Presentation, sub: SubgroupSpec, cycles_only: bool = False) -> List[int]:
    with ThreadPoolExecutor(max_workers=THREADS) as executor:
        return list(executor.map(lambda d: len(invariant_vectors(p, sub, d, cycles_only)), degrees(p)))


_PRESENTATION_TABLES = {
    "odd-full": "K-table",
    "odd-punctured": "K-table",
    "even-full": "I-table",
    "even-punctured": "J'-table",
}


def _generators_fixed(p: Presentation, kind: str, sub: SubgroupSpec) -> CheckResult:
    failures = []
    # generators live in the first two nonzero degrees
    for d in degrees(p)[1:3]:
        predicted = predicted_invariant_basis(kind, p.n, p.m, d)
        for label, x in zip(predicted.labels(), predicted.elements(p)):
            for l in sub.generators:
                if epsilon_apply(p, GroupElement.generator(l), x) != x:
                    failures.append(f"eps{l} moves {label}")
    return CheckResult(name="generators invariant", passed=not failures, detail="; ".join(failures[:5]))


def _arnold_isomorphism(p: Presentation, dims: List[int]) -> List[CheckResult]:
    target = arnold_ring(p.n, p.m, p.mode)
    pulled_back = [
        replace(family, identities=tuple((lhs.replace("A'", "C+"), rhs.replace("A'", "C+"))
                                         for lhs, rhs in family.identities))
        for family in relation_families("arnold-table", p.n)
    ]
    results = check_families(p, "arnold-table", pulled_back)
    preserved = CheckResult(
        name="arnold relations preserved",
        passed=all(r.passed for r in results),
        detail="; ".join(r.identity for r in results if not r.passed),
    )
    expected = poincare_polynomial(target)
    ranks = []
    for q, d in enumerate(degrees(p)):
        vectors = []
        for mono in basis_of_degree(target, q * target.generator_degree):
            value = Element.one(p)
            for g in mono:
                value = value * derived_class_element(p, DerivedClass("C+", (g.i, g.j)))
            vectors.append(value.to_vector(d))
        ranks.append(rank_of_vectors(p.mode, vectors, len(basis_of_degree(p, d))))
    padded = expected + [0] * (len(dims) - len(expected))
    return [
        preserved,
        CheckResult(name="images independent", passed=ranks[:len(expected)] == expected,
                    detail=f"image ranks {ranks}"),
        CheckResult(name="graded dimensions equal", passed=dims == padded,
                    detail=f"invariants {dims}, arnold {expected}"),
    ]


def invariant_presentation_check(kind: str, n: int, m: int, coeff: CoefficientMode = Q) -> PresentationCheckReport:
    """
    Check that the invariant ring satisfies its presentation.

    The predicted generators must satisfy the relation table of the kind and
    be fixed by the subgroup. For the odd kinds C+[i,j] -> A'[i,j] must also
    be relation preserving and injective with the graded dimensions of the
    Arnold ring on m points.

    Args:
        kind: One of KINDS
        n: Sphere dimension
        m: Point count
        coeff: Coefficient mode with 2 invertible

    Returns:
        Presentation check report
    """
    _check_kind(kind, n)
    coeff.require_invertible_two("invariant presentation check")
    p = orbit_ring(n, m, coeff)
    sub = SubgroupSpec.for_kind(kind, m)
    table = _PRESENTATION_TABLES[kind]
    log(f"Checking the {kind} presentation on {p.label} against {table}")
    relations = check_families(p, table, relation_families(table, n))
    dims = invariant_dims(p, sub, cycles_only=kind == "even-full")
    checks = [_generators_fixed(p, kind, sub)]
    isomorphism: Optional[bool] = None
    if kind.startswith("odd"):
        iso_checks = _arnold_isomorphism(p, dims)
        checks.extend(iso_checks)
        isomorphism = all(c.passed for c in iso_checks)
    return PresentationCheckReport(
        kind=kind,
        n=n,
        m=m,
        relations=relations,
        checks=checks,
        graded_dims=dims,
        isomorphism=isomorphism,
        passed=all(r.passed for r in relations) and all(c.passed for c in checks),
    )
