"""Concrete rings, derived classes and relation-table verification."""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from errors import ParameterError, ParityMismatchError
from exact_linalg import Q, CoefficientMode, rank_of_vectors
from graded_algebra import (
    ARNOLD,
    ORBIT,
    Element,
    Presentation,
    basis_of_degree,
    generator_atom,
    parse_element,
)
from models import EmbeddingReport, IdentityResult, VerificationReport
from relation_tables import RelationFamily, relation_families, table_requirements
from utils import log

MAX_REPORTED_FAILURES = 5

# number of indices each derived class takes
ARITY = {
    "C+": 2, "C-": 2, "C0": 1,
    "B": 2, "D+": 2, "D-": 2, "D0": 1,
    "I+": 3, "I-": 3, "I0": 2,
    "A10": 0,
}
EVEN_ONLY = {"B", "D+", "D-", "D0", "I+", "I-", "I0"}


def orbit_ring(n: int, m: int, coeff: CoefficientMode = Q) -> Presentation:
    """Cohomology ring of the orbit configuration space of m points in R^n minus the origin."""
    return Presentation(ORBIT, n, m, coeff)


def arnold_ring(n: int, k: int, coeff: CoefficientMode = Q) -> Presentation:
    """Cohomology ring of the configuration space of k points in R^n."""
    return Presentation(ARNOLD, n, k, coeff)


class DerivedClass(NamedTuple):
    """A named combination or product of generators, e.g. C+[2,1] or I-[3,2,1]."""
    kind: str
    indices: Tuple[int, ...]

    def __str__(self) -> str:
        if self.kind == "A10":
            return "A[1,0]"
        return f"{self.kind}[{','.join(str(i) for i in self.indices)}]"


def _validate(p: Presentation, c: DerivedClass) -> None:
    if c.kind not in ARITY:
        raise ParameterError(f"unknown class '{c.kind}'")
    if len(c.indices) != ARITY[c.kind]:
        raise ParameterError(f"{c.kind} takes {ARITY[c.kind]} indices, got {len(c.indices)}")
    if p.family != ORBIT:
        raise ParameterError(f"{c} is only defined in the orbit ring")
    if c.kind in EVEN_ONLY and p.n % 2:
        raise ParityMismatchError(f"{c} needs n even, got n={p.n}")
    m = p.m
    idx = c.indices
    if c.kind in ("C+", "C-", "D+", "D-"):
        ok = 0 < idx[1] < idx[0] <= m
    elif c.kind in ("C0", "D0"):
        ok = 0 < idx[0] <= m
    elif c.kind == "B":
        ok = 0 < idx[0] <= m and abs(idx[1]) < idx[0]
    elif c.kind in ("I+", "I-"):
        ok = 0 <= idx[2] < idx[1] < idx[0] <= m
    elif c.kind == "I0":
        ok = 0 < idx[1] < idx[0] <= m
    else:
        ok = m >= 1
    if not ok:
        raise ParameterError(f"{c} is out of range for m={m}")


@lru_cache(maxsize=None)
def derived_class_element(p: Presentation, c: DerivedClass) -> Element:
    """
    Expand a derived class into the orbit ring.

    Args:
        p: Orbit presentation
        c: Derived class

    Returns:
        The class as an element in normal form

    Raises:
        ParityMismatchError: B, D and I classes with n odd
    """
    _validate(p, c)

    def a(i: int, j: int) -> Element:
        return Element.generator(p, i, j)

    def derived(kind: str, *indices: int) -> Element:
        return derived_class_element(p, DerivedClass(kind, indices))

    kind, idx = c
    if kind == "A10":
        return a(1, 0)
    if kind == "C+":
        i, j = idx
        return a(i, j) + a(i, -j) - a(i, 0)
    if kind == "C-":
        i, j = idx
        return -a(i, j) + a(i, -j) - a(j, 0)
    if kind == "C0":
        return a(idx[0], 0)
    if kind == "B":
        i, j = idx
        return a(i, j) - a(1, 0)
    if kind == "D+":
        i, j = idx
        return derived("B", i, j) + derived("B", i, -j) - derived("B", i, 0) - derived("B", j, 0)
    if kind == "D-":
        i, j = idx
        return derived("B", i, j) - derived("B", i, -j)
    if kind == "D0":
        return derived("B", idx[0], 0)
    if kind in ("I+", "I-"):
        r, i, j = idx
        if j == 0:
            return derived("I0", r, i)
        if kind == "I+":
            return derived("D+", i, j) * derived("D-", r, i)
        return derived("D-", i, j) * derived("D-", r, j)
    i, j = idx
    return derived("D0", j) * derived("D0", i)


Combination = Dict[DerivedClass, Fraction]


def a_in_derived_basis(p: Presentation, i: int, j: int, layer: str) -> Combination:
    """
    Express A[i,j] in the C layer or the D layer of derived classes.

    Args:
        p: Orbit presentation
        i: First index
        j: Second index
        layer: ``"C"`` or ``"D"``; the D layer needs n even

    Returns:
        Rational coefficients of the derived classes, A[1,0] included in the D layer

    Raises:
        NonInvertibleTwoError: When 2 is not a unit in the coefficient mode
    """
    p.generator(i, j)
    p.mode.require_invertible_two("change of basis to derived classes")
    half = Fraction(1, 2)
    terms: Combination = {}

    def add(kind: str, indices: Tuple[int, ...], value: Fraction) -> None:
        if kind == "D0" and indices == (1,):
            return
        key = DerivedClass(kind, indices)
        terms[key] = terms.get(key, Fraction(0)) + value

    if layer == "C":
        if j == 0:
            add("C0", (i,), Fraction(1))
        elif j > 0:
            add("C+", (i, j), half)
            add("C-", (i, j), -half)
            add("C0", (i,), half)
            add("C0", (j,), -half)
        else:
            add("C+", (i, -j), half)
            add("C-", (i, -j), half)
            add("C0", (i,), half)
            add("C0", (-j,), half)
    elif layer == "D":
        if p.n % 2:
            raise ParityMismatchError(f"the D layer needs n even, got n={p.n}")
        add("A10", (), Fraction(1))
        if j == 0:
            add("D0", (i,), Fraction(1))
        elif j > 0:
            add("D+", (i, j), half)
            add("D-", (i, j), half)
            add("D0", (i,), half)
            add("D0", (j,), half)
        else:
            add("D+", (i, -j), half)
            add("D-", (i, -j), -half)
            add("D0", (i,), half)
            add("D0", (-j,), half)
    else:
        raise ParameterError(f"unknown layer '{layer}', expected C or D")
    return {key: value for key, value in terms.items() if value}


def combination_element(p: Presentation, combo: Combination) -> Element:
    total = Element.zero(p)
    for c, value in combo.items():
        total = total + derived_class_element(p, c) * value
    return total


def format_combination(combo: Combination) -> str:
    if not combo:
        return "0"
    text = ""
    for c, value in combo.items():
        magnitude = abs(value)
        body = str(c) if magnitude == 1 else f"{magnitude}*{c}"
        if not text:
            text = ("-" if value < 0 else "") + body
        else:
            text += (" - " if value < 0 else " + ") + body
    return text


def derived_atom(p: Presentation, name: str, indices: Tuple[int, ...]) -> Element:
    """Resolve generator atoms and derived-class atoms such as ``C+[2,1]`` or ``I0[3,2]``."""
    if name in ("A", "A'"):
        return generator_atom(p, name, indices)
    return derived_class_element(p, DerivedClass(name, tuple(indices)))


def evaluate_expression(p: Presentation, text: str, bindings: Optional[Dict[str, int]] = None) -> Element:
    """
    Evaluate an expression over generators and derived classes.

    Args:
        p: Presentation
        text: Expression text
        bindings: Values of index variables used in the text

    Returns:
        Normal form of the expression
    """
    return parse_element(p, text, derived_atom, bindings)


def admissible_bindings(family: RelationFamily, m: int) -> Iterator[Dict[str, int]]:
    """Every assignment of strictly increasing values in [lower, m] to the family's chain."""
    for values in combinations(range(family.lower, m + 1), len(family.chain)):
        yield dict(zip(family.chain, values))


def _check_table_fits(p: Presentation, table: str) -> None:
    parity, family = table_requirements(table)
    if family != p.family:
        raise ParameterError(f"{table} applies to the {family} ring, not {p.label}")
    if parity == "odd" and p.n % 2 == 0:
        raise ParityMismatchError(f"{table} needs n odd, got n={p.n}")
    if parity == "even" and p.n % 2:
        raise ParityMismatchError(f"{table} needs n even, got n={p.n}")


def check_families(p: Presentation, table: str, families: List[RelationFamily]) -> List[IdentityResult]:
    """
    Evaluate both sides of every identity at every admissible index tuple.

    Args:
        p: Presentation
        table: Table name used in the results
        families: Relation families to check

    Returns:
        One result per identity
    """
    results = []
    for family in families:
        tuples = list(admissible_bindings(family, p.m))
        for lhs, rhs in family.identities:
            failures = []
            for bindings in tuples:
                if evaluate_expression(p, lhs, bindings) != evaluate_expression(p, rhs, bindings):
                    failures.append(bindings)
            results.append(IdentityResult(
                table=table,
                label=family.label,
                identity=f"{lhs} = {rhs}",
                instances=len(tuples),
                passed=not failures,
                failures=failures[:MAX_REPORTED_FAILURES],
            ))
    return results


def verify_relation_tables(p: Presentation, table: str) -> VerificationReport:
    """
    Verify a relation table in a concrete ring.

    Args:
        p: Presentation to check in
        table: One of ``relation_tables.TABLE_NAMES``

    Returns:
        Verification report listing every identity and its failing tuples

    Raises:
        ParityMismatchError: When the table needs the other parity of n
    """
    _check_table_fits(p, table)
    log(f"Verifying {table} in {p.label}")
    results = check_families(p, table, relation_families(table, p.n))
    return VerificationReport(
        table=table,
        n=p.n,
        m=p.m,
        coeff=p.mode.label,
        identities=results,
        passed=all(r.passed for r in results),
    )


def _embedding_image(target: Presentation, mono) -> Element:
    image = Element.one(target)
    for g in mono:
        image = image * Element.generator(target, g.i - 1, g.j - 1)
    return image


def verify_arnold_embedding(n: int, k: int, coeff: CoefficientMode = Q) -> EmbeddingReport:
    """
    Check that A'[i,j] -> A[i-1,j-1] is an injective ring map.

    The source is the Arnold ring on k+1 points and the target the orbit ring
    on k points.

    Args:
        n: Sphere dimension
        k: Point count of the target
        coeff: Coefficient mode

    Returns:
        Embedding report
    """
    source = arnold_ring(n, k + 1, coeff)
    target = orbit_ring(n, k, coeff)
    log(f"Checking the embedding {source.label} -> {target.label}")

    def image(text: str, bindings: Dict[str, int]) -> Element:
        element = parse_element(source, text, bindings=bindings)
        total = Element.zero(target)
        for mono, c in element.terms.items():
            total = total + _embedding_image(target, mono) * coeff.to_fraction(c)
        return total

    preserved = True
    for family in relation_families("arnold-table", n):
        for bindings in admissible_bindings(family, source.m):
            for lhs, rhs in family.identities:
                if image(lhs, bindings) != image(rhs, bindings):
                    preserved = False

    ranks = []
    injective = True
    for q in range(source.top_factor_count + 1):
        d = q * source.generator_degree
        basis = basis_of_degree(source, d)
        vectors = [_embedding_image(target, mono).to_vector(d) for mono in basis]
        r = rank_of_vectors(coeff, vectors, len(basis_of_degree(target, d)))
        ranks.append(r)
        injective = injective and r == len(basis)
    return EmbeddingReport(
        n=n,
        k=k,
        relations_preserved=preserved,
        injective=injective,
        image_ranks=ranks,
        passed=preserved and injective,
    )
