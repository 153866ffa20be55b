"""The (Z2)^(m+1) action on the orbit ring and its consistency checks."""

import random
import threading
from functools import lru_cache, reduce
from typing import Dict, FrozenSet, Iterable, List, Tuple

from config import ACTION_SAMPLES, DEFAULT_SEED
from errors import ParameterError
from exact_linalg import Matrix
from graded_algebra import (
    ORBIT,
    Element,
    Monomial,
    Presentation,
    basis_of_degree,
    degrees,
    random_element,
)
from models import ActionReport, CheckResult
from presentations import DerivedClass, derived_class_element
from utils import log

ADJUNCTS = ("iota", "lambda", "omega")


class GroupElement:
    """An element of (Z2)^(m+1), stored as the set of generators eps_l it contains."""

    __slots__ = ("bits",)

    def __init__(self, bits: Iterable[int] = ()):
        self.bits: FrozenSet[int] = frozenset(bits)

    @classmethod
    def generator(cls, l: int) -> "GroupElement":
        return cls((l,))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.bits ^ other.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        if not self.bits:
            return "GroupElement(1)"
        return "GroupElement(" + "*".join(f"eps{l}" for l in sorted(self.bits)) + ")"


def _check_index(p: Presentation, l: int) -> None:
    if p.family != ORBIT:
        raise ParameterError(f"the group acts on orbit rings, not on {p.label}")
    if not 1 <= l <= p.m + 1:
        raise ParameterError(f"eps_{l} is not a generator of the group acting on {p.label}")


@lru_cache(maxsize=None)
def epsilon_on_generator(p: Presentation, l: int, i: int, j: int) -> Element:
    """
    Image of A[i,j] under eps_l.

    Args:
        p: Orbit presentation
        l: Group generator index, 1 <= l <= m+1
        i: First index of the generator
        j: Second index of the generator

    Returns:
        The image in normal form
    """
    _check_index(p, l)
    p.generator(i, j)
    sign_n = 1 if p.n % 2 == 0 else -1

    def a(x: int, y: int) -> Element:
        return Element.generator(p, x, y)

    if l == 1:
        if j > 0:
            return a(j, 0) * -sign_n - a(i, 0) + a(i, j)
        if j < 0:
            return -a(-j, 0) - a(i, 0) + a(i, j)
        return -a(i, 0)
    if abs(j) == l - 1:
        return a(i, -j)
    if i == l - 1 and j == 0:
        return a(i, 0) * sign_n
    if l > 2 and i == l - 1 and j > 0:
        return (a(j, 0) + a(i, 0) - a(i, -j)) * sign_n
    if l > 2 and i == l - 1 and j < 0:
        return a(-j, 0) + a(i, 0) * sign_n - a(i, -j) * sign_n
    return a(i, j)


@lru_cache(maxsize=None)
def _monomial_image(p: Presentation, l: int, mono: Monomial) -> Element:
    image = Element.one(p)
    for g in mono:
        image = image * epsilon_on_generator(p, l, g.i, g.j)
    return image


def _apply_generator(p: Presentation, l: int, x: Element) -> Element:
    total = Element.zero(p)
    for mono, c in x.terms.items():
        total = total + _monomial_image(p, l, mono) * c
    return total


def epsilon_apply(p: Presentation, g: GroupElement, x: Element) -> Element:
    """
    Apply a group element to an element of the orbit ring.

    Args:
        p: Orbit presentation
        g: Group element
        x: Element of p

    Returns:
        g(x) in normal form
    """
    if x.presentation != p:
        raise ParameterError(f"{x} does not belong to {p.label}")
    for l in sorted(g.bits):
        _check_index(p, l)
        x = _apply_generator(p, l, x)
    return x


def epsilon_on_adjunct(n: int, l: int, name: str) -> int:
    """
    Sign of eps_l on an exterior adjunct class.

    Args:
        n: Sphere dimension
        l: Group generator index
        name: ``iota``, ``lambda`` or ``omega``

    Returns:
        +1 or -1
    """
    if name not in ADJUNCTS:
        raise ParameterError(f"unknown adjunct '{name}'")
    if l < 1:
        raise ParameterError(f"eps_{l} is not a group generator")
    if l != 1 or name == "omega":
        return 1
    if name == "iota":
        return 1 if n % 2 else -1
    return -1


_matrix_cache: Dict[Tuple[Presentation, int, int], Matrix] = {}
_matrix_lock = threading.Lock()


def action_matrix(p: Presentation, l: int, d: int) -> Matrix:
    """
    Matrix of eps_l on the degree d basis; column c is the image of basis monomial c.

    Args:
        p: Orbit presentation
        l: Group generator index
        d: Degree

    Returns:
        Square matrix over the presentation's coefficients
    """
    _check_index(p, l)
    key = (p, l, d)
    cached = _matrix_cache.get(key)
    if cached is not None:
        return cached
    with _matrix_lock:
        if key not in _matrix_cache:
            basis = basis_of_degree(p, d)
            columns = [_monomial_image(p, l, mono).to_vector(d) for mono in basis]
            _matrix_cache[key] = Matrix.from_columns(p.mode, columns, len(basis))
        return _matrix_cache[key]


def group_matrix(p: Presentation, g: GroupElement, d: int) -> Matrix:
    size = len(basis_of_degree(p, d))
    return reduce(lambda acc, l: action_matrix(p, l, d) @ acc, sorted(g.bits), Matrix.identity(p.mode, size))


def b_formula(p: Presentation, l: int, i: int, j: int) -> Element:
    """Image of B[i,j] under eps_l as given by the closed formula for n even."""
    def b(x: int, y: int) -> Element:
        return derived_class_element(p, DerivedClass("B", (x, y)))

    if l == 1:
        if j != 0:
            return -b(abs(j), 0) - b(i, 0) + b(i, j)
        return -b(i, 0)
    if abs(j) == l - 1 and j != 0:
        return b(i, -j)
    if l > 2 and i == l - 1 and j != 0:
        return b(abs(j), 0) + b(i, 0) - b(i, -j)
    return b(i, j)


def _sparse_sign(kind: str, indices: Tuple[int, ...], l: int) -> int:
    if kind == "C+":
        return 1
    if kind == "C-":
        return -1 if l - 1 in indices else 1
    if kind in ("C0", "D0"):
        return -1 if l == 1 or (kind == "C0" and indices[0] == l - 1) else 1
    if kind == "D+":
        return -1 if indices[0] == l - 1 else 1
    return -1 if indices[1] == l - 1 else 1


def _sparse_classes(p: Presentation) -> List[DerivedClass]:
    pairs = [(i, j) for i in range(2, p.m + 1) for j in range(1, i)]
    if p.n % 2:
        kinds = ("C+", "C-")
        zero_kind, first = "C0", 1
    else:
        kinds = ("D+", "D-")
        zero_kind, first = "D0", 2
    classes = [DerivedClass(kind, pair) for pair in pairs for kind in kinds]
    classes += [DerivedClass(zero_kind, (i,)) for i in range(first, p.m + 1)]
    return classes


def _check(name: str, failures: List[str]) -> CheckResult:
    return CheckResult(name=name, passed=not failures, detail="; ".join(failures[:5]))


def verify_action_properties(p: Presentation, samples: int = ACTION_SAMPLES, seed: int = DEFAULT_SEED) -> ActionReport:
    """
    Run the structural checks of the action degree by degree.

    Involution, pairwise commutation and sampled multiplicativity for every
    eps_l; for n odd eps_1 equals the product of the others; for n even the
    same holds on permanent cycles up to the sign (-1)^q, and the B and D
    classes transform by their closed formulas.

    Args:
        p: Orbit presentation
        samples: Random product pairs per group generator
        seed: Seed of the sampler

    Returns:
        Action report
    """
    # avoids a circular import: assembly builds on this module
    from assembly_service import permanent_cycles

    _check_index(p, 1)
    log(f"Checking the group action on {p.label}")
    ls = list(range(1, p.m + 2))
    degree_list = degrees(p)
    checks = []

    failures = []
    for d in degree_list:
        size = len(basis_of_degree(p, d))
        identity = Matrix.identity(p.mode, size)
        for l in ls:
            m = action_matrix(p, l, d)
            if m @ m != identity:
                failures.append(f"eps{l} in degree {d}")
    checks.append(_check("involution", failures))

    failures = []
    for d in degree_list:
        for idx, l in enumerate(ls):
            for l2 in ls[idx + 1:]:
                a, b = action_matrix(p, l, d), action_matrix(p, l2, d)
                if a @ b != b @ a:
                    failures.append(f"eps{l}, eps{l2} in degree {d}")
    checks.append(_check("commute", failures))

    failures = []
    rng = random.Random(seed)
    for l in ls:
        g = GroupElement.generator(l)
        for _ in range(samples):
            x, y = random_element(p, rng), random_element(p, rng)
            if epsilon_apply(p, g, x * y) != epsilon_apply(p, g, x) * epsilon_apply(p, g, y):
                failures.append(f"eps{l} on ({x})*({y})")
                break
    checks.append(_check("homomorphism", failures))

    rest = GroupElement(ls[1:])
    failures = []
    if p.n % 2:
        for d in degree_list:
            if action_matrix(p, 1, d) != group_matrix(p, rest, d):
                failures.append(f"degree {d}")
        checks.append(_check("eps1 equals the product of the others", failures))
    else:
        for q, d in enumerate(degree_list):
            sign = -1 if q % 2 else 1
            first, others = action_matrix(p, 1, d), group_matrix(p, rest, d)
            for vector in permanent_cycles(p.n, p.m + 1, q, p.mode):
                expected = [c * sign for c in others.apply(vector)]
                if first.apply(vector) != expected:
                    failures.append(f"degree {d}")
                    break
        checks.append(_check("eps1 equals the signed product on permanent cycles", failures))

        failures = []
        for l in ls:
            for i in range(2, p.m + 1):
                for j in p.second_indices(i):
                    b = derived_class_element(p, DerivedClass("B", (i, j)))
                    if epsilon_apply(p, GroupElement.generator(l), b) != b_formula(p, l, i, j):
                        failures.append(f"eps{l} on B[{i},{j}]")
        checks.append(_check("B-layer formula", failures))

    failures = []
    for c in _sparse_classes(p):
        x = derived_class_element(p, c)
        for l in ls:
            if epsilon_apply(p, GroupElement.generator(l), x) != x * _sparse_sign(c.kind, c.indices, l):
                failures.append(f"eps{l} on {c}")
    checks.append(_check("sparse C action" if p.n % 2 else "sparse D action", failures))

    return ActionReport(
        n=p.n,
        m=p.m,
        coeff=p.mode.label,
        checks=checks,
        passed=all(c.passed for c in checks),
    )
