"""Graded-commutative presentations, normal forms and elements.

Two families of rings are modelled. The orbit ring has generators
``A[i,j]`` with 1 <= i <= m and |j| < i; the Arnold ring has generators
``A'[i,j]`` with 1 <= j < i <= k. All generators sit in degree n-1 and a
monomial is a product with strictly increasing first indices, which is the
additive basis of both rings.
"""

import random
import re
from collections import defaultdict
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from exact_linalg import Q, CoefficientMode
from errors import ModeMismatchError, ParameterError, ParseError
from models import AssociativityReport
from utils import log, product_coefficients

ORBIT = "orbit"
ARNOLD = "arnold"
FAMILIES = (ORBIT, ARNOLD)


class GeneratorId(NamedTuple):
    """A degree n-1 generator of the orbit or Arnold ring."""
    family: str
    i: int
    j: int

    def __str__(self) -> str:
        prefix = "A'" if self.family == ARNOLD else "A"
        return f"{prefix}[{self.i},{self.j}]"


Monomial = Tuple[GeneratorId, ...]


def j_rank(j: int) -> int:
    """Position of j in the order 0, 1, -1, 2, -2, ..."""
    return 2 * j - 1 if j > 0 else -2 * j


def monomial_key(mono: Monomial) -> Tuple:
    return (len(mono), tuple((g.i, j_rank(g.j)) for g in mono))


def format_monomial(mono: Monomial) -> str:
    return "*".join(str(g) for g in mono) or "1"


@dataclass(frozen=True)
class Presentation:
    """A ring presentation: family, sphere dimension n, point count m, coefficients.

    For the Arnold family ``m`` is the number of points k.
    """

    family: str
    n: int
    m: int
    mode: CoefficientMode = Q

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family '{self.family}'")
        if self.n < 2:
            raise ParameterError(f"n must be at least 2, got {self.n}")
        if self.m < 0:
            raise ParameterError(f"point count must be nonnegative, got {self.m}")

    @property
    def generator_degree(self) -> int:
        return self.n - 1

    @property
    def odd_generators(self) -> bool:
        """Generators anticommute exactly when n is even."""
        return self.generator_degree % 2 == 1

    @property
    def first_indices(self) -> range:
        if self.family == ORBIT:
            return range(1, self.m + 1)
        return range(2, self.m + 1)

    def second_indices(self, i: int) -> List[int]:
        if self.family == ARNOLD:
            return list(range(1, i))
        values = [0]
        for j in range(1, i):
            values.extend((j, -j))
        return values

    @property
    def top_factor_count(self) -> int:
        return len(self.first_indices)

    @property
    def top_degree(self) -> int:
        return self.top_factor_count * self.generator_degree

    def generator(self, i: int, j: int) -> GeneratorId:
        """
        Validated generator of this presentation.

        Args:
            i: First index
            j: Second index

        Returns:
            The generator id
        """
        if i not in self.first_indices or j not in self.second_indices(i):
            name = "A'" if self.family == ARNOLD else "A"
            raise ParameterError(f"{name}[{i},{j}] is not a generator of {self.label}")
        return GeneratorId(self.family, i, j)

    def generators(self) -> List[GeneratorId]:
        return [GeneratorId(self.family, i, j) for i in self.first_indices for j in self.second_indices(i)]

    def with_mode(self, mode: CoefficientMode) -> "Presentation":
        return replace(self, mode=mode)

    @property
    def label(self) -> str:
        points = "m" if self.family == ORBIT else "k"
        return f"{self.family}(n={self.n}, {points}={self.m}, {self.mode.label})"


# ---------------------------------------------------------------------------
# Normal form
# ---------------------------------------------------------------------------

def _expand(left: Sequence[Tuple[GeneratorId, int]], right: Sequence[Tuple[GeneratorId, int]]):
    return tuple(((a, b), ca * cb) for a, ca in left for b, cb in right)


def _orbit_canonical(sign_n: int, r: int, a: int, b: int):
    """Right-hand side of the orbit relation for A[r,a]*A[r,b] in canonical order."""
    def g(i, j):
        return GeneratorId(ORBIT, i, j)

    if a == 0:
        i = abs(b)
        if b > 0:
            return _expand([(g(i, 0), 1)], [(g(r, i), 1), (g(r, 0), -1)])
        return _expand([(g(i, 0), sign_n)], [(g(r, -i), 1), (g(r, 0), -1)])
    if a == -b:
        i = a
        return _expand([(g(i, 0), sign_n)], [(g(r, -i), 1), (g(r, i), -1)])
    if a > 0 and b > 0:
        j, i = a, b
        return _expand([(g(i, j), 1)], [(g(r, i), 1), (g(r, j), -1)])
    if a > 0 and a < -b:
        j, i = a, -b
        left = [(g(j, 0), sign_n), (g(i, 0), sign_n), (g(i, -j), -sign_n)]
        return _expand(left, [(g(r, -i), 1), (g(r, j), -1)])
    if a < 0 and b < 0:
        j, i = -a, -b
        left = [(g(i, 0), sign_n), (g(i, j), -sign_n), (g(j, 0), 1)]
        return _expand(left, [(g(r, -i), 1), (g(r, -j), -1)])
    i, j = a, -b
    return _expand([(g(i, -j), sign_n)], [(g(r, -j), 1), (g(r, i), -1)])


def _orbit_canonical_order(a: int, b: int) -> Tuple[int, int]:
    if a == 0 or b == 0:
        return (0, a or b)
    if a == -b:
        return (abs(a), -abs(a))
    small, big = (a, b) if abs(a) < abs(b) else (b, a)
    j, i = abs(small), abs(big)
    if small > 0 and big > 0:
        return (j, i)
    if small > 0:
        return (j, -i)
    if big > 0:
        return (i, -j)
    return (-j, -i)


def _pair_rewrite(family: str, odd: bool, x: GeneratorId, y: GeneratorId):
    """Rewrite a product of two distinct generators sharing the first index r."""
    swap = -1 if odd else 1
    r = x.i
    if family == ARNOLD:
        lower, upper = sorted((x.j, y.j))
        factor = 1 if x.j == lower else swap
        def g(i, j):
            return GeneratorId(ARNOLD, i, j)
        terms = _expand([(g(upper, lower), 1)], [(g(r, upper), 1), (g(r, lower), -1)])
        return tuple((word, factor * c) for word, c in terms)
    # (-1)^n is +1 exactly when the generators have odd degree
    sign_n = 1 if odd else -1
    canonical = _orbit_canonical_order(x.j, y.j)
    factor = 1 if (x.j, y.j) == canonical else swap
    terms = _orbit_canonical(sign_n, r, *canonical)
    return tuple((word, factor * c) for word, c in terms)


def _sort_by_first_index(word: Monomial, odd: bool) -> Tuple[int, Monomial]:
    items = list(word)
    swaps = 0
    for idx in range(1, len(items)):
        current = items[idx]
        pos = idx
        while pos > 0 and items[pos - 1].i > current.i:
            items[pos] = items[pos - 1]
            pos -= 1
            swaps += 1
        items[pos] = current
    sign = -1 if odd and swaps % 2 else 1
    return sign, tuple(items)


@lru_cache(maxsize=None)
def _word_normal_form(family: str, odd: bool, word: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    """Integral normal form of a word; depends only on family and parity."""
    if len(set(word)) < len(word):
        return ()
    sign, ordered = _sort_by_first_index(word, odd)
    position = next((p for p in range(len(ordered) - 1) if ordered[p].i == ordered[p + 1].i), None)
    if position is None:
        return ((ordered, sign),)
    head, tail = ordered[:position], ordered[position + 2:]
    total: Dict[Monomial, int] = defaultdict(int)
    for rewritten, coefficient in _pair_rewrite(family, odd, ordered[position], ordered[position + 1]):
        for mono, c in _word_normal_form(family, odd, head + rewritten + tail):
            total[mono] += sign * coefficient * c
    return tuple((mono, c) for mono, c in total.items() if c)


def normalize(p: Presentation, word: Sequence[GeneratorId]) -> "Element":
    """
    Normal form of a product of generators.

    Args:
        p: Presentation
        word: Generators in multiplication order

    Returns:
        The product as a combination of basis monomials
    """
    for g in word:
        if g.family != p.family:
            raise ParameterError(f"{g} does not belong to {p.label}")
        p.generator(g.i, g.j)
    terms = {mono: p.mode.scalar(c) for mono, c in _word_normal_form(p.family, p.odd_generators, tuple(word))}
    return Element(p, terms)


def monomial_product(p: Presentation, left: Monomial, right: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    """Integral normal form of the product of two basis monomials."""
    return _word_normal_form(p.family, p.odd_generators, tuple(left) + tuple(right))


def reduce_collision(p: Presentation, r: int, a: int, b: int) -> "Element":
    """
    Normal form of A[r,a]*A[r,b].

    Args:
        p: Presentation
        r: Shared first index
        a: Second index of the left factor
        b: Second index of the right factor

    Returns:
        An element whose monomials carry at most one factor with first index r
    """
    return normalize(p, (p.generator(r, a), p.generator(r, b)))


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

class Element:
    """A finite combination of basis monomials over a presentation's coefficients."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: Presentation, terms: Optional[Dict[Monomial, object]] = None):
        self.presentation = presentation
        self.terms = {mono: c for mono, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, p: Presentation) -> "Element":
        return cls(p)

    @classmethod
    def one(cls, p: Presentation) -> "Element":
        return cls(p, {(): p.mode.one})

    @classmethod
    def scalar(cls, p: Presentation, value) -> "Element":
        return cls(p, {(): p.mode.scalar(value)})

    @classmethod
    def generator(cls, p: Presentation, i: int, j: int) -> "Element":
        return cls(p, {(p.generator(i, j),): p.mode.one})

    @classmethod
    def monomial(cls, p: Presentation, mono: Monomial, coefficient=1) -> "Element":
        return cls(p, {tuple(mono): p.mode.scalar(coefficient)})

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.presentation != self.presentation:
                if other.presentation.mode != self.presentation.mode:
                    raise ModeMismatchError(
                        f"cannot combine {self.presentation.mode.label} and {other.presentation.mode.label} elements")
                raise ParameterError(f"cannot combine {self.presentation.label} and {other.presentation.label}")
            return other
        return Element.scalar(self.presentation, other)

    def __add__(self, other) -> "Element":
        other = self._coerce(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, self.presentation.mode.zero) + c
        return Element(self.presentation, terms)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(self.presentation, {mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other) -> "Element":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Element":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Element":
        if isinstance(other, Element):
            return multiply(self.presentation, self, self._coerce(other))
        factor = self.presentation.mode.scalar(other)
        return Element(self.presentation, {mono: c * factor for mono, c in self.terms.items()})

    def __rmul__(self, other) -> "Element":
        if isinstance(other, Element):
            return multiply(self.presentation, self._coerce(other), self)
        return self * other

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.presentation == other.presentation and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Element.scalar(self.presentation, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.presentation, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({format_element(self)!r})"

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), self.presentation.mode.zero)

    def is_homogeneous(self) -> bool:
        return len({len(mono) for mono in self.terms}) <= 1

    @property
    def degree(self) -> int:
        lengths = {len(mono) for mono in self.terms}
        if len(lengths) > 1:
            raise ParameterError(f"{self} is not homogeneous")
        return lengths.pop() * self.presentation.generator_degree if lengths else 0

    def components(self) -> Dict[int, "Element"]:
        parts: Dict[int, Dict[Monomial, object]] = defaultdict(dict)
        for mono, c in self.terms.items():
            parts[len(mono) * self.presentation.generator_degree][mono] = c
        return {d: Element(self.presentation, terms) for d, terms in sorted(parts.items())}

    def to_vector(self, degree: int) -> List:
        """Coordinates in ``basis_of_degree(p, degree)``; the element must live in that degree."""
        p = self.presentation
        index = basis_index(p, degree)
        vector = [p.mode.zero] * len(index)
        for mono, c in self.terms.items():
            if mono not in index:
                raise ParameterError(f"{format_monomial(mono)} is not in degree {degree}")
            vector[index[mono]] = c
        return vector

    @classmethod
    def from_vector(cls, p: Presentation, degree: int, vector: Sequence) -> "Element":
        basis = basis_of_degree(p, degree)
        return cls(p, {mono: p.mode.scalar(c) for mono, c in zip(basis, vector)})


def multiply(p: Presentation, x: Element, y: Element) -> Element:
    """
    Product of two elements.

    Args:
        p: Presentation both elements belong to
        x: Left factor
        y: Right factor

    Returns:
        The normal form of x*y
    """
    if x.presentation != p or y.presentation != p:
        raise ModeMismatchError(f"factors do not both belong to {p.label}")
    K = p.mode.domain
    terms: Dict[Monomial, object] = defaultdict(lambda: K.zero)
    for left, cl in x.terms.items():
        for right, cr in y.terms.items():
            scale = cl * cr
            for mono, c in monomial_product(p, left, right):
                terms[mono] += scale * K(c)
    return Element(p, terms)


def format_element(x: Element) -> str:
    """
    Text form of an element, leading monomial first.

    Args:
        x: Element

    Returns:
        Text following the element grammar
    """
    if not x.terms:
        return "0"
    mode = x.presentation.mode
    pieces = []
    for mono in sorted(x.terms, key=monomial_key, reverse=True):
        value = mode.to_fraction(x.terms[mono])
        negative = value < 0
        magnitude = -value if negative else value
        scalar = str(magnitude.numerator) if magnitude.denominator == 1 else f"{magnitude.numerator}/{magnitude.denominator}"
        if not mono:
            body = scalar
        elif magnitude == 1:
            body = format_monomial(mono)
        else:
            body = f"{scalar}*{format_monomial(mono)}"
        pieces.append((negative, body))
    first_negative, first_body = pieces[0]
    text = ("-" if first_negative else "") + first_body
    for negative, body in pieces[1:]:
        text += (" - " if negative else " + ") + body
    return text


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<name>[A-Z]'?[+\-0]?(?=\s*\[))|(?P<number>\d+)|(?P<ident>[a-z]\w*)|(?P<symbol>[-+*/()\[\],])"
)

AtomResolver = Callable[[Presentation, str, Tuple[int, ...]], Element]


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((match.lastgroup, match.group(), pos))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


def generator_atom(p: Presentation, name: str, indices: Tuple[int, ...]) -> Element:
    """Resolve ``A[i,j]`` and ``A'[i,j]`` atoms."""
    family = {"A": ORBIT, "A'": ARNOLD}.get(name)
    if family is None:
        raise ParameterError(f"unknown class '{name}'")
    if family != p.family:
        raise ParameterError(f"{name}[...] does not belong to {p.label}")
    if len(indices) != 2:
        raise ParameterError(f"{name} takes two indices")
    return Element.generator(p, *indices)


class _Parser:
    """Recursive-descent parser for sums of products of atoms, numbers and parentheses."""

    def __init__(self, p: Presentation, text: str, resolver: AtomResolver, bindings: Dict[str, int]):
        self.p = p
        self.tokens = _tokenize(text)
        self.index = 0
        self.resolver = resolver
        self.bindings = bindings

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def take(self, value: Optional[str] = None) -> Tuple[str, str, int]:
        token = self.tokens[self.index]
        if value is not None and token[1] != value:
            raise ParseError(f"expected '{value}', found '{token[1] or 'end of input'}'", token[2])
        self.index += 1
        return token

    def parse(self) -> Element:
        result = self.expression()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected '{value}'", pos)
        return result

    def expression(self) -> Element:
        negative = False
        if self.peek()[1] in ("+", "-"):
            negative = self.take()[1] == "-"
        total = self.product()
        if negative:
            total = -total
        while self.peek()[1] in ("+", "-"):
            sign = self.take()[1]
            term = self.product()
            total = total + term if sign == "+" else total - term
        return total

    def product(self) -> Element:
        result = self.factor()
        while self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Element:
        kind, value, pos = self.peek()
        if kind == "number":
            self.take()
            numerator = int(value)
            if self.peek()[1] == "/":
                self.take()
                token = self.take()
                if token[0] != "number" or int(token[1]) == 0:
                    raise ParseError("expected a nonzero denominator", token[2])
                return Element.scalar(self.p, Fraction(numerator, int(token[1])))
            return Element.scalar(self.p, numerator)
        if value == "(":
            self.take()
            inner = self.expression()
            self.take(")")
            return inner
        if kind == "name":
            self.take()
            self.take("[")
            indices = [self.index_value()]
            while self.peek()[1] == ",":
                self.take()
                indices.append(self.index_value())
            self.take("]")
            try:
                return self.resolver(self.p, value, tuple(indices))
            except ParameterError as error:
                raise ParseError(str(error), pos) from error
        raise ParseError(f"unexpected '{value or 'end of input'}'", pos)

    def index_value(self) -> int:
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, value, pos = self.take()
        if kind == "number":
            return sign * int(value)
        if kind == "ident":
            if value not in self.bindings:
                raise ParseError(f"unbound index '{value}'", pos)
            return sign * self.bindings[value]
        raise ParseError(f"expected an index, found '{value or 'end of input'}'", pos)


def parse_element(p: Presentation, text: str, resolver: AtomResolver = generator_atom,
                  bindings: Optional[Dict[str, int]] = None) -> Element:
    """
    Parse element text into its normal form.

    Args:
        p: Presentation the element lives in
        text: Element text, e.g. ``"A[2,1] - 2*A[1,0]*A[2,0]"``
        resolver: Maps a class name and its indices to an element
        bindings: Values of index variables

    Returns:
        The element

    Raises:
        ParseError: On grammar violations, with the offending position
    """
    return _Parser(p, text, resolver, dict(bindings or {})).parse()


# ---------------------------------------------------------------------------
# Bases and dimensions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def basis_of_degree(p: Presentation, d: int) -> Tuple[Monomial, ...]:
    """
    Basis monomials of degree d, ordered by first indices then j-order.

    Args:
        p: Presentation
        d: Degree

    Returns:
        Tuple of monomials, empty when d is not a multiple of n-1
    """
    if d < 0 or d % p.generator_degree:
        return ()
    count = d // p.generator_degree
    monomials = []
    for firsts in combinations(p.first_indices, count):
        choices = [[GeneratorId(p.family, i, j) for j in p.second_indices(i)] for i in firsts]
        monomials.extend(tuple(choice) for choice in product(*choices))
    return tuple(monomials)


@lru_cache(maxsize=None)
def basis_index(p: Presentation, d: int) -> Dict[Monomial, int]:
    return {mono: idx for idx, mono in enumerate(basis_of_degree(p, d))}


def degrees(p: Presentation) -> List[int]:
    return [q * p.generator_degree for q in range(p.top_factor_count + 1)]


def poincare_polynomial(p: Presentation) -> List[int]:
    """
    Betti numbers by factor count, from the closed-form product.

    Args:
        p: Presentation

    Returns:
        Coefficient list [b_0, b_1, ...] where b_q lives in degree q(n-1)
    """
    if p.family == ORBIT:
        factors = [[1, 2 * i - 1] for i in range(1, p.m + 1)]
    else:
        factors = [[1, i] for i in range(1, p.m)]
    return product_coefficients(factors)


# ---------------------------------------------------------------------------
# Consistency harness
# ---------------------------------------------------------------------------

def random_element(p: Presentation, rng: random.Random, max_terms: int = 3) -> Element:
    terms: Dict[Monomial, int] = defaultdict(int)
    for _ in range(rng.randint(1, max_terms)):
        q = rng.randint(0, p.top_factor_count)
        basis = basis_of_degree(p, q * p.generator_degree)
        if basis:
            terms[rng.choice(basis)] += rng.randint(-2, 2)
    return Element(p, {mono: p.mode.scalar(c) for mono, c in terms.items()})


def verify_associativity(p: Presentation, trials: int, seed: int) -> AssociativityReport:
    """
    Check associativity on random triples and graded commutativity on generator pairs.

    Args:
        p: Presentation
        trials: Number of random triples
        seed: Seed of the sampler

    Returns:
        Report with the first counterexample found, if any
    """
    if trials < 1:
        raise ParameterError(f"trials must be positive, got {trials}")
    log(f"Checking associativity of {p.label} on {trials} triples")
    rng = random.Random(seed)
    counterexample = None
    for _ in range(trials):
        x, y, z = (random_element(p, rng) for _ in range(3))
        if (x * y) * z != x * (y * z):
            counterexample = [str(x), str(y), str(z)]
            break
    gens = p.generators()
    swap = -1 if p.odd_generators else 1
    pairs = 0
    if counterexample is None:
        for a, b in combinations(gens, 2):
            pairs += 1
            x, y = Element.monomial(p, (a,)), Element.monomial(p, (b,))
            if x * y != (y * x) * swap:
                counterexample = [str(x), str(y)]
                break
    return AssociativityReport(
        family=p.family,
        n=p.n,
        m=p.m,
        trials=trials,
        commutativity_pairs=pairs,
        passed=counterexample is None,
        counterexample=counterexample,
    )
