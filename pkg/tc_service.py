"""Cup-length, zero-divisor cup-length and the cat/TC_s bounds they give."""

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from functools import reduce
from itertools import product
from typing import Dict, List, Sequence, Tuple

from config import (
    EXACT_TENSOR_BUDGET,
    MAX_TC_M,
    MAX_TC_S,
    SEARCH_NODE_BUDGET,
    SPACE_LABELS,
    TENSOR_BUDGET,
    THREADS,
)
from errors import ParameterError, WitnessError
from exact_linalg import independent_subset
from graded_algebra import (
    Element,
    Monomial,
    Presentation,
    basis_of_degree,
    degrees,
    format_monomial,
    monomial_key,
    monomial_product,
    normalize,
)
from models import TcReport
from presentations import orbit_ring
from utils import log

WITNESS_SEARCH = "witness-search"
EXACT_SMALL = "exact-small"
ZCL_MODES = (WITNESS_SEARCH, EXACT_SMALL)

TensorKey = Tuple[Monomial, ...]
Tensor = Dict[TensorKey, object]


def _independent(p: Presentation, candidates: List[Tuple[Element, List[str]]]) -> List[Tuple[Element, List[str]]]:
    nonzero = [(x, f) for x, f in candidates if x]
    if not nonzero:
        return []
    d = nonzero[0][0].degree
    vectors = [x.to_vector(d) for x, _ in nonzero]
    return [nonzero[i] for i in independent_subset(p.mode, vectors, len(basis_of_degree(p, d)))]


def cup_length(p: Presentation) -> Tuple[int, List[str]]:
    """
    Nilpotency degree of the positive-degree ideal and a nonzero product realizing it.

    Powers of the ideal are spanned degree by degree: each power is the span
    of products of a basis of the previous power with the generators.

    Args:
        p: Presentation

    Returns:
        Tuple of the cup-length and the factors of a witness product
    """
    gens = [(Element.monomial(p, (g,)), [str(g)]) for g in p.generators()]
    level = _independent(p, gens)
    length, witness = 0, []
    while level:
        length += 1
        witness = level[0][1]
        products = [(x * g, f + fg) for x, f in level for g, fg in gens]
        level = _independent(p, products)
    log(f"Cup-length of {p.label} is {length}")
    return length, witness


def tensor_dimension(p: Presentation, s: int) -> int:
    return sum(len(basis_of_degree(p, d)) for d in degrees(p)) ** s


def tensor_multiply(p: Presentation, x: Tensor, y: Tensor) -> Tensor:
    """
    Product in the s-fold tensor power with the Koszul sign.

    (a_1 x ... x a_s)(b_1 x ... x b_s) = (-1)^e a_1 b_1 x ... x a_s b_s with
    e = sum over t < u of |b_t||a_u|.
    """
    K = p.mode.domain
    result: Tensor = defaultdict(lambda: K.zero)
    for a, ca in x.items():
        for b, cb in y.items():
            slots = [monomial_product(p, a[t], b[t]) for t in range(len(a))]
            if not all(slots):
                continue
            sign = 1
            if p.odd_generators:
                exponent = sum(len(b[t]) * len(a[u]) for t in range(len(a)) for u in range(t + 1, len(a)))
                sign = -1 if exponent % 2 else 1
            scale = ca * cb
            for choice in product(*slots):
                c = sign
                for _, value in choice:
                    c *= value
                result[tuple(mono for mono, _ in choice)] += scale * K(c)
    return {key: c for key, c in result.items() if c}


def basic_zero_divisor(p: Presentation, s: int, g, t: int) -> Tensor:
    """g placed in slot t minus g placed in slot t+1, slots counted from 0."""
    K = p.mode.domain

    def placed(slot: int) -> TensorKey:
        return tuple((g,) if u == slot else () for u in range(s))

    return {placed(t): K.one, placed(t + 1): -K.one}


def multiplication_image(p: Presentation, x: Tensor) -> Element:
    """Image of a tensor under the s-fold multiplication map."""
    total = Element.zero(p)
    for key, c in x.items():
        word = tuple(g for mono in key for g in mono)
        total = total + normalize(p, word) * c
    return total


def verify_witness(p: Presentation, factors: Sequence[Tensor]) -> Tensor:
    """
    Re-check a witness: every factor must be a zero-divisor and the product nonzero.

    Raises:
        WitnessError: When a factor multiplies out to a nonzero class or the product vanishes
    """
    for z in factors:
        image = multiplication_image(p, z)
        if image:
            raise WitnessError(f"{format_tensor(p, z)} is not a zero-divisor, it multiplies out to {image}")
    if not factors:
        return {}
    total = reduce(lambda x, y: tensor_multiply(p, x, y), factors)
    if not total:
        raise WitnessError(f"witness product of {len(factors)} zero-divisors vanishes in normal form")
    return total


def format_tensor(p: Presentation, x: Tensor) -> str:
    if not x:
        return "0"
    text = ""
    for key in sorted(x, key=lambda k: tuple(monomial_key(m) for m in k), reverse=True):
        value = p.mode.to_fraction(x[key])
        magnitude = abs(value)
        body = " ⊗ ".join(format_monomial(m) for m in key)
        if magnitude != 1:
            body = f"{magnitude}*({body})"
        if not text:
            text = ("-" if value < 0 else "") + body
        else:
            text += (" - " if value < 0 else " + ") + body
    return text


def _candidates(p: Presentation, s: int) -> List[Tensor]:
    return [basic_zero_divisor(p, s, g, t) for t in range(s - 1) for g in p.generators()]


def _search_branch(p: Presentation, candidates: Sequence[Tensor], first: int, upper: int,
                   node_budget: int) -> Tuple[int, List[int], bool]:
    best: List[int] = []
    nodes = 0
    exhausted = False

    def visit(sequence: List[int], value: Tensor) -> None:
        nonlocal best, nodes, exhausted
        nodes += 1
        if nodes > node_budget:
            exhausted = True
            return
        if len(sequence) > len(best):
            best = list(sequence)
        # no product of zero-divisors goes past the top degree
        if len(best) >= upper:
            return
        for idx in range(sequence[-1], len(candidates)):
            nxt = tensor_multiply(p, value, candidates[idx])
            if not nxt:
                continue
            visit(sequence + [idx], nxt)
            if exhausted or len(best) >= upper:
                return

    visit([first], candidates[first])
    return len(best), best, exhausted


def _report(p: Presentation, s: int, lower: int, witness: List[str], mode: str, partial: bool,
            notes: List[str]) -> TcReport:
    upper = s * p.top_factor_count
    return TcReport(
        space=SPACE_LABELS[p.family].format(k=p.m),
        n=p.n,
        k=p.m,
        s=s,
        lower=lower,
        upper=upper,
        exact=lower if lower == upper and not partial else None,
        witness=witness,
        mode=mode,
        partial=partial,
        notes=notes,
    )


def _witness_search(p: Presentation, s: int, node_budget: int) -> TcReport:
    candidates = _candidates(p, s)
    upper = s * p.top_factor_count
    if not candidates:
        return _report(p, s, 0, [], WITNESS_SEARCH, False, [])
    with ThreadPoolExecutor(max_workers=THREADS) as executor:
        results = list(executor.map(
            lambda first: _search_branch(p, candidates, first, upper, node_budget), range(len(candidates))))
    # first branch reaching the maximum wins, whatever the scheduling
    length, sequence, _ = max(results, key=lambda r: r[0])
    partial = any(r[2] for r in results) and length < upper
    notes = [f"search stopped after {node_budget} nodes in some branches"] if partial else []
    verify_witness(p, [candidates[idx] for idx in sequence])
    witness = [format_tensor(p, candidates[idx]) for idx in sequence]
    return _report(p, s, length, witness, WITNESS_SEARCH, partial, notes)


def _exact_small(p: Presentation, s: int) -> TcReport:
    candidates = _candidates(p, s)
    level: List[Tuple[Tensor, List[int]]] = [(z, [idx]) for idx, z in enumerate(candidates)]
    length, witness_factors = 0, []
    while level:
        keys = sorted({key for x, _ in level for key in x})
        index = {key: i for i, key in enumerate(keys)}
        vectors = []
        for x, _ in level:
            vector = [p.mode.zero] * len(keys)
            for key, c in x.items():
                vector[index[key]] = c
            vectors.append(vector)
        level = [level[i] for i in independent_subset(p.mode, vectors, len(keys))]
        if not level:
            break
        length += 1
        witness_factors = level[0][1]
        level = [
            (prod, factors + [idx])
            for x, factors in level
            for idx, z in enumerate(candidates)
            for prod in (tensor_multiply(p, x, z),)
            if prod
        ]
    verify_witness(p, [candidates[idx] for idx in witness_factors])
    witness = [format_tensor(p, candidates[idx]) for idx in witness_factors]
    report = _report(p, s, length, witness, EXACT_SMALL, False, [])
    report.exact = length
    return report


def zcl(p: Presentation, s: int, mode: str = WITNESS_SEARCH, budget: int = TENSOR_BUDGET,
        node_budget: int = SEARCH_NODE_BUDGET) -> TcReport:
    """
    s-th zero-divisor cup-length of a ring.

    witness-search looks for long nonzero products of basic zero-divisors
    g_(t) - g_(t+1) by depth-first search and reports a lower bound.
    exact-small spans every power of the zero-divisor ideal and certifies the
    value.

    Args:
        p: Presentation
        s: Number of tensor factors, at least 2
        mode: ``witness-search`` or ``exact-small``
        budget: Largest tensor-power dimension to work in
        node_budget: Search nodes per branch

    Returns:
        Report; ``partial`` is set when a budget cut the computation short
    """
    if s < 2:
        raise ParameterError(f"zcl needs s >= 2, got {s}")
    if mode not in ZCL_MODES:
        raise ParameterError(f"unknown zcl mode '{mode}', expected one of {', '.join(ZCL_MODES)}")
    limit = min(budget, EXACT_TENSOR_BUDGET) if mode == EXACT_SMALL else budget
    size = tensor_dimension(p, s)
    if size > limit:
        note = f"tensor power of dimension {size} exceeds the budget {limit}"
        log(note)
        return _report(p, s, 0, [], mode, True, [note])
    log(f"Computing zcl_{s} of {p.label} by {mode}")
    if mode == EXACT_SMALL:
        return _exact_small(p, s)
    return _witness_search(p, s, node_budget)


def cat_tc_bounds(n: int, k: int, s: int, mode: str = WITNESS_SEARCH, budget: int = TENSOR_BUDGET) -> TcReport:
    """
    Bounds on cat (s = 1) or TC_s of the orbit configuration space of k points.

    The upper bound is sk. For s = 1 the cup-length gives k. For s >= 2 the
    lower bound is the larger of the zcl search and sk-1+Odd(n); for n odd
    and n > 2 the value is sk. exact-small certifies the value in the
    remaining cases, n = 2 included.

    Args:
        n: Sphere dimension
        k: Point count
        s: Sequential parameter
        mode: zcl mode for s >= 2
        budget: Largest tensor-power dimension

    Returns:
        Report with lower, upper and, when determined, exact values
    """
    if n < 2:
        raise ParameterError(f"n must be at least 2, got {n}")
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    if s < 1:
        raise ParameterError(f"s must be at least 1, got {s}")
    p = orbit_ring(n, k)
    upper = s * k
    notes = []
    if n == 2:
        notes.append("n = 2: values are computed evidence, not proven bounds")
    if s == 1:
        length, factors = cup_length(p)
        return _report(p, 1, length, factors, "cup-length", False, notes)

    floor = s * k - 1 + n % 2
    if s > MAX_TC_S or k > MAX_TC_M:
        notes.append(f"zcl search skipped beyond s <= {MAX_TC_S}, k <= {MAX_TC_M}")
        report = _report(p, s, floor, [], mode, False, notes)
    else:
        report = zcl(p, s, mode, budget)
        report.notes = notes + report.notes
        certified = report.exact
        report.lower = max(report.lower, floor)
        report.exact = None
        if n % 2 and n > 2:
            report.exact = upper
        elif mode == EXACT_SMALL and certified is not None and not report.partial:
            report.exact = max(certified, floor)
    if report.lower == upper:
        report.exact = upper
    return report
