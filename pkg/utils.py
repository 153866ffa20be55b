"""Utility functions for the cohomology engine."""

import sys
from typing import Dict, Iterable, List, Sequence

import pandas as pd
from sympy import Poly, Symbol

from config import VERBOSE

_T = Symbol("t")


def log(message: str) -> None:
    """
    Print a progress message to stderr when verbose output is enabled.

    Args:
        message: Message to print
    """
    if VERBOSE:
        print(f"[confring] {message}", file=sys.stderr)


def product_coefficients(factors: Iterable[Sequence[int]]) -> List[int]:
    """
    Multiply polynomials given by ascending coefficient lists.

    Args:
        factors: Coefficient lists, constant term first

    Returns:
        Coefficients of the product, constant term first
    """
    product = Poly(1, _T)
    for coefficients in factors:
        product *= Poly(list(reversed(list(coefficients))), _T)
    return [int(c) for c in reversed(product.all_coeffs())]


def elementary_symmetric(values: Sequence[int], j: int) -> int:
    """
    Value of the j-th elementary symmetric polynomial at the given numbers.

    Args:
        values: Arguments of the polynomial
        j: Degree

    Returns:
        e_j(values), 0 when j exceeds the number of values
    """
    if j < 0:
        return 0
    coefficients = product_coefficients([1, v] for v in values)
    return coefficients[j] if j < len(coefficients) else 0


def spread_degrees(coefficients: Sequence[int], step: int, shift: int = 0) -> Dict[int, int]:
    """Place coefficient q at degree q*step + shift, dropping zeros."""
    return {q * step + shift: c for q, c in enumerate(coefficients) if c}


def render_table(rows: List[dict], columns: List[str]) -> str:
    """
    Render report rows as a plain-text table.

    Args:
        rows: One dictionary per row
        columns: Column order

    Returns:
        Table text
    """
    if not rows:
        return "(empty)"
    df = pd.DataFrame(rows, columns=columns)
    return df.to_string(index=False)
