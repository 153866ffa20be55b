"""Exact linear algebra over Q and prime fields, on top of sympy's DomainMatrix."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from config import COEFFICIENT_LABELS
from errors import ModeMismatchError, NonInvertibleTwoError, ParameterError

Vector = List


@lru_cache(maxsize=None)
def _field(characteristic: int):
    # one domain instance per characteristic so elements always interoperate
    if characteristic == 0:
        return QQ
    return GF(characteristic, symmetric=False)


@dataclass(frozen=True)
class CoefficientMode:
    """Coefficient mode of a computation.

    Characteristic 0 is Q. ``integral`` marks the Z mode: ranks are computed
    over Q and torsion is tracked separately by the table builders.
    """

    characteristic: int = 0
    integral: bool = False

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise ParameterError(f"characteristic {self.characteristic} is not prime")
        if self.integral and self.characteristic != 0:
            raise ParameterError("integral mode has characteristic 0")

    @classmethod
    def from_label(cls, label: str) -> "CoefficientMode":
        """
        Build a mode from a command-line label such as ``q``, ``f3`` or ``z``.

        Args:
            label: Mode label, case-insensitive

        Returns:
            The coefficient mode
        """
        key = label.strip().lower()
        if key not in COEFFICIENT_LABELS:
            raise ParameterError(f"unknown coefficient mode '{label}'")
        if key == "q":
            return cls(0)
        if key == "z":
            return cls(0, integral=True)
        return cls(int(key[1:]))

    @property
    def label(self) -> str:
        if self.integral:
            return "Z"
        if self.characteristic == 0:
            return "Q"
        return f"F{self.characteristic}"

    @property
    def domain(self):
        return _field(self.characteristic)

    @property
    def has_invertible_two(self) -> bool:
        return self.characteristic != 2 and not self.integral

    def require_invertible_two(self, operation: str) -> None:
        if not self.has_invertible_two:
            raise NonInvertibleTwoError(f"{operation} needs 2 invertible; mode {self.label} does not allow it")

    def scalar(self, value):
        """
        Convert an int, Fraction or domain element to a scalar of this mode.

        Args:
            value: Value to convert

        Returns:
            Domain element
        """
        K = self.domain
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return K(value)
        if isinstance(value, Fraction):
            if self.characteristic and value.denominator % self.characteristic == 0:
                raise ParameterError(f"{value} has no value in {self.label}")
            return K.quo(K(value.numerator), K(value.denominator))
        if K.of_type(value):
            return value
        raise ParameterError(f"cannot read {value!r} as a scalar of {self.label}")

    def to_fraction(self, a) -> Fraction:
        value = self.domain.to_sympy(a)
        if self.characteristic:
            return Fraction(int(value) % self.characteristic)
        return Fraction(int(value.p), int(value.q))

    def format_scalar(self, a) -> str:
        value = self.to_fraction(a)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one


Q = CoefficientMode(0)


class Matrix:
    """A matrix of scalars of one coefficient mode."""

    def __init__(self, mode: CoefficientMode, rep: DomainMatrix):
        self.mode = mode
        # sparse everywhere: DomainMatrix refuses to mix formats
        self.rep = rep.to_sparse()

    @classmethod
    def zeros(cls, mode: CoefficientMode, rows: int, cols: int) -> "Matrix":
        return cls(mode, DomainMatrix({}, (rows, cols), mode.domain))

    @classmethod
    def identity(cls, mode: CoefficientMode, size: int) -> "Matrix":
        K = mode.domain
        return cls(mode, DomainMatrix({i: {i: K.one} for i in range(size)}, (size, size), K))

    @classmethod
    def from_rows(cls, mode: CoefficientMode, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        """
        Build a matrix from a list of rows of ints, Fractions or domain scalars.

        Args:
            mode: Coefficient mode of every entry
            rows: Row data
            cols: Column count, required when there are no rows

        Returns:
            The matrix
        """
        if cols is None:
            if not rows:
                raise ParameterError("column count is required for a matrix without rows")
            cols = len(rows[0])
        dod: Dict[int, Dict[int, object]] = {}
        for r, row in enumerate(rows):
            if len(row) != cols:
                raise ParameterError(f"row {r} has {len(row)} entries, expected {cols}")
            entries = {}
            for c, value in enumerate(row):
                scalar = mode.scalar(value)
                if scalar:
                    entries[c] = scalar
            if entries:
                dod[r] = entries
        return cls(mode, DomainMatrix(dod, (len(rows), cols), mode.domain))

    @classmethod
    def from_columns(cls, mode: CoefficientMode, columns: Sequence[Sequence], rows: int) -> "Matrix":
        return cls.from_rows(mode, columns, cols=rows).transpose()

    @property
    def rows(self) -> int:
        return self.rep.shape[0]

    @property
    def cols(self) -> int:
        return self.rep.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rep.shape

    def entries(self) -> List[List]:
        if self.rows == 0:
            return []
        return self.rep.to_list()

    def __getitem__(self, key):
        r, c = key
        return self.rep.rep.getitem(r, c)

    def transpose(self) -> "Matrix":
        return Matrix(self.mode, self.rep.transpose())

    def _check(self, other: "Matrix") -> None:
        if self.mode != other.mode:
            raise ModeMismatchError(f"cannot combine {self.mode.label} and {other.mode.label} matrices")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.mode, self.rep.matmul(other.rep))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.mode, self.rep + other.rep)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.mode, self.rep - other.rep)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.mode == other.mode and self.shape == other.shape and self.rep == other.rep

    def __repr__(self) -> str:
        return f"Matrix({self.mode.label}, {self.rows}x{self.cols})"

    def apply(self, vector: Sequence) -> Vector:
        if len(vector) != self.cols:
            raise ParameterError(f"vector of length {len(vector)} for a matrix with {self.cols} columns")
        column = Matrix.from_columns(self.mode, [list(vector)], self.cols)
        product = self @ column
        return [row[0] for row in product.entries()]


def stack(matrices: Sequence[Matrix]) -> Matrix:
    """
    Stack matrices vertically.

    Args:
        matrices: Matrices with equal column counts and equal modes

    Returns:
        The stacked matrix
    """
    if not matrices:
        raise ParameterError("nothing to stack")
    first = matrices[0]
    for other in matrices[1:]:
        first._check(other)
        if other.cols != first.cols:
            raise ParameterError(f"cannot stack {first.cols} and {other.cols} columns")
    nonempty = [m.rep for m in matrices if m.rows]
    if not nonempty:
        return Matrix.zeros(first.mode, 0, first.cols)
    return Matrix(first.mode, nonempty[0].vstack(*nonempty[1:]))


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...], int]:
    """
    Reduced row echelon form, pivot columns and rank.

    Args:
        m: Matrix to reduce

    Returns:
        Tuple of the reduced matrix, its pivot columns and the rank
    """
    if m.rows == 0 or m.cols == 0:
        return m, (), 0
    reduced, pivots = m.rep.rref()
    return Matrix(m.mode, reduced), tuple(pivots), len(pivots)


def kernel_basis(m: Matrix) -> List[Vector]:
    """
    Basis of the right kernel of a matrix.

    Args:
        m: Matrix

    Returns:
        List of kernel vectors, each of length ``m.cols``
    """
    K = m.mode.domain
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [[K.one if r == c else K.zero for c in range(m.cols)] for r in range(m.cols)]
    basis = m.rep.nullspace()
    if basis.shape[0] == 0:
        return []
    return basis.to_list()


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.rep.rank()


def rank_of_vectors(mode: CoefficientMode, vectors: Sequence[Sequence], length: int) -> int:
    if not vectors:
        return 0
    return rank(Matrix.from_rows(mode, vectors, cols=length))


def independent_subset(mode: CoefficientMode, vectors: Sequence[Sequence], length: int) -> List[int]:
    """
    Indices of a maximal linearly independent subset, greedy in list order.

    Args:
        mode: Coefficient mode
        vectors: Candidate vectors
        length: Common vector length

    Returns:
        Indices into ``vectors``
    """
    if not vectors or length == 0:
        return []
    columns = Matrix.from_columns(mode, vectors, length)
    _, pivots, _ = rref(columns)
    return list(pivots)
