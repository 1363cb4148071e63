"""
Novikov Ring Schemas
Truncated elements of the Novikov ring over Q (rational exponents) and
matrices over it.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union
import math

import sympy
from pydantic import BaseModel, ConfigDict

from common.errors import NovikovError, ShapeMismatchError
from common.rationals import format_rational, from_sympy, parse_optional_rational, parse_rational

Scalar = Union[int, Fraction]
Term = Tuple[Fraction, Fraction]


def _min_trunc(*values: Optional[Fraction]) -> Optional[Fraction]:
    finite = [v for v in values if v is not None]
    return min(finite) if finite else None


def _plus(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None or b is None:
        return None
    return a + b


@dataclass(frozen=True, eq=False)
class NovikovElement:
    """
    A finite sum of coefficient * T^exponent known up to O(T^truncation).

    truncation None means the element is exact. Terms are kept sorted by
    exponent with nonzero coefficients and exponents below the truncation.
    Equality compares terms below the smaller of the two truncations.
    """
    terms: Tuple[Term, ...] = ()
    truncation: Optional[Fraction] = None

    def __post_init__(self):
        truncation = parse_optional_rational(self.truncation)
        merged: Dict[Fraction, Fraction] = {}
        for exponent, coeff in self.terms:
            exponent = parse_rational(exponent)
            merged[exponent] = merged.get(exponent, Fraction(0)) + parse_rational(coeff)
        terms = tuple(
            (e, c) for e, c in sorted(merged.items())
            if c != 0 and (truncation is None or e < truncation)
        )
        object.__setattr__(self, 'terms', terms)
        object.__setattr__(self, 'truncation', truncation)

    @classmethod
    def zero(cls, truncation: Any = None) -> 'NovikovElement':
        return cls((), truncation)

    @classmethod
    def constant(cls, value: Scalar, truncation: Any = None) -> 'NovikovElement':
        return cls(((Fraction(0), parse_rational(value)),), truncation)

    @classmethod
    def monomial(cls, coeff: Scalar, exponent: Any, truncation: Any = None) -> 'NovikovElement':
        return cls(((parse_rational(exponent), parse_rational(coeff)),), truncation)

    @classmethod
    def coerce(cls, value: Any) -> 'NovikovElement':
        if isinstance(value, NovikovElement):
            return value
        return cls.constant(parse_rational(value))

    @property
    def is_zero(self) -> bool:
        """No terms below the truncation (the element may still be nonzero beyond it)."""
        return not self.terms

    @property
    def is_exact(self) -> bool:
        return self.truncation is None

    @property
    def is_lambda0(self) -> bool:
        return all(e >= 0 for e, _ in self.terms)

    def leading_term(self) -> Optional[Term]:
        return self.terms[0] if self.terms else None

    def valuation(self) -> Union[Fraction, float]:
        return self.terms[0][0] if self.terms else math.inf

    def known_valuation(self) -> Optional[Fraction]:
        """Least exponent, or the truncation for a truncated zero; None for an exact zero."""
        if self.terms:
            return self.terms[0][0]
        return self.truncation

    def truncate(self, truncation: Any) -> 'NovikovElement':
        bound = parse_rational(truncation)
        return NovikovElement(self.terms, _min_trunc(self.truncation, bound))

    def identical(self, other: 'NovikovElement') -> bool:
        """Same terms and same truncation."""
        return self.terms == other.terms and self.truncation == other.truncation

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, NovikovElement):
            try:
                other = NovikovElement.coerce(other)
            except (ValueError, TypeError):
                return NotImplemented
        bound = _min_trunc(self.truncation, other.truncation)
        mine = [t for t in self.terms if bound is None or t[0] < bound]
        theirs = [t for t in other.terms if bound is None or t[0] < bound]
        return mine == theirs

    __hash__ = None

    def __add__(self, other: Any) -> 'NovikovElement':
        other = NovikovElement.coerce(other)
        return NovikovElement(self.terms + other.terms, _min_trunc(self.truncation, other.truncation))

    __radd__ = __add__

    def __neg__(self) -> 'NovikovElement':
        return NovikovElement(tuple((e, -c) for e, c in self.terms), self.truncation)

    def __sub__(self, other: Any) -> 'NovikovElement':
        return self + (-NovikovElement.coerce(other))

    def __rsub__(self, other: Any) -> 'NovikovElement':
        return NovikovElement.coerce(other) - self

    def __mul__(self, other: Any) -> 'NovikovElement':
        other = NovikovElement.coerce(other)
        terms = tuple(
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        )
        # an exact zero factor makes the product exactly zero
        truncation = _min_trunc(
            _plus(self.truncation, other.known_valuation()),
            _plus(other.truncation, self.known_valuation()),
        )
        return NovikovElement(terms, truncation)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        from .tools import format_text
        return f"NovikovElement({format_text(self)})"

    def to_json(self) -> Dict[str, Any]:
        return {
            'terms': [[format_rational(e), format_rational(c)] for e, c in self.terms],
            'truncation': None if self.truncation is None else format_rational(self.truncation),
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'NovikovElement':
        model = NovikovElementModel.model_validate(data)
        try:
            return cls(tuple((parse_rational(e), parse_rational(c)) for e, c in model.terms), model.truncation)
        except ValueError as e:
            raise NovikovError(f"Invalid Novikov element: {e}") from e


class NovikovElementModel(BaseModel):
    """JSON list-of-pairs form: terms [[exponent, coefficient], ...]."""
    model_config = ConfigDict(extra='forbid')

    terms: List[Tuple[Union[int, str], Union[int, str]]]
    truncation: Optional[Union[int, str]] = None


@dataclass(frozen=True, eq=False)
class NovikovMatrix:
    """A matrix of NovikovElements; entry (i, j) is row i, column j."""
    rows: Tuple[Tuple[NovikovElement, ...], ...]
    ncols: int = 0

    def __post_init__(self):
        rows = tuple(tuple(NovikovElement.coerce(x) for x in row) for row in self.rows)
        ncols = len(rows[0]) if rows else int(self.ncols)
        if any(len(row) != ncols for row in rows):
            raise ShapeMismatchError("Ragged Novikov matrix rows")
        object.__setattr__(self, 'rows', rows)
        object.__setattr__(self, 'ncols', ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, truncation: Any = None) -> 'NovikovMatrix':
        zero = NovikovElement.zero(truncation)
        return cls(tuple(tuple(zero for _ in range(ncols)) for _ in range(nrows)), ncols)

    @classmethod
    def scalar(cls, size: int, value: Any) -> 'NovikovMatrix':
        value = NovikovElement.coerce(value)
        zero = NovikovElement.zero()
        return cls(tuple(
            tuple(value if i == j else zero for j in range(size)) for i in range(size)
        ), size)

    @classmethod
    def identity(cls, size: int) -> 'NovikovMatrix':
        return cls.scalar(size, 1)

    @classmethod
    def from_sympy(cls, matrix: sympy.Matrix) -> 'NovikovMatrix':
        return cls(tuple(
            tuple(NovikovElement.constant(from_sympy(matrix[i, j])) for j in range(matrix.cols))
            for i in range(matrix.rows)
        ), matrix.cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), self.ncols

    def entry(self, i: int, j: int) -> NovikovElement:
        return self.rows[i][j]

    def entries(self) -> Iterable[NovikovElement]:
        for row in self.rows:
            yield from row

    def _check_same_shape(self, other: 'NovikovMatrix') -> None:
        if self.shape != other.shape:
            raise ShapeMismatchError(f"Shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: 'NovikovMatrix') -> 'NovikovMatrix':
        other = as_novikov_matrix(other)
        self._check_same_shape(other)
        return NovikovMatrix(tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
        ), self.ncols)

    def __neg__(self) -> 'NovikovMatrix':
        return NovikovMatrix(tuple(tuple(-a for a in row) for row in self.rows), self.ncols)

    def __sub__(self, other: 'NovikovMatrix') -> 'NovikovMatrix':
        return self + (-as_novikov_matrix(other))

    def __rsub__(self, other: Any) -> 'NovikovMatrix':
        return as_novikov_matrix(other) - self

    def __radd__(self, other: Any) -> 'NovikovMatrix':
        return as_novikov_matrix(other) + self

    def __mul__(self, other: Any) -> 'NovikovMatrix':
        if isinstance(other, (NovikovMatrix, sympy.MatrixBase)):
            other = as_novikov_matrix(other)
            if self.ncols != other.shape[0]:
                raise ShapeMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
            cols = other.ncols
            out = []
            for row in self.rows:
                out_row = []
                for j in range(cols):
                    total = NovikovElement.zero()
                    for k, a in enumerate(row):
                        total = total + a * other.rows[k][j]
                    out_row.append(total)
                out.append(tuple(out_row))
            return NovikovMatrix(tuple(out), cols)
        scalar = NovikovElement.coerce(other)
        return NovikovMatrix(tuple(tuple(scalar * a for a in row) for row in self.rows), self.ncols)

    def __rmul__(self, other: Any) -> 'NovikovMatrix':
        if isinstance(other, sympy.MatrixBase):
            return as_novikov_matrix(other) * self
        scalar = NovikovElement.coerce(other)
        return NovikovMatrix(tuple(tuple(scalar * a for a in row) for row in self.rows), self.ncols)

    def is_zero_matrix(self) -> bool:
        """Every entry vanishes below its truncation."""
        return all(x.is_zero for x in self.entries())

    def min_valuation(self) -> Union[Fraction, float]:
        return min((x.valuation() for x in self.entries()), default=math.inf)

    def truncation(self) -> Optional[Fraction]:
        return _min_trunc(*(x.truncation for x in self.entries()))

    def truncate(self, truncation: Any) -> 'NovikovMatrix':
        return NovikovMatrix(tuple(tuple(x.truncate(truncation) for x in row) for row in self.rows), self.ncols)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, NovikovMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for a, b in zip(self.entries(), other.entries())
        )

    __hash__ = None

    def to_json(self) -> List[List[Dict[str, Any]]]:
        return [[x.to_json() for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, rows: Sequence[Sequence[Dict[str, Any]]], ncols: int = 0) -> 'NovikovMatrix':
        return cls(tuple(tuple(NovikovElement.from_json(x) for x in row) for row in rows), ncols)


def as_novikov_matrix(value: Any) -> NovikovMatrix:
    """Accept a NovikovMatrix or a rational sympy matrix."""
    if isinstance(value, NovikovMatrix):
        return value
    if isinstance(value, sympy.MatrixBase):
        return NovikovMatrix.from_sympy(value)
    raise ShapeMismatchError(f"Not a matrix: {type(value).__name__}")
