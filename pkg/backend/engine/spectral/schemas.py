"""
Spectral Sequence Schemas
Graded complexes with a total differential split by degree shift, and the
pages of the spectral sequence of their filtration.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy
from pydantic import BaseModel, ConfigDict

from common.errors import CurvatureError, SpectralError
from common.linalg import is_zero, matrix_from_json, matrix_to_json, zero_matrix

FIRST_PAGE = 2


@dataclass(frozen=True)
class FilteredComplex:
    """
    Generators with integer degrees and operators (k, d_k).

    d_k has degree -1 + 2k and the total differential is the sum of all d_k.
    Matrices act on columns: entry [i, j] is the coefficient of generator i in
    d_k of generator j.
    """
    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    operators: Tuple[Tuple[int, sympy.Matrix], ...] = field(default=(), compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        degrees = tuple(int(d) for d in self.degrees)
        if len(set(names)) != len(names):
            raise SpectralError(f"Generator names must be unique: {list(names)}")
        if len(degrees) != len(names):
            raise SpectralError("Every generator needs a degree")
        n = len(names)
        operators = []
        seen = set()
        for k, matrix in self.operators:
            k = int(k)
            if k < 0:
                raise SpectralError(f"Operator index must be non-negative, got {k}")
            if k in seen:
                raise SpectralError(f"Operator d_{k} given twice")
            seen.add(k)
            if matrix.shape != (n, n):
                raise SpectralError(f"d_{k} has shape {matrix.shape}, expected {(n, n)}")
            for i in range(n):
                for j in range(n):
                    if matrix[i, j] != 0 and degrees[i] != degrees[j] - 1 + 2 * k:
                        raise SpectralError(
                            f"d_{k} maps {names[j]} (degree {degrees[j]}) to {names[i]} "
                            f"(degree {degrees[i]}); expected degree {degrees[j] - 1 + 2 * k}"
                        )
            operators.append((k, matrix))
        object.__setattr__(self, 'names', names)
        object.__setattr__(self, 'degrees', degrees)
        object.__setattr__(self, 'operators', tuple(sorted(operators, key=lambda item: item[0])))
        total = self.total()
        if not is_zero(total * total):
            raise CurvatureError("The total differential does not square to zero")

    def __len__(self) -> int:
        return len(self.names)

    def operator(self, k: int) -> sympy.Matrix:
        for index, matrix in self.operators:
            if index == k:
                return matrix
        return zero_matrix(len(self), len(self))

    def total(self) -> sympy.Matrix:
        n = len(self)
        total = zero_matrix(n, n)
        for _, matrix in self.operators:
            total = total + matrix
        return total

    @property
    def min_degree(self) -> int:
        return min(self.degrees) if self.degrees else 0

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.degrees else 0

    def graded_dims(self) -> Dict[int, int]:
        dims: Dict[int, int] = {}
        for d in self.degrees:
            dims[d] = dims.get(d, 0) + 1
        return dict(sorted(dims.items()))

    def indices_in_degree(self, degree: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'version': 1,
            'generators': [{'name': n, 'degree': d} for n, d in zip(self.names, self.degrees)],
            'operators': [{'k': k, 'matrix': matrix_to_json(m)} for k, m in self.operators],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'FilteredComplex':
        model = FilteredComplexFile.model_validate(data)
        n = len(model.generators)
        return cls(
            tuple(g.name for g in model.generators),
            tuple(g.degree for g in model.generators),
            tuple((op.k, matrix_from_json(op.matrix, n)) for op in model.operators),
        )


@dataclass(frozen=True)
class PageData:
    """
    One page E_r with its dimensions and differential ranks per filtration level.

    The filtration level p carries degree p on the first page.
    """
    r: int
    dims: Tuple[Tuple[int, int], ...]
    differential_ranks: Tuple[Tuple[int, int], ...]

    @property
    def total(self) -> int:
        return sum(d for _, d in self.dims)

    def dim(self, p: int) -> int:
        return dict(self.dims).get(p, 0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'r': self.r,
            'dims': {str(p): d for p, d in self.dims},
            'differential_ranks': {str(p): d for p, d in self.differential_ranks},
            'total': self.total,
        }


@dataclass(frozen=True)
class SpectralReport:
    """Pages from the first to the limit, with the convergence data."""
    pages: Tuple[PageData, ...]
    homology_dim: int
    first_page_homology: Tuple[Tuple[int, int], ...]

    @property
    def first(self) -> Optional[PageData]:
        return self.pages[0] if self.pages else None

    @property
    def limit(self) -> Optional[PageData]:
        return self.pages[-1] if self.pages else None

    @property
    def converged(self) -> bool:
        return self.limit is None or self.limit.total == self.homology_dim

    def to_dict(self) -> Dict[str, Any]:
        return {
            'pages': [p.to_dict() for p in self.pages],
            'homology_dim': self.homology_dim,
            'first_page_homology': {str(p): d for p, d in self.first_page_homology},
            'converged': self.converged,
        }


class GeneratorDegreeModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    name: str
    degree: int


class OperatorModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    k: int
    matrix: List[List[Any]]


class FilteredComplexFile(BaseModel):
    """On-disk filtered complex."""
    model_config = ConfigDict(extra='forbid')

    version: int
    generators: List[GeneratorDegreeModel]
    operators: List[OperatorModel] = []


class MorseGeneratorModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    name: str
    index: int


class MorseModelFile(BaseModel):
    """On-disk Morse complex: critical points with indices and the Morse differential."""
    model_config = ConfigDict(extra='forbid')

    version: int
    generators: List[MorseGeneratorModel]
    d0: List[List[Any]] = []


class CorrectionsFile(BaseModel):
    """Corrections d_1, d_2, ... in order."""
    model_config = ConfigDict(extra='forbid')

    version: int
    corrections: List[List[List[Any]]] = []


def operators_from_corrections(d0: sympy.Matrix, corrections: Sequence[sympy.Matrix]) -> Tuple[Tuple[int, sympy.Matrix], ...]:
    """Pair d0 and the corrections with their indices 0, 1, 2, ..."""
    return ((0, d0),) + tuple((i + 1, m) for i, m in enumerate(corrections))
