"""
Dimension Schemas
Ambient dimension, per-vertex incidence data and dimension reports.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from common.errors import DimensionError
from engine.classgroup.schemas import HomologyClass
from engine.trees.schemas import VertexColor


@dataclass(frozen=True)
class AmbientDim:
    """Complex dimension of X, equal to the real dimension of L."""
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise DimensionError(f"Ambient dimension must be a positive integer, got {self.n!r}")

    @classmethod
    def of(cls, value: Any) -> 'AmbientDim':
        return value if isinstance(value, AmbientDim) else cls(int(value))


@dataclass(frozen=True)
class VertexIncidence:
    """
    Everything the per-vertex dimension formula reads.

    ell: number of incident edges minus one (D vertices).
    multiplicities: multiplicities of the edges into positive levels
        (all incident edges for s vertices).
    k: level-0 edge count minus one (disk vertices).
    k0, k1: level-0 edges off the strip path on each side (strip vertices).
    """
    color: VertexColor
    alpha: HomologyClass
    ell: int = 0
    multiplicities: Tuple[Optional[int], ...] = ()
    k: int = 0
    k0: int = 0
    k1: int = 0


@dataclass(frozen=True)
class DimensionReport:
    """Sum form, printed closed form and their exact difference for one tree."""
    n: int
    sum_form: int
    closed_form: int
    residual: int
    n_independent: bool

    @property
    def match(self) -> bool:
        return self.sum_form == self.closed_form

    @property
    def consistent(self) -> bool:
        return self.n_independent and self.sum_form == self.closed_form + self.residual

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'sum': self.sum_form,
            'closed': self.closed_form,
            'residual': self.residual,
            'match': self.match,
            'n_independent': self.n_independent,
            'consistent': self.consistent,
        }
