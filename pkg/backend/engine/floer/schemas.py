"""
Floer Complex Schemas
Generators with component labels and optional gradings, count tables of
strips and disks, and the verdicts returned by the algebraic checks.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

import sympy
from pydantic import BaseModel, ConfigDict

from common.errors import CountTableError, PotentialError
from common.linalg import matrix_from_json, matrix_to_json
from common.rationals import format_rational, parse_rational
from engine.classgroup.schemas import ClassLattice, HomologyClass, class_from_json
from engine.classgroup.tools import omega
from engine.novikov.schemas import NovikovMatrix


@dataclass(frozen=True)
class GeneratorSet:
    """
    Generators of a Floer complex.

    components holds the component label o of each generator; gradings, when
    given, are taken modulo grading_period (0 means a Z-grading).
    """
    names: Tuple[str, ...]
    components: Tuple[str, ...]
    gradings: Optional[Tuple[int, ...]] = None
    grading_period: int = 0

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise CountTableError(f"Generator names must be unique: {list(names)}")
        if len(self.components) != len(names):
            raise CountTableError("Every generator needs a component label")
        if self.gradings is not None and len(self.gradings) != len(names):
            raise CountTableError("Gradings must be given for every generator or none")
        if self.grading_period < 0:
            raise CountTableError(f"Grading period must be non-negative, got {self.grading_period}")
        object.__setattr__(self, 'names', names)
        object.__setattr__(self, 'components', tuple(self.components))
        if self.gradings is not None:
            object.__setattr__(self, 'gradings', tuple(int(g) for g in self.gradings))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise CountTableError(f"Unknown generator {name!r}") from None

    def component(self, name: str) -> str:
        return self.components[self.index(name)]

    def grading(self, name: str) -> Optional[int]:
        return None if self.gradings is None else self.gradings[self.index(name)]

    def component_labels(self) -> List[str]:
        return sorted(set(self.components))

    def indices_of(self, component: str) -> List[int]:
        return [i for i, c in enumerate(self.components) if c == component]

    @classmethod
    def from_dict(cls, records: List[Dict[str, Any]], grading_period: int = 0) -> 'GeneratorSet':
        """Inverse of to_dict."""
        gradings = [r.get('grading') for r in records]
        return cls(
            tuple(r['name'] for r in records),
            tuple(r.get('component', 'o0') for r in records),
            None if not gradings or gradings[0] is None else tuple(gradings),
            grading_period,
        )

    def to_dict(self) -> List[Dict[str, Any]]:
        out = []
        for i, name in enumerate(self.names):
            record: Dict[str, Any] = {'name': name, 'component': self.components[i]}
            if self.gradings is not None:
                record['grading'] = self.gradings[i]
            out.append(record)
        return out


@dataclass(frozen=True)
class StripCount:
    """Signed count of rigid strips from source to target in a class."""
    source: str
    target: str
    beta: HomologyClass
    count: Fraction


@dataclass(frozen=True)
class DiskCount:
    """Signed count of disks of class alpha through a point, independent of the point."""
    alpha: HomologyClass
    count: Fraction


@dataclass(frozen=True)
class CountTable:
    """
    Strip and disk counts feeding the differential and the potentials.

    offsets are the Hamiltonian values C(x) per generator (missing means 0).
    validated is set only by validate_count_table.
    """
    lattice: ClassLattice = field(repr=False)
    strip_counts: Tuple[StripCount, ...] = ()
    disk_counts_L1: Tuple[DiskCount, ...] = ()
    disk_counts_L0: Tuple[DiskCount, ...] = ()
    offsets: Tuple[Tuple[str, Fraction], ...] = ()
    validated: bool = False

    def offset(self, name: str) -> Fraction:
        for key, value in self.offsets:
            if key == name:
                return value
        return Fraction(0)

    def omega_h(self, entry: StripCount) -> Fraction:
        """Energy omega(beta) + C(target) - C(source)."""
        return omega(entry.beta) + self.offset(entry.target) - self.offset(entry.source)

    def mark_validated(self) -> 'CountTable':
        return replace(self, validated=True)


@dataclass(frozen=True)
class Differential:
    """A differential over Q with M[q, p] = <dp, q> (columns are sources)."""
    generators: GeneratorSet
    matrix: sympy.Matrix = field(compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {'generators': list(self.generators.names), 'matrix': matrix_to_json(self.matrix)}


def _matrix_payload(matrix: Union[sympy.Matrix, NovikovMatrix, None]) -> Any:
    if matrix is None:
        return None
    if isinstance(matrix, NovikovMatrix):
        from engine.novikov.tools import matrix_text
        return matrix_text(matrix)
    return matrix_to_json(matrix)


@dataclass(frozen=True)
class MatrixVerdict:
    """Outcome of an identity check with the residual that should vanish."""
    passed: bool
    residual: Any = None

    def to_dict(self) -> Dict[str, Any]:
        return {'passed': self.passed, 'residual': _matrix_payload(self.residual)}


@dataclass(frozen=True)
class DSquaredVerdict:
    """
    d o d compared with (PO1 - PO0) * Id.

    square is d o d, defect is d o d - (PO1 - PO0) * Id.
    """
    passed: bool
    curvature: Any
    square: Any
    defect: Any

    @property
    def flat(self) -> bool:
        return _is_zero_payload(self.square)

    def to_dict(self) -> Dict[str, Any]:
        curvature = self.curvature
        if isinstance(curvature, Fraction):
            curvature = format_rational(curvature)
        elif curvature is not None and not isinstance(curvature, str):
            from engine.novikov.tools import format_text
            curvature = format_text(curvature)
        return {
            'passed': self.passed,
            'curvature': curvature,
            'square': _matrix_payload(self.square),
            'defect': _matrix_payload(self.defect),
        }


def _is_zero_payload(matrix: Any) -> bool:
    if isinstance(matrix, NovikovMatrix):
        return matrix.is_zero_matrix()
    return all(x == 0 for x in matrix)


@dataclass(frozen=True)
class EnergyViolation:
    source: str
    target: str
    beta: List[int]
    omega_h: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {
            'source': self.source,
            'target': self.target,
            'beta': self.beta,
            'omega_h': format_rational(self.omega_h),
        }


@dataclass(frozen=True)
class EnergyVerdict:
    passed: bool
    violations: Tuple[EnergyViolation, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {'passed': self.passed, 'violations': [v.to_dict() for v in self.violations]}


@dataclass(frozen=True)
class HomologyReport:
    """Homology dimensions over Q, per component and (if graded) per degree."""
    total: int
    generators: int
    per_component: Tuple[Tuple[str, int], ...]
    per_degree: Optional[Tuple[Tuple[int, int], ...]] = None

    @property
    def bound_ok(self) -> bool:
        return self.total <= self.generators

    def to_dict(self) -> Dict[str, Any]:
        return {
            'total': self.total,
            'generators': self.generators,
            'per_component': dict(self.per_component),
            'per_degree': None if self.per_degree is None else {str(d): r for d, r in self.per_degree},
            'bound_ok': self.bound_ok,
        }


@dataclass(frozen=True)
class NovikovHomologyReport:
    """Homology rank over the Novikov field, or an undetermined verdict."""
    rank: Optional[int]
    generators: int
    determined: bool
    reason: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'rank': self.rank,
            'generators': self.generators,
            'determined': self.determined,
            'reason': self.reason,
        }


class GeneratorModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    name: str
    component: str = 'o0'
    grading: Optional[int] = None


class StripCountModel(BaseModel):
    model_config = ConfigDict(extra='forbid', populate_by_name=True)

    source: str
    target: str
    beta: Any
    count: Union[int, str]


class DiskCountModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    alpha: Any
    count: Union[int, str]


class CountTableFile(BaseModel):
    """On-disk count table with its generators."""
    model_config = ConfigDict(extra='forbid')

    version: int
    lattice: Union[Dict[str, Any], str, None] = None
    generators: List[GeneratorModel]
    grading_period: int = 0
    strip_counts: List[StripCountModel] = []
    disk_counts_L1: List[DiskCountModel] = []
    disk_counts_L0: List[DiskCountModel] = []
    offsets: Dict[str, Union[int, str]] = {}
    rho: Optional[Dict[str, Union[int, str]]] = None  # keyed by class label, e.g. "a" or "2b1-b2"

    def to_domain(self, lattice: ClassLattice) -> Tuple[GeneratorSet, CountTable]:
        """Decode into (generators, unvalidated count table)."""
        gradings = [g.grading for g in self.generators]
        if any(g is None for g in gradings) and not all(g is None for g in gradings):
            raise CountTableError("Gradings must be given for every generator or none")
        generators = GeneratorSet(
            tuple(g.name for g in self.generators),
            tuple(g.component for g in self.generators),
            None if not gradings or gradings[0] is None else tuple(gradings),
            self.grading_period,
        )
        try:
            table = CountTable(
                lattice=lattice,
                strip_counts=tuple(
                    StripCount(s.source, s.target, class_from_json(lattice, s.beta), parse_rational(s.count))
                    for s in self.strip_counts
                ),
                disk_counts_L1=tuple(
                    DiskCount(class_from_json(lattice, d.alpha), parse_rational(d.count))
                    for d in self.disk_counts_L1
                ),
                disk_counts_L0=tuple(
                    DiskCount(class_from_json(lattice, d.alpha), parse_rational(d.count))
                    for d in self.disk_counts_L0
                ),
                offsets=tuple(sorted((k, parse_rational(v)) for k, v in self.offsets.items())),
            )
        except ValueError as e:
            raise CountTableError(f"Invalid count table: {e}") from e
        return generators, table

    def rho_for(self, table: CountTable) -> Optional[Dict[HomologyClass, Fraction]]:
        """Decode rho by matching labels against the table's disk classes."""
        if self.rho is None:
            return None
        by_label = {d.alpha.label(): d.alpha for d in table.disk_counts_L1 + table.disk_counts_L0}
        out: Dict[HomologyClass, Fraction] = {}
        for label, value in self.rho.items():
            if label not in by_label:
                raise PotentialError(f"rho names {label!r}, which is not a disk class of the table")
            out[by_label[label]] = parse_rational(value)
        return out


class MatrixFile(BaseModel):
    """A rational matrix document, e.g. a chain map or a homotopy."""
    model_config = ConfigDict(extra='forbid')

    version: int
    matrix: List[List[Union[int, str]]]
    ncols: int = 0

    def to_matrix(self) -> sympy.Matrix:
        return matrix_from_json(self.matrix, self.ncols)
