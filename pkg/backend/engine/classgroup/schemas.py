"""
Class Lattice Schemas
Homology classes of disks and strips as integer vectors over a declared basis,
with exact linear pairings (omega, maslov, c1X, c1D, capD).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Integral
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict

from common.errors import LatticeError
from common.io import SCHEMA_VERSION, check_version, resolve_document
from common.rationals import format_rational, parse_rational

FUNCTIONALS = ('omega', 'maslov', 'c1X', 'c1D', 'capD')
INTEGER_FUNCTIONALS = ('maslov', 'c1X', 'c1D', 'capD')


def _integer(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise LatticeError(f"{what} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class ClassLattice:
    """
    A free abelian group of classes with linear functionals.

    pairings holds (functional, values per basis element) for the declared
    functionals only, sorted by functional name.
    """
    basis_names: Tuple[str, ...]
    pairings: Tuple[Tuple[str, Tuple[Fraction, ...]], ...] = ()

    def __post_init__(self):
        names = tuple(self.basis_names)
        if len(set(names)) != len(names):
            raise LatticeError(f"Basis names must be unique: {list(names)}")
        normalized = []
        for functional, values in self.pairings:
            if functional not in FUNCTIONALS:
                raise LatticeError(f"Unknown functional: {functional}")
            values = tuple(parse_rational(v) for v in values)
            if len(values) != len(names):
                raise LatticeError(
                    f"Functional {functional} has {len(values)} values for {len(names)} basis elements"
                )
            if functional in INTEGER_FUNCTIONALS and any(v.denominator != 1 for v in values):
                raise LatticeError(f"Functional {functional} must be integer-valued")
            normalized.append((functional, values))
        object.__setattr__(self, 'basis_names', names)
        object.__setattr__(self, 'pairings', tuple(sorted(normalized)))

    @classmethod
    def build(cls, basis: Sequence[str], **pairings: Sequence[Any]) -> 'ClassLattice':
        """Create from keyword functionals, e.g. build(['a'], omega=['1'], maslov=[2])."""
        return cls(tuple(basis), tuple((k, tuple(v)) for k, v in pairings.items() if v is not None))

    @property
    def rank(self) -> int:
        return len(self.basis_names)

    @property
    def declared_functionals(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.pairings)

    def values(self, functional: str) -> Tuple[Fraction, ...]:
        if functional not in FUNCTIONALS:
            raise LatticeError(f"Unknown functional: {functional}")
        for name, values in self.pairings:
            if name == functional:
                return values
        raise LatticeError(f"Lattice does not declare functional {functional}")

    def zero(self) -> 'HomologyClass':
        return HomologyClass(self, (0,) * self.rank)

    def basis_class(self, name: str) -> 'HomologyClass':
        if name not in self.basis_names:
            raise LatticeError(f"Unknown basis element: {name}")
        return HomologyClass(self, tuple(1 if n == name else 0 for n in self.basis_names))

    def make(self, coords: Union[Sequence[int], Mapping[str, int]]) -> 'HomologyClass':
        """Build a class from a coordinate list or a {basis name: coefficient} mapping."""
        if isinstance(coords, Mapping):
            unknown = set(coords) - set(self.basis_names)
            if unknown:
                raise LatticeError(f"Unknown basis elements: {sorted(unknown)}")
            coords = [coords.get(name, 0) for name in self.basis_names]
        return HomologyClass(self, tuple(coords))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'version': SCHEMA_VERSION, 'basis': list(self.basis_names)}
        for name, values in self.pairings:
            if name in INTEGER_FUNCTIONALS:
                data[name] = [int(v) for v in values]
            else:
                data[name] = [format_rational(v) for v in values]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ClassLattice':
        check_version(data, 'lattice')
        model = LatticeFile.model_validate(data)
        return cls.build(
            model.basis,
            omega=model.omega,
            maslov=model.maslov,
            c1X=model.c1X,
            c1D=model.c1D,
            capD=model.capD,
        )


@dataclass(frozen=True)
class HomologyClass:
    """A class in a ClassLattice; # is coordinate-wise addition."""
    lattice: ClassLattice = field(repr=False)
    coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(_integer(c, "Class coordinate") for c in self.coords)
        if len(coords) != self.lattice.rank:
            raise LatticeError(
                f"Class has {len(coords)} coordinates, lattice rank is {self.lattice.rank}"
            )
        object.__setattr__(self, 'coords', coords)

    def _check_same(self, other: 'HomologyClass') -> None:
        if not isinstance(other, HomologyClass):
            raise LatticeError(f"Not a homology class: {other!r}")
        if other.lattice != self.lattice:
            raise LatticeError("Classes belong to different lattices")

    def __add__(self, other: 'HomologyClass') -> 'HomologyClass':
        self._check_same(other)
        return HomologyClass(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'HomologyClass') -> 'HomologyClass':
        self._check_same(other)
        return HomologyClass(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> 'HomologyClass':
        return HomologyClass(self.lattice, tuple(-a for a in self.coords))

    def scale(self, factor: int) -> 'HomologyClass':
        return HomologyClass(self.lattice, tuple(factor * a for a in self.coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def sort_key(self) -> Tuple[int, ...]:
        return self.coords

    def to_list(self) -> List[int]:
        return list(self.coords)

    def label(self) -> str:
        """Human-readable form such as 2a-b, or 0."""
        parts = []
        for name, c in zip(self.lattice.basis_names, self.coords):
            if c == 0:
                continue
            sign = '-' if c < 0 else ('+' if parts else '')
            mag = '' if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}{name}")
        return ''.join(parts) or '0'


@dataclass(frozen=True)
class ClassMap:
    """
    An additive map between lattices given by an integer matrix.

    matrix has one row per target basis element and one column per source
    basis element.
    """
    source: ClassLattice
    target: ClassLattice
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        matrix = tuple(tuple(_integer(x, "Class map entry") for x in row) for row in self.matrix)
        if len(matrix) != self.target.rank or any(len(row) != self.source.rank for row in matrix):
            raise LatticeError(
                f"Class map must be {self.target.rank}x{self.source.rank}"
            )
        object.__setattr__(self, 'matrix', matrix)

    @classmethod
    def identity(cls, lattice: ClassLattice) -> 'ClassMap':
        n = lattice.rank
        return cls(lattice, lattice, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def apply(self, cls_: HomologyClass) -> HomologyClass:
        if cls_.lattice != self.source:
            raise LatticeError("Class does not belong to the source lattice of the map")
        coords = tuple(sum(a * x for a, x in zip(row, cls_.coords)) for row in self.matrix)
        return HomologyClass(self.target, coords)


class LatticeFile(BaseModel):
    """On-disk lattice document."""
    model_config = ConfigDict(extra='forbid')

    version: int
    basis: List[str]
    omega: Optional[List[Union[int, str]]] = None
    maslov: Optional[List[int]] = None
    c1X: Optional[List[int]] = None
    c1D: Optional[List[int]] = None
    capD: Optional[List[int]] = None


def class_from_json(lattice: ClassLattice, value: Any) -> HomologyClass:
    """Decode a class from a coordinate list or a {name: coefficient} object."""
    if isinstance(value, HomologyClass):
        return value
    if isinstance(value, (list, tuple, dict)):
        return lattice.make(value)
    raise LatticeError(f"Cannot decode class from {value!r}")


def resolve_lattice(ref: Any, base_dir: Optional[Path] = None,
                    fallback: Optional[ClassLattice] = None) -> ClassLattice:
    """
    Lattice from an inline document, a path, or the fallback.

    Args:
        ref: Inline lattice dict, path string or None
        base_dir: Directory for relative paths
        fallback: Used when ref is None

    Returns:
        ClassLattice
    """
    if ref is None:
        if fallback is None:
            raise LatticeError("No lattice given")
        return fallback
    return ClassLattice.from_dict(resolve_document(ref, base_dir, 'lattice'))
