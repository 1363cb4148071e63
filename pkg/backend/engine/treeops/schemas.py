"""
Tree Operation Schemas
Level merges for gluing, split results, disk-splitting pieces and the
boundary-stratum enumeration inputs and descriptors.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict

from common.errors import BoundaryError, GlueError
from engine.classgroup.schemas import ClassLattice, HomologyClass, class_from_json
from engine.trees.schemas import RibbonTree


@dataclass(frozen=True)
class LevelMerge:
    """
    A level function on a glued tree, as two strictly increasing maps.

    left[i] is the merged level of level i+1 of the left tree, right[i] the
    same for the right tree; together their images cover 1..size.
    """
    left: Tuple[int, ...]
    right: Tuple[int, ...]
    size: int

    def __post_init__(self):
        object.__setattr__(self, 'left', tuple(int(x) for x in self.left))
        object.__setattr__(self, 'right', tuple(int(x) for x in self.right))
        self.validate()

    def validate(self) -> None:
        for name, chain in (('left', self.left), ('right', self.right)):
            if any(b <= a for a, b in zip(chain, chain[1:])):
                raise GlueError(f"Level merge {name} map is not strictly increasing: {list(chain)}")
            if any(x < 1 or x > self.size for x in chain):
                raise GlueError(f"Level merge {name} map leaves 1..{self.size}: {list(chain)}")
        if set(self.left) | set(self.right) != set(range(1, self.size + 1)):
            raise GlueError(f"Level merge does not cover 1..{self.size}")

    @property
    def h(self) -> int:
        """Number of merged level pairs."""
        return len(self.left) + len(self.right) - self.size

    def to_dict(self) -> Dict[str, Any]:
        return {'left': list(self.left), 'right': list(self.right), 'size': self.size}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'LevelMerge':
        model = LevelMergeModel.model_validate(data)
        return cls(tuple(model.left), tuple(model.right), model.size)


@dataclass(frozen=True)
class SplitResult:
    """The unique pieces of a strip tree cut at a strip-path edge."""
    left: RibbonTree
    right: RibbonTree
    merge: LevelMerge
    generator: str
    h: int


@dataclass(frozen=True)
class DiskSplitPiece:
    """
    One piece R(w) of a disk-splitting decomposition.

    level_map sends the levels 1..|lambda| of the parent to levels of the
    piece; it is empty when the piece has no positive level.
    """
    target: str
    tree: RibbonTree
    level_map: Tuple[Tuple[int, int], ...] = ()

    def to_dict(self, tree_encoder) -> Dict[str, Any]:
        return {
            'target': self.target,
            'tree': tree_encoder(self.tree),
            'level_map': {str(k): v for k, v in self.level_map},
        }


@dataclass(frozen=True)
class BoundaryProblem:
    """Strip moduli with ends p, q, class beta and k0/k1 marked points."""
    p: str
    q: str
    beta: HomologyClass
    k0: int = 0
    k1: int = 0

    def __post_init__(self):
        if self.k0 < 0 or self.k1 < 0:
            raise BoundaryError(f"Marked point counts must be non-negative: ({self.k0}, {self.k1})")


def _unique(classes: Sequence[HomologyClass]) -> Tuple[HomologyClass, ...]:
    return tuple(sorted(set(classes), key=lambda c: c.sort_key()))


@dataclass(frozen=True)
class DecompositionBasis:
    """Finite class lists the boundary enumeration ranges over, one per role."""
    strip_classes: Tuple[HomologyClass, ...]
    disk_classes_L1: Tuple[HomologyClass, ...] = ()
    disk_classes_L0: Tuple[HomologyClass, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'strip_classes', _unique(self.strip_classes))
        object.__setattr__(self, 'disk_classes_L1', _unique(self.disk_classes_L1))
        object.__setattr__(self, 'disk_classes_L0', _unique(self.disk_classes_L0))

    @classmethod
    def from_classes(cls, classes: Sequence[HomologyClass]) -> 'DecompositionBasis':
        """Use one list for every role."""
        return cls(tuple(classes), tuple(classes), tuple(classes))

    def all_classes(self) -> List[HomologyClass]:
        return list(_unique(self.strip_classes + self.disk_classes_L1 + self.disk_classes_L0))


@dataclass(frozen=True)
class BoundaryDescriptor:
    """
    A codimension-one boundary stratum of a strip moduli space.

    kind 1 breaks the strip at generator r into classes (beta1, beta2) with
    marked-point split (k0', k1'). Kinds 2 and 3 bubble a disk of class alpha
    off the L1 (resp. L0) side at attachment slot j, leaving a strip of class
    beta'; splits holds the number of marked points on the bubble.
    """
    kind: int
    classes: Tuple[HomologyClass, HomologyClass]
    splits: Tuple[int, ...]
    tree: RibbonTree = field(compare=False)
    dim: int
    parent_dim: int
    r: Optional[str] = None
    attachment: Optional[int] = None

    @property
    def negative(self) -> bool:
        return self.dim < 0

    def sort_key(self) -> Tuple:
        coords = tuple(c.sort_key() for c in self.classes)
        return (self.kind, self.r or '', coords, self.attachment or 0, self.splits)

    def to_dict(self, tree_encoder=None) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'type': self.kind,
            'r': self.r,
            'classes': [c.to_list() for c in self.classes],
            'attachment': self.attachment,
            'splits': list(self.splits),
            'dim': self.dim,
            'parent_dim': self.parent_dim,
            'negative': self.negative,
        }
        if tree_encoder is not None:
            data['tree'] = tree_encoder(self.tree)
        return data


class LevelMergeModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    left: List[int]
    right: List[int]
    size: int


class BoundaryProblemFile(BaseModel):
    """On-disk boundary problem; `classes` fills every role left unset."""
    model_config = ConfigDict(extra='forbid')

    version: int
    lattice: Union[Dict[str, Any], str, None] = None
    generators: List[str]
    p: str
    q: str
    beta: Any
    k0: int = 0
    k1: int = 0
    classes: Optional[List[Any]] = None
    strip_classes: Optional[List[Any]] = None
    disk_classes_L1: Optional[List[Any]] = None
    disk_classes_L0: Optional[List[Any]] = None

    def to_domain(self, lattice: ClassLattice) -> Tuple[BoundaryProblem, List[str], DecompositionBasis]:
        """Decode into (problem, generators, decomposition basis)."""
        def decode(values: Optional[List[Any]]) -> Optional[Tuple[HomologyClass, ...]]:
            if values is None:
                return None
            return tuple(class_from_json(lattice, v) for v in values)

        shared = decode(self.classes) or ()
        strip = decode(self.strip_classes)
        disk1 = decode(self.disk_classes_L1)
        disk0 = decode(self.disk_classes_L0)
        basis = DecompositionBasis(
            strip if strip is not None else shared,
            disk1 if disk1 is not None else shared,
            disk0 if disk0 is not None else shared,
        )
        problem = BoundaryProblem(self.p, self.q, class_from_json(lattice, self.beta), self.k0, self.k1)
        return problem, list(self.generators), basis
