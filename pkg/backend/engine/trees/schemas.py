"""
Ribbon Tree Schemas
Stratum descriptors for strip moduli (SD trees) and disk moduli (DD trees):
colored vertices with levels and class labels, edges with multiplicities,
and for strip trees the distinguished path between the two strip ends.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from engine.classgroup.schemas import ClassLattice, HomologyClass

LEFT_END = 'vl'
RIGHT_END = 'vr'

STRIP_KIND = 'strip'
DISK_KIND = 'disk'


class VertexColor(str, Enum):
    """Vertex colors of SD and DD trees."""
    DISK = 'd'
    DISK0 = 'd0'
    DISK1 = 'd1'
    SPHERE = 's'
    DIVISOR = 'D'
    STRIP = 'str'
    EXTERIOR = 'exterior'

    @property
    def is_interior(self) -> bool:
        return self is not VertexColor.EXTERIOR

    @property
    def is_disk(self) -> bool:
        return self in (VertexColor.DISK, VertexColor.DISK0, VertexColor.DISK1)

    @property
    def is_boundary_component(self) -> bool:
        """Components carrying boundary: disks and strips."""
        return self.is_disk or self is VertexColor.STRIP


@dataclass(frozen=True)
class Vertex:
    """
    A tree vertex.

    ribbon_order is the cyclic order of neighbor ids. Exterior vertices use
    marker (disk trees: 0 is the root) and side (strip trees: 0 or 1).
    """
    id: str
    color: VertexColor
    level: int = 0
    alpha: Optional[HomologyClass] = None
    ribbon_order: Tuple[str, ...] = ()
    marker: Optional[int] = None
    side: Optional[int] = None

    @property
    def is_interior(self) -> bool:
        return self.color.is_interior


@dataclass(frozen=True)
class Edge:
    """An undirected edge; ends are stored sorted."""
    ends: Tuple[str, str]
    multiplicity: Optional[int] = None
    generator: Optional[str] = None

    def __post_init__(self):
        a, b = self.ends
        object.__setattr__(self, 'ends', (a, b) if a <= b else (b, a))

    @property
    def id(self) -> str:
        return f"{self.ends[0]}~{self.ends[1]}"

    def other(self, vertex_id: str) -> str:
        a, b = self.ends
        return b if vertex_id == a else a


def edge_key(u: str, v: str) -> Tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class RibbonTree:
    """
    A decorated tree describing a stratum.

    Strip trees have strip_path running from LEFT_END to RIGHT_END and
    marked-point counts k0, k1; disk trees have k marked points besides the root.
    """
    kind: str
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    strip_path: Tuple[str, ...] = ()
    k0: int = 0
    k1: int = 0
    k: int = 0
    lattice: Optional[ClassLattice] = field(default=None, compare=False, repr=False)

    @cached_property
    def vertex_map(self) -> Dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge_map(self) -> Dict[Tuple[str, str], Edge]:
        return {e.ends: e for e in self.edges}

    @cached_property
    def adjacency(self) -> Dict[str, Tuple[str, ...]]:
        adj: Dict[str, List[str]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            a, b = e.ends
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        return {k: tuple(sorted(v)) for k, v in adj.items()}

    def vertex(self, vertex_id: str) -> Vertex:
        return self.vertex_map[vertex_id]

    def edge(self, u: str, v: str) -> Optional[Edge]:
        return self.edge_map.get(edge_key(u, v))

    def neighbors(self, vertex_id: str) -> Tuple[str, ...]:
        return self.adjacency.get(vertex_id, ())

    @property
    def is_strip(self) -> bool:
        return self.kind == STRIP_KIND

    @property
    def interior_vertices(self) -> List[Vertex]:
        return [v for v in self.vertices if v.is_interior]

    @property
    def exterior_vertices(self) -> List[Vertex]:
        return [v for v in self.vertices if not v.is_interior]

    def is_interior_edge(self, edge: Edge) -> bool:
        vm = self.vertex_map
        return all(end in vm and vm[end].is_interior for end in edge.ends)

    @cached_property
    def path_edge_keys(self) -> frozenset:
        path = self.strip_path
        return frozenset(edge_key(a, b) for a, b in zip(path, path[1:]))

    def is_level0_interior_edge(self, edge: Edge) -> bool:
        vm = self.vertex_map
        return self.is_interior_edge(edge) and all(vm[end].level == 0 for end in edge.ends)

    def is_mixed_level_edge(self, edge: Edge) -> bool:
        """Edge joining a level-0 interior vertex to a positive-level vertex."""
        if not self.is_interior_edge(edge):
            return False
        levels = sorted(self.vertex_map[end].level for end in edge.ends)
        return levels[0] == 0 and levels[1] > 0

    def count_colors(self, *colors: VertexColor) -> int:
        return sum(1 for v in self.vertices if v.color in colors)

    @property
    def positive_levels(self) -> int:
        return max((v.level for v in self.interior_vertices), default=0)

    @property
    def marked_count(self) -> int:
        return self.k0 + self.k1 if self.is_strip else self.k


@dataclass(frozen=True)
class StratumRank:
    """Number of positive levels and the corner codimension of a stratum."""
    positive_levels: int
    corner_codim: int

    def to_dict(self) -> Dict[str, int]:
        return {'positive_levels': self.positive_levels, 'corner_codim': self.corner_codim}


@dataclass(frozen=True)
class ValidationIssue:
    """One violated invariant, with the offending vertex or edge id."""
    code: str
    subject: str
    message: str

    def to_dict(self) -> Dict[str, str]:
        return {'code': self.code, 'subject': self.subject, 'message': self.message}


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_tree; issues are sorted for order independence."""
    issues: Tuple[ValidationIssue, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.issues

    def codes(self) -> List[str]:
        return [issue.code for issue in self.issues]

    def to_dict(self) -> Dict[str, Any]:
        return {'passed': self.passed, 'issues': [i.to_dict() for i in self.issues]}


class VertexModel(BaseModel):
    """On-disk vertex record."""
    model_config = ConfigDict(extra='forbid')

    id: str
    color: VertexColor
    level: int = 0
    alpha: Optional[Any] = None
    ribbon_order: List[str] = []
    marker: Optional[int] = None
    side: Optional[int] = None


class EdgeModel(BaseModel):
    """On-disk edge record."""
    model_config = ConfigDict(extra='forbid')

    ends: Tuple[str, str]
    multiplicity: Optional[int] = None
    generator: Optional[str] = None


class TreeFile(BaseModel):
    """On-disk tree document."""
    model_config = ConfigDict(extra='forbid')

    version: int
    kind: str
    vertices: List[VertexModel]
    edges: List[EdgeModel]
    strip_path: List[str] = []
    k0: int = 0
    k1: int = 0
    k: int = 0
