"""
Random Tree Generator
Produces valid strip and disk trees for property-based checks. Sphere and
divisor classes are drawn from lattice generators with maslov = 2*c1X, and the
multiplicity balance is closed by adjusting one divisor class.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from engine.classgroup.schemas import ClassLattice

from .schemas import (
    DISK_KIND,
    LEFT_END,
    RIGHT_END,
    STRIP_KIND,
    Edge,
    RibbonTree,
    Vertex,
    VertexColor,
)

SURFACE_BASIS = ('b1', 'b2', 'b3')
SPHERE_SHIFT = 'sig'   # c1D - c1X = 1, maslov 0
SPHERE_FLAT = 'tau'    # c1D - c1X = 0, maslov 2


def generic_lattice() -> ClassLattice:
    """Lattice used by the generators: three surface classes and two sphere classes."""
    return ClassLattice.build(
        SURFACE_BASIS + (SPHERE_SHIFT, SPHERE_FLAT),
        omega=['1/2', '1', '3/2', '0', '1'],
        maslov=[1, 2, 3, 0, 2],
        c1X=[0, 0, 0, 0, 1],
        c1D=[0, 0, 0, 1, 1],
        capD=[0, 0, 0, 0, 0],
    )


@dataclass
class _Draft:
    """Mutable tree under construction."""
    lattice: ClassLattice
    colors: Dict[str, VertexColor] = field(default_factory=dict)
    levels: Dict[str, int] = field(default_factory=dict)
    coeffs: Dict[str, Dict[str, int]] = field(default_factory=dict)
    markers: Dict[str, Tuple[Optional[int], Optional[int]]] = field(default_factory=dict)
    edges: Dict[Tuple[str, str], Tuple[Optional[int], Optional[str]]] = field(default_factory=dict)
    adjacency: Dict[str, List[str]] = field(default_factory=dict)

    def add_vertex(self, vid: str, color: VertexColor, level: int = 0,
                   coeffs: Optional[Dict[str, int]] = None,
                   marker: Optional[int] = None, side: Optional[int] = None) -> str:
        self.colors[vid] = color
        self.levels[vid] = level
        if color is not VertexColor.EXTERIOR:
            self.coeffs[vid] = dict(coeffs or {})
        self.markers[vid] = (marker, side)
        self.adjacency[vid] = []
        return vid

    def connect(self, u: str, v: str, multiplicity: Optional[int] = None,
                generator: Optional[str] = None) -> None:
        key = (u, v) if u <= v else (v, u)
        self.edges[key] = (multiplicity, generator)
        self.adjacency[u].append(v)
        self.adjacency[v].append(u)

    def build(self, kind: str, rng: np.random.Generator, strip_path: Sequence[str] = (),
              k0: int = 0, k1: int = 0, k: int = 0) -> RibbonTree:
        vertices = []
        for vid in sorted(self.colors):
            order = list(self.adjacency[vid])
            rng.shuffle(order)
            alpha = None
            if vid in self.coeffs:
                alpha = self.lattice.make(self.coeffs[vid])
            marker, side = self.markers[vid]
            vertices.append(Vertex(vid, self.colors[vid], self.levels[vid], alpha, tuple(order), marker, side))
        edges = tuple(Edge(key, m, g) for key, (m, g) in sorted(self.edges.items()))
        return RibbonTree(kind, tuple(vertices), edges, tuple(strip_path), k0, k1, k, self.lattice)


def _surface_coeffs(rng: np.random.Generator) -> Dict[str, int]:
    return {name: int(rng.integers(-1, 3)) for name in SURFACE_BASIS}


def _add_positive_levels(draft: _Draft, rng: np.random.Generator, level0_hosts: List[str],
                         prefix: str, max_levels: int, allow_spheres: bool) -> None:
    levels = int(rng.integers(0, max_levels + 1))
    if levels == 0:
        return
    divisor: List[str] = []
    spheres: List[str] = []
    total_mult = 0
    count = 0
    for level in range(1, levels + 1):
        for _ in range(int(rng.integers(1, 3))):
            vid = f"{prefix}D{count}"
            count += 1
            candidates = [('level0', h) for h in level0_hosts] + [('sphere', s) for s in spheres]
            candidates += [('divisor', d) for d in divisor if draft.levels[d] < level]
            kind, parent = candidates[int(rng.integers(0, len(candidates)))]
            draft.add_vertex(vid, VertexColor.DIVISOR, level, {SPHERE_FLAT: int(rng.integers(0, 2))})
            if kind == 'divisor':
                draft.connect(parent, vid)
            else:
                m = int(rng.integers(1, 3))
                total_mult += m
                draft.connect(parent, vid, multiplicity=m)
            divisor.append(vid)
        if allow_spheres:
            for host in [d for d in divisor if draft.levels[d] == level]:
                if rng.random() < 0.35:
                    sid = f"{prefix}S{len(spheres)}"
                    draft.add_vertex(sid, VertexColor.SPHERE, 0, {SPHERE_FLAT: int(rng.integers(0, 2))})
                    m = -int(rng.integers(1, 3))
                    total_mult += m
                    draft.connect(host, sid, multiplicity=m)
                    spheres.append(sid)
    # balance: sum over divisor vertices of (c1D - c1X) equals the multiplicity total
    draft.coeffs[divisor[0]][SPHERE_SHIFT] = total_mult


def random_strip_tree(
    rng: np.random.Generator,
    lattice: Optional[ClassLattice] = None,
    *,
    max_strips: int = 3,
    max_disks: int = 3,
    max_marked: int = 2,
    max_levels: int = 2,
    allow_spheres: bool = True,
    generators: Sequence[str] = ('p', 'q', 'r'),
    prefix: str = '',
) -> RibbonTree:
    """
    Draw a valid strip tree.

    Args:
        rng: numpy random generator
        lattice: Lattice containing the generic basis names (default generic_lattice())
        max_strips: Maximal number of strip vertices on the path
        max_disks: Maximal number of disk vertices off the path
        max_marked: Maximal number of marked points per side
        max_levels: Maximal number of positive levels
        allow_spheres: Whether sphere (s) vertices may appear
        generators: Labels drawn for strip path edges
        prefix: Prepended to interior vertex ids and marked-point ids

    Returns:
        RibbonTree passing validate_tree
    """
    lattice = lattice or generic_lattice()
    draft = _Draft(lattice)
    n_strips = int(rng.integers(1, max_strips + 1))
    draft.add_vertex(LEFT_END, VertexColor.EXTERIOR)
    draft.add_vertex(RIGHT_END, VertexColor.EXTERIOR)
    strips = [draft.add_vertex(f"{prefix}str{i}", VertexColor.STRIP, 0, _surface_coeffs(rng)) for i in range(n_strips)]
    path = [LEFT_END] + strips + [RIGHT_END]
    for a, b in zip(path, path[1:]):
        draft.connect(a, b, generator=str(generators[int(rng.integers(0, len(generators)))]))

    side_hosts: Dict[int, List[str]] = {0: list(strips), 1: list(strips)}
    for i in range(int(rng.integers(0, max_disks + 1))):
        side = int(rng.integers(0, 2))
        parent = side_hosts[side][int(rng.integers(0, len(side_hosts[side])))]
        color = VertexColor.DISK0 if side == 0 else VertexColor.DISK1
        vid = draft.add_vertex(f"{prefix}d{i}", color, 0, _surface_coeffs(rng))
        draft.connect(parent, vid)
        side_hosts[side].append(vid)

    counts = []
    for side in (0, 1):
        k_side = int(rng.integers(0, max_marked + 1))
        for j in range(1, k_side + 1):
            host = side_hosts[side][int(rng.integers(0, len(side_hosts[side])))]
            zid = draft.add_vertex(f"{prefix}z{side}_{j}", VertexColor.EXTERIOR, marker=j, side=side)
            draft.connect(host, zid)
        counts.append(k_side)

    level0 = strips + [v for v in draft.colors if draft.colors[v] in (VertexColor.DISK0, VertexColor.DISK1)]
    _add_positive_levels(draft, rng, level0, prefix, max_levels, allow_spheres)
    return draft.build(STRIP_KIND, rng, path, k0=counts[0], k1=counts[1])


def random_disk_tree(
    rng: np.random.Generator,
    lattice: Optional[ClassLattice] = None,
    *,
    max_disks: int = 3,
    max_marked: int = 4,
    max_levels: int = 2,
    allow_spheres: bool = True,
    constant_probability: float = 0.4,
    stable: bool = False,
) -> RibbonTree:
    """
    Draw a valid disk tree; some disk vertices carry the zero class.

    Args:
        rng: numpy random generator
        lattice: Lattice containing the generic basis names
        max_disks: Maximal number of disk vertices
        max_marked: Maximal number of marked points besides the root
        max_levels: Maximal number of positive levels
        allow_spheres: Whether sphere (s) vertices may appear
        constant_probability: Probability that a disk vertex has class zero
        stable: Give d0 a nonzero class and every constant disk at least three
            special points (interior attachments count twice); the marked point
            count may then exceed max_marked

    Returns:
        RibbonTree passing validate_tree
    """
    lattice = lattice or generic_lattice()
    draft = _Draft(lattice)
    disks: List[str] = []
    for i in range(int(rng.integers(1, max_disks + 1))):
        coeffs = {} if rng.random() < constant_probability else _surface_coeffs(rng)
        if stable and i == 0 and not any(coeffs.values()):
            coeffs = {SURFACE_BASIS[0]: 1}
        vid = draft.add_vertex(f"d{i}", VertexColor.DISK, 0, coeffs)
        if disks:
            draft.connect(disks[int(rng.integers(0, len(disks)))], vid)
        disks.append(vid)
    draft.add_vertex('z0', VertexColor.EXTERIOR, marker=0)
    draft.connect(disks[0], 'z0')
    _add_positive_levels(draft, rng, list(disks), '', max_levels, allow_spheres)

    hosts: List[str] = []
    if stable:
        for vid in disks:
            if any(draft.coeffs[vid].values()):
                continue
            special = sum(1 if draft.levels[w] == 0 else 2 for w in draft.adjacency[vid])
            hosts.extend([vid] * max(0, 3 - special))
    extra = int(rng.integers(0, max_marked + 1))
    hosts.extend(disks[int(rng.integers(0, len(disks)))] for _ in range(max(0, extra - len(hosts))))
    order = rng.permutation(len(hosts))
    for j, idx in enumerate(order, start=1):
        zid = draft.add_vertex(f"z{j}", VertexColor.EXTERIOR, marker=j)
        draft.connect(hosts[int(idx)], zid)
    return draft.build(DISK_KIND, rng, k=len(hosts))


def random_strip_pair(rng: np.random.Generator, lattice: Optional[ClassLattice] = None,
                      **kwargs) -> Tuple[RibbonTree, RibbonTree]:
    """Two strip trees with disjoint interior ids whose shared end generators agree."""
    left = random_strip_tree(rng, lattice, prefix='a', **kwargs)
    right = random_strip_tree(rng, lattice, prefix='b', **kwargs)
    shared = left.edge(left.strip_path[-2], RIGHT_END).generator
    first = right.edge(LEFT_END, right.strip_path[1])
    edges = tuple(
        Edge(e.ends, e.multiplicity, shared) if e.ends == first.ends else e for e in right.edges
    )
    return left, replace(right, edges=edges)
