"""
Ribbon Tree Tools
Validation of SD/DD trees against the invariants the dimension formulas rely on,
stratum rank, canonical form and JSON conversion.
"""

from collections import deque
from dataclasses import replace
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set
import logging

from common.errors import LatticeError, TreeValidationError
from common.io import SCHEMA_VERSION, check_version, dump_report
from engine.classgroup.schemas import ClassLattice, HomologyClass, class_from_json
from engine.classgroup.tools import pair

from .schemas import (
    DISK_KIND,
    LEFT_END,
    RIGHT_END,
    STRIP_KIND,
    Edge,
    RibbonTree,
    StratumRank,
    TreeFile,
    ValidationIssue,
    ValidationReport,
    Vertex,
    VertexColor,
)

logger = logging.getLogger(__name__)

ExtraConstraint = Callable[[RibbonTree], Iterable[Any]]

STRIP_COLORS = frozenset({
    VertexColor.DISK0, VertexColor.DISK1, VertexColor.SPHERE,
    VertexColor.DIVISOR, VertexColor.STRIP, VertexColor.EXTERIOR,
})
DISK_COLORS = frozenset({
    VertexColor.DISK, VertexColor.SPHERE, VertexColor.DIVISOR, VertexColor.EXTERIOR,
})


class _Collector:
    def __init__(self):
        self.issues: List[ValidationIssue] = []

    def add(self, code: str, subject: str, message: str) -> None:
        self.issues.append(ValidationIssue(code, subject, message))


def _check_graph(tree: RibbonTree, out: _Collector) -> bool:
    ids = [v.id for v in tree.vertices]
    seen: Set[str] = set()
    for vid in ids:
        if vid in seen:
            out.add('duplicate-vertex', vid, 'vertex id listed twice')
        seen.add(vid)
    keys: Set[Any] = set()
    ok = len(seen) == len(ids)
    for e in tree.edges:
        if e.ends[0] == e.ends[1]:
            out.add('self-loop', e.id, 'edge joins a vertex to itself')
            ok = False
        for end in e.ends:
            if end not in seen:
                out.add('dangling-edge', e.id, f'endpoint {end} is not a vertex')
                ok = False
        if e.ends in keys:
            out.add('duplicate-edge', e.id, 'edge listed twice')
            ok = False
        keys.add(e.ends)
    if not ok:
        return False
    if not ids:
        out.add('not-a-tree', '', 'tree has no vertices')
        return False
    if len(tree.edges) != len(ids) - 1:
        out.add('not-a-tree', '', f'{len(tree.edges)} edges for {len(ids)} vertices')
        return False
    start = ids[0]
    reached = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in tree.neighbors(u):
            if w not in reached:
                reached.add(w)
                queue.append(w)
    if len(reached) != len(ids):
        missing = sorted(set(ids) - reached)
        out.add('not-a-tree', missing[0], 'graph is disconnected')
        return False
    return True


def _check_vertices(tree: RibbonTree, out: _Collector) -> None:
    lattice = tree.lattice
    for v in tree.vertices:
        if v.color is VertexColor.DIVISOR and v.level < 1:
            out.add('color-level', v.id, 'D vertices must have positive level')
        elif v.color is not VertexColor.DIVISOR and v.level != 0:
            out.add('color-level', v.id, f'{v.color.value} vertices must have level 0')
        if v.is_interior and v.alpha is None:
            out.add('class-label', v.id, 'interior vertex has no class')
        if not v.is_interior and v.alpha is not None:
            out.add('class-label', v.id, 'exterior vertex carries a class')
        if v.alpha is not None and lattice is not None and v.alpha.lattice != lattice:
            out.add('class-lattice', v.id, 'class belongs to a different lattice')
        neighbors = set(tree.neighbors(v.id))
        if set(v.ribbon_order) != neighbors or len(v.ribbon_order) != len(neighbors):
            out.add('ribbon-order', v.id, 'ribbon order is not a cyclic order of the neighbors')
        if not v.is_interior:
            if len(neighbors) != 1:
                out.add('exterior-degree', v.id, 'exterior vertex must have exactly one edge')
            else:
                (nb,) = neighbors
                if not tree.vertex(nb).color.is_boundary_component:
                    out.add('exterior-degree', v.id, 'exterior vertex must sit on a disk or strip')


def _check_multiplicities(tree: RibbonTree, out: _Collector) -> None:
    vm = tree.vertex_map
    for e in tree.edges:
        mixed = tree.is_mixed_level_edge(e)
        if mixed and e.multiplicity is None:
            out.add('multiplicity-domain', e.id, 'missing multiplicity on a level-crossing edge')
        if not mixed and e.multiplicity is not None:
            out.add('multiplicity-domain', e.id, 'multiplicity on an edge that does not cross levels')
    for v in tree.interior_vertices:
        if v.level != 0:
            continue
        mixed_edges = [tree.edge(v.id, w) for w in tree.neighbors(v.id) if vm[w].is_interior and vm[w].level > 0]
        if v.color is VertexColor.SPHERE:
            if any(vm[w].level == 0 for w in tree.neighbors(v.id)):
                out.add('sphere-edge', v.id, 'sphere vertices attach only to positive levels')
            known = [e.multiplicity for e in mixed_edges if e.multiplicity is not None]
            negative = sum(1 for m in known if m < 0)
            positive = sum(1 for m in known if m > 0)
            if negative != 1 or positive != len(known) - 1:
                out.add('multiplicity-sign', v.id, 'sphere vertex needs one negative and otherwise positive multiplicities')
        else:
            for e in mixed_edges:
                if e.multiplicity is not None and e.multiplicity <= 0:
                    out.add('multiplicity-sign', e.id, 'tangency multiplicity must be positive')


def _check_levels(tree: RibbonTree, out: _Collector) -> None:
    levels = {v.level for v in tree.interior_vertices}
    if not levels:
        return
    expected = set(range(max(levels) + 1))
    if levels != expected:
        missing = sorted(expected - levels)
        out.add('level-surjective', str(missing[0]), f'no interior vertex at level {missing[0]}')


def _check_strip(tree: RibbonTree, out: _Collector) -> None:
    vm = tree.vertex_map
    for v in tree.vertices:
        if v.color not in STRIP_COLORS:
            out.add('strip-color', v.id, f'color {v.color.value} not allowed in strip trees')
    path = tree.strip_path
    if len(path) < 3 or path[0] != LEFT_END or path[-1] != RIGHT_END:
        out.add('strip-ends', LEFT_END, f'strip path must run from {LEFT_END} to {RIGHT_END} through a strip vertex')
        return
    for end in (LEFT_END, RIGHT_END):
        if end not in vm or vm[end].is_interior:
            out.add('strip-ends', end, 'strip ends must be exterior vertices')
            return
    for a, b in zip(path, path[1:]):
        if tree.edge(a, b) is None:
            out.add('strip-path', f'{a}~{b}', 'consecutive path vertices are not adjacent')
    inner = set(path[1:-1])
    if len(inner) != len(path) - 2:
        out.add('strip-path', path[1], 'strip path repeats a vertex')
    for vid in path[1:-1]:
        if vid in vm and vm[vid].color is not VertexColor.STRIP:
            out.add('strip-path-color', vid, 'interior path vertices must be strip vertices')
    for v in tree.vertices:
        if v.color is VertexColor.STRIP and v.id not in inner:
            out.add('strip-path-color', v.id, 'strip vertex off the strip path')
    for e in tree.edges:
        on_path = e.ends in tree.path_edge_keys
        if on_path and not e.generator:
            out.add('generator-label', e.id, 'strip path edge has no generator label')
        if not on_path and e.generator:
            out.add('generator-label', e.id, 'generator label off the strip path')

    markers = {0: [], 1: []}
    for v in tree.exterior_vertices:
        if v.id in (LEFT_END, RIGHT_END):
            continue
        if v.side not in (0, 1) or v.marker is None or v.marker < 1:
            out.add('marked-point', v.id, 'marked points need side 0 or 1 and a marker >= 1')
            continue
        markers[v.side].append(v.marker)
    for side, expected in ((0, tree.k0), (1, tree.k1)):
        if sorted(markers[side]) != list(range(1, expected + 1)):
            out.add('marked-count', f'side{side}', f'side {side} markers must be 1..{expected}')

    for v in tree.interior_vertices:
        if not v.color.is_disk:
            continue
        side = 0 if v.color is VertexColor.DISK0 else 1
        for w in tree.neighbors(v.id):
            nb = vm[w]
            if nb.level != 0 or nb.color is VertexColor.SPHERE:
                continue
            if nb.color.is_disk and nb.color is not v.color:
                out.add('side', v.id, f'disk on side {side} touches a disk on the other side')
            if not nb.is_interior and nb.side is not None and nb.side != side:
                out.add('side', v.id, f'disk on side {side} carries a marked point of the other side')

    off_path = sum(1 for e in tree.edges if tree.is_level0_interior_edge(e) and e.ends not in tree.path_edge_keys)
    disks = tree.count_colors(VertexColor.DISK0, VertexColor.DISK1)
    if disks != off_path:
        out.add('identity-disks', '', f'{disks} disk vertices but {off_path} interior level-0 edges off the path')


def _check_disk(tree: RibbonTree, out: _Collector) -> None:
    for v in tree.vertices:
        if v.color not in DISK_COLORS:
            out.add('disk-color', v.id, f'color {v.color.value} not allowed in disk trees')
    markers = []
    for v in tree.exterior_vertices:
        if v.marker is None or v.marker < 0:
            out.add('marked-point', v.id, 'exterior vertices of disk trees need a marker')
            continue
        markers.append(v.marker)
    if sorted(markers) != list(range(0, tree.k + 1)):
        out.add('marked-count', 'root', f'markers must be 0..{tree.k}')
    level0 = sum(1 for e in tree.edges if tree.is_level0_interior_edge(e))
    disks = tree.count_colors(VertexColor.DISK)
    if disks - 1 != level0:
        out.add('identity-disks', '', f'{disks} disk vertices but {level0} interior level-0 edges')


def n_positive(tree: RibbonTree) -> int:
    """Number of interior edges incident to a positive-level vertex."""
    vm = tree.vertex_map
    return sum(
        1 for e in tree.edges
        if tree.is_interior_edge(e) and any(vm[end].level > 0 for end in e.ends)
    )


def _check_identities(tree: RibbonTree, out: _Collector) -> None:
    spheres = tree.count_colors(VertexColor.SPHERE, VertexColor.DIVISOR)
    n_pos = n_positive(tree)
    if spheres != n_pos:
        out.add('identity-spheres', '', f'{spheres} sphere vertices but {n_pos} edges into positive levels')
    divisor = [v for v in tree.interior_vertices if v.level > 0]
    if not divisor:
        return
    try:
        lhs = sum((pair(v.alpha, 'c1D') for v in divisor if v.alpha is not None), Fraction(0))
        rhs = sum((pair(v.alpha, 'c1X') for v in divisor if v.alpha is not None), Fraction(0))
    except LatticeError as e:
        out.add('balance', '', f'cannot evaluate the balance condition: {e}')
        return
    rhs += sum(e.multiplicity for e in tree.edges if tree.is_mixed_level_edge(e) and e.multiplicity is not None)
    if lhs != rhs:
        out.add('balance', '', f'c1(D) total {lhs} differs from c1(X) total plus multiplicities {rhs}')


def _run_extra(tree: RibbonTree, constraints: Sequence[ExtraConstraint], out: _Collector) -> None:
    for constraint in constraints:
        for item in constraint(tree) or ():
            if isinstance(item, ValidationIssue):
                out.issues.append(item)
            else:
                out.add('extra', getattr(constraint, '__name__', 'constraint'), str(item))


def validate_tree(
    tree: RibbonTree,
    extra_constraints: Optional[Sequence[ExtraConstraint]] = None,
) -> ValidationReport:
    """
    Check every structural invariant of an SD or DD tree.

    Args:
        tree: Tree to check
        extra_constraints: Callables returning further issues for stricter axiom sets

    Returns:
        ValidationReport with issues sorted by (code, subject, message)
    """
    out = _Collector()
    if tree.kind not in (STRIP_KIND, DISK_KIND):
        out.add('kind', tree.kind, 'tree kind must be strip or disk')
    elif _check_graph(tree, out):
        _check_vertices(tree, out)
        _check_multiplicities(tree, out)
        _check_levels(tree, out)
        if tree.is_strip:
            _check_strip(tree, out)
        else:
            _check_disk(tree, out)
        _check_identities(tree, out)
        _run_extra(tree, extra_constraints or (), out)
    issues = tuple(sorted(set(out.issues), key=lambda i: (i.code, i.subject, i.message)))
    if issues:
        logger.debug(f"Tree validation found {len(issues)} issues: {[i.code for i in issues]}")
    return ValidationReport(issues)


def require_valid(tree: RibbonTree) -> RibbonTree:
    report = validate_tree(tree)
    if not report.passed:
        raise TreeValidationError(
            f"Invalid tree: {', '.join(sorted(set(report.codes())))}", report.issues
        )
    return tree


def corner_codim(tree: RibbonTree) -> int:
    if tree.is_strip:
        return tree.count_colors(VertexColor.DISK0, VertexColor.DISK1, VertexColor.STRIP) - 1
    return tree.count_colors(VertexColor.DISK) - 1


def stratum_rank(tree: RibbonTree) -> StratumRank:
    """
    Positive level count and corner codimension.

    Args:
        tree: A valid tree

    Returns:
        StratumRank
    """
    require_valid(tree)
    return StratumRank(positive_levels=tree.positive_levels, corner_codim=corner_codim(tree))


def total_class(tree: RibbonTree) -> HomologyClass:
    """Sum of the classes of all interior vertices."""
    classes = [v.alpha for v in tree.interior_vertices if v.alpha is not None]
    if not classes:
        if tree.lattice is None:
            raise LatticeError('Tree has no classes and no lattice')
        return tree.lattice.zero()
    total = classes[0]
    for cls in classes[1:]:
        total = total + cls
    return total


def hat_component(tree: RibbonTree, vertex_id: str) -> FrozenSet[str]:
    """
    Interior vertices reachable from vertex_id without crossing an
    interior level-0 edge: a boundary component with its sphere bubbles.
    """
    vm = tree.vertex_map
    seen = {vertex_id}
    queue = deque([vertex_id])
    while queue:
        u = queue.popleft()
        for w in tree.neighbors(u):
            if w in seen or not vm[w].is_interior:
                continue
            if vm[u].level == 0 and vm[w].level == 0:
                continue
            seen.add(w)
            queue.append(w)
    return frozenset(seen)


def component_class(tree: RibbonTree, vertex_ids: Iterable[str]) -> HomologyClass:
    total = tree.lattice.zero() if tree.lattice is not None else None
    for vid in sorted(vertex_ids):
        alpha = tree.vertex(vid).alpha
        if alpha is None:
            continue
        total = alpha if total is None else total + alpha
    if total is None:
        raise LatticeError('Component has no classes and the tree has no lattice')
    return total


def rotate_ribbon(order: Sequence[str]) -> tuple:
    """Rotate a cyclic order to start at its smallest id."""
    if not order:
        return ()
    i = min(range(len(order)), key=lambda j: order[j])
    return tuple(order[i:]) + tuple(order[:i])


def canonicalize(tree: RibbonTree) -> RibbonTree:
    """Sort vertices by id, edges by ends, and rotate ribbon orders."""
    vertices = tuple(
        replace(v, ribbon_order=rotate_ribbon(v.ribbon_order))
        for v in sorted(tree.vertices, key=lambda v: v.id)
    )
    edges = tuple(sorted(tree.edges, key=lambda e: e.ends))
    return replace(tree, vertices=vertices, edges=edges)


def tree_to_dict(tree: RibbonTree) -> Dict[str, Any]:
    """Serialize a tree (canonical order) to its JSON document."""
    tree = canonicalize(tree)
    vertices = []
    for v in tree.vertices:
        record: Dict[str, Any] = {'id': v.id, 'color': v.color.value, 'level': v.level}
        if v.alpha is not None:
            record['alpha'] = v.alpha.to_list()
        record['ribbon_order'] = list(v.ribbon_order)
        if v.marker is not None:
            record['marker'] = v.marker
        if v.side is not None:
            record['side'] = v.side
        vertices.append(record)
    edges = []
    for e in tree.edges:
        record = {'ends': list(e.ends)}
        if e.multiplicity is not None:
            record['multiplicity'] = e.multiplicity
        if e.generator is not None:
            record['generator'] = e.generator
        edges.append(record)
    data: Dict[str, Any] = {
        'version': SCHEMA_VERSION,
        'kind': tree.kind,
        'vertices': vertices,
        'edges': edges,
    }
    if tree.is_strip:
        data.update({'strip_path': list(tree.strip_path), 'k0': tree.k0, 'k1': tree.k1})
    else:
        data['k'] = tree.k
    return data


def tree_from_dict(data: Dict[str, Any], lattice: ClassLattice) -> RibbonTree:
    """
    Parse a tree document.

    Args:
        data: JSON object with a version field
        lattice: Lattice for the vertex classes

    Returns:
        RibbonTree (not validated)
    """
    check_version(data, 'tree')
    model = TreeFile.model_validate(data)
    vertices = tuple(
        Vertex(
            id=v.id,
            color=v.color,
            level=v.level,
            alpha=class_from_json(lattice, v.alpha) if v.alpha is not None else None,
            ribbon_order=tuple(v.ribbon_order),
            marker=v.marker,
            side=v.side,
        )
        for v in model.vertices
    )
    edges = tuple(Edge(tuple(e.ends), e.multiplicity, e.generator) for e in model.edges)
    return RibbonTree(
        kind=model.kind,
        vertices=vertices,
        edges=edges,
        strip_path=tuple(model.strip_path),
        k0=model.k0,
        k1=model.k1,
        k=model.k,
        lattice=lattice,
    )


def canonical_json(tree: RibbonTree) -> str:
    """Byte-comparable serialization."""
    return dump_report(tree_to_dict(tree))


def trees_equal(a: RibbonTree, b: RibbonTree) -> bool:
    return canonicalize(a) == canonicalize(b)
