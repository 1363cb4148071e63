"""
Tree Operations
Gluing and splitting strip trees along a strip-path edge, forgetful maps on
disk trees, the disk-splitting decomposition and the enumeration of
codimension-one boundary strata of strip moduli.
"""

from collections import deque
from dataclasses import replace
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union
import logging

from common.errors import (
    BoundaryError,
    DiskSplitError,
    ForgetError,
    GlueError,
    SplitError,
    TreeValidationError,
)
from engine.classgroup.schemas import ClassLattice, HomologyClass
from engine.classgroup.tools import maslov, pair
from engine.dimension.tools import tree_dim_closed
from engine.trees.schemas import (
    DISK_KIND,
    LEFT_END,
    RIGHT_END,
    STRIP_KIND,
    Edge,
    RibbonTree,
    Vertex,
    VertexColor,
    edge_key,
)
from engine.trees.tools import (
    canonicalize,
    component_class,
    hat_component,
    require_valid,
    validate_tree,
)

from .schemas import (
    BoundaryDescriptor,
    BoundaryProblem,
    DecompositionBasis,
    DiskSplitPiece,
    LevelMerge,
    SplitResult,
)

logger = logging.getLogger(__name__)

EdgeRef = Union[str, Tuple[str, str], Edge]


def _substitute(order: Sequence[str], old: str, new: str) -> Tuple[str, ...]:
    return tuple(new if x == old else x for x in order)


def _require_strip(tree: RibbonTree, error) -> None:
    if not tree.is_strip:
        raise error(f"Expected a strip tree, got kind {tree.kind!r}")
    try:
        require_valid(tree)
    except TreeValidationError as e:
        raise error(str(e)) from e


def _shared_generator(left: RibbonTree, right: RibbonTree) -> str:
    """Label where left ends, checked against the label where right begins."""
    _require_strip(left, GlueError)
    _require_strip(right, GlueError)
    end = left.edge(left.strip_path[-2], RIGHT_END).generator
    start = right.edge(LEFT_END, right.strip_path[1]).generator
    if end != start:
        raise GlueError(f"Generator mismatch: left tree ends at {end!r}, right tree starts at {start!r}")
    return end


def level_merges(a: int, b: int) -> List[LevelMerge]:
    """
    All level functions on a glued tree whose sides carry a and b levels.

    Args:
        a: Positive levels of the left tree
        b: Positive levels of the right tree

    Returns:
        LevelMerges ordered by (size, left, right)
    """
    merges = []
    for size in range(max(a, b), a + b + 1):
        levels = range(1, size + 1)
        for left in combinations(levels, a):
            for right in combinations(levels, b):
                if len(set(left) | set(right)) == size:
                    merges.append(LevelMerge(left, right, size))
    return merges


def enumerate_level_merges(left: RibbonTree, right: RibbonTree) -> List[LevelMerge]:
    """Every level function admissible for gluing left to right, canonically ordered."""
    _shared_generator(left, right)
    merges = level_merges(left.positive_levels, right.positive_levels)
    logger.debug(
        f"{len(merges)} level merges for {left.positive_levels} and {right.positive_levels} levels"
    )
    return merges


def glue(left: RibbonTree, right: RibbonTree, merge: LevelMerge) -> RibbonTree:
    """
    Glue the right end of left to the left end of right.

    The two edges at the shared generator r become a single strip-path edge
    labelled r, levels are relabelled through merge, and the marked points of
    right are numbered after those of left on each side.

    Args:
        left: Strip tree ending at r
        right: Strip tree starting at r, ids disjoint from left's apart from the strip ends
        merge: Level function restricting to both sides

    Returns:
        The glued strip tree (canonical form)
    """
    generator = _shared_generator(left, right)
    if left.lattice is not None and right.lattice is not None and left.lattice != right.lattice:
        raise GlueError("Trees use different lattices")
    if len(merge.left) != left.positive_levels or len(merge.right) != right.positive_levels:
        raise GlueError(
            f"Level merge expects ({len(merge.left)}, {len(merge.right)}) levels, "
            f"trees have ({left.positive_levels}, {right.positive_levels})"
        )
    left_ids = {v.id for v in left.vertices} - {RIGHT_END}
    right_ids = {v.id for v in right.vertices} - {LEFT_END}
    clash = left_ids & right_ids
    if clash:
        raise GlueError(f"Vertex ids shared by both trees: {sorted(clash)}")

    a = left.strip_path[-2]
    b = right.strip_path[1]
    vertices: List[Vertex] = []
    for v in left.vertices:
        if v.id == RIGHT_END:
            continue
        order = _substitute(v.ribbon_order, RIGHT_END, b) if v.id == a else v.ribbon_order
        level = merge.left[v.level - 1] if v.level > 0 else 0
        vertices.append(replace(v, level=level, ribbon_order=order))
    for v in right.vertices:
        if v.id == LEFT_END:
            continue
        order = _substitute(v.ribbon_order, LEFT_END, a) if v.id == b else v.ribbon_order
        level = merge.right[v.level - 1] if v.level > 0 else 0
        marker = v.marker
        if not v.is_interior and v.side is not None and marker is not None:
            marker += left.k0 if v.side == 0 else left.k1
        vertices.append(replace(v, level=level, ribbon_order=order, marker=marker))

    edges = [e for e in left.edges if e.ends != edge_key(a, RIGHT_END)]
    edges += [e for e in right.edges if e.ends != edge_key(LEFT_END, b)]
    edges.append(Edge((a, b), generator=generator))
    glued = RibbonTree(
        STRIP_KIND,
        tuple(vertices),
        tuple(edges),
        left.strip_path[:-1] + right.strip_path[1:],
        k0=left.k0 + right.k0,
        k1=left.k1 + right.k1,
        lattice=left.lattice or right.lattice,
    )
    report = validate_tree(glued)
    if not report.passed:
        raise GlueError(f"Glued tree is invalid: {', '.join(sorted(set(report.codes())))}")
    return canonicalize(glued)


def _edge_ends(edge: EdgeRef) -> Tuple[str, str]:
    if isinstance(edge, Edge):
        return edge.ends
    if isinstance(edge, str):
        parts = edge.split('~')
        if len(parts) != 2:
            raise SplitError(f"Edge id must look like 'a~b', got {edge!r}")
        return edge_key(parts[0], parts[1])
    u, v = edge
    return edge_key(u, v)


def _reachable(tree: RibbonTree, start: str, blocked: Tuple[str, str]) -> Set[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in tree.neighbors(u):
            if w in seen or edge_key(u, w) == blocked:
                continue
            seen.add(w)
            queue.append(w)
    return seen


def _half(tree: RibbonTree, ids: Set[str], inner: str, outer: str, end_id: str,
          path: Tuple[str, ...], generator: str) -> Tuple[RibbonTree, Tuple[int, ...]]:
    vm = tree.vertex_map
    used = tuple(sorted({vm[v].level for v in ids if vm[v].level > 0}))
    level_rank = {level: i + 1 for i, level in enumerate(used)}
    markers: Dict[int, List[int]] = {0: [], 1: []}
    for vid in ids:
        v = vm[vid]
        if not v.is_interior and v.side in (0, 1) and v.marker is not None:
            markers[v.side].append(v.marker)
    marker_rank = {side: {m: i + 1 for i, m in enumerate(sorted(ms))} for side, ms in markers.items()}

    vertices = []
    for vid in sorted(ids):
        v = vm[vid]
        order = _substitute(v.ribbon_order, outer, end_id) if vid == inner else v.ribbon_order
        marker = v.marker
        if not v.is_interior and v.side in (0, 1) and marker is not None:
            marker = marker_rank[v.side][marker]
        vertices.append(replace(v, level=level_rank.get(v.level, 0), ribbon_order=order, marker=marker))
    vertices.append(Vertex(end_id, VertexColor.EXTERIOR, ribbon_order=(inner,)))
    edges = [e for e in tree.edges if e.ends[0] in ids and e.ends[1] in ids]
    edges.append(Edge((inner, end_id), generator=generator))
    piece = RibbonTree(
        STRIP_KIND, tuple(vertices), tuple(edges), path,
        k0=len(markers[0]), k1=len(markers[1]), lattice=tree.lattice,
    )
    return piece, used


def split(tree: RibbonTree, edge: EdgeRef) -> SplitResult:
    """
    Cut a strip tree at an interior strip-path edge.

    Args:
        tree: Valid strip tree
        edge: The edge as an Edge, an (a, b) pair or an 'a~b' id

    Returns:
        SplitResult with canonical pieces, the level merge, the edge label and h
    """
    _require_strip(tree, SplitError)
    key = _edge_ends(edge)
    path = tree.strip_path
    positions = [i for i in range(len(path) - 1) if edge_key(path[i], path[i + 1]) == key]
    if not positions:
        raise SplitError(f"Edge {key[0]}~{key[1]} is not on the strip path")
    i = positions[0]
    a, b = path[i], path[i + 1]
    if a == LEFT_END or b == RIGHT_END:
        raise SplitError(f"Edge {a}~{b} ends at a strip end and cannot be split")
    generator = tree.edge(a, b).generator

    left_ids = _reachable(tree, LEFT_END, key)
    right_ids = {v.id for v in tree.vertices} - left_ids
    left, left_levels = _half(tree, left_ids, a, b, RIGHT_END, path[:i + 1] + (RIGHT_END,), generator)
    right, right_levels = _half(tree, right_ids, b, a, LEFT_END, (LEFT_END,) + path[i + 1:], generator)

    vm = tree.vertex_map
    for side, count in ((0, left.k0), (1, left.k1)):
        on_left = sorted(vm[v].marker for v in left_ids if not vm[v].is_interior and vm[v].side == side)
        if on_left != list(range(1, count + 1)):
            raise SplitError(f"Marked points on side {side} are not separated by edge {a}~{b}")

    for piece in (left, right):
        report = validate_tree(piece)
        if not report.passed:
            raise SplitError(f"Split piece is invalid: {', '.join(sorted(set(report.codes())))}")

    merge = LevelMerge(left_levels, right_levels, tree.positive_levels)
    logger.debug(f"Split at {a}~{b} ({generator}) with h={merge.h}")
    return SplitResult(canonicalize(left), canonicalize(right), merge, generator, merge.h)


def _is_level0_neighbor(tree: RibbonTree, vid: str) -> bool:
    v = tree.vertex(vid)
    return v.level == 0 and v.color is not VertexColor.SPHERE


def forget(tree: RibbonTree, j: int) -> RibbonTree:
    """
    Forget the j-th boundary marked point of a disk tree.

    The host disk keeps its place when its component carries a nonzero class
    or stays stable without the point; a constant host left with two special
    points is removed and its two neighbors are joined by a new edge.
    Markers above j move down by one.

    Args:
        tree: Valid disk tree
        j: Marker in 1..k

    Returns:
        Disk tree with k-1 marked points (canonical form)
    """
    if tree.is_strip:
        raise ForgetError("Forgetful maps apply to disk trees")
    require_valid(tree)
    if j == 0:
        raise ForgetError("Forgetting the 0-th marked point is not supported")
    if not 1 <= j <= tree.k:
        raise ForgetError(f"Marker {j} out of range 1..{tree.k}")

    vm = tree.vertex_map
    leaf = next(v for v in tree.exterior_vertices if v.marker == j)
    (host,) = tree.neighbors(leaf.id)
    beta = component_class(tree, hat_component(tree, host))
    level0 = [w for w in tree.neighbors(host) if _is_level0_neighbor(tree, w)]
    positive = [w for w in tree.neighbors(host) if vm[w].is_interior and vm[w].level > 0]
    k_v = len(level0) - 1

    dropped = {leaf.id}
    swaps: Dict[str, Tuple[str, str]] = {}
    new_edges: List[Edge] = []
    if not beta.is_zero or k_v + 2 * len(positive) >= 3:
        case = 1 if not beta.is_zero else 2
    elif k_v == 2 and not positive:
        u1, u2 = sorted(w for w in level0 if w != leaf.id)
        if not vm[u1].is_interior and not vm[u2].is_interior:
            raise ForgetError(f"Collapsing {host} would join two marked points")
        case = 3
        dropped.add(host)
        swaps[u1] = (host, u2)
        swaps[u2] = (host, u1)
        new_edges.append(Edge((u1, u2)))
    else:
        raise ForgetError(f"Constant component at {host} is unstable")
    logger.debug(f"Forgetting marker {j} on {host}: case {case}")

    vertices = []
    for v in tree.vertices:
        if v.id in dropped:
            continue
        order = v.ribbon_order
        if v.id == host:
            order = tuple(x for x in order if x != leaf.id)
        if v.id in swaps:
            order = _substitute(order, *swaps[v.id])
        marker = v.marker
        if not v.is_interior and marker is not None and marker > j:
            marker -= 1
        vertices.append(replace(v, ribbon_order=order, marker=marker))
    edges = [e for e in tree.edges if not (set(e.ends) & dropped)] + new_edges
    result = RibbonTree(DISK_KIND, tuple(vertices), tuple(edges), k=tree.k - 1, lattice=tree.lattice)
    report = validate_tree(result)
    if not report.passed:
        raise ForgetError(f"Forgetting marker {j} gave an invalid tree: {sorted(set(report.codes()))}")
    return canonicalize(result)


def forget_all(tree: RibbonTree) -> RibbonTree:
    """Forget every marked point but the 0-th, highest marker first."""
    while tree.k > 0:
        tree = forget(tree, tree.k)
    return canonicalize(tree)


def _owners(tree: RibbonTree, contraction: Mapping[str, str]) -> Dict[str, str]:
    disks = {v.id for v in tree.interior_vertices if v.color is VertexColor.DISK}
    unknown = set(contraction) - disks
    if unknown:
        raise DiskSplitError(f"Contraction maps non-disk vertices: {sorted(unknown)}")
    missing = disks - set(contraction)
    if missing:
        raise DiskSplitError(f"Contraction misses disk vertices: {sorted(missing)}")
    owner: Dict[str, str] = {}
    for d in sorted(disks):
        for vid in hat_component(tree, d):
            target = contraction[d]
            if vid in owner and owner[vid] != target:
                raise DiskSplitError(f"Vertex {vid} lies in a component mapped to {owner[vid]} and {target}")
            owner[vid] = target
    return owner


def _check_fibers(tree: RibbonTree, owner: Mapping[str, str]) -> None:
    by_target: Dict[str, Set[str]] = {}
    for vid, target in owner.items():
        by_target.setdefault(target, set()).add(vid)
    for target, members in sorted(by_target.items()):
        start = min(members)
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in tree.neighbors(u):
                if w in members and w not in seen:
                    seen.add(w)
                    queue.append(w)
        if seen != members:
            raise DiskSplitError(f"Components mapped to {target} are not connected by level-0 edges")


def _distances(tree: RibbonTree, start: str) -> Dict[str, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in tree.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def disk_split(tree: RibbonTree, contraction: Mapping[str, str]) -> List[DiskSplitPiece]:
    """
    Decompose a disk tree along a contraction of its disk-splitting tree.

    Args:
        tree: Valid disk tree
        contraction: Target name for every d vertex; d vertices joined through
            positive levels share a target and every fiber is connected

    Returns:
        One piece per target, sorted by target. Cut level-0 edges become
        exterior node vertices 'node:<inside>:<outside>'; the 0-th marker goes
        to the root or to the node facing it.
    """
    if tree.is_strip:
        raise DiskSplitError("Disk splitting applies to disk trees")
    require_valid(tree)
    owner = _owners(tree, contraction)
    _check_fibers(tree, owner)
    vm = tree.vertex_map
    root = next(v for v in tree.exterior_vertices if v.marker == 0)
    dist = _distances(tree, root.id)

    pieces = []
    for target in sorted(set(owner.values())):
        inside = {vid for vid, w in owner.items() if w == target}
        exteriors = sorted(
            (v for v in tree.exterior_vertices if tree.neighbors(v.id)[0] in inside),
            key=lambda v: v.marker,
        )
        cuts = sorted(
            (u, x) for u in inside for x in tree.neighbors(u)
            if vm[x].is_interior and x not in inside
        )
        node_ids = {(u, x): f"node:{u}:{x}" for u, x in cuts}

        if any(v.id == root.id for v in exteriors):
            first = root.id
        else:
            (first,) = [node_ids[(u, x)] for u, x in cuts if dist[x] < dist[u]]
        rest = [v.id for v in exteriors if v.id != first] + sorted(n for n in node_ids.values() if n != first)
        new_marker = {first: 0}
        new_marker.update({vid: i + 1 for i, vid in enumerate(rest)})

        used = sorted({vm[v].level for v in inside if vm[v].level > 0})
        level_rank = {level: i + 1 for i, level in enumerate(used)}
        level_map: Tuple[Tuple[int, int], ...] = ()
        if used:
            level_map = tuple(
                (i, max(1, sum(1 for u in used if u <= i)))
                for i in range(1, tree.positive_levels + 1)
            )

        outside_to_node = {u: {} for u in inside}
        for (u, x), node in node_ids.items():
            outside_to_node[u][x] = node
        vertices = []
        for vid in sorted(inside):
            v = vm[vid]
            order = tuple(outside_to_node[vid].get(x, x) for x in v.ribbon_order)
            vertices.append(replace(v, level=level_rank.get(v.level, 0), ribbon_order=order))
        for v in exteriors:
            vertices.append(replace(v, marker=new_marker[v.id]))
        for (u, x), node in node_ids.items():
            vertices.append(Vertex(node, VertexColor.EXTERIOR, ribbon_order=(u,), marker=new_marker[node]))

        members = inside | {v.id for v in exteriors}
        edges = [e for e in tree.edges if e.ends[0] in members and e.ends[1] in members]
        edges += [Edge((u, node)) for (u, _x), node in node_ids.items()]
        piece = RibbonTree(
            DISK_KIND, tuple(vertices), tuple(edges),
            k=len(new_marker) - 1, lattice=tree.lattice,
        )
        issues = [i.code for i in validate_tree(piece).issues if i.code != 'balance']
        if issues:
            raise DiskSplitError(f"Piece {target} is invalid: {sorted(set(issues))}")
        pieces.append(DiskSplitPiece(target, canonicalize(piece), level_map))
    logger.debug(f"Disk split produced {len(pieces)} pieces")
    return pieces


def _strip_order(prev: str, nxt: str, side0: Sequence[str], side1: Sequence[str]) -> Tuple[str, ...]:
    return (prev,) + tuple(side0) + (nxt,) + tuple(reversed(side1))


def _marked(side: int, marker: int, host: str) -> Vertex:
    return Vertex(f"z{side}_{marker}", VertexColor.EXTERIOR, ribbon_order=(host,), marker=marker, side=side)


def _breaking_tree(problem: BoundaryProblem, r: str, beta1: HomologyClass, beta2: HomologyClass,
                   s0: int, s1: int, lattice: ClassLattice) -> RibbonTree:
    hosts = {0: {}, 1: {}}
    for side, k_side, cut in ((0, problem.k0, s0), (1, problem.k1, s1)):
        for m in range(1, k_side + 1):
            hosts[side][m] = 'str1' if m <= cut else 'str2'
    points = [_marked(side, m, host) for side in (0, 1) for m, host in sorted(hosts[side].items())]

    def on(host: str, side: int) -> List[str]:
        return [p.id for p in points if p.side == side and p.ribbon_order[0] == host]

    vertices = [
        Vertex(LEFT_END, VertexColor.EXTERIOR, ribbon_order=('str1',)),
        Vertex(RIGHT_END, VertexColor.EXTERIOR, ribbon_order=('str2',)),
        Vertex('str1', VertexColor.STRIP, 0, beta1, _strip_order(LEFT_END, 'str2', on('str1', 0), on('str1', 1))),
        Vertex('str2', VertexColor.STRIP, 0, beta2, _strip_order('str1', RIGHT_END, on('str2', 0), on('str2', 1))),
    ] + points
    edges = [
        Edge((LEFT_END, 'str1'), generator=problem.p),
        Edge(('str1', 'str2'), generator=r),
        Edge(('str2', RIGHT_END), generator=problem.q),
    ] + [Edge((p.id, p.ribbon_order[0])) for p in points]
    return RibbonTree(STRIP_KIND, tuple(vertices), tuple(edges), (LEFT_END, 'str1', 'str2', RIGHT_END),
                      k0=problem.k0, k1=problem.k1, lattice=lattice)


def _bubble_tree(problem: BoundaryProblem, strip_class: HomologyClass, alpha: HomologyClass,
                 side: int, on_bubble: int, slot: int, lattice: ClassLattice) -> RibbonTree:
    color = VertexColor.DISK1 if side == 1 else VertexColor.DISK0
    bubble = 'bubble'
    bubble_range = range(slot, slot + on_bubble)
    points = []
    strip_items: Dict[int, List[str]] = {0: [], 1: []}
    for s, count in ((0, problem.k0), (1, problem.k1)):
        for m in range(1, count + 1):
            if s == side and m == slot:
                strip_items[s].append(bubble)
            host = bubble if s == side and m in bubble_range else 'str1'
            points.append(_marked(s, m, host))
            if host == 'str1':
                strip_items[s].append(points[-1].id)
    if bubble not in strip_items[side]:
        strip_items[side].append(bubble)
    bubble_points = tuple(p.id for p in points if p.ribbon_order[0] == bubble)

    vertices = [
        Vertex(LEFT_END, VertexColor.EXTERIOR, ribbon_order=('str1',)),
        Vertex(RIGHT_END, VertexColor.EXTERIOR, ribbon_order=('str1',)),
        Vertex('str1', VertexColor.STRIP, 0, strip_class,
               _strip_order(LEFT_END, RIGHT_END, strip_items[0], strip_items[1])),
        Vertex(bubble, color, 0, alpha, ('str1',) + bubble_points),
    ] + points
    edges = [
        Edge((LEFT_END, 'str1'), generator=problem.p),
        Edge(('str1', RIGHT_END), generator=problem.q),
        Edge(('str1', bubble)),
    ] + [Edge((p.id, p.ribbon_order[0])) for p in points]
    return RibbonTree(STRIP_KIND, tuple(vertices), tuple(edges), (LEFT_END, 'str1', RIGHT_END),
                      k0=problem.k0, k1=problem.k1, lattice=lattice)


def _descriptor(kind: int, tree: RibbonTree, classes: Tuple[HomologyClass, HomologyClass],
                splits: Tuple[int, ...], parent_dim: int, r: Optional[str] = None,
                attachment: Optional[int] = None) -> BoundaryDescriptor:
    try:
        require_valid(tree)
    except TreeValidationError as e:
        raise BoundaryError(f"Boundary tree of type {kind} is invalid: {e}") from e
    return BoundaryDescriptor(
        kind=kind,
        classes=classes,
        splits=splits,
        tree=canonicalize(tree),
        dim=tree_dim_closed(tree),
        parent_dim=parent_dim,
        r=r,
        attachment=attachment,
    )


def boundary_strata(problem: BoundaryProblem, generators: Sequence[str], lattice: ClassLattice,
                    basis: DecompositionBasis) -> List[BoundaryDescriptor]:
    """
    Enumerate the codimension-one boundary of a strip moduli space.

    Type 1 breaks the strip at a generator r into two declared strip classes
    with a contiguous split of the marked points on each side. Types 2 and 3
    bubble off a single disk on L1 (resp. L0); the remaining strip class must be
    declared, or zero when p equals q. Constant bubbles need two marked points.

    Args:
        problem: (p, q, beta, k0, k1)
        generators: Generators available for breaking
        lattice: Class lattice
        basis: Declared classes per role

    Returns:
        Descriptors in canonical order
    """
    declared = basis.all_classes() + [problem.beta]
    if 'capD' in lattice.declared_functionals:
        offending = [c.label() for c in declared if pair(c, 'capD') != 0]
        if offending:
            raise BoundaryError(f"Classes with nonzero intersection with the divisor: {offending}")
    for end in (problem.p, problem.q):
        if end not in generators:
            raise BoundaryError(f"Unknown generator {end!r}")

    beta = problem.beta
    parent_dim = maslov(beta) + problem.k0 + problem.k1 - 1
    strip_set = set(basis.strip_classes)
    found: List[BoundaryDescriptor] = []

    for r in sorted(generators):
        for beta1 in basis.strip_classes:
            beta2 = beta - beta1
            if beta1.is_zero or beta2.is_zero or beta2 not in strip_set:
                continue
            for s0 in range(problem.k0 + 1):
                for s1 in range(problem.k1 + 1):
                    tree = _breaking_tree(problem, r, beta1, beta2, s0, s1, lattice)
                    found.append(_descriptor(1, tree, (beta1, beta2), (s0, s1), parent_dim, r=r))

    for kind, side, disk_classes in ((2, 1, basis.disk_classes_L1), (3, 0, basis.disk_classes_L0)):
        k_side = problem.k1 if side == 1 else problem.k0
        candidates = [lattice.zero()] + [a for a in disk_classes if not a.is_zero]
        for alpha in candidates:
            rest = beta - alpha
            if rest.is_zero:
                if problem.p != problem.q:
                    continue
            elif rest not in strip_set:
                continue
            for on_bubble in range(k_side + 1):
                if alpha.is_zero and on_bubble < 2:
                    continue
                for slot in range(1, k_side - on_bubble + 2):
                    tree = _bubble_tree(problem, rest, alpha, side, on_bubble, slot, lattice)
                    found.append(_descriptor(kind, tree, (rest, alpha), (on_bubble,), parent_dim,
                                             attachment=slot))

    found.sort(key=lambda d: d.sort_key())
    logger.info(f"Enumerated {len(found)} boundary strata for {problem.p}->{problem.q}")
    return found


def pieces_partition(tree: RibbonTree, pieces: Iterable[DiskSplitPiece]) -> bool:
    """True when the pieces' interior vertices partition the tree's interior vertices."""
    seen: List[str] = []
    for piece in pieces:
        seen.extend(v.id for v in piece.tree.interior_vertices)
    expected: FrozenSet[str] = frozenset(v.id for v in tree.interior_vertices)
    return len(seen) == len(set(seen)) and set(seen) == expected
