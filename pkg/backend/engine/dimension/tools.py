"""
Dimension Tools
Virtual dimensions of strata: per-vertex formulas, their assembly over a tree,
the closed form in terms of the total class, and the corner/inner codimensions.
"""

from typing import Any, Optional, Tuple
import logging

from common.errors import DimensionError
from engine.classgroup.schemas import HomologyClass
from engine.classgroup.tools import maslov, pair
from engine.trees.schemas import RibbonTree, VertexColor
from engine.trees.tools import corner_codim, n_positive, require_valid, total_class

from .schemas import AmbientDim, DimensionReport, VertexIncidence

logger = logging.getLogger(__name__)


def incidence_for(tree: RibbonTree, vertex_id: str) -> VertexIncidence:
    """
    Read the incidence data of an interior vertex off the tree.

    Args:
        tree: The tree
        vertex_id: Interior vertex id

    Returns:
        VertexIncidence
    """
    v = tree.vertex(vertex_id)
    if not v.is_interior:
        raise DimensionError(f"Vertex {vertex_id} is exterior")
    vm = tree.vertex_map
    neighbors = tree.neighbors(vertex_id)
    mixed = [tree.edge(vertex_id, w).multiplicity for w in neighbors
             if vm[w].is_interior and vm[w].level > 0]
    if v.color is VertexColor.DIVISOR:
        return VertexIncidence(v.color, v.alpha, ell=len(neighbors) - 1)
    if v.color is VertexColor.SPHERE:
        return VertexIncidence(
            v.color, v.alpha,
            multiplicities=tuple(tree.edge(vertex_id, w).multiplicity for w in neighbors),
        )
    level0 = [w for w in neighbors if vm[w].level == 0 and vm[w].color is not VertexColor.SPHERE]
    if v.color.is_disk:
        return VertexIncidence(v.color, v.alpha, multiplicities=tuple(mixed), k=len(level0) - 1)
    on_path = set()
    path = tree.strip_path
    if vertex_id in path:
        i = path.index(vertex_id)
        on_path = {path[i - 1], path[i + 1]}
    sides = [0, 0]
    for w in level0:
        if w in on_path:
            continue
        nb = vm[w]
        if nb.color is VertexColor.DISK0 or (not nb.is_interior and nb.side == 0):
            sides[0] += 1
        elif nb.color is VertexColor.DISK1 or (not nb.is_interior and nb.side == 1):
            sides[1] += 1
    return VertexIncidence(v.color, v.alpha, multiplicities=tuple(mixed), k0=sides[0], k1=sides[1])


def _known(multiplicities) -> Tuple[int, ...]:
    if any(m is None for m in multiplicities):
        raise DimensionError("Missing multiplicity on an edge into a positive level")
    return tuple(multiplicities)


def vertex_dim(incidence: VertexIncidence, n: Any) -> int:
    """
    Dimension contributed by a single vertex.

    Args:
        incidence: Color, class and incidence counts of the vertex
        n: Ambient dimension

    Returns:
        Integer dimension
    """
    n = AmbientDim.of(n).n
    color = incidence.color
    alpha = incidence.alpha
    if color is VertexColor.DIVISOR:
        return 2 * (n - 1) + 2 * int(pair(alpha, 'c1D')) + 2 * (incidence.ell + 1) - 6 + 2
    if color is VertexColor.SPHERE:
        mults = _known(incidence.multiplicities)
        return 2 * n + 2 * int(pair(alpha, 'c1X')) + 2 * sum(1 - abs(m) for m in mults) - 6
    if color.is_disk:
        mults = _known(incidence.multiplicities)
        return n + maslov(alpha) + 2 * sum(1 - m for m in mults) + incidence.k - 2
    if color is VertexColor.STRIP:
        mults = _known(incidence.multiplicities)
        return maslov(alpha) + 2 * sum(1 - m for m in mults) + incidence.k1 + incidence.k0 - 1
    raise DimensionError(f"No dimension formula for color {color.value}")


def _level0_edges_off_path(tree: RibbonTree) -> int:
    return sum(
        1 for e in tree.edges
        if tree.is_level0_interior_edge(e) and e.ends not in tree.path_edge_keys
    )


def tree_dim_sum(tree: RibbonTree, n: Any) -> int:
    """
    Assemble the stratum dimension from its vertices.

    Sum of vertex dimensions, minus n per interior level-0 edge off the strip
    path, minus 2(n-1) per interior edge touching a positive level.
    """
    n = AmbientDim.of(n).n
    require_valid(tree)
    total = sum(vertex_dim(incidence_for(tree, v.id), n) for v in tree.interior_vertices)
    return total - n * _level0_edges_off_path(tree) - 2 * (n - 1) * n_positive(tree)


def tree_dim_closed(tree: RibbonTree, n: Optional[Any] = None) -> int:
    """
    Closed-form dimension in terms of the total class.

    Strip trees: mu(beta) + k0 + k1 - #{d0, d1, str}.
    Disk trees:  n + mu(beta) + k - 1 - #{d}; requires n.
    """
    require_valid(tree)
    mu = maslov(total_class(tree))
    if tree.is_strip:
        return mu + tree.k0 + tree.k1 - (corner_codim(tree) + 1)
    if n is None:
        raise DimensionError("The closed form of a disk tree needs the ambient dimension")
    return AmbientDim.of(n).n + mu + tree.k - 1 - (corner_codim(tree) + 1)


def closed_form_residual(tree: RibbonTree) -> int:
    """
    tree_dim_sum minus tree_dim_closed, computed directly.

    Sphere and divisor vertices contribute 2*c1X - mu; each negative
    multiplicity m contributes 4m.
    """
    require_valid(tree)
    residual = 0
    for v in tree.interior_vertices:
        if v.color in (VertexColor.SPHERE, VertexColor.DIVISOR):
            residual += 2 * int(pair(v.alpha, 'c1X')) - maslov(v.alpha)
    residual += 4 * sum(
        e.multiplicity for e in tree.edges
        if tree.is_mixed_level_edge(e) and e.multiplicity is not None and e.multiplicity < 0
    )
    return residual


def disk_moduli_dim(cls: HomologyClass, k: int, n: Any, point_constrained: bool = False) -> int:
    """
    Dimension of the moduli of disks with k+1 boundary marked points.

    Args:
        cls: Disk class
        k: Marked points besides the 0-th
        n: Ambient dimension
        point_constrained: Require the 0-th point to map to a fixed point of L

    Returns:
        n + mu + k - 2, minus n when point constrained
    """
    if k < 0:
        raise DimensionError(f"Marked point count must be non-negative, got {k}")
    n = AmbientDim.of(n).n
    dim = n + maslov(cls) + k - 2
    return dim - n if point_constrained else dim


def codim_report(tree: RibbonTree, n: Any) -> Tuple[int, int]:
    """
    Corner and inner codimension of a stratum.

    Returns:
        (#boundary components - 1, 2 * positive levels)
    """
    AmbientDim.of(n)
    require_valid(tree)
    return corner_codim(tree), 2 * tree.positive_levels


def dimension_report(tree: RibbonTree, n: Any) -> DimensionReport:
    """Both dimension forms, their residual and an n-independence check at n and n+1."""
    n = AmbientDim.of(n).n
    sum_form = tree_dim_sum(tree, n)
    shifted = tree_dim_sum(tree, n + 1)
    closed = tree_dim_closed(tree, n)
    residual = closed_form_residual(tree)
    if tree.is_strip:
        n_independent = sum_form == shifted
    else:
        n_independent = sum_form - n == shifted - (n + 1)
    report = DimensionReport(n, sum_form, closed, residual, n_independent)
    logger.debug(f"Dimension report: {report.to_dict()}")
    return report
