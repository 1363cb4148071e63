"""
Floer Complex Tools
Count-table validation, boundary operators over Q and over the Novikov ring,
potential functions, the curved d o d identity, homology, transport along a
relabeling, and chain map / chain homotopy checks.
"""

from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union
import logging

import sympy

from common.errors import (
    ComponentMismatchError,
    CountTableError,
    CurvatureError,
    EnergyError,
    GradingError,
    NovikovError,
    PotentialError,
    ShapeMismatchError,
    TransportError,
    UnvalidatedTableError,
)
from common.linalg import identity_matrix, is_zero, rank, submatrix, zero_matrix
from common.rationals import format_rational, parse_rational, to_sympy
from engine.classgroup.schemas import ClassMap, HomologyClass
from engine.classgroup.tools import maslov, omega
from engine.novikov.schemas import NovikovElement, NovikovMatrix, as_novikov_matrix
from engine.novikov.tools import matrix_rank

from .schemas import (
    CountTable,
    Differential,
    DiskCount,
    DSquaredVerdict,
    EnergyVerdict,
    EnergyViolation,
    GeneratorSet,
    HomologyReport,
    MatrixVerdict,
    NovikovHomologyReport,
    StripCount,
)

logger = logging.getLogger(__name__)

AnyMatrix = Union[sympy.Matrix, NovikovMatrix]


def energy_validate(table: CountTable) -> EnergyVerdict:
    """
    Every nonzero strip count must carry positive energy.

    Args:
        table: Count table (validated or not)

    Returns:
        EnergyVerdict listing the entries with omega_H <= 0
    """
    violations = []
    for entry in table.strip_counts:
        if entry.count == 0:
            continue
        energy = table.omega_h(entry)
        if energy <= 0:
            violations.append(EnergyViolation(entry.source, entry.target, entry.beta.to_list(), energy))
    return EnergyVerdict(not violations, tuple(violations))


def _grading_ok(generators: GeneratorSet, source: str, target: str) -> bool:
    expected = generators.grading(source) - 1
    actual = generators.grading(target)
    period = generators.grading_period
    if period == 0:
        return actual == expected
    return (actual - expected) % period == 0


def validate_count_table(generators: GeneratorSet, table: CountTable) -> CountTable:
    """
    Check a count table against its generators and return the validated copy.

    Args:
        generators: Generator set
        table: Count table

    Returns:
        The same table with validated=True
    """
    seen = set()
    for entry in table.strip_counts:
        generators.index(entry.source)
        generators.index(entry.target)
        if entry.beta.lattice != table.lattice:
            raise CountTableError(f"Class of {entry.source}->{entry.target} is not in the table lattice")
        key = (entry.source, entry.target, entry.beta.coords)
        if key in seen:
            raise CountTableError(f"Duplicate strip count {entry.source}->{entry.target} in class {entry.beta.label()}")
        seen.add(key)
        if entry.count == 0:
            continue
        if generators.component(entry.source) != generators.component(entry.target):
            raise ComponentMismatchError(
                f"Strip {entry.source}->{entry.target} joins components "
                f"{generators.component(entry.source)} and {generators.component(entry.target)}"
            )
        if generators.gradings is not None and not _grading_ok(generators, entry.source, entry.target):
            raise GradingError(
                f"Strip {entry.source}->{entry.target} does not lower the grading by one"
            )
    for name, _value in table.offsets:
        generators.index(name)
    for label, disks in (('L1', table.disk_counts_L1), ('L0', table.disk_counts_L0)):
        classes = [d.alpha.coords for d in disks]
        if len(set(classes)) != len(classes):
            raise CountTableError(f"Duplicate disk class in disk_counts_{label}")
    verdict = energy_validate(table)
    if not verdict.passed:
        worst = verdict.violations[0]
        raise EnergyError(
            f"Strip {worst.source}->{worst.target} has energy {format_rational(worst.omega_h)} <= 0"
        )
    logger.debug(f"Count table validated: {len(table.strip_counts)} strip entries")
    return table.mark_validated()


def _require_validated(table: CountTable) -> None:
    if not table.validated:
        raise UnvalidatedTableError("Count table must pass validate_count_table first")


def build_boundary_q(generators: GeneratorSet, table: CountTable) -> Differential:
    """
    Boundary operator over Q: <dp, q> is the sum of the counts from p to q.

    Returns:
        Differential with matrix[q, p] = <dp, q>
    """
    _require_validated(table)
    n = len(generators)
    matrix = zero_matrix(n, n)
    for entry in table.strip_counts:
        p = generators.index(entry.source)
        q = generators.index(entry.target)
        matrix[q, p] += to_sympy(entry.count)
    return Differential(generators, matrix)


def build_boundary_novikov(generators: GeneratorSet, table: CountTable, truncation: Any) -> NovikovMatrix:
    """
    Boundary operator over the Novikov ring: sum of count * T^omega_H(beta).

    Entries with at least one count carry truncation E; pairs without any
    count are exact zeros.

    Args:
        generators: Generator set
        table: Validated count table
        truncation: Working order E > 0

    Returns:
        NovikovMatrix with entry [q][p] = <dp, q>
    """
    _require_validated(table)
    bound = parse_rational(truncation)
    if bound <= 0:
        raise NovikovError(f"Truncation must be positive, got {format_rational(bound)}")
    n = len(generators)
    terms: Dict[Tuple[int, int], List[Tuple[Fraction, Fraction]]] = {}
    for entry in table.strip_counts:
        energy = table.omega_h(entry)
        if energy <= 0:
            raise EnergyError(f"Strip {entry.source}->{entry.target} has energy {format_rational(energy)} <= 0")
        key = (generators.index(entry.target), generators.index(entry.source))
        terms.setdefault(key, []).append((energy, entry.count))
    rows = []
    for q in range(n):
        row = []
        for p in range(n):
            if (q, p) in terms:
                row.append(NovikovElement(tuple(terms[(q, p)]), bound))
            else:
                row.append(NovikovElement.zero())
        rows.append(tuple(row))
    return NovikovMatrix(tuple(rows), n)


def _disk_items(disk_counts: Union[Sequence[DiskCount], Mapping[HomologyClass, Any]]) -> List[Tuple[HomologyClass, Fraction]]:
    if isinstance(disk_counts, Mapping):
        return [(alpha, parse_rational(count)) for alpha, count in disk_counts.items()]
    return [(d.alpha, d.count) for d in disk_counts]


def _rho_value(rho: Optional[Mapping[HomologyClass, Any]], alpha: HomologyClass) -> Fraction:
    if rho is None or alpha not in rho:
        return Fraction(1)
    value = parse_rational(rho[alpha])
    if value == 0:
        raise PotentialError(f"rho must be nonzero, got 0 on {alpha.label()}")
    return value


def potential(disk_counts: Union[Sequence[DiskCount], Mapping[HomologyClass, Any]],
              rho: Optional[Mapping[HomologyClass, Any]] = None,
              restrict_maslov_2: bool = False) -> Fraction:
    """
    Potential function: sum of rho(alpha) * count(alpha) over disk classes.

    Args:
        disk_counts: DiskCounts or a {class: count} mapping
        rho: Nonzero weights per disk class (missing classes weigh 1)
        restrict_maslov_2: Reject classes of Maslov index other than 2

    Returns:
        Fraction
    """
    total = Fraction(0)
    for alpha, count in _disk_items(disk_counts):
        if restrict_maslov_2 and maslov(alpha) != 2:
            raise PotentialError(f"Disk class {alpha.label()} has Maslov index {maslov(alpha)}, not 2")
        total += _rho_value(rho, alpha) * count
    return total


def potential_novikov(disk_counts: Union[Sequence[DiskCount], Mapping[HomologyClass, Any]],
                      rho: Optional[Mapping[HomologyClass, Any]] = None,
                      truncation: Any = None) -> NovikovElement:
    """Potential weighted by energy: sum of rho * count * T^omega(alpha)."""
    terms = tuple((omega(alpha), _rho_value(rho, alpha) * count) for alpha, count in _disk_items(disk_counts))
    return NovikovElement(terms, truncation)


def _shape(matrix: AnyMatrix) -> Tuple[int, int]:
    if isinstance(matrix, NovikovMatrix):
        return matrix.shape
    return matrix.rows, matrix.cols


def _uses_novikov(*matrices: Any) -> bool:
    return any(isinstance(m, NovikovMatrix) for m in matrices)


def _vanishes(matrix: AnyMatrix, truncation: Any = None) -> bool:
    if isinstance(matrix, NovikovMatrix):
        if truncation is not None:
            matrix = matrix.truncate(truncation)
        return matrix.is_zero_matrix()
    return is_zero(matrix)


def d_squared_defect(boundary: AnyMatrix, po1: Any = 0, po0: Any = 0,
                     truncation: Any = None) -> DSquaredVerdict:
    """
    Compare d o d with (PO1 - PO0) * Id.

    Args:
        boundary: Square matrix over Q or the Novikov ring
        po1: Potential of L1 (Fraction or NovikovElement)
        po0: Potential of L0
        truncation: Order for Novikov comparisons

    Returns:
        DSquaredVerdict; passes when the defect vanishes (mod T^E)
    """
    nrows, ncols = _shape(boundary)
    if nrows != ncols:
        raise ShapeMismatchError(f"Boundary operator must be square, got {nrows}x{ncols}")
    if _uses_novikov(boundary) or isinstance(po1, NovikovElement) or isinstance(po0, NovikovElement):
        d = as_novikov_matrix(boundary)
        curvature = NovikovElement.coerce(po1) - NovikovElement.coerce(po0)
        square = d * d
        defect = square - NovikovMatrix.scalar(nrows, curvature)
        if truncation is not None:
            square = square.truncate(truncation)
            defect = defect.truncate(truncation)
        passed = defect.is_zero_matrix()
    else:
        curvature = parse_rational(po1) - parse_rational(po0)
        square = boundary * boundary
        defect = square - identity_matrix(nrows) * to_sympy(curvature)
        passed = is_zero(defect)
    if not passed:
        logger.warning("d o d differs from (PO1 - PO0) * Id")
    return DSquaredVerdict(passed, curvature, square, defect)


def _per_degree(generators: GeneratorSet, matrix: sympy.Matrix) -> Tuple[Tuple[int, int], ...]:
    n = len(generators)
    out = []
    for degree in sorted(set(generators.gradings)):
        cols = [i for i in range(n) if generators.gradings[i] == degree]
        out_rank = rank(submatrix(matrix, list(range(n)), cols))
        in_rank = rank(submatrix(matrix, cols, list(range(n))))
        out.append((degree, len(cols) - out_rank - in_rank))
    return tuple(out)


def homology_q(boundary: Union[Differential, sympy.Matrix],
               generators: Optional[GeneratorSet] = None) -> HomologyReport:
    """
    Homology over Q: dim ker - rank, per component and per degree when graded.

    Args:
        boundary: Differential, or a bare matrix with generators given separately
        generators: Required with a bare matrix; defaults to one component

    Returns:
        HomologyReport
    """
    if isinstance(boundary, Differential):
        generators = boundary.generators
        matrix = boundary.matrix
    else:
        matrix = boundary
        if generators is None:
            names = tuple(f"x{i}" for i in range(matrix.cols))
            generators = GeneratorSet(names, tuple('o0' for _ in names))
    n = len(generators)
    if matrix.shape != (n, n):
        raise ShapeMismatchError(f"Boundary is {matrix.rows}x{matrix.cols} for {n} generators")
    if not is_zero(matrix * matrix):
        raise CurvatureError("d o d is nonzero; homology is undefined")

    per_component = []
    for label in generators.component_labels():
        idx = generators.indices_of(label)
        block = submatrix(matrix, idx, idx)
        per_component.append((label, len(idx) - 2 * rank(block)))
    total = n - 2 * rank(matrix)
    per_degree = _per_degree(generators, matrix) if generators.gradings is not None and n else None
    report = HomologyReport(total, n, tuple(per_component), per_degree)
    logger.info(f"Homology over Q: {report.total} (of {n} generators)")
    return report


def homology_novikov(boundary: Any, truncation: Any) -> NovikovHomologyReport:
    """
    Homology rank over the Novikov field up to order E.

    Args:
        boundary: NovikovMatrix (or a rational matrix)
        truncation: Working order E

    Returns:
        NovikovHomologyReport; rank is None when elimination is undetermined
    """
    d = as_novikov_matrix(boundary)
    n, m = d.shape
    if n != m:
        raise ShapeMismatchError(f"Boundary operator must be square, got {n}x{m}")
    if not (d * d).truncate(truncation).is_zero_matrix():
        raise CurvatureError(f"d o d is nonzero modulo T^{format_rational(parse_rational(truncation))}")
    result = matrix_rank(d, truncation)
    if not result.determined:
        logger.warning(f"Novikov homology undetermined: {result.reason}")
        return NovikovHomologyReport(None, n, False, result.reason)
    return NovikovHomologyReport(n - 2 * result.rank, n, True)


def transport(generators: GeneratorSet, table: CountTable, relabeling: Mapping[str, str],
              class_map: Optional[ClassMap] = None,
              new_offsets: Optional[Mapping[str, Any]] = None) -> Tuple[GeneratorSet, CountTable]:
    """
    Move a complex along a generator bijection and a class map.

    Args:
        generators: Source generators
        table: Source count table
        relabeling: Old name -> new name, a bijection on all generators
        class_map: Additive map of classes (identity when omitted)
        new_offsets: Hamiltonian values on the new names (old values carried over when omitted)

    Returns:
        (new generators, new validated table); every strip keeps its energy

    Raises:
        TransportError: The relabeling is not a bijection, or a strip energy changes.
            Offsets are not re-derived; pass new_offsets when class_map moves omega.
    """
    names = set(generators.names)
    if set(relabeling) != names:
        raise TransportError(f"Relabeling must cover exactly the generators {sorted(names)}")
    targets = list(relabeling.values())
    if len(set(targets)) != len(targets):
        raise TransportError("Relabeling is not injective")
    class_map = class_map or ClassMap.identity(table.lattice)
    if class_map.source != table.lattice:
        raise TransportError("Class map does not start at the table lattice")

    new_generators = GeneratorSet(
        tuple(relabeling[n] for n in generators.names),
        generators.components,
        generators.gradings,
        generators.grading_period,
    )
    if new_offsets is None:
        offsets = tuple(sorted((relabeling[k], v) for k, v in table.offsets))
    else:
        offsets = tuple(sorted((k, parse_rational(v)) for k, v in new_offsets.items()))
    new_table = CountTable(
        lattice=class_map.target,
        strip_counts=tuple(
            StripCount(relabeling[e.source], relabeling[e.target], class_map.apply(e.beta), e.count)
            for e in table.strip_counts
        ),
        disk_counts_L1=tuple(DiskCount(class_map.apply(d.alpha), d.count) for d in table.disk_counts_L1),
        disk_counts_L0=tuple(DiskCount(class_map.apply(d.alpha), d.count) for d in table.disk_counts_L0),
        offsets=offsets,
    )
    for old, new in zip(table.strip_counts, new_table.strip_counts):
        before = table.omega_h(old)
        after = new_table.omega_h(new)
        if before != after:
            raise TransportError(
                f"Energy of {old.source}->{old.target} changes from "
                f"{format_rational(before)} to {format_rational(after)}"
            )
    return new_generators, validate_count_table(new_generators, new_table)


def _compatible(*pairs: Tuple[str, AnyMatrix, Tuple[Optional[int], Optional[int]]]) -> None:
    for name, matrix, (rows, cols) in pairs:
        shape = _shape(matrix)
        if (rows is not None and shape[0] != rows) or (cols is not None and shape[1] != cols):
            raise ShapeMismatchError(f"{name} has shape {shape}, expected ({rows}, {cols})")


def _promote(*matrices: AnyMatrix) -> List[AnyMatrix]:
    if _uses_novikov(*matrices):
        return [as_novikov_matrix(m) for m in matrices]
    return list(matrices)


def check_chain_map(phi: AnyMatrix, d_src: AnyMatrix, d_dst: AnyMatrix,
                    truncation: Any = None) -> MatrixVerdict:
    """
    Check d_dst o phi = phi o d_src.

    Returns:
        MatrixVerdict with residual d_dst * phi - phi * d_src
    """
    m, n = _shape(phi)
    _compatible(('d_src', d_src, (n, n)), ('d_dst', d_dst, (m, m)))
    phi, d_src, d_dst = _promote(phi, d_src, d_dst)
    residual = d_dst * phi - phi * d_src
    return MatrixVerdict(_vanishes(residual, truncation), residual)


def check_chain_homotopy(h: AnyMatrix, phi1: AnyMatrix, phi2: AnyMatrix, d_src: AnyMatrix,
                         d_dst: AnyMatrix, truncation: Any = None) -> MatrixVerdict:
    """
    Check d_dst o H + H o d_src = phi2 - phi1.

    Returns:
        MatrixVerdict with residual d_dst * H + H * d_src - (phi2 - phi1)
    """
    m, n = _shape(phi1)
    _compatible(
        ('phi2', phi2, (m, n)), ('H', h, (m, n)),
        ('d_src', d_src, (n, n)), ('d_dst', d_dst, (m, m)),
    )
    h, phi1, phi2, d_src, d_dst = _promote(h, phi1, phi2, d_src, d_dst)
    residual = d_dst * h + h * d_src - (phi2 - phi1)
    return MatrixVerdict(_vanishes(residual, truncation), residual)


def check_composition(phi12: AnyMatrix, phi23: AnyMatrix, phi13: AnyMatrix, h: AnyMatrix,
                      d1: AnyMatrix, d3: AnyMatrix, truncation: Any = None) -> MatrixVerdict:
    """Check that phi13 is homotopic to phi23 o phi12 through H."""
    if _shape(phi23)[1] != _shape(phi12)[0]:
        raise ShapeMismatchError(f"Cannot compose {_shape(phi23)} after {_shape(phi12)}")
    phi12, phi23 = _promote(phi12, phi23)
    return check_chain_homotopy(h, phi13, phi23 * phi12, d1, d3, truncation)


def continuation_matrix(source: GeneratorSet, target: GeneratorSet,
                        counts: Iterable[Tuple[str, str, Any]]) -> sympy.Matrix:
    """
    Continuation map from counts of rigid solutions.

    Args:
        source: Generators of the source complex
        target: Generators of the target complex
        counts: (source name, target name, count) triples

    Returns:
        Matrix with entry [target, source] summing the counts
    """
    matrix = zero_matrix(len(target), len(source))
    for src, dst, count in counts:
        matrix[target.index(dst), source.index(src)] += to_sympy(count)
    return matrix


def differential_components_ok(differential: Differential) -> bool:
    """No entry joins generators of different components."""
    gens = differential.generators
    n = len(gens)
    return all(
        differential.matrix[q, p] == 0
        for p in range(n) for q in range(n)
        if gens.components[p] != gens.components[q]
    )
