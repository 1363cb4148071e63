"""
Command Line Entry Point
Every engine operation as a subcommand; reports go to stdout as JSON or text,
logs go to stderr.

Exit codes: 0 success, 1 a check failed, 2 invalid input.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from common.config import get_settings
from common.errors import FloerCalcError
from common.io import dump_report, load_json
from common.logging_config import parse_level, setup_logging
from common.rationals import format_rational
from engine.classgroup.schemas import ClassLattice, resolve_lattice
from engine.dimension.tools import dimension_report
from engine.floer.schemas import CountTableFile, MatrixFile
from engine.floer.tools import (
    build_boundary_novikov,
    build_boundary_q,
    check_chain_homotopy,
    check_chain_map,
    d_squared_defect,
    energy_validate,
    homology_novikov,
    homology_q,
    potential,
    potential_novikov,
    validate_count_table,
)
from engine.novikov.tools import RING_OPS, format_text, invert, matrix_text, parse_text, ring_ops
from engine.spectral.schemas import FilteredComplex
from engine.spectral.stage import SpectralSection, load_filtered_complex
from engine.spectral.tools import pages, render_pages
from engine.treeops.schemas import BoundaryProblemFile, LevelMerge
from engine.treeops.tools import boundary_strata, disk_split, enumerate_level_merges, forget, forget_all, glue, split
from engine.trees.generator import generic_lattice, random_disk_tree, random_strip_tree
from engine.trees.tools import tree_from_dict, tree_to_dict, validate_tree
from orchestrator.main import Pipeline

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2

Result = Tuple[Dict[str, Any], bool]

_ANSI = {'pass': '\033[32m', 'fail': '\033[31m', 'error': '\033[31m', 'skipped': '\033[33m'}


# ---------------------------------------------------------------------------
# loading helpers
# ---------------------------------------------------------------------------

def _lattice(args: argparse.Namespace, embedded: Any = None, base_dir: Optional[Path] = None) -> ClassLattice:
    if getattr(args, 'lattice', None):
        return ClassLattice.from_dict(load_json(args.lattice, 'lattice'))
    return resolve_lattice(embedded, base_dir)


def _tree(path: str, lattice: ClassLattice):
    return tree_from_dict(load_json(path, 'tree'), lattice)


def _count_table(args: argparse.Namespace):
    document = load_json(args.table, 'count table')
    table_file = CountTableFile.model_validate(document)
    if args.grading_period is not None:
        table_file = table_file.model_copy(update={'grading_period': args.grading_period})
    lattice = _lattice(args, table_file.lattice, Path(args.table).parent)
    generators, table = table_file.to_domain(lattice)
    return table_file, generators, validate_count_table(generators, table)


def _matrix(path: str):
    return MatrixFile.model_validate(load_json(path, 'matrix')).to_matrix()


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args: argparse.Namespace) -> Result:
    report = validate_tree(_tree(args.tree, _lattice(args)))
    return report.to_dict(), report.passed


def cmd_dim(args: argparse.Namespace) -> Result:
    report = dimension_report(_tree(args.tree, _lattice(args)), args.n)
    return report.to_dict(), report.consistent


def cmd_boundary(args: argparse.Namespace) -> Result:
    problem_file = BoundaryProblemFile.model_validate(load_json(args.problem, 'boundary problem'))
    lattice = _lattice(args, problem_file.lattice, Path(args.problem).parent)
    problem, generators, basis = problem_file.to_domain(lattice)
    descriptors = boundary_strata(problem, generators, lattice, basis)
    encoder = tree_to_dict if args.trees else None
    passed = all(d.dim == d.parent_dim - 1 for d in descriptors)
    return {'count': len(descriptors), 'descriptors': [d.to_dict(encoder) for d in descriptors]}, passed


def cmd_glue(args: argparse.Namespace) -> Result:
    lattice = _lattice(args)
    left, right = _tree(args.left, lattice), _tree(args.right, lattice)
    merges = enumerate_level_merges(left, right)
    if args.list_merges:
        return {'merges': [m.to_dict() for m in merges]}, True
    if args.merge:
        merge = LevelMerge.from_dict(json.loads(args.merge))
    else:
        if not 0 <= args.merge_index < len(merges):
            raise FloerCalcError(f"Merge index {args.merge_index} out of range 0..{len(merges) - 1}")
        merge = merges[args.merge_index]
    return {'merge': merge.to_dict(), 'h': merge.h, 'tree': tree_to_dict(glue(left, right, merge))}, True


def cmd_split(args: argparse.Namespace) -> Result:
    result = split(_tree(args.tree, _lattice(args)), args.edge)
    return {
        'generator': result.generator,
        'h': result.h,
        'merge': result.merge.to_dict(),
        'left': tree_to_dict(result.left),
        'right': tree_to_dict(result.right),
    }, True


def cmd_forget(args: argparse.Namespace) -> Result:
    tree = _tree(args.tree, _lattice(args))
    reduced = forget_all(tree) if args.all else forget(tree, args.marker)
    return {'tree': tree_to_dict(reduced)}, True


def cmd_disk_split(args: argparse.Namespace) -> Result:
    tree = _tree(args.tree, _lattice(args))
    contraction = json.loads(Path(args.contraction).read_text(encoding='utf-8'))
    if isinstance(contraction, dict) and 'contraction' in contraction:
        contraction = contraction['contraction']
    pieces = disk_split(tree, contraction)
    return {'pieces': [p.to_dict(tree_to_dict) for p in pieces]}, True


def cmd_novikov_eval(args: argparse.Namespace) -> Result:
    x = parse_text(args.x)
    if args.op == 'invert':
        if args.truncation is None:
            raise FloerCalcError("invert needs --truncation")
        value = invert(x, args.truncation)
    else:
        y = parse_text(args.y) if args.y is not None else None
        value = ring_ops(x, y, args.op)
        if args.truncation is not None:
            value = value.truncate(args.truncation)
    return {'result': format_text(value), 'json': value.to_json(), 'valuation': _valuation(value)}, True


def _valuation(value) -> Optional[str]:
    return None if value.is_zero else format_rational(value.valuation())


def cmd_floer_build(args: argparse.Namespace) -> Result:
    _, generators, table = _count_table(args)
    output: Dict[str, Any] = {
        'differential': build_boundary_q(generators, table).to_dict(),
        'energy': energy_validate(table).to_dict(),
    }
    if args.truncation is not None:
        output['novikov'] = matrix_text(build_boundary_novikov(generators, table, args.truncation))
    return output, True


def cmd_floer_check_d2(args: argparse.Namespace) -> Result:
    table_file, generators, table = _count_table(args)
    rho = table_file.rho_for(table)
    po1 = potential(table.disk_counts_L1, rho, args.restrict_maslov_2)
    po0 = potential(table.disk_counts_L0, rho, args.restrict_maslov_2)
    if args.truncation is not None:
        matrix = build_boundary_novikov(generators, table, args.truncation)
        po1 = potential_novikov(table.disk_counts_L1, rho, args.truncation)
        po0 = potential_novikov(table.disk_counts_L0, rho, args.truncation)
    else:
        matrix = build_boundary_q(generators, table).matrix
    verdict = d_squared_defect(matrix, po1, po0, args.truncation)
    output = verdict.to_dict()
    output['flat'] = verdict.flat
    return output, verdict.passed


def cmd_floer_homology(args: argparse.Namespace) -> Result:
    _, generators, table = _count_table(args)
    if args.truncation is not None:
        report = homology_novikov(build_boundary_novikov(generators, table, args.truncation), args.truncation)
        return report.to_dict(), report.determined
    report = homology_q(build_boundary_q(generators, table))
    return report.to_dict(), report.bound_ok


def cmd_floer_chainmap(args: argparse.Namespace) -> Result:
    verdict = check_chain_map(_matrix(args.phi), _matrix(args.d_src), _matrix(args.d_dst))
    return verdict.to_dict(), verdict.passed


def cmd_floer_homotopy(args: argparse.Namespace) -> Result:
    verdict = check_chain_homotopy(
        _matrix(args.h), _matrix(args.phi1), _matrix(args.phi2), _matrix(args.d_src), _matrix(args.d_dst)
    )
    return verdict.to_dict(), verdict.passed


def _spectral_result(complex_: FilteredComplex) -> Result:
    report = pages(complex_)
    output = report.to_dict()
    output['table'] = render_pages(report)
    return output, report.converged


def cmd_ss_pages(args: argparse.Namespace) -> Result:
    return _spectral_result(FilteredComplex.from_dict(load_json(args.complex, 'filtered complex')))


def cmd_ss_morse(args: argparse.Namespace) -> Result:
    section = SpectralSection(morse=str(Path(args.model).resolve()),
                              corrections=str(Path(args.corrections).resolve()) if args.corrections else None)
    return _spectral_result(load_filtered_complex(section))


def cmd_random_tree(args: argparse.Namespace) -> Result:
    rng = np.random.default_rng(args.seed)
    lattice = generic_lattice()
    tree = random_strip_tree(rng, lattice) if args.kind == 'strip' else random_disk_tree(rng, lattice, stable=True)
    return {'lattice': lattice.to_dict(), 'tree': tree_to_dict(tree)}, True


def cmd_run(args: argparse.Namespace) -> Result:
    overrides = {}
    if args.grading_period is not None:
        overrides['differential'] = {'grading_period': args.grading_period}
    report = Pipeline(stage_overrides=overrides).run_file(args.scenario)
    if not report.passed:
        print(f"failing stages: {', '.join(report.failing_stages)}", file=sys.stderr)
    return report.to_dict(), report.passed


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _paint(text: str, color: bool) -> str:
    if not color or text not in _ANSI:
        return text
    return f"{_ANSI[text]}{text}\033[0m"


def _render_text(payload: Any, color: bool, indent: int = 0) -> List[str]:
    pad = '  ' * indent
    lines: List[str] = []
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, str) and '\n' in value:
                lines.append(f"{pad}{key}:")
                lines.extend(f"{pad}  {row}" for row in value.splitlines())
            elif isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, color, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_paint(str(value), color) if isinstance(value, str) else value}")
    elif isinstance(payload, list):
        if payload and all(isinstance(row, dict) for row in payload) and all(
            not isinstance(v, (dict, list)) for row in payload for v in row.values()
        ):
            frame = pd.DataFrame(payload)
            lines.extend(f"{pad}{row}" for row in frame.to_string(index=False).splitlines())
        else:
            for item in payload:
                if isinstance(item, (dict, list)):
                    lines.append(f"{pad}-")
                    lines.extend(_render_text(item, color, indent + 1))
                else:
                    lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{payload}")
    return lines


def emit(payload: Dict[str, Any], fmt: str, color: bool) -> str:
    if fmt == 'json':
        return dump_report(payload)
    return '\n'.join(_render_text(payload, color)) + '\n'


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(prog='floercalc', description='Floer-theoretic combinatorics and algebra checks')
    parser.add_argument('--format', choices=('json', 'text'), default='json')
    parser.add_argument('--log-level', default=None, help='debug, info, warning or error')
    parser.add_argument('--seed', type=int, default=settings.seed)
    sub = parser.add_subparsers(dest='command', required=True)

    def command(name: str, handler: Callable, parent=sub, **kwargs) -> argparse.ArgumentParser:
        p = parent.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        return p

    def with_lattice(p: argparse.ArgumentParser, required: bool = True) -> argparse.ArgumentParser:
        p.add_argument('--lattice', required=required)
        return p

    p = with_lattice(command('validate', cmd_validate, help='validate a tree'))
    p.add_argument('tree')

    p = with_lattice(command('dim', cmd_dim, help='dimension report of a tree'))
    p.add_argument('tree')
    p.add_argument('--n', type=int, default=2)

    p = with_lattice(command('boundary', cmd_boundary, help='codimension-one boundary strata'), required=False)
    p.add_argument('problem')
    p.add_argument('--trees', action='store_true', help='include the boundary trees')

    p = with_lattice(command('glue', cmd_glue, help='glue two strip trees'))
    p.add_argument('left')
    p.add_argument('right')
    p.add_argument('--merge', help='level merge as JSON {"left": [...], "right": [...], "size": n}')
    p.add_argument('--merge-index', type=int, default=0)
    p.add_argument('--list-merges', action='store_true')

    p = with_lattice(command('split', cmd_split, help='split a strip tree at a path edge'))
    p.add_argument('tree')
    p.add_argument('--edge', required=True, help="edge id 'a~b'")

    p = with_lattice(command('forget', cmd_forget, help='forget a marked point of a disk tree'))
    p.add_argument('tree')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--marker', type=int)
    group.add_argument('--all', action='store_true')

    p = with_lattice(command('disk-split', cmd_disk_split, help='decompose a disk tree'))
    p.add_argument('tree')
    p.add_argument('--contraction', required=True, help='JSON file {d vertex: target}')

    novikov = sub.add_parser('novikov', help='Novikov ring arithmetic').add_subparsers(dest='novikov_command', required=True)
    p = command('eval', cmd_novikov_eval, parent=novikov)
    p.add_argument('x')
    p.add_argument('--op', choices=RING_OPS + ('invert',), default='add')
    p.add_argument('--y')
    p.add_argument('--truncation')

    floer = sub.add_parser('floer', help='Floer complexes').add_subparsers(dest='floer_command', required=True)
    for name, handler in (('build', cmd_floer_build), ('check-d2', cmd_floer_check_d2), ('homology', cmd_floer_homology)):
        p = with_lattice(command(name, handler, parent=floer), required=False)
        p.add_argument('table')
        p.add_argument('--truncation')
        p.add_argument('--grading-period', type=int, default=settings.grading_period or None)
        p.add_argument('--restrict-maslov-2', action='store_true')
    p = command('chainmap', cmd_floer_chainmap, parent=floer)
    for flag in ('--phi', '--d-src', '--d-dst'):
        p.add_argument(flag, required=True)
    p = command('homotopy', cmd_floer_homotopy, parent=floer)
    for flag in ('--h', '--phi1', '--phi2', '--d-src', '--d-dst'):
        p.add_argument(flag, required=True)

    ss = sub.add_parser('ss', help='spectral sequences').add_subparsers(dest='ss_command', required=True)
    p = command('pages', cmd_ss_pages, parent=ss)
    p.add_argument('--complex', required=True)
    p = command('morse', cmd_ss_morse, parent=ss)
    p.add_argument('--model', required=True)
    p.add_argument('--corrections')

    p = command('random-tree', cmd_random_tree, help='draw a valid random tree (uses --seed)')
    p.add_argument('--kind', choices=('strip', 'disk'), default='strip')

    p = command('run', cmd_run, help='run a scenario file')
    p.add_argument('scenario')
    p.add_argument('--grading-period', type=int, default=settings.grading_period or None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Exit code
    """
    settings = get_settings()
    args = build_parser().parse_args(argv)
    setup_logging(parse_level(args.log_level, settings.log_level))
    try:
        payload, passed = args.handler(args)
    except (ValueError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(emit(payload, args.format, settings.color and args.format == 'text'))
    return EXIT_OK if passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
