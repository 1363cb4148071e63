"""
Floer Stages
Pipeline stages that build the boundary operator from a scenario's count
table, compare d o d with the potentials, and compute homology.
"""

from typing import Any, Dict, Optional
import logging

from pydantic import BaseModel, ConfigDict

from common.base_stage import BaseStage
from common.io import resolve_document
from common.linalg import matrix_from_json
from common.rationals import format_rational, parse_rational
from engine.classgroup.schemas import resolve_lattice
from engine.novikov.schemas import NovikovMatrix
from engine.novikov.tools import matrix_text, parse_text

from .schemas import CountTableFile, GeneratorSet
from .tools import (
    build_boundary_novikov,
    build_boundary_q,
    d_squared_defect,
    energy_validate,
    homology_novikov,
    homology_q,
    potential,
    validate_count_table,
)

logger = logging.getLogger(__name__)


class ComplexSection(BaseModel):
    """The scenario's `complex` section."""
    model_config = ConfigDict(extra='forbid')

    table: Any
    truncation: Optional[str] = None
    restrict_maslov_2: bool = False
    expect_homology: Optional[int] = None


class DifferentialStage(BaseStage):
    """Validates the count table and builds the boundary operator over Q."""

    def __init__(self, grading_period: Optional[int] = None):
        super().__init__(stage_name='differential')
        self.grading_period = grading_period

    def validate_input(self, input_data: Dict[str, Any]) -> bool:
        return isinstance(input_data.get('section'), dict) and 'table' in input_data['section']

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        section = ComplexSection.model_validate(input_data['section'])
        base_dir = input_data.get('base_dir')
        document = resolve_document(section.table, base_dir, 'count table')
        table_file = CountTableFile.model_validate(document)
        if self.grading_period is not None and 'grading_period' not in document:
            table_file = table_file.model_copy(update={'grading_period': self.grading_period})
        lattice = resolve_lattice(table_file.lattice, base_dir, input_data.get('lattice'))
        generators, table = table_file.to_domain(lattice)

        energy = energy_validate(table)
        table = validate_count_table(generators, table)
        differential = build_boundary_q(generators, table)
        rho = table_file.rho_for(table)
        po1 = potential(table.disk_counts_L1, rho, section.restrict_maslov_2)
        po0 = potential(table.disk_counts_L0, rho, section.restrict_maslov_2)
        logger.info(f"Built boundary operator on {len(generators)} generators")

        output: Dict[str, Any] = {
            'passed': energy.passed,
            'generators': generators.to_dict(),
            'grading_period': generators.grading_period,
            'matrix': differential.to_dict()['matrix'],
            'po1': format_rational(po1),
            'po0': format_rational(po0),
            'energy': energy.to_dict(),
            'truncation': section.truncation,
            'expect_homology': section.expect_homology,
        }
        if section.truncation is not None:
            novikov = build_boundary_novikov(generators, table, section.truncation)
            output['novikov_matrix'] = matrix_text(novikov)
            lowest = novikov.min_valuation()
            output['novikov_min_valuation'] = None if novikov.is_zero_matrix() else format_rational(lowest)
        return output


class DSquaredStage(BaseStage):
    """
    Compares d o d with (PO1 - PO0) * Id.

    The stage passes only for a flat differential that satisfies the identity;
    a curved complex is reported with its curvature and square.
    """

    def __init__(self):
        super().__init__(stage_name='d_squared')

    def validate_input(self, input_data: Dict[str, Any]) -> bool:
        return all(key in input_data for key in ('matrix', 'po1', 'po0'))

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        matrix = matrix_from_json(input_data['matrix'], len(input_data['matrix']))
        verdict = d_squared_defect(matrix, parse_rational(input_data['po1']), parse_rational(input_data['po0']))
        data = verdict.to_dict()
        identity_holds = data.pop('passed')
        data.update({
            'identity_holds': identity_holds,
            'flat': verdict.flat,
            'passed': identity_holds and verdict.flat,
        })
        return data


class HomologyStage(BaseStage):
    """Homology over Q per component and degree, with an optional Novikov rank."""

    def __init__(self):
        super().__init__(stage_name='homology')

    def validate_input(self, input_data: Dict[str, Any]) -> bool:
        return 'matrix' in input_data and isinstance(input_data.get('generators'), list)

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        generators = GeneratorSet.from_dict(input_data['generators'], input_data.get('grading_period') or 0)
        matrix = matrix_from_json(input_data['matrix'], len(generators))
        report = homology_q(matrix, generators)
        output = report.to_dict()
        expected = input_data.get('expect_homology')
        output['expected'] = expected
        output['passed'] = report.bound_ok and (expected is None or expected == report.total)
        truncation = input_data.get('truncation')
        if truncation is not None and input_data.get('novikov_matrix') is not None:
            novikov = NovikovMatrix(
                tuple(tuple(parse_text(x) for x in row) for row in input_data['novikov_matrix']),
                len(generators),
            )
            output['novikov'] = homology_novikov(novikov, truncation).to_dict()
        return output


def create_stage(config: Optional[Dict[str, Any]] = None) -> BaseStage:
    """
    Factory for the floer stages.

    Args:
        config: {'stage': 'differential' | 'd_squared' | 'homology', ...}

    Returns:
        BaseStage instance
    """
    config = dict(config or {})
    kind = config.pop('stage', 'differential')
    if kind == 'differential':
        return DifferentialStage(**config)
    if kind == 'd_squared':
        return DSquaredStage()
    if kind == 'homology':
        return HomologyStage()
    raise ValueError(f"Unknown floer stage: {kind}")
