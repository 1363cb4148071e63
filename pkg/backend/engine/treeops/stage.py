"""
Boundary Stage
Enumerates the codimension-one boundary of a scenario's strip moduli space
and checks that every stratum has dimension one less than the parent.
"""

from typing import Any, Dict, Optional
import logging

from common.base_stage import BaseStage
from common.io import resolve_document
from engine.classgroup.schemas import resolve_lattice
from engine.classgroup.tools import maslov
from engine.trees.tools import tree_to_dict

from .schemas import BoundaryProblemFile
from .tools import boundary_strata

logger = logging.getLogger(__name__)


class BoundaryStage(BaseStage):
    def __init__(self, include_trees: bool = False):
        super().__init__(stage_name='boundary')
        self.include_trees = include_trees

    def validate_input(self, input_data: Dict[str, Any]) -> bool:
        return input_data.get('section') is not None

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        base_dir = input_data.get('base_dir')
        problem_file = BoundaryProblemFile.model_validate(
            resolve_document(input_data['section'], base_dir, 'boundary problem')
        )
        lattice = resolve_lattice(problem_file.lattice, base_dir, input_data.get('lattice'))
        problem, generators, basis = problem_file.to_domain(lattice)
        descriptors = boundary_strata(problem, generators, lattice, basis)

        encoder = tree_to_dict if self.include_trees else None
        wrong = [d for d in descriptors if d.dim != d.parent_dim - 1]
        if wrong:
            logger.warning(f"{len(wrong)} boundary strata do not have codimension one")
        by_type = {str(kind): sum(1 for d in descriptors if d.kind == kind) for kind in (1, 2, 3)}
        return {
            'passed': not wrong,
            'parent_dim': maslov(problem.beta) + problem.k0 + problem.k1 - 1,
            'count': len(descriptors),
            'by_type': by_type,
            'descriptors': [d.to_dict(encoder) for d in descriptors],
        }


def create_stage(config: Optional[Dict[str, Any]] = None) -> BoundaryStage:
    return BoundaryStage(**(config or {}))
