"""
Dimension Stage
Cross-checks the sum and closed dimension forms on every scenario tree.
"""

from typing import Any, Dict, Optional
import logging

from common.base_stage import BaseStage
from engine.trees.stage import load_trees

from .tools import dimension_report

logger = logging.getLogger(__name__)


class DimensionStage(BaseStage):
    """Passes when every report is consistent (sum = closed + residual, n-independent)."""

    def __init__(self, ambient_dim: int = 2):
        super().__init__(stage_name='dimension')
        self.ambient_dim = ambient_dim

    def validate_input(self, input_data: Dict[str, Any]) -> bool:
        return isinstance(input_data.get('section'), list) and input_data.get('lattice') is not None

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        n = input_data.get('ambient_dim') or self.ambient_dim
        trees = load_trees(input_data['section'], input_data['lattice'], input_data.get('base_dir'))
        reports = []
        for label, tree in trees:
            reports.append({'tree': label, **dimension_report(tree, n).to_dict()})
        passed = all(r['consistent'] for r in reports)
        return {'passed': passed, 'ambient_dim': n, 'reports': reports}


def create_stage(config: Optional[Dict[str, Any]] = None) -> DimensionStage:
    return DimensionStage(**(config or {}))
