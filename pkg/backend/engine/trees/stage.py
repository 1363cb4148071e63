"""
Tree Validation Stage
Validates every tree listed in a scenario.
"""

from typing import Any, Dict, List, Optional, Tuple
import logging

from common.base_stage import BaseStage
from common.io import resolve_document

from .schemas import RibbonTree
from .tools import tree_from_dict, validate_tree

logger = logging.getLogger(__name__)


def load_trees(refs: List[Any], lattice, base_dir=None) -> List[Tuple[str, RibbonTree]]:
    """
    Resolve tree documents (inline or by path).

    Returns:
        [(label, tree)], the label being the path or the list position
    """
    trees = []
    for position, ref in enumerate(refs):
        label = ref if isinstance(ref, str) else f"#{position}"
        trees.append((label, tree_from_dict(resolve_document(ref, base_dir, 'tree'), lattice)))
    return trees


class ValidateStage(BaseStage):
    def __init__(self):
        super().__init__(stage_name='validate')

    def validate_input(self, input_data: Dict[str, Any]) -> bool:
        return isinstance(input_data.get('section'), list) and input_data.get('lattice') is not None

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        trees = load_trees(input_data['section'], input_data['lattice'], input_data.get('base_dir'))
        results = []
        for label, tree in trees:
            report = validate_tree(tree)
            results.append({'tree': label, **report.to_dict()})
        passed = all(r['passed'] for r in results)
        logger.info(f"Validated {len(results)} trees")
        return {'passed': passed, 'trees': results}


def create_stage(config: Optional[Dict[str, Any]] = None) -> ValidateStage:
    return ValidateStage()
