"""
Monotonicity Stage
Checks omega = c * maslov on a scenario's classes and the minimal Maslov
index of its disk classes.
"""

from typing import Any, Dict, List, Optional
import logging

from pydantic import BaseModel, ConfigDict

from common.base_stage import BaseStage
from common.errors import IndeterminateError
from common.rationals import format_rational

from .schemas import class_from_json
from .tools import check_monotone, min_maslov_check, monotone_constant

logger = logging.getLogger(__name__)


class MonotonicitySection(BaseModel):
    model_config = ConfigDict(extra='forbid')

    classes: List[Any] = []
    c: Optional[str] = None
    disk_classes: List[Any] = []
    min_maslov: Optional[int] = None


class MonotonicityStage(BaseStage):
    """Monotonicity constant and minimal Maslov index checks."""

    def __init__(self):
        super().__init__(stage_name='monotonicity')

    def validate_input(self, input_data: Dict[str, Any]) -> bool:
        return isinstance(input_data.get('section'), dict) and input_data.get('lattice') is not None

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        section = MonotonicitySection.model_validate(input_data['section'])
        lattice = input_data['lattice']
        classes = [class_from_json(lattice, c) for c in section.classes]
        disks = [class_from_json(lattice, c) for c in section.disk_classes]

        c = section.c
        if c is None:
            found = monotone_constant(classes + disks)
            if found is None:
                raise IndeterminateError("The classes do not determine a monotonicity constant")
            c = found
        monotone = check_monotone(classes + disks, c)
        output: Dict[str, Any] = {'c': format_rational(monotone.c), 'monotone': monotone.to_dict()}
        passed = monotone.passed
        if section.min_maslov is not None:
            maslov_verdict = min_maslov_check(disks, section.min_maslov)
            output['min_maslov'] = maslov_verdict.to_dict()
            passed = passed and maslov_verdict.passed
        logger.info(f"Monotonicity with c = {output['c']}: {'ok' if passed else 'violated'}")
        output['passed'] = passed
        return output


def create_stage(config: Optional[Dict[str, Any]] = None) -> MonotonicityStage:
    return MonotonicityStage()
