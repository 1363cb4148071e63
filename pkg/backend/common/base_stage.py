"""
Base Stage Contract
All pipeline stages inherit from BaseStage and implement validate_input and run.
Stages are stateless and deterministic: identical input gives an identical result
dictionary, so scenario reports can be compared byte for byte.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict
import logging

logger = logging.getLogger(__name__)

STATUS_PASS = 'pass'
STATUS_FAIL = 'fail'
STATUS_ERROR = 'error'
STATUS_SKIPPED = 'skipped'


class BaseStage(ABC):
    """
    Abstract base class for pipeline stages.

    A stage's run method returns a JSON-ready dict. The key 'passed' in that
    dict decides between the 'pass' and 'fail' statuses; exceptions become 'error'.
    """

    def __init__(self, stage_name: str):
        """
        Initialize the base stage.

        Args:
            stage_name: Unique identifier for this stage
        """
        self.stage_name = stage_name

    @abstractmethod
    def validate_input(self, input_data: Dict[str, Any]) -> bool:
        """
        Validate input data against the stage's input schema.

        Args:
            input_data: Input data dictionary

        Returns:
            bool: True if input is valid, False otherwise
        """

    @abstractmethod
    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Main execution method.

        Args:
            input_data: Validated input data

        Returns:
            JSON-ready output dict including a boolean 'passed'
        """

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Public execution method with validation and error handling.

        Args:
            input_data: Input data dictionary

        Returns:
            Dict with 'stage', 'status', 'data', 'error' keys
        """
        try:
            if not self.validate_input(input_data):
                return {
                    'stage': self.stage_name,
                    'status': STATUS_ERROR,
                    'error': 'Invalid input data',
                    'data': None,
                }

            output_data = self.run(input_data)
            status = STATUS_PASS if output_data.get('passed', True) else STATUS_FAIL
            if status == STATUS_FAIL:
                logger.warning(f"Stage {self.stage_name} failed its checks")
            return {
                'stage': self.stage_name,
                'status': status,
                'data': output_data,
                'error': None,
            }

        except Exception as e:
            logger.debug(f"Stage {self.stage_name} raised", exc_info=True)
            return {
                'stage': self.stage_name,
                'status': STATUS_ERROR,
                'error': f"{type(e).__name__}: {e}",
                'data': None,
            }
