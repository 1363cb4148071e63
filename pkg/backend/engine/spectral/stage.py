"""
Spectral Stage
Runs the spectral sequence of a scenario's filtered complex or Morse model and
compares the first and limit pages with optional expectations.
"""

from typing import Any, Dict, Optional
import logging

from pydantic import BaseModel, ConfigDict

from common.base_stage import BaseStage
from common.errors import SpectralError
from common.io import resolve_document
from common.linalg import matrix_from_json, zero_matrix

from .schemas import CorrectionsFile, FilteredComplex, MorseModelFile
from .tools import morse_model, pages

logger = logging.getLogger(__name__)


class SpectralSection(BaseModel):
    """The scenario's `spectral` section: a complex, or a Morse model with corrections."""
    model_config = ConfigDict(extra='forbid')

    complex: Any = None
    morse: Any = None
    corrections: Any = None
    expect_first: Optional[Dict[str, int]] = None
    expect_limit: Optional[Dict[str, int]] = None


def load_filtered_complex(section: SpectralSection, base_dir=None) -> FilteredComplex:
    """Decode the complex, or build it from the Morse model and corrections."""
    if (section.complex is None) == (section.morse is None):
        raise SpectralError("Give exactly one of 'complex' and 'morse'")
    if section.complex is not None:
        return FilteredComplex.from_dict(resolve_document(section.complex, base_dir, 'filtered complex'))
    morse = MorseModelFile.model_validate(resolve_document(section.morse, base_dir, 'morse model'))
    n = len(morse.generators)
    corrections = []
    if section.corrections is not None:
        document = CorrectionsFile.model_validate(resolve_document(section.corrections, base_dir, 'corrections'))
        corrections = [matrix_from_json(m, n) for m in document.corrections]
    d0 = matrix_from_json(morse.d0, n) if morse.d0 else zero_matrix(n, n)
    return morse_model([g.name for g in morse.generators], [g.index for g in morse.generators], d0, corrections)


def _matches(expected: Optional[Dict[str, int]], page) -> bool:
    if expected is None:
        return True
    actual = {} if page is None else page.to_dict()['dims']
    keys = set(expected) | set(actual)
    return all(expected.get(k, 0) == actual.get(k, 0) for k in keys)


class SpectralStage(BaseStage):
    """Pages from the first to the limit; fails when an expectation is not met."""

    def __init__(self):
        super().__init__(stage_name='spectral')

    def validate_input(self, input_data: Dict[str, Any]) -> bool:
        return isinstance(input_data.get('section'), dict)

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        section = SpectralSection.model_validate(input_data['section'])
        complex_ = load_filtered_complex(section, input_data.get('base_dir'))
        report = pages(complex_)
        output = report.to_dict()
        first_ok = _matches(section.expect_first, report.first)
        limit_ok = _matches(section.expect_limit, report.limit)
        if not (first_ok and limit_ok):
            logger.warning("Spectral pages differ from the expected dimensions")
        output.update({'first_ok': first_ok, 'limit_ok': limit_ok, 'passed': report.converged and first_ok and limit_ok})
        return output


def create_stage(config: Optional[Dict[str, Any]] = None) -> SpectralStage:
    return SpectralStage()
