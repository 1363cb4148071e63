"""
Orchestrator Schemas
Defines schemas for the pipeline DAG, the scenario document, stage results and
the scenario report.
"""

from typing import Dict, List, Any, Optional, Union
from dataclasses import dataclass, asdict, field

from pydantic import BaseModel, ConfigDict


@dataclass
class StageNode:
    """Schema for a stage node in the DAG."""
    stage_id: str
    stage_module: str  # e.g., "engine.floer.stage"
    stage_class: str   # e.g., "DifferentialStage"
    section: str       # scenario key that switches the stage on
    config: Optional[Dict[str, Any]] = None
    input_mapping: Optional[Dict[str, str]] = None  # input key -> "stage_id.data_key"

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class DAGConfig:
    """Schema for declarative DAG configuration."""
    name: str
    description: str
    nodes: List[StageNode]
    edges: List[Dict[str, str]]  # [{"from": "stage1", "to": "stage2"}, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'description': self.description,
            'nodes': [node.to_dict() for node in self.nodes],
            'edges': self.edges,
        }


@dataclass
class StageExecutionResult:
    """Schema for one stage's outcome."""
    stage: str
    status: str  # 'pass', 'fail', 'error' or 'skipped'
    data: Optional[Dict[str, Any]] = None
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'stage': self.stage,
            'status': self.status,
            'data': self.data,
            'error': self.error,
        }


@dataclass
class ScenarioReport:
    """Schema for the final scenario report; no timestamps, so reports compare byte for byte."""
    scenario: Optional[str]
    status: str
    stages: List[StageExecutionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == 'pass'

    @property
    def failing_stages(self) -> List[str]:
        return [s.stage for s in self.stages if s.status in ('fail', 'error')]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'scenario': self.scenario,
            'status': self.status,
            'stages': [s.to_dict() for s in self.stages],
        }


class ScenarioFile(BaseModel):
    """
    On-disk scenario. Every section is optional; a stage runs iff its section
    is present. Sections hold inline documents or paths relative to the file.
    """
    model_config = ConfigDict(extra='forbid')

    version: int
    name: Optional[str] = None
    lattice: Union[Dict[str, Any], str, None] = None
    ambient_dim: Optional[int] = None
    monotonicity: Optional[Dict[str, Any]] = None
    trees: Optional[List[Any]] = None
    boundary: Union[Dict[str, Any], str, None] = None
    complex: Optional[Dict[str, Any]] = None
    spectral: Optional[Dict[str, Any]] = None
