"""
The pipeline runner has ONLY 3 responsibilities:
1. Resolve DAG order
2. Execute the stages whose scenario section is present
3. Aggregate stage results into a scenario report

"""

from pathlib import Path
from typing import Dict, Any, Optional, Union
import importlib
import logging

from common.base_stage import BaseStage, STATUS_ERROR, STATUS_PASS, STATUS_SKIPPED
from common.errors import ScenarioError
from common.io import check_version, load_json
from engine.classgroup.schemas import resolve_lattice
from .dag import get_dag_config, get_execution_order, get_node_by_id, get_dependencies, load_dag_config
from .schemas import ScenarioFile, ScenarioReport, StageExecutionResult

logger = logging.getLogger(__name__)


class Pipeline:
    """
    Runs a scenario through the stage DAG.
    Only handles execution order and data flow - the checks live in the stages.
    """

    def __init__(self, dag_config: Optional[Dict] = None,
                 stage_overrides: Optional[Dict[str, Dict[str, Any]]] = None):
        """
        Initialize the pipeline.

        Args:
            dag_config: Optional custom DAG config (uses default if None)
            stage_overrides: Extra factory config per stage id
        """
        self.dag_config = load_dag_config(dag_config) if dag_config else get_dag_config()
        self.execution_order = get_execution_order(self.dag_config)
        self.stage_overrides = stage_overrides or {}
        self.stage_instances: Dict[str, BaseStage] = {}
        logger.debug(f"Resolved execution order: {self.execution_order}")

    def _load_stage(self, stage_id: str) -> BaseStage:
        """
        Dynamically load and instantiate a stage.

        Args:
            stage_id: Stage ID

        Returns:
            BaseStage instance
        """
        if stage_id in self.stage_instances:
            return self.stage_instances[stage_id]

        node = get_node_by_id(self.dag_config, stage_id)
        if not node:
            raise ValueError(f"Stage node not found: {stage_id}")

        module = importlib.import_module(node.stage_module)
        config = dict(node.config or {})
        config.update(self.stage_overrides.get(stage_id, {}))
        if hasattr(module, 'create_stage'):
            stage = module.create_stage(config)
        else:
            stage = getattr(module, node.stage_class)(**config)
        self.stage_instances[stage_id] = stage
        return stage

    def _prepare_input(self, stage_id: str, context: Dict[str, Any],
                       results: Dict[str, StageExecutionResult]) -> Dict[str, Any]:
        """
        Scenario context plus the upstream values named by the stage's input_mapping.

        Args:
            stage_id: Stage ID
            context: section, lattice, base_dir and ambient_dim
            results: Results of the stages run so far

        Returns:
            Input dictionary for the stage
        """
        node = get_node_by_id(self.dag_config, stage_id)
        input_data = dict(context)
        for input_key, source_path in (node.input_mapping or {}).items():
            # Source path: "stage_id.data_key" or "stage_id"
            parts = source_path.split('.', 1)
            source = results[parts[0]]
            if len(parts) == 2:
                if parts[1] not in (source.data or {}):
                    logger.debug(f"{source_path} is not set; {stage_id} gets None for {input_key}")
                input_data[input_key] = (source.data or {}).get(parts[1])
            else:
                input_data[input_key] = source.data
        return input_data

    def execute_stage(self, stage_id: str, input_data: Dict[str, Any]) -> StageExecutionResult:
        """
        Execute a single stage.

        Args:
            stage_id: Stage ID
            input_data: Input data for the stage

        Returns:
            StageExecutionResult
        """
        logger.info(f"Executing stage: {stage_id}")
        try:
            stage = self._load_stage(stage_id)
            result = stage.execute(input_data)
        except Exception as e:
            logger.error(f"Exception while executing stage {stage_id}: {e}", exc_info=True)
            return StageExecutionResult(stage=stage_id, status=STATUS_ERROR, error=f"{type(e).__name__}: {e}")
        if result['status'] != STATUS_PASS:
            logger.warning(f"Stage {stage_id} finished with status {result['status']}: {result.get('error')}")
        return StageExecutionResult(
            stage=stage_id,
            status=result['status'],
            data=result.get('data'),
            error=result.get('error'),
        )

    def run_scenario(self, scenario: Dict[str, Any], base_dir: Optional[Path] = None) -> ScenarioReport:
        """
        Run every stage whose section is present, in DAG order.

        A stage whose dependency did not pass is recorded as skipped; a stage
        whose section is absent is left out of the report.

        Args:
            scenario: Parsed scenario document
            base_dir: Directory for relative paths in the scenario

        Returns:
            ScenarioReport
        """
        check_version(scenario, 'scenario')
        model = ScenarioFile.model_validate(scenario)
        lattice = resolve_lattice(model.lattice, base_dir) if model.lattice is not None else None
        sections = model.model_dump()

        results: Dict[str, StageExecutionResult] = {}
        for level in self.execution_order:
            for stage_id in level:
                node = get_node_by_id(self.dag_config, stage_id)
                section = sections.get(node.section)
                if section is None:
                    continue
                dependencies = get_dependencies(self.dag_config, stage_id)
                if any(dep not in results for dep in dependencies):
                    continue
                blocked = [dep for dep in dependencies if results[dep].status != STATUS_PASS]
                if blocked:
                    logger.info(f"Skipping {stage_id}: {', '.join(blocked)} did not pass")
                    results[stage_id] = StageExecutionResult(
                        stage=stage_id, status=STATUS_SKIPPED, error=f"dependency {blocked[0]} did not pass"
                    )
                    continue
                context = {
                    'section': section,
                    'lattice': lattice,
                    'base_dir': base_dir,
                    'ambient_dim': model.ambient_dim,
                }
                results[stage_id] = self.execute_stage(stage_id, self._prepare_input(stage_id, context, results))

        stages = list(results.values())
        status = 'pass' if all(s.status == STATUS_PASS for s in stages) else 'fail'
        logger.info(f"Scenario {model.name!r} finished with status {status} ({len(stages)} stages)")
        return ScenarioReport(scenario=model.name, status=status, stages=stages)

    def run_file(self, path: Union[str, Path]) -> ScenarioReport:
        """Load a scenario file and run it with paths relative to its directory."""
        path = Path(path)
        scenario = load_json(path, 'scenario')
        return self.run_scenario(scenario, path.parent)


def run_scenario(scenario: Union[str, Path, Dict[str, Any]],
                 stage_overrides: Optional[Dict[str, Dict[str, Any]]] = None) -> ScenarioReport:
    """
    Run a scenario given as a path or a parsed document.

    Args:
        scenario: Scenario file path or dict
        stage_overrides: Extra factory config per stage id

    Returns:
        ScenarioReport
    """
    pipeline = Pipeline(stage_overrides=stage_overrides)
    if isinstance(scenario, dict):
        return pipeline.run_scenario(scenario)
    if not isinstance(scenario, (str, Path)):
        raise ScenarioError(f"Expected a scenario path or object, got {type(scenario).__name__}")
    return pipeline.run_file(scenario)
