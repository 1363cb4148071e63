"""
Declarative DAG Configuration and Resolver
Defines the verification pipeline declaratively and resolves execution order.
No mathematics here - only DAG structure and ordering.
"""

from typing import Dict, List, Set, Optional, Tuple
from collections import defaultdict
from .schemas import DAGConfig, StageNode


# Declarative DAG Configuration
# This is the ONLY place where stage order is defined:
# 1. Class checks (monotonicity) and tree validation
# 2. Dimension cross-check on validated trees, boundary enumeration
# 3. Differential -> d o d check -> homology
# 4. Spectral sequence
PIPELINE_DAG_CONFIG = {
    'name': 'floer_verification_pipeline',
    'description': 'validate -> dimension -> boundary -> differential -> d_squared -> homology -> spectral',
    'nodes': [
        {
            'stage_id': 'monotonicity',
            'stage_module': 'engine.classgroup.stage',
            'stage_class': 'MonotonicityStage',
            'section': 'monotonicity',
            'config': None,
            'input_mapping': None,
        },
        {
            'stage_id': 'validate',
            'stage_module': 'engine.trees.stage',
            'stage_class': 'ValidateStage',
            'section': 'trees',
            'config': None,
            'input_mapping': None,
        },
        {
            'stage_id': 'dimension',
            'stage_module': 'engine.dimension.stage',
            'stage_class': 'DimensionStage',
            'section': 'trees',
            'config': None,
            'input_mapping': None,
        },
        {
            'stage_id': 'boundary',
            'stage_module': 'engine.treeops.stage',
            'stage_class': 'BoundaryStage',
            'section': 'boundary',
            'config': None,
            'input_mapping': None,
        },
        {
            'stage_id': 'differential',
            'stage_module': 'engine.floer.stage',
            'stage_class': 'DifferentialStage',
            'section': 'complex',
            'config': {'stage': 'differential'},
            'input_mapping': None,
        },
        {
            'stage_id': 'd_squared',
            'stage_module': 'engine.floer.stage',
            'stage_class': 'DSquaredStage',
            'section': 'complex',
            'config': {'stage': 'd_squared'},
            'input_mapping': {
                'matrix': 'differential.matrix',
                'po1': 'differential.po1',
                'po0': 'differential.po0',
            },
        },
        {
            'stage_id': 'homology',
            'stage_module': 'engine.floer.stage',
            'stage_class': 'HomologyStage',
            'section': 'complex',
            'config': {'stage': 'homology'},
            'input_mapping': {
                'matrix': 'differential.matrix',
                'generators': 'differential.generators',
                'grading_period': 'differential.grading_period',
                'truncation': 'differential.truncation',
                'novikov_matrix': 'differential.novikov_matrix',
                'expect_homology': 'differential.expect_homology',
            },
        },
        {
            'stage_id': 'spectral',
            'stage_module': 'engine.spectral.stage',
            'stage_class': 'SpectralStage',
            'section': 'spectral',
            'config': None,
            'input_mapping': None,
        },
    ],
    'edges': [
        {'from': 'validate', 'to': 'dimension'},
        {'from': 'differential', 'to': 'd_squared'},
        {'from': 'd_squared', 'to': 'homology'},
    ],
}


def load_dag_config(config: Dict) -> DAGConfig:
    """
    Load DAG configuration from dictionary.

    Args:
        config: DAG configuration dictionary

    Returns:
        DAGConfig object
    """
    nodes = [StageNode(**node) for node in config['nodes']]
    ids = [node.stage_id for node in nodes]
    if len(set(ids)) != len(ids):
        raise ValueError(f"Duplicate stage ids in DAG: {ids}")
    for edge in config['edges']:
        for end in (edge['from'], edge['to']):
            if end not in ids:
                raise ValueError(f"Edge refers to unknown stage: {end}")
    return DAGConfig(
        name=config['name'],
        description=config['description'],
        nodes=nodes,
        edges=config['edges'],
    )


def build_dependency_graph(node_ids: List[str], edges: List[Dict[str, str]]) -> Tuple[Dict[str, Set[str]], Dict[str, int]]:
    """
    Build adjacency list representation of dependency graph.

    Args:
        node_ids: All stage ids, including those without edges
        edges: List of edges [{"from": "stage1", "to": "stage2"}, ...]

    Returns:
        (stage_id -> set of dependents, stage_id -> in-degree)
    """
    graph = defaultdict(set)
    in_degree = {node: 0 for node in node_ids}
    for edge in edges:
        graph[edge['from']].add(edge['to'])
        in_degree[edge['to']] += 1
    return graph, in_degree


def resolve_execution_order(node_ids: List[str], edges: List[Dict[str, str]]) -> List[List[str]]:
    """
    Resolve DAG execution order using topological sort.
    Stages within a level keep their declaration order, so the order is deterministic.

    Args:
        node_ids: Stage ids in declaration order
        edges: List of edges defining dependencies

    Returns:
        List of levels, each a list of stage ids
    """
    graph, in_degree = build_dependency_graph(node_ids, edges)
    position = {node: i for i, node in enumerate(node_ids)}
    remaining = dict(in_degree)
    current = [node for node in node_ids if remaining[node] == 0]
    execution_order = []

    while current:
        execution_order.append(current)
        following = []
        for node in current:
            for dependent in graph[node]:
                remaining[dependent] -= 1
                if remaining[dependent] == 0:
                    following.append(dependent)
        current = sorted(following, key=position.__getitem__)

    if sum(remaining.values()) > 0:
        raise ValueError("DAG contains cycles - cannot resolve execution order")

    return execution_order


def get_dag_config() -> DAGConfig:
    """Get the default pipeline configuration."""
    return load_dag_config(PIPELINE_DAG_CONFIG)


def get_execution_order(dag_config: Optional[DAGConfig] = None) -> List[List[str]]:
    """
    Get execution order for the DAG.

    Args:
        dag_config: Optional DAG config (uses default if not provided)

    Returns:
        List of execution levels
    """
    if dag_config is None:
        dag_config = get_dag_config()
    return resolve_execution_order([node.stage_id for node in dag_config.nodes], dag_config.edges)


def get_node_by_id(dag_config: DAGConfig, stage_id: str) -> Optional[StageNode]:
    for node in dag_config.nodes:
        if node.stage_id == stage_id:
            return node
    return None


def get_dependencies(dag_config: DAGConfig, stage_id: str) -> List[str]:
    """Stage ids this stage depends on."""
    return [edge['from'] for edge in dag_config.edges if edge['to'] == stage_id]


def get_dependents(dag_config: DAGConfig, stage_id: str) -> List[str]:
    """Stage ids that depend on this stage."""
    return [edge['to'] for edge in dag_config.edges if edge['from'] == stage_id]
