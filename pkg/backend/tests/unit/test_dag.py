"""
Unit tests for the pipeline DAG resolver.
"""

import copy

import pytest

from orchestrator.dag import (
    PIPELINE_DAG_CONFIG,
    get_dag_config,
    get_dependencies,
    get_dependents,
    get_execution_order,
    get_node_by_id,
    load_dag_config,
    resolve_execution_order,
)


@pytest.mark.unit
class TestExecutionOrder:
    """Test topological ordering of stages."""

    def test_default_pipeline(self):
        assert get_execution_order() == [
            ['monotonicity', 'validate', 'boundary', 'differential', 'spectral'],
            ['dimension', 'd_squared'],
            ['homology'],
        ]

    def test_levels_keep_declaration_order(self):
        edges = [{'from': 'a', 'to': 'c'}, {'from': 'a', 'to': 'b'}]
        assert resolve_execution_order(['a', 'b', 'c'], edges) == [['a'], ['b', 'c']]
        assert resolve_execution_order(['c', 'b', 'a'], edges) == [['a'], ['c', 'b']]

    def test_cycles_are_rejected(self):
        edges = [{'from': 'a', 'to': 'b'}, {'from': 'b', 'to': 'a'}]
        with pytest.raises(ValueError, match='cycles'):
            resolve_execution_order(['a', 'b'], edges)


@pytest.mark.unit
class TestDagConfig:
    """Test loading and querying the declarative configuration."""

    def test_queries(self):
        config = get_dag_config()
        assert get_dependencies(config, 'homology') == ['d_squared']
        assert get_dependents(config, 'differential') == ['d_squared']
        assert get_dependencies(config, 'spectral') == []
        assert get_node_by_id(config, 'dimension').section == 'trees'
        assert get_node_by_id(config, 'nope') is None
        assert config.to_dict()['nodes'][0]['stage_id'] == 'monotonicity'

    def test_malformed_configs(self):
        config = copy.deepcopy(PIPELINE_DAG_CONFIG)
        config['edges'].append({'from': 'homology', 'to': 'plotting'})
        with pytest.raises(ValueError, match='unknown stage'):
            load_dag_config(config)

        config = copy.deepcopy(PIPELINE_DAG_CONFIG)
        config['nodes'].append(dict(config['nodes'][0]))
        with pytest.raises(ValueError, match='Duplicate'):
            load_dag_config(config)
