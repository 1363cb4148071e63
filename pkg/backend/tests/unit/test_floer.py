"""
Unit tests for count tables, boundary operators, potentials, the curved
d o d identity, homology and chain-level checks.
"""

import copy
from fractions import Fraction

import pytest
import sympy

from common.errors import (
    ComponentMismatchError,
    CountTableError,
    CurvatureError,
    EnergyError,
    GradingError,
    NovikovError,
    PotentialError,
    ShapeMismatchError,
    TransportError,
    UnvalidatedTableError,
)
from engine.classgroup.schemas import ClassMap
from engine.floer.schemas import CountTableFile, GeneratorSet
from engine.floer.tools import (
    build_boundary_novikov,
    build_boundary_q,
    check_chain_homotopy,
    check_chain_map,
    check_composition,
    continuation_matrix,
    d_squared_defect,
    differential_components_ok,
    energy_validate,
    homology_novikov,
    homology_q,
    potential,
    potential_novikov,
    transport,
    validate_count_table,
)
from engine.novikov.schemas import NovikovElement, NovikovMatrix
from tests.fixtures.oracles import total_homology_oracle
from tests.fixtures.sample_data import MASLOV4_TABLE

# dH + Hd = Id for this pair
D_ARROW = sympy.Matrix([[0, 0], [1, 0]])
H_ARROW = sympy.Matrix([[0, 1], [0, 0]])


def _table(lattice, document):
    return CountTableFile.model_validate(document).to_domain(lattice)


def _d_squared(generators, table):
    verdict = d_squared_defect(
        build_boundary_q(generators, table).matrix,
        potential(table.disk_counts_L1),
        potential(table.disk_counts_L0),
    )
    return verdict.passed, verdict.curvature


@pytest.mark.unit
class TestCountTableValidation:
    """Test the checks a count table must pass before use."""

    def test_energy_gate(self, lattice):
        document = copy.deepcopy(MASLOV4_TABLE)
        document['offsets'] = {'q': '-1'}
        generators, table = _table(lattice, document)
        verdict = energy_validate(table)
        assert not verdict.passed
        assert verdict.to_dict()['violations'][0]['omega_h'] == '-1/2'
        with pytest.raises(EnergyError):
            validate_count_table(generators, table)

    def test_grading_must_drop_by_one(self, lattice):
        document = copy.deepcopy(MASLOV4_TABLE)
        document['generators'][1]['grading'] = 1
        with pytest.raises(GradingError):
            validate_count_table(*_table(lattice, document))
        document['grading_period'] = 1
        assert validate_count_table(*_table(lattice, document)).validated

    def test_strips_stay_in_one_component(self, lattice):
        document = copy.deepcopy(MASLOV4_TABLE)
        document['generators'][2]['component'] = 'o1'
        with pytest.raises(ComponentMismatchError):
            validate_count_table(*_table(lattice, document))

    def test_malformed_tables(self, lattice):
        document = copy.deepcopy(MASLOV4_TABLE)
        document['strip_counts'].append(dict(document['strip_counts'][0]))
        with pytest.raises(CountTableError):
            validate_count_table(*_table(lattice, document))
        document = copy.deepcopy(MASLOV4_TABLE)
        document['strip_counts'][0]['target'] = 'x'
        with pytest.raises(CountTableError):
            validate_count_table(*_table(lattice, document))
        document = copy.deepcopy(MASLOV4_TABLE)
        document['generators'][0].pop('grading')
        with pytest.raises(CountTableError):
            _table(lattice, document)

    def test_fractional_classes_are_rejected(self, lattice):
        document = copy.deepcopy(MASLOV4_TABLE)
        document['strip_counts'][0]['beta'] = [1.5, 0, 0]
        with pytest.raises(CountTableError, match='must be an integer'):
            _table(lattice, document)
        document = copy.deepcopy(MASLOV4_TABLE)
        document['disk_counts_L1'] = [{'alpha': [0, 0, 0.5], 'count': 1}]
        with pytest.raises(CountTableError, match='must be an integer'):
            _table(lattice, document)

    def test_unvalidated_tables_are_refused(self, lattice):
        generators, table = _table(lattice, MASLOV4_TABLE)
        with pytest.raises(UnvalidatedTableError):
            build_boundary_q(generators, table)
        with pytest.raises(UnvalidatedTableError):
            build_boundary_novikov(generators, table, 4)

    def test_generator_records_round_trip(self, maslov4_complex):
        generators, _table_ = maslov4_complex
        assert GeneratorSet.from_dict(generators.to_dict()) == generators


@pytest.mark.unit
class TestBoundaryOperators:
    """Test the boundary matrices over Q and over the Novikov ring."""

    def test_boundary_over_q(self, maslov4_complex):
        generators, table = maslov4_complex
        differential = build_boundary_q(generators, table)
        assert differential.matrix == sympy.Matrix([[0, 0, 0], [1, 0, 0], [1, 0, 0]])
        assert differential_components_ok(differential)

    def test_boundary_over_novikov(self, maslov4_complex):
        generators, table = maslov4_complex
        matrix = build_boundary_novikov(generators, table, 4)
        assert matrix.entry(1, 0).identical(NovikovElement.monomial(1, '1/2', 4))
        assert matrix.entry(0, 1).is_exact and matrix.entry(0, 1).is_zero
        assert matrix.min_valuation() > 0
        with pytest.raises(NovikovError):
            build_boundary_novikov(generators, table, 0)


@pytest.mark.unit
class TestPotentials:
    """Test disk potentials and rho weights."""

    def test_potentials(self, curved_complex, curved_lattice):
        table_file, _generators, table = curved_complex
        assert potential(table.disk_counts_L1) == 3
        assert potential(table.disk_counts_L0, restrict_maslov_2=True) == 1
        a = curved_lattice.basis_class('a')
        assert potential(table.disk_counts_L1, {a: 2}) == 6
        assert potential({a: '1/2'}) == Fraction(1, 2)
        assert potential_novikov(table.disk_counts_L1).identical(NovikovElement.monomial(3, 1))
        assert table_file.rho_for(table) is None

    def test_rho_by_label(self, curved_complex, curved_lattice):
        table_file, _generators, table = curved_complex
        weighted = table_file.model_copy(update={'rho': {'a': 2}})
        assert weighted.rho_for(table) == {curved_lattice.basis_class('a'): 2}
        with pytest.raises(PotentialError):
            table_file.model_copy(update={'rho': {'b': 1}}).rho_for(table)

    def test_invalid_potentials(self, lattice, curved_complex, curved_lattice):
        _table_file, _generators, table = curved_complex
        with pytest.raises(PotentialError):
            potential(table.disk_counts_L1, {curved_lattice.basis_class('a'): 0})
        with pytest.raises(PotentialError):
            potential({lattice.basis_class('a'): 1}, restrict_maslov_2=True)


@pytest.mark.unit
class TestDSquared:
    """Test d o d = (PO1 - PO0) * Id."""

    def test_curved_complex(self, curved_complex):
        _table_file, generators, table = curved_complex
        d = build_boundary_q(generators, table).matrix
        verdict = d_squared_defect(d, potential(table.disk_counts_L1), potential(table.disk_counts_L0))
        assert verdict.passed
        assert not verdict.flat
        assert verdict.curvature == 2
        assert verdict.to_dict()['square'] == [['2', '0'], ['0', '2']]

        naive = d_squared_defect(d)
        assert not naive.passed

    def test_flat_complex_over_both_rings(self, maslov4_complex):
        generators, table = maslov4_complex
        verdict = d_squared_defect(build_boundary_q(generators, table).matrix)
        assert verdict.passed and verdict.flat
        novikov = d_squared_defect(build_boundary_novikov(generators, table, 4), truncation=4)
        assert novikov.passed and novikov.flat

    def test_non_square_boundary(self):
        with pytest.raises(ShapeMismatchError):
            d_squared_defect(sympy.zeros(2, 3))


@pytest.mark.unit
class TestHomology:
    """Test homology over Q and over the Novikov field."""

    def test_homology_over_q(self, maslov4_complex):
        generators, table = maslov4_complex
        report = homology_q(build_boundary_q(generators, table))
        assert report.total == 1
        assert report.to_dict()['per_degree'] == {'0': 1, '1': 0}
        assert report.to_dict()['per_component'] == {'o0': 1}
        assert report.bound_ok

    def test_small_complexes(self):
        assert homology_q(sympy.zeros(4, 4)).total == 4
        assert homology_q(D_ARROW).total == 0
        three = sympy.Matrix([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
        assert homology_q(three).total == 1
        assert homology_q(three.T).total == 1

    def test_curved_complex_has_no_homology(self, curved_complex):
        _table_file, generators, table = curved_complex
        with pytest.raises(CurvatureError):
            homology_q(build_boundary_q(generators, table))
        with pytest.raises(ShapeMismatchError):
            homology_q(sympy.zeros(2, 2), GeneratorSet(('p',), ('o0',)))

    def test_two_step_complexes_match_oracle(self, rng):
        for _ in range(50):
            m, k = int(rng.integers(1, 4)), int(rng.integers(1, 4))
            block = [[int(rng.integers(-2, 3)) for _ in range(m)] for _ in range(k)]
            rows = [[0] * (m + k) for _ in range(m)] + [row + [0] * k for row in block]
            assert homology_q(sympy.Matrix(rows)).total == total_homology_oracle(rows)

    def test_homology_over_novikov(self, maslov4_complex):
        generators, table = maslov4_complex
        report = homology_novikov(build_boundary_novikov(generators, table, 4), 4)
        assert (report.rank, report.determined) == (1, True)

        t = NovikovElement.monomial(1, 1)
        assert homology_novikov(NovikovMatrix(((0, 0), (t, 0))), 4).rank == 0
        assert homology_novikov(sympy.zeros(3, 3), 4).rank == 3

        late = NovikovMatrix(((0, 0), (NovikovElement.monomial(1, 4), 0)))
        undetermined = homology_novikov(late, 4)
        assert undetermined.rank is None and not undetermined.determined


@pytest.mark.unit
class TestTransportAndChainMaps:
    """Test relabeling and chain-level identities."""

    def test_transport_preserves_homology(self, maslov4_complex):
        generators, table = maslov4_complex
        before = homology_q(build_boundary_q(generators, table))
        for relabeling in ({'p': 'x', 'q': 'y', 'r': 'z'}, {'p': 'q', 'q': 'p', 'r': 'r'}):
            new_generators, new_table = transport(generators, table, relabeling)
            after = homology_q(build_boundary_q(new_generators, new_table))
            assert after.to_dict() == before.to_dict()

    def test_transport_preserves_the_d_squared_verdict(self, maslov4_complex, curved_complex):
        generators, table = maslov4_complex
        before = _d_squared(generators, table)
        assert _d_squared(*transport(generators, table, {'p': 'x', 'q': 'y', 'r': 'z'})) == before
        assert before == (True, 0)

        _table_file, generators, table = curved_complex
        before = _d_squared(generators, table)
        assert _d_squared(*transport(generators, table, {'p': 'q', 'q': 'p'})) == before
        assert before == (True, 2)
        swapped = transport(generators, table, {'p': 'q', 'q': 'p'})
        assert not d_squared_defect(build_boundary_q(*swapped).matrix).passed

    def test_transport_along_a_class_map(self, maslov4_complex, lattice):
        generators, table = maslov4_complex
        before = homology_q(build_boundary_q(generators, table)).to_dict()
        identity = {n: n for n in generators.names}

        # b1 <-> b2 keeps omega, so offsets carry over
        swap_b1_b2 = ClassMap(lattice, lattice, ((0, 1, 0), (1, 0, 0), (0, 0, 1)))
        new_generators, new_table = transport(generators, table, identity, swap_b1_b2)
        assert [e.beta.coords for e in new_table.strip_counts] == [(0, 1, 0), (1, 0, 0)]
        assert homology_q(build_boundary_q(new_generators, new_table)).to_dict() == before

        # b1 -> b1 + b2 raises omega(p -> q) by 1/2; an offset on q compensates
        shear = ClassMap(lattice, lattice, ((1, 0, 0), (1, 1, 0), (0, 0, 1)))
        with pytest.raises(TransportError):
            transport(generators, table, identity, shear)
        new_generators, new_table = transport(generators, table, identity, shear, new_offsets={'q': '-1/2'})
        assert [new_table.omega_h(e) for e in new_table.strip_counts] == [Fraction(1, 2), Fraction(1, 2)]
        assert new_table.strip_counts[0].beta.coords == (1, 1, 0)
        assert homology_q(build_boundary_q(new_generators, new_table)).to_dict() == before
        assert _d_squared(new_generators, new_table) == (True, 0)

    def test_transport_errors(self, maslov4_complex, lattice):
        generators, table = maslov4_complex
        with pytest.raises(TransportError):
            transport(generators, table, {'p': 'x', 'q': 'x', 'r': 'z'})
        with pytest.raises(TransportError):
            transport(generators, table, {'p': 'x', 'q': 'y'})
        swap_b1_a = ClassMap(lattice, lattice, ((0, 0, 1), (0, 1, 0), (1, 0, 0)))
        with pytest.raises(TransportError):
            transport(generators, table, {'p': 'p', 'q': 'q', 'r': 'r'}, swap_b1_a)

    def test_chain_maps(self, maslov4_complex):
        generators, table = maslov4_complex
        d = build_boundary_q(generators, table).matrix
        identity = continuation_matrix(generators, generators, [(n, n, 1) for n in generators.names])
        assert identity == sympy.eye(3)
        assert check_chain_map(identity, d, d).passed
        projection = sympy.diag(1, 0, 0)
        assert not check_chain_map(projection, d, d).passed

    def test_chain_homotopy(self):
        zero = sympy.zeros(2, 2)
        assert check_chain_homotopy(H_ARROW, zero, sympy.eye(2), D_ARROW, D_ARROW).passed
        assert not check_chain_homotopy(zero, zero, sympy.eye(2), D_ARROW, D_ARROW).passed
        with pytest.raises(ShapeMismatchError):
            check_chain_homotopy(sympy.zeros(3, 3), zero, zero, D_ARROW, D_ARROW)

    def test_composition(self):
        identity = sympy.eye(2)
        assert check_composition(identity, identity, sympy.zeros(2, 2), H_ARROW, D_ARROW, D_ARROW).passed
        assert check_composition(identity, identity, identity, sympy.zeros(2, 2), D_ARROW, D_ARROW).passed
        with pytest.raises(ShapeMismatchError):
            check_composition(identity, sympy.zeros(2, 3), identity, H_ARROW, D_ARROW, D_ARROW)
