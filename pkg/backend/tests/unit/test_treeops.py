"""
Unit tests for gluing, splitting, forgetful maps, disk splitting and the
boundary enumeration.
"""

from itertools import permutations

import numpy as np
import pytest

from common.errors import BoundaryError, DiskSplitError, ForgetError, GlueError, SplitError
from engine.classgroup.schemas import ClassLattice, class_from_json
from engine.treeops.schemas import BoundaryProblem, BoundaryProblemFile, DecompositionBasis, LevelMerge
from engine.treeops.tools import (
    boundary_strata,
    disk_split,
    enumerate_level_merges,
    forget,
    forget_all,
    glue,
    level_merges,
    pieces_partition,
    split,
)
from engine.trees.generator import random_disk_tree, random_strip_pair, random_strip_tree
from engine.trees.schemas import LEFT_END, RIGHT_END
from engine.trees.tools import canonical_json, canonicalize, total_class, tree_from_dict, trees_equal
from tests.fixtures.oracles import boundary_oracle, level_merge_oracle
from tests.fixtures.sample_data import (
    LEVELS_LATTICE,
    bare_disk,
    boundary_problem,
    constant_chain,
    constant_chain_without_last,
    constant_hub,
    constant_hub_without_first,
    disk_with_ghost,
    ghost_collapsed,
    leveled_disks,
    strip_with_disk,
    two_disk_tree,
    two_strip_tree,
    vertex,
)


def vertex_marker(tree, vertex_id):
    return tree.vertex(vertex_id).marker


def _forget_in_order(tree, order):
    """Forget the original markers in the given order, tracking the renumbering."""
    removed = []
    for original in order:
        tree = forget(tree, original - sum(1 for m in removed if m < original))
        removed.append(original)
    return tree


def _glue_split_round_trip(rng, lattice, draws):
    for _ in range(draws):
        left, right = random_strip_pair(rng, lattice)
        merges = enumerate_level_merges(left, right)
        merge = merges[int(rng.integers(0, len(merges)))]
        glued = glue(left, right, merge)
        cut = (left.strip_path[-2], right.strip_path[1])
        result = split(glued, cut)
        assert trees_equal(result.left, left), canonical_json(glued)
        assert trees_equal(result.right, right), canonical_json(glued)
        assert result.merge == merge
        assert result.h == merge.h


@pytest.mark.unit
class TestLevelMerges:
    """Test level merge enumeration against brute force."""

    def test_small_counts(self):
        assert len(level_merges(1, 1)) == 3
        assert len(level_merges(1, 2)) == 5
        assert level_merges(0, 0) == [LevelMerge((), (), 0)]
        assert [m.h for m in level_merges(1, 1)] == [1, 0, 0]

    @pytest.mark.parametrize('a', range(4))
    @pytest.mark.parametrize('b', range(4))
    def test_matches_oracle(self, a, b):
        found = {(m.left, m.right, m.size) for m in level_merges(a, b)}
        assert found == level_merge_oracle(a, b)
        assert len(found) == len(level_merges(a, b))

    def test_invalid_merges_are_rejected(self):
        with pytest.raises(GlueError):
            LevelMerge((2, 1), (), 2)
        with pytest.raises(GlueError):
            LevelMerge((1,), (1,), 2)
        assert LevelMerge.from_dict({'left': [1], 'right': [2], 'size': 2}).h == 0


@pytest.mark.unit
class TestGlueAndSplit:
    """Test that split inverts glue."""

    def test_split_broken_strip(self, broken_strip_tree):
        result = split(broken_strip_tree, 's1~s2')
        assert result.generator == 'r'
        assert result.h == 0
        assert result.left.strip_path == (LEFT_END, 's1', RIGHT_END)
        assert (result.left.k0, result.left.k1) == (1, 1)
        assert vertex_marker(result.right, 'z0_2') == 1
        assert trees_equal(glue(result.left, result.right, result.merge), broken_strip_tree)

    def test_split_accepts_every_edge_form(self, broken_strip_tree):
        by_id = split(broken_strip_tree, 's1~s2')
        by_pair = split(broken_strip_tree, ('s2', 's1'))
        by_edge = split(broken_strip_tree, broken_strip_tree.edge('s1', 's2'))
        assert by_id == by_pair == by_edge

    def test_random_round_trip(self, rng, random_lattice):
        _glue_split_round_trip(rng, random_lattice, 150)

    @pytest.mark.slow
    def test_random_round_trip_large_sample(self, seed, random_lattice):
        _glue_split_round_trip(np.random.default_rng(seed + 2), random_lattice, 1000)

    def test_glue_inverts_split(self, rng, random_lattice):
        checked = 0
        for _ in range(100):
            tree = random_strip_tree(rng, random_lattice, max_strips=4)
            path = tree.strip_path
            for a, b in zip(path[1:-2], path[2:-1]):
                try:
                    result = split(tree, (a, b))
                except SplitError:
                    continue
                assert trees_equal(glue(result.left, result.right, result.merge), tree), canonical_json(tree)
                checked += 1
        assert checked > 0

    def test_glue_errors(self, strip_tree, lattice):
        with pytest.raises(GlueError):
            glue(strip_tree, strip_tree, LevelMerge((), (), 0))
        doc = strip_with_disk()
        doc['edges'][1]['generator'] = 'q'
        same_ids = tree_from_dict(doc, lattice)
        with pytest.raises(GlueError):
            glue(strip_tree, same_ids, LevelMerge((), (), 0))
        with pytest.raises(GlueError):
            glue(strip_tree, strip_tree, LevelMerge((1,), (), 1))

    def test_split_errors(self, strip_tree, broken_strip_tree, disk_tree, lattice):
        with pytest.raises(SplitError):
            split(strip_tree, 'vl~str0')
        with pytest.raises(SplitError):
            split(strip_tree, 'd0~str0')
        with pytest.raises(SplitError):
            split(strip_tree, 'str0')
        with pytest.raises(SplitError):
            split(disk_tree, 'd0~z0')
        doc = two_strip_tree()
        vertex(doc, 'z0_1')['marker'] = 2
        vertex(doc, 'z0_2')['marker'] = 1
        with pytest.raises(SplitError):
            split(tree_from_dict(doc, lattice), 's1~s2')


@pytest.mark.unit
class TestForget:
    """Test the forgetful maps on disk trees."""

    def test_constant_disk_collapses(self, lattice):
        tree = tree_from_dict(disk_with_ghost(), lattice)
        assert trees_equal(forget(tree, 1), tree_from_dict(ghost_collapsed(), lattice))

    def test_forget_all_preserves_the_class(self, lattice, disk_tree):
        for tree in (tree_from_dict(disk_with_ghost(), lattice), disk_tree):
            bare = forget_all(tree)
            assert bare.k == 0
            assert total_class(bare) == total_class(tree)

    def test_forgetting_commutes(self, lattice):
        tree = tree_from_dict(disk_with_ghost(), lattice)
        assert trees_equal(forget(forget(tree, 1), 1), forget(forget(tree, 2), 1))

    def test_stable_constant_disk_is_kept(self, lattice):
        tree = tree_from_dict(constant_hub(), lattice)
        reduced = forget(tree, 1)
        assert trees_equal(reduced, tree_from_dict(constant_hub_without_first(), lattice))
        assert reduced.vertex('d1').alpha.is_zero

    def test_constant_chain_collapses_step_by_step(self, lattice):
        tree = tree_from_dict(constant_chain(), lattice)
        assert trees_equal(forget(tree, 3), tree_from_dict(constant_chain_without_last(), lattice))
        assert trees_equal(forget_all(tree), tree_from_dict(bare_disk(), lattice))

    def test_every_order_agrees_with_forget_all(self, lattice):
        for builder in (constant_chain, constant_hub, disk_with_ghost):
            tree = tree_from_dict(builder(), lattice)
            expected = forget_all(tree)
            for order in permutations(range(1, tree.k + 1)):
                assert trees_equal(_forget_in_order(tree, order), expected), (builder.__name__, order)

    def test_every_order_agrees_on_random_trees(self, rng, random_lattice):
        orders = 0
        for _ in range(40):
            tree = random_disk_tree(rng, random_lattice, stable=True, max_marked=4)
            if not 2 <= tree.k <= 4:
                continue
            expected = forget_all(tree)
            assert total_class(expected) == total_class(tree)
            for order in permutations(range(1, tree.k + 1)):
                assert trees_equal(_forget_in_order(tree, order), expected), canonical_json(tree)
                orders += 1
        assert orders > 0

    def test_forget_errors(self, strip_tree, disk_tree, lattice):
        with pytest.raises(ForgetError):
            forget(strip_tree, 1)
        with pytest.raises(ForgetError):
            forget(disk_tree, 0)
        with pytest.raises(ForgetError):
            forget(disk_tree, 2)
        constant = {
            "version": 1,
            "kind": "disk",
            "vertices": [
                {"id": "d0", "color": "d", "alpha": [0, 0, 0], "ribbon_order": ["z0", "z1", "z2"]},
                {"id": "z0", "color": "exterior", "ribbon_order": ["d0"], "marker": 0},
                {"id": "z1", "color": "exterior", "ribbon_order": ["d0"], "marker": 1},
                {"id": "z2", "color": "exterior", "ribbon_order": ["d0"], "marker": 2},
            ],
            "edges": [{"ends": ["d0", "z0"]}, {"ends": ["d0", "z1"]}, {"ends": ["d0", "z2"]}],
            "k": 2,
        }
        with pytest.raises(ForgetError):
            forget(tree_from_dict(constant, lattice), 1)


@pytest.mark.unit
class TestDiskSplit:
    """Test decomposition along a contraction of the disk-splitting tree."""

    def test_two_targets(self, lattice):
        tree = tree_from_dict(two_disk_tree(), lattice)
        pieces = disk_split(tree, {'d0': 'w0', 'd1': 'w1'})
        assert [p.target for p in pieces] == ['w0', 'w1']
        assert [p.tree.k for p in pieces] == [1, 1]
        assert vertex_marker(pieces[0].tree, 'z0') == 0
        assert vertex_marker(pieces[0].tree, 'node:d0:d1') == 1
        assert vertex_marker(pieces[1].tree, 'node:d1:d0') == 0
        assert vertex_marker(pieces[1].tree, 'z1') == 1
        assert pieces_partition(tree, pieces)

    def test_single_target_keeps_the_tree(self, lattice):
        tree = tree_from_dict(two_disk_tree(), lattice)
        (piece,) = disk_split(tree, {'d0': 'w', 'd1': 'w'})
        assert trees_equal(piece.tree, canonicalize(tree))
        assert piece.level_map == ()

    def test_levels_are_reindexed_per_piece(self):
        lattice = ClassLattice.from_dict(LEVELS_LATTICE)
        tree = tree_from_dict(leveled_disks(), lattice)
        w0, w1 = disk_split(tree, {'d0': 'w0', 'd1': 'w1'})

        assert {v.id for v in w0.tree.interior_vertices} == {'d0', 'D1', 'D3'}
        assert {v.id for v in w1.tree.interior_vertices} == {'d1', 'D2'}
        assert [w0.tree.vertex(v).level for v in ('d0', 'D1', 'D3')] == [0, 1, 2]
        assert [w1.tree.vertex(v).level for v in ('d1', 'D2')] == [0, 1]
        assert w0.level_map == ((1, 1), (2, 1), (3, 2))
        assert w1.level_map == ((1, 1), (2, 1), (3, 1))

        assert vertex_marker(w0.tree, 'z0') == 0
        assert vertex_marker(w0.tree, 'node:d0:d1') == 1
        assert vertex_marker(w1.tree, 'node:d1:d0') == 0
        assert vertex_marker(w1.tree, 'z1') == 1

        assert total_class(w0.tree).coords == (1, 0, 2)
        assert total_class(w1.tree).coords == (0, 1, 1)
        assert total_class(w0.tree) + total_class(w1.tree) == total_class(tree)
        assert pieces_partition(tree, [w0, w1])

    def test_contraction_errors(self, lattice, strip_tree):
        tree = tree_from_dict(two_disk_tree(), lattice)
        with pytest.raises(DiskSplitError):
            disk_split(tree, {'d0': 'w'})
        with pytest.raises(DiskSplitError):
            disk_split(tree, {'d0': 'w', 'd1': 'w', 'z0': 'w'})
        with pytest.raises(DiskSplitError):
            disk_split(strip_tree, {})


@pytest.mark.unit
class TestBoundaryStrata:
    """Test the codimension-one boundary enumeration."""

    def test_breaking_and_bubbling_counts(self, lattice):
        problem, generators, basis = BoundaryProblemFile.model_validate(boundary_problem()).to_domain(lattice)
        descriptors = boundary_strata(problem, generators, lattice, basis)
        assert len(descriptors) == 10
        assert [sum(1 for d in descriptors if d.kind == kind) for kind in (1, 2, 3)] == [6, 2, 2]
        assert all(d.dim == 0 and d.parent_dim == 1 for d in descriptors)
        assert not any(d.negative for d in descriptors)

    def test_matches_oracle_with_marked_points(self, lattice):
        data = boundary_problem(q='p', k0=1, k1=2)
        problem, generators, basis = BoundaryProblemFile.model_validate(data).to_domain(lattice)
        descriptors = boundary_strata(problem, generators, lattice, basis)
        keys = {(d.kind, d.r, tuple(c.coords for c in d.classes), d.splits, d.attachment) for d in descriptors}
        expected = boundary_oracle(
            problem.p, problem.q, problem.beta, problem.k0, problem.k1, generators,
            basis.strip_classes, basis.disk_classes_L1, basis.disk_classes_L0,
        )
        assert keys == expected
        assert len(keys) == len(descriptors)
        assert all(d.dim == d.parent_dim - 1 for d in descriptors)

    def test_hand_counted_family(self, lattice):
        data = boundary_problem(q='p', k0=1, k1=2)
        problem, generators, basis = BoundaryProblemFile.model_validate(data).to_domain(lattice)
        descriptors = boundary_strata(problem, generators, lattice, basis)
        # type 1: 3 generators x 2 class orders x 2 x 3 marker splits
        # type 2: constant bubble 1, b1 and b2 and b1+b2 bubbles 6 each
        # type 3: b1 and b2 and b1+b2 bubbles 3 each
        assert [sum(1 for d in descriptors if d.kind == kind) for kind in (1, 2, 3)] == [36, 19, 9]
        assert all(total_class(d.tree) == problem.beta for d in descriptors)
        assert len({canonical_json(d.tree) for d in descriptors}) == len(descriptors)
        assert {(d.dim, d.parent_dim) for d in descriptors} == {(3, 4)}

    def test_ill_posed_problems(self, lattice):
        beta = class_from_json(lattice, [1, 1, 0])
        basis = DecompositionBasis.from_classes([lattice.basis_class('b1'), lattice.basis_class('b2')])
        with pytest.raises(BoundaryError):
            boundary_strata(BoundaryProblem('p', 'x', beta), ['p', 'q'], lattice, basis)
        with pytest.raises(BoundaryError):
            BoundaryProblem('p', 'q', beta, k0=-1)

        meeting = ClassLattice.build(['b'], omega=[1], maslov=[2], capD=[1])
        b = meeting.basis_class('b')
        with pytest.raises(BoundaryError):
            boundary_strata(BoundaryProblem('p', 'q', b), ['p', 'q'], meeting, DecompositionBasis.from_classes([b]))
