"""
Sample documents for testing: lattices, hand-built trees and count tables.
"""

from pathlib import Path
from typing import Any, Dict, List

SCENARIO_DIR = Path(__file__).resolve().parents[2] / 'scenarios'
DATA_DIR = SCENARIO_DIR / 'data'

# b1, b2: Maslov-1 strip classes; a: Maslov-4 disk class; monotone with c = 1/2
MASLOV4_LATTICE = {
    "version": 1,
    "basis": ["b1", "b2", "a"],
    "omega": ["1/2", "1/2", "2"],
    "maslov": [1, 1, 4],
    "c1X": [0, 0, 0],
    "c1D": [0, 0, 0],
    "capD": [0, 0, 0],
}

# one Maslov-2 class of area 1
CURVED_LATTICE = {
    "version": 1,
    "basis": ["a"],
    "omega": ["1"],
    "maslov": [2],
    "capD": [0],
}

# three generators p -> q, p -> r, graded 1, 0, 0
MASLOV4_TABLE = {
    "version": 1,
    "generators": [
        {"name": "p", "component": "o0", "grading": 1},
        {"name": "q", "component": "o0", "grading": 0},
        {"name": "r", "component": "o0", "grading": 0},
    ],
    "strip_counts": [
        {"source": "p", "target": "q", "beta": [1, 0, 0], "count": 1},
        {"source": "p", "target": "r", "beta": [0, 1, 0], "count": 1},
    ],
}

# d p = q, d q = 2p with PO1 - PO0 = 3 - 1
CURVED_TABLE = {
    "version": 1,
    "generators": [
        {"name": "p", "component": "o0"},
        {"name": "q", "component": "o0"},
    ],
    "strip_counts": [
        {"source": "p", "target": "q", "beta": [1], "count": 1},
        {"source": "q", "target": "p", "beta": [1], "count": 2},
    ],
    "disk_counts_L1": [{"alpha": [1], "count": 3}],
    "disk_counts_L0": [{"alpha": [1], "count": 1}],
}


def strip_with_disk() -> Dict[str, Any]:
    """vl - str0 - vr with a d1 bubble of class a on str0."""
    return {
        "version": 1,
        "kind": "strip",
        "vertices": [
            {"id": "d0", "color": "d1", "level": 0, "alpha": [0, 0, 1], "ribbon_order": ["str0"]},
            {"id": "str0", "color": "str", "level": 0, "alpha": [1, 0, 0], "ribbon_order": ["vl", "d0", "vr"]},
            {"id": "vl", "color": "exterior", "level": 0, "ribbon_order": ["str0"]},
            {"id": "vr", "color": "exterior", "level": 0, "ribbon_order": ["str0"]},
        ],
        "edges": [
            {"ends": ["d0", "str0"]},
            {"ends": ["str0", "vl"], "generator": "p"},
            {"ends": ["str0", "vr"], "generator": "q"},
        ],
        "strip_path": ["vl", "str0", "vr"],
        "k0": 0,
        "k1": 0,
    }


def two_strip_tree() -> Dict[str, Any]:
    """vl - s1 - s2 - vr broken at r, one marked point on each side of s1 and s2."""
    return {
        "version": 1,
        "kind": "strip",
        "vertices": [
            {"id": "s1", "color": "str", "alpha": [1, 0, 0], "ribbon_order": ["vl", "z0_1", "s2", "z1_1"]},
            {"id": "s2", "color": "str", "alpha": [0, 1, 0], "ribbon_order": ["s1", "z0_2", "vr", "z1_2"]},
            {"id": "vl", "color": "exterior", "ribbon_order": ["s1"]},
            {"id": "vr", "color": "exterior", "ribbon_order": ["s2"]},
            {"id": "z0_1", "color": "exterior", "ribbon_order": ["s1"], "marker": 1, "side": 0},
            {"id": "z1_1", "color": "exterior", "ribbon_order": ["s1"], "marker": 1, "side": 1},
            {"id": "z0_2", "color": "exterior", "ribbon_order": ["s2"], "marker": 2, "side": 0},
            {"id": "z1_2", "color": "exterior", "ribbon_order": ["s2"], "marker": 2, "side": 1},
        ],
        "edges": [
            {"ends": ["vl", "s1"], "generator": "p"},
            {"ends": ["s1", "s2"], "generator": "r"},
            {"ends": ["s2", "vr"], "generator": "q"},
            {"ends": ["s1", "z0_1"]},
            {"ends": ["s1", "z1_1"]},
            {"ends": ["s2", "z0_2"]},
            {"ends": ["s2", "z1_2"]},
        ],
        "strip_path": ["vl", "s1", "s2", "vr"],
        "k0": 2,
        "k1": 2,
    }


def disk_one_marker() -> Dict[str, Any]:
    """A single disk of class a with the root and one marked point."""
    return {
        "version": 1,
        "kind": "disk",
        "vertices": [
            {"id": "d0", "color": "d", "alpha": [0, 0, 1], "ribbon_order": ["z0", "z1"]},
            {"id": "z0", "color": "exterior", "ribbon_order": ["d0"], "marker": 0},
            {"id": "z1", "color": "exterior", "ribbon_order": ["d0"], "marker": 1},
        ],
        "edges": [{"ends": ["d0", "z0"]}, {"ends": ["d0", "z1"]}],
        "k": 1,
    }


def disk_with_ghost() -> Dict[str, Any]:
    """d0 of class b1 carrying the root, and a constant disk d1 with markers 1 and 2."""
    return {
        "version": 1,
        "kind": "disk",
        "vertices": [
            {"id": "d0", "color": "d", "alpha": [1, 0, 0], "ribbon_order": ["z0", "d1"]},
            {"id": "d1", "color": "d", "alpha": [0, 0, 0], "ribbon_order": ["d0", "z1", "z2"]},
            {"id": "z0", "color": "exterior", "ribbon_order": ["d0"], "marker": 0},
            {"id": "z1", "color": "exterior", "ribbon_order": ["d1"], "marker": 1},
            {"id": "z2", "color": "exterior", "ribbon_order": ["d1"], "marker": 2},
        ],
        "edges": [
            {"ends": ["d0", "d1"]},
            {"ends": ["d0", "z0"]},
            {"ends": ["d1", "z1"]},
            {"ends": ["d1", "z2"]},
        ],
        "k": 2,
    }


def ghost_collapsed() -> Dict[str, Any]:
    """disk_with_ghost after forgetting marker 1: the constant disk is gone."""
    return {
        "version": 1,
        "kind": "disk",
        "vertices": [
            {"id": "d0", "color": "d", "alpha": [1, 0, 0], "ribbon_order": ["z0", "z2"]},
            {"id": "z0", "color": "exterior", "ribbon_order": ["d0"], "marker": 0},
            {"id": "z2", "color": "exterior", "ribbon_order": ["d0"], "marker": 1},
        ],
        "edges": [{"ends": ["d0", "z0"]}, {"ends": ["d0", "z2"]}],
        "k": 1,
    }


def two_disk_tree() -> Dict[str, Any]:
    """d0 (class b1, root) joined to d1 (class b2, marker 1)."""
    return {
        "version": 1,
        "kind": "disk",
        "vertices": [
            {"id": "d0", "color": "d", "alpha": [1, 0, 0], "ribbon_order": ["z0", "d1"]},
            {"id": "d1", "color": "d", "alpha": [0, 1, 0], "ribbon_order": ["d0", "z1"]},
            {"id": "z0", "color": "exterior", "ribbon_order": ["d0"], "marker": 0},
            {"id": "z1", "color": "exterior", "ribbon_order": ["d1"], "marker": 1},
        ],
        "edges": [
            {"ends": ["d0", "d1"]},
            {"ends": ["d0", "z0"]},
            {"ends": ["d1", "z1"]},
        ],
        "k": 1,
    }


def constant_hub() -> Dict[str, Any]:
    """d0 of class b1 carrying the root, and a constant disk d1 with markers 1, 2 and 3."""
    return {
        "version": 1,
        "kind": "disk",
        "vertices": [
            {"id": "d0", "color": "d", "alpha": [1, 0, 0], "ribbon_order": ["z0", "d1"]},
            {"id": "d1", "color": "d", "alpha": [0, 0, 0], "ribbon_order": ["d0", "z1", "z2", "z3"]},
            {"id": "z0", "color": "exterior", "ribbon_order": ["d0"], "marker": 0},
            {"id": "z1", "color": "exterior", "ribbon_order": ["d1"], "marker": 1},
            {"id": "z2", "color": "exterior", "ribbon_order": ["d1"], "marker": 2},
            {"id": "z3", "color": "exterior", "ribbon_order": ["d1"], "marker": 3},
        ],
        "edges": [
            {"ends": ["d0", "d1"]},
            {"ends": ["d0", "z0"]},
            {"ends": ["d1", "z1"]},
            {"ends": ["d1", "z2"]},
            {"ends": ["d1", "z3"]},
        ],
        "k": 3,
    }


def constant_hub_without_first() -> Dict[str, Any]:
    """constant_hub after forgetting marker 1: d1 keeps three special points."""
    return {
        "version": 1,
        "kind": "disk",
        "vertices": [
            {"id": "d0", "color": "d", "alpha": [1, 0, 0], "ribbon_order": ["z0", "d1"]},
            {"id": "d1", "color": "d", "alpha": [0, 0, 0], "ribbon_order": ["d0", "z2", "z3"]},
            {"id": "z0", "color": "exterior", "ribbon_order": ["d0"], "marker": 0},
            {"id": "z2", "color": "exterior", "ribbon_order": ["d1"], "marker": 1},
            {"id": "z3", "color": "exterior", "ribbon_order": ["d1"], "marker": 2},
        ],
        "edges": [
            {"ends": ["d0", "d1"]},
            {"ends": ["d0", "z0"]},
            {"ends": ["d1", "z2"]},
            {"ends": ["d1", "z3"]},
        ],
        "k": 2,
    }


def constant_chain() -> Dict[str, Any]:
    """d0 (class b1, root) - d1 - d2 with d1, d2 constant; markers 1 on d1, 2 and 3 on d2."""
    return {
        "version": 1,
        "kind": "disk",
        "vertices": [
            {"id": "d0", "color": "d", "alpha": [1, 0, 0], "ribbon_order": ["z0", "d1"]},
            {"id": "d1", "color": "d", "alpha": [0, 0, 0], "ribbon_order": ["d0", "z1", "d2"]},
            {"id": "d2", "color": "d", "alpha": [0, 0, 0], "ribbon_order": ["d1", "z2", "z3"]},
            {"id": "z0", "color": "exterior", "ribbon_order": ["d0"], "marker": 0},
            {"id": "z1", "color": "exterior", "ribbon_order": ["d1"], "marker": 1},
            {"id": "z2", "color": "exterior", "ribbon_order": ["d2"], "marker": 2},
            {"id": "z3", "color": "exterior", "ribbon_order": ["d2"], "marker": 3},
        ],
        "edges": [
            {"ends": ["d0", "d1"]},
            {"ends": ["d1", "d2"]},
            {"ends": ["d0", "z0"]},
            {"ends": ["d1", "z1"]},
            {"ends": ["d2", "z2"]},
            {"ends": ["d2", "z3"]},
        ],
        "k": 3,
    }


def constant_chain_without_last() -> Dict[str, Any]:
    """constant_chain after forgetting marker 3: d2 is gone and d1 takes z2."""
    return {
        "version": 1,
        "kind": "disk",
        "vertices": [
            {"id": "d0", "color": "d", "alpha": [1, 0, 0], "ribbon_order": ["z0", "d1"]},
            {"id": "d1", "color": "d", "alpha": [0, 0, 0], "ribbon_order": ["d0", "z1", "z2"]},
            {"id": "z0", "color": "exterior", "ribbon_order": ["d0"], "marker": 0},
            {"id": "z1", "color": "exterior", "ribbon_order": ["d1"], "marker": 1},
            {"id": "z2", "color": "exterior", "ribbon_order": ["d1"], "marker": 2},
        ],
        "edges": [
            {"ends": ["d0", "d1"]},
            {"ends": ["d0", "z0"]},
            {"ends": ["d1", "z1"]},
            {"ends": ["d1", "z2"]},
        ],
        "k": 2,
    }


def bare_disk() -> Dict[str, Any]:
    """A single disk of class b1 with only the root."""
    return {
        "version": 1,
        "kind": "disk",
        "vertices": [
            {"id": "d0", "color": "d", "alpha": [1, 0, 0], "ribbon_order": ["z0"]},
            {"id": "z0", "color": "exterior", "ribbon_order": ["d0"], "marker": 0},
        ],
        "edges": [{"ends": ["d0", "z0"]}],
        "k": 0,
    }


# b1, b2 disk classes and e, a divisor class with c1(D) = 1
LEVELS_LATTICE = {
    "version": 1,
    "basis": ["b1", "b2", "e"],
    "omega": ["1/2", "1/2", "1"],
    "maslov": [1, 1, 2],
    "c1X": [0, 0, 0],
    "c1D": [0, 0, 1],
    "capD": [0, 0, 0],
}


def leveled_disks() -> Dict[str, Any]:
    """
    d0 (class b1, root) joined at level 0 to d1 (class b2, marker 1).
    D vertices of class e sit at levels 1 and 3 over d0 and at level 2 over d1.
    """
    return {
        "version": 1,
        "kind": "disk",
        "vertices": [
            {"id": "d0", "color": "d", "alpha": [1, 0, 0], "ribbon_order": ["z0", "d1", "D1", "D3"]},
            {"id": "d1", "color": "d", "alpha": [0, 1, 0], "ribbon_order": ["d0", "z1", "D2"]},
            {"id": "D1", "color": "D", "level": 1, "alpha": [0, 0, 1], "ribbon_order": ["d0"]},
            {"id": "D2", "color": "D", "level": 2, "alpha": [0, 0, 1], "ribbon_order": ["d1"]},
            {"id": "D3", "color": "D", "level": 3, "alpha": [0, 0, 1], "ribbon_order": ["d0"]},
            {"id": "z0", "color": "exterior", "ribbon_order": ["d0"], "marker": 0},
            {"id": "z1", "color": "exterior", "ribbon_order": ["d1"], "marker": 1},
        ],
        "edges": [
            {"ends": ["d0", "d1"]},
            {"ends": ["d0", "D1"], "multiplicity": 1},
            {"ends": ["d1", "D2"], "multiplicity": 1},
            {"ends": ["d0", "D3"], "multiplicity": 1},
            {"ends": ["d0", "z0"]},
            {"ends": ["d1", "z1"]},
        ],
        "k": 1,
    }


def boundary_problem(**overrides: Any) -> Dict[str, Any]:
    """p -> q in class b1 + b2 with r available for breaking."""
    problem = {
        "version": 1,
        "generators": ["p", "q", "r"],
        "p": "p",
        "q": "q",
        "beta": [1, 1, 0],
        "classes": [[1, 0, 0], [0, 1, 0], [1, 1, 0]],
    }
    problem.update(overrides)
    return problem


def vertex(doc: Dict[str, Any], vertex_id: str) -> Dict[str, Any]:
    return next(v for v in doc['vertices'] if v['id'] == vertex_id)


def edges_without(doc: Dict[str, Any], *ends: str) -> List[Dict[str, Any]]:
    return [e for e in doc['edges'] if sorted(e['ends']) != sorted(ends)]
