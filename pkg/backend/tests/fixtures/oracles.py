"""
Brute-force oracles that recompute engine results by exhaustive search or
plain fraction arithmetic, independently of the engine's own algorithms.
"""

from fractions import Fraction
from itertools import product
from typing import Iterable, List, Sequence, Set, Tuple

from engine.classgroup.schemas import HomologyClass


def level_merge_oracle(a: int, b: int) -> Set[Tuple[Tuple[int, ...], Tuple[int, ...], int]]:
    """Every pair of maps {1..a} -> {1..s}, {1..b} -> {1..s}, filtered to
    strictly increasing maps with jointly surjective image."""
    found = set()
    for size in range(0, a + b + 1):
        targets = range(1, size + 1)
        for left in product(targets, repeat=a):
            if any(y <= x for x, y in zip(left, left[1:])):
                continue
            for right in product(targets, repeat=b):
                if any(y <= x for x, y in zip(right, right[1:])):
                    continue
                if set(left) | set(right) == set(targets):
                    found.add((left, right, size))
    return found


def _placements(k: int, constant: bool) -> Set[Tuple[int, int]]:
    """
    (points on the bubble, attachment slot) for a bubble on a side with k
    marked points: every host assignment and node position whose reading
    order along the boundary is 1..k.
    """
    found = set()
    for hosts in product(('strip', 'bubble'), repeat=k):
        on_bubble = [m for m, host in zip(range(1, k + 1), hosts) if host == 'bubble']
        on_strip = [m for m, host in zip(range(1, k + 1), hosts) if host == 'strip']
        if constant and len(on_bubble) < 2:
            continue
        for node in range(len(on_strip) + 1):
            reading = on_strip[:node] + on_bubble + on_strip[node:]
            if reading == list(range(1, k + 1)):
                found.add((len(on_bubble), len(on_strip[:node]) + 1))
    return found


def boundary_oracle(p: str, q: str, beta: HomologyClass, k0: int, k1: int, generators: Sequence[str],
                    strip_classes: Iterable[HomologyClass],
                    disk_classes_L1: Iterable[HomologyClass],
                    disk_classes_L0: Iterable[HomologyClass]) -> Set[tuple]:
    """
    Keys (type, r, classes, splits, attachment) of every codimension-one
    decomposition. Marked points are assigned to components in all possible
    ways and kept when the boundary still reads them in order.
    """
    strips = set(strip_classes)
    zero = beta.lattice.zero()
    keys = set()
    for r in generators:
        for first, second in product(strips, repeat=2):
            if first.is_zero or second.is_zero or first + second != beta:
                continue
            for hosts0 in product((1, 2), repeat=k0):
                for hosts1 in product((1, 2), repeat=k1):
                    if list(hosts0) != sorted(hosts0) or list(hosts1) != sorted(hosts1):
                        continue
                    splits = (hosts0.count(1), hosts1.count(1))
                    keys.add((1, r, (first.coords, second.coords), splits, None))
    for kind, disks, k_side in ((2, disk_classes_L1, k1), (3, disk_classes_L0, k0)):
        for alpha in set(disks) | {zero}:
            rest = beta - alpha
            if rest.is_zero and p != q:
                continue
            if not rest.is_zero and rest not in strips:
                continue
            for on_bubble, slot in _placements(k_side, alpha.is_zero):
                keys.add((kind, None, (rest.coords, alpha.coords), (on_bubble,), slot))
    return keys


def fraction_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank by row reduction over Fraction."""
    work: List[List[Fraction]] = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                factor = work[i][col] / work[rank][col]
                work[i] = [x - factor * y for x, y in zip(work[i], work[rank])]
        rank += 1
    return rank


def total_homology_oracle(rows: Sequence[Sequence[Fraction]]) -> int:
    """dim ker d - dim im d for a square differential with d o d = 0."""
    n = len(rows)
    return n - 2 * fraction_rank(rows)
