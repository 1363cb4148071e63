"""
Class Lattice Tools
Exact pairings and the monotonicity checks on disk and strip classes.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple
import logging

from common.errors import IndeterminateError, LatticeError, MonotonicityError
from common.rationals import format_rational, parse_rational

from .schemas import FUNCTIONALS, ClassLattice, HomologyClass

logger = logging.getLogger(__name__)


def pair(cls: HomologyClass, functional: str, lattice: Optional[ClassLattice] = None) -> Fraction:
    """
    Evaluate a functional on a class.

    Args:
        cls: The class
        functional: One of omega, maslov, c1X, c1D, capD
        lattice: If given, the class must belong to this lattice

    Returns:
        Exact value as a Fraction
    """
    if functional not in FUNCTIONALS:
        raise LatticeError(f"Unknown functional: {functional}")
    if lattice is not None and cls.lattice != lattice:
        raise LatticeError("Class does not belong to the given lattice")
    values = cls.lattice.values(functional)
    return sum((Fraction(c) * v for c, v in zip(cls.coords, values)), Fraction(0))


def maslov(cls: HomologyClass) -> int:
    return int(pair(cls, 'maslov'))


def omega(cls: HomologyClass) -> Fraction:
    return pair(cls, 'omega')


def _canonical(classes: Iterable[HomologyClass]) -> List[HomologyClass]:
    return sorted(set(classes), key=lambda c: c.sort_key())


def _require_capd_zero(classes: List[HomologyClass]) -> None:
    for cls in classes:
        if 'capD' in cls.lattice.declared_functionals and pair(cls, 'capD') != 0:
            raise MonotonicityError(f"Class {cls.label()} meets the divisor (capD != 0)")


@dataclass(frozen=True)
class MonotoneVerdict:
    """Result of check_monotone."""
    passed: bool
    c: Fraction
    checked: int
    violator: Optional[HomologyClass] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'c': format_rational(self.c),
            'checked': self.checked,
            'violator': self.violator.to_list() if self.violator is not None else None,
        }


def check_monotone(classes: Iterable[HomologyClass], c: Any) -> MonotoneVerdict:
    """
    Check omega = c * maslov on every class.

    Args:
        classes: Classes to check, all with capD = 0
        c: Monotonicity constant

    Returns:
        MonotoneVerdict naming the first violator in canonical order
    """
    c = parse_rational(c)
    ordered = _canonical(classes)
    _require_capd_zero(ordered)
    for cls in ordered:
        if omega(cls) != c * pair(cls, 'maslov'):
            logger.debug(f"Monotonicity fails at {cls.label()}")
            return MonotoneVerdict(False, c, len(ordered), cls)
    return MonotoneVerdict(True, c, len(ordered))


@dataclass(frozen=True)
class CpqResult:
    """
    Result of extract_cpq.

    value is set when every class gives the same c(p,q); otherwise
    distinct_values lists all values found.
    """
    consistent: bool
    value: Optional[Fraction]
    distinct_values: Tuple[Fraction, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'consistent': self.consistent,
            'value': format_rational(self.value) if self.value is not None else None,
            'distinct_values': [format_rational(v) for v in self.distinct_values],
        }


def extract_cpq(strip_classes: Iterable[HomologyClass], c: Any) -> CpqResult:
    """
    Recover the offset c(p,q) with omega(beta) = c*mu(beta) - c(p,q).

    Args:
        strip_classes: Strip classes from p to q, all with capD = 0
        c: Monotonicity constant

    Returns:
        CpqResult

    Raises:
        IndeterminateError: the set is empty
    """
    c = parse_rational(c)
    ordered = _canonical(strip_classes)
    if not ordered:
        raise IndeterminateError("c(p,q) is indeterminate for an empty set of strip classes")
    _require_capd_zero(ordered)
    values = sorted({c * pair(cls, 'maslov') - omega(cls) for cls in ordered})
    if len(values) == 1:
        return CpqResult(True, values[0], tuple(values))
    return CpqResult(False, None, tuple(values))


@dataclass(frozen=True)
class MaslovVerdict:
    """Result of min_maslov_check."""
    passed: bool
    threshold: int
    violators: Tuple[HomologyClass, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'threshold': self.threshold,
            'violators': [v.to_list() for v in self.violators],
        }


def min_maslov_check(disk_classes: Iterable[HomologyClass], threshold: int) -> MaslovVerdict:
    """
    Check that every nonconstant disk class has Maslov index at least threshold.

    Args:
        disk_classes: Disk classes, each with omega > 0
        threshold: Minimal Maslov index

    Returns:
        MaslovVerdict listing violators
    """
    ordered = _canonical(disk_classes)
    for cls in ordered:
        if omega(cls) <= 0:
            raise MonotonicityError(f"Disk class {cls.label()} has non-positive area")
    violators = tuple(cls for cls in ordered if pair(cls, 'maslov') < threshold)
    return MaslovVerdict(not violators, int(threshold), violators)


def monotone_constant(classes: Iterable[HomologyClass]) -> Optional[Fraction]:
    """
    The unique c with omega = c * maslov on the classes, if they determine one.

    Returns:
        c, or None when the classes are all Maslov zero or disagree
    """
    c = None
    for cls in _canonical(classes):
        mu = pair(cls, 'maslov')
        if mu == 0:
            if omega(cls) != 0:
                return None
            continue
        ratio = omega(cls) / mu
        if c is None:
            c = ratio
        elif c != ratio:
            return None
    return c
