"""
Error Hierarchy
Every failure raised by the engine derives from FloerCalcError.
"""


class FloerCalcError(ValueError):
    """Base class for all engine errors."""


class SchemaVersionError(FloerCalcError):
    """A JSON document declares a missing or unsupported schema version."""


class ScenarioError(FloerCalcError):
    """A scenario file is missing, malformed, or references missing files."""


# classgroup
class LatticeError(FloerCalcError):
    """Unknown functional, undeclared pairing, or mixing of lattices."""


class MonotonicityError(FloerCalcError):
    """A class violates the preconditions of a monotonicity check."""


class IndeterminateError(MonotonicityError):
    """Not enough data to determine a constant (empty input)."""


# trees / dimension / treeops
class TreeValidationError(FloerCalcError):
    """A tree fails validation where a valid tree is required."""

    def __init__(self, message: str, issues=None):
        super().__init__(message)
        self.issues = list(issues or [])


class DimensionError(FloerCalcError):
    """Missing incidence data or an unsupported vertex color."""


class GlueError(FloerCalcError):
    """Generator mismatch or a level merge incompatible with a component."""


class SplitError(FloerCalcError):
    """The requested edge cannot be split."""


class ForgetError(FloerCalcError):
    """A marked point cannot be forgotten."""


class DiskSplitError(FloerCalcError):
    """The contraction is not a level-0 shrinking of the splitting tree."""


class BoundaryError(FloerCalcError):
    """A boundary enumeration problem is ill-posed."""


# novikov
class NovikovError(FloerCalcError):
    """Malformed Novikov element or incompatible operation."""


class DivisionByZeroError(NovikovError, ZeroDivisionError):
    """Inversion of the zero element."""


# floer
class CountTableError(FloerCalcError):
    """Malformed count table."""


class UnvalidatedTableError(CountTableError):
    """A count table was used before validate_count_table accepted it."""


class ComponentMismatchError(CountTableError):
    """A strip count joins generators in different components."""


class EnergyError(CountTableError):
    """A strip count has non-positive energy."""


class GradingError(CountTableError):
    """A strip count does not lower the grading by one."""


class PotentialError(FloerCalcError):
    """A disk class of Maslov index other than 2 entered a restricted sum."""


class CurvatureError(FloerCalcError):
    """An operation needing a flat differential received a curved one."""


class ShapeMismatchError(FloerCalcError):
    """Matrix shapes are incompatible."""


class TransportError(FloerCalcError):
    """A relabeling is not a bijection or does not preserve energies."""


# spectral
class SpectralError(FloerCalcError):
    """Degree violations or malformed filtered complexes."""
