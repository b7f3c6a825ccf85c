"""Exception types shared across the toolkit."""


class HemiscanError(Exception):
    """Base class for all hemiscan errors."""


class InvalidGrid(HemiscanError):
    """Grid specification violates its invariants (bounds or divisibility)."""


class PoseError(HemiscanError):
    """Rotation is not a proper orthonormal matrix."""


class DegenerateGeometry(HemiscanError):
    """Geometric query has no answer (e.g. probe sits on the DUT origin)."""


class EmptyPlan(HemiscanError):
    """Every grid sample was rejected by the collision checker."""


class SensorFault(HemiscanError):
    """Power sensor failed to produce a reading (retryable)."""


class PositionerFault(HemiscanError):
    """Positioner failed unrecoverably; the scan cannot continue."""


class ScanAborted(HemiscanError):
    """Scan terminated early because of an unrecoverable positioner fault."""


class MalformedLog(HemiscanError):
    """Event log is empty or cannot be parsed."""


class EmptyMap(HemiscanError):
    """Operation requires at least one ok record."""


class PlaneNotSampled(HemiscanError):
    """No grid ring lies close enough to the requested cut plane."""


class DisjointSupport(HemiscanError):
    """Maps or cuts share no common ok angular points."""


class NeedAtLeastTwo(HemiscanError):
    """Repeatability statistics require two or more maps."""


class MapFormatError(HemiscanError):
    """Map file text does not conform to the format."""


class ConfigError(HemiscanError):
    """Configuration is invalid; carries every issue found in one pass."""

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))
