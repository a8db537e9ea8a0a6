"""Named exceptions shared across the package.

Callers that need to distinguish failure modes (the CLI exit codes, the
planner's feasibility fallbacks) catch these rather than bare ValueError.
"""


class FatpointsError(Exception):
    """Base class for all package errors."""


class LatticeMismatchError(FatpointsError, ValueError):
    """Arithmetic between divisor classes with different numbers of points."""


class OutOfRangeError(FatpointsError, ValueError):
    """Input outside the range where a formula is justified."""


class NotationError(FatpointsError, ValueError):
    """Malformed class/scheme/curve text notation."""


class UnsupportedResidueError(FatpointsError, NotImplementedError):
    """Symbolic trace/residue requested for a residue variant the calculus
    does not cover (only simple residues and tangency residues are handled
    symbolically; the oracle can still impose any variant numerically)."""


class DegenerateInputError(FatpointsError, ValueError):
    """Degenerate input to a polynomial elimination routine."""


class PreconditionError(FatpointsError, ValueError):
    """A stated operation precondition does not hold."""


class SamplingError(FatpointsError, RuntimeError):
    """Random sampling exhausted its retry budget; includes retry guidance."""


class InfeasibleParametersError(FatpointsError, ValueError):
    """A parameter search (specialization size s, block size beta) has no
    solution; the message names the violated constraint."""


class InconsistentInstanceError(FatpointsError, ValueError):
    """Checker instance whose stored bookkeeping disagrees with the values
    recomputed from its own data."""


class HypothesisFailure(FatpointsError, ValueError):
    """A checker hypothesis failed; the message names the hypothesis."""


class ConfigError(FatpointsError, ValueError):
    """Missing or unusable plan configuration."""


class SpecialSystemError(FatpointsError, RuntimeError):
    """The oracle detected a special system where regularity was required."""


class CertificateError(FatpointsError, ValueError):
    """Schema violation or version mismatch in a certificate file."""
