"""Exception types shared across the package."""


class SuliciuError(Exception):
    """Base class for all errors raised by this package."""


class InvalidState(SuliciuError, ValueError):
    """A fluid state or parameter set violates its invariants (vacuum, s <= 0, ...)."""


class NoClassicalSolution(SuliciuError):
    """The three-contact construction fails: an intermediate density is not positive
    or the wave speeds come out unordered."""


class NotInDeltaRegion(SuliciuError):
    """The state pair does not satisfy the delta-shock admissibility inequalities."""


class DegenerateJump(SuliciuError):
    """The jump is too weak for the concentrated-mass formulas (division by a
    vanishing velocity jump or vanishing discriminant)."""


class EntropyViolation(SuliciuError):
    """The candidate concentrated-mass solution exists algebraically but its speed
    falls outside the overcompressive bracket, so no admissible solution exists."""


class UnsolvedRegion(SuliciuError):
    """The state pair admits neither a classical solution nor a delta shock."""


class SingularAtOrigin(SuliciuError):
    """Trajectory verification requested where the concentrated weight vanishes,
    making the speed w*u/w undefined."""


class DomainExcludesOrigin(SuliciuError):
    """Riemann initial data needs x = 0 strictly inside the grid."""


class VacuumProduced(SuliciuError):
    """A finite-volume update drove a cell density below the vacuum guard."""


class NoSpikeFound(SuliciuError):
    """No concentrated density excess detected; the field looks classical."""


class UnsupportedTestFunction(SuliciuError):
    """The test function's support is not strictly inside t > 0."""


class ConfigError(SuliciuError):
    """A run configuration file or override could not be parsed or validated."""
