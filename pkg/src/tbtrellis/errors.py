"""Exception types shared across the toolkit."""


class MalformedElementError(ValueError):
    """An element's residue vector does not fit its ambient group."""


class AmbientMismatchError(ValueError):
    """Two subgroups that must share an ambient group do not."""


class NotASubgroupError(ValueError):
    """A claimed subgroup relation (H <= G) does not hold."""


class UndefinedBelowError(ValueError):
    """Requested the strictly-smaller sum of a level-0 fragment."""


class RequiresReducedError(ValueError):
    """An operation whose statement assumes a reduced realization got a non-reduced one."""


class NotATrajectoryError(ValueError):
    """A vector claimed to be a trajectory is not in the behavior."""


class InternalInvariantError(RuntimeError):
    """A cross-check that should be impossible to fail has failed."""
