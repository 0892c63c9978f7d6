"""Exception hierarchy shared across the toolkit."""


class CcgkitError(Exception):
    """Base class for all toolkit errors."""


class NumericalFailure(CcgkitError):
    """Simplex could not recover a consistent basis after retries."""


class InfeasibleProblem(CcgkitError):
    """A model that must be feasible turned out not to be."""


class UnboundedProblem(CcgkitError):
    """A model that must be bounded turned out not to be."""


class InfeasibleRecourse(CcgkitError):
    """Second-stage feasibility set is empty for some (x, xi)."""


class UnboundedRecourse(CcgkitError):
    """Second-stage LP is unbounded for some (x, xi)."""


class CapExceeded(CcgkitError):
    """Enumeration guard hit (scenario count or grid size too large)."""


class MasterInfeasible(CcgkitError):
    """Master problem infeasible; violates the standing assumptions."""


class OracleFailure(CcgkitError):
    """Worst-case oracle failed to produce a scenario."""


class ParamError(CcgkitError, ValueError):
    """Algorithm parameters violate their admissible ranges."""


class DomainError(CcgkitError, ValueError):
    """Numeric input outside the domain of a closed-form expression."""


class DimensionError(CcgkitError, ValueError):
    """Mutually inconsistent array dimensions."""


class SpecError(CcgkitError, ValueError):
    """Invalid instance-generation specification."""


class EmptyInput(CcgkitError, ValueError):
    """An operation that needs at least one element got none."""
