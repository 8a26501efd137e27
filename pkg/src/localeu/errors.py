"""Exception hierarchy shared by all modules."""


class LocalEuError(Exception):
    """Base class for errors raised by localeu."""


class ResourceLimitError(LocalEuError):
    """A Groebner computation exceeded its configured step budget.

    This signals that the input is too large for the configured budget,
    not that the input is wrong.
    """


class SeedInstabilityError(LocalEuError):
    """Results computed with different random seeds disagree.

    Generic-position arguments failed for at least one seed; rerun with
    other seeds.
    """


class EmptySchemeError(LocalEuError, ValueError):
    """The ideal is the unit ideal, so the scheme it defines is empty."""


class NotSquarefreeError(LocalEuError, ValueError):
    pass


class NotOnHypersurfaceError(LocalEuError, ValueError):
    pass


class ValidationError(LocalEuError, ValueError):
    """Declared stratified or cone data is inconsistent."""
