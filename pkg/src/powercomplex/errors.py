"""Exception types raised across the package."""


class PowerComplexError(Exception):
    """Base class for all package errors."""


class MalformedComplexError(PowerComplexError, ValueError):
    """Input is not a well-formed ranked poset (dangling covers, bad ranks...)."""


class NotVertexDescribableError(PowerComplexError, ValueError):
    pass


class SizeCapExceeded(PowerComplexError):
    """A construction or search would exceed its configured size cap."""


class NotRegularError(PowerComplexError, ValueError):
    pass


class NotACoveringError(PowerComplexError, ValueError):
    pass


class GroupPropertyError(PowerComplexError, ValueError):
    pass
