"""Exceptions raised across the package."""


class ShapeError(ValueError):
    """A partition, tableau or contraction pattern has the wrong shape."""


class DiagramError(ValueError):
    """A walled diagram violates the matching or wall constraints."""


class ParameterMismatchError(ValueError):
    """Two algebra elements or operators do not share k (or n)."""


class ResourceLimitError(ValueError):
    """A computation was refused because it exceeds a configured size guard."""


class VerificationError(RuntimeError):
    """An identity that must hold by construction failed; indicates a bug."""
