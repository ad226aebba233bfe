"""Exception types shared across the package."""


class BlocklabError(Exception):
    """Base class."""


class ConfigurationError(BlocklabError):
    """Bad input or a configured cap was exceeded."""


class InvariantViolation(BlocklabError):
    """A computed object broke a structural invariant; signals a bug upstream."""
