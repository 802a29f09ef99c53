"""Exception types shared by the library and mapped to CLI exit codes."""


class ConfigError(ValueError):
    """Invalid user input such as a malformed matrix or config."""


class ResourceError(RuntimeError):
    """A configured enumeration or search budget was exceeded."""


class VerificationError(RuntimeError):
    """An internal consistency or soundness check failed."""
