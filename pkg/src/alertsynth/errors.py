"""Exception types shared across the package."""


class ConfigError(Exception):
    """Base class for configuration problems."""


class ParseError(ConfigError):
    """Document could not be read or is not structurally well formed."""


class ValidationError(ConfigError):
    """One or more model invariants are violated.

    Carries every problem found so validators can report them all at once.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class UnknownTechniqueError(LookupError):
    """A technique id was looked up that the knowledge base does not contain."""


class UnsatisfiableError(Exception):
    """The requested synthesis cannot be produced from the given models."""
