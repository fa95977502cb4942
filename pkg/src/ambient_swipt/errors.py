"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside the domain of the requested computation.

    ``parameter`` names the offending input so callers (the CLI in
    particular) can report it without parsing the message.
    """

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class SamplingError(RuntimeError):
    """A point-process sampler exhausted its attempt budget."""
