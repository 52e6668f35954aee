"""Exception and warning types shared by every app."""


class ShiftDenoiseError(Exception):
    """Base class for errors raised by the library."""


class ConfigurationError(ShiftDenoiseError, ValueError):
    """A parameter or configuration document is invalid."""


class DataError(ShiftDenoiseError, ValueError):
    """A signal is malformed or does not cover the indices a computation needs."""


class SolverNotConverged(ShiftDenoiseError):  # noqa: N818
    """Raised by callers that treat an unconverged solve as a failure."""


class ConvergenceWarning(UserWarning):
    pass


class SeparationWarning(UserWarning):
    pass
