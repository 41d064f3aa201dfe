"""Exception hierarchy shared by every module of the package."""


class LindbladOscError(Exception):
    """Base class for all errors raised by :mod:`lindblad_osc`."""


class ParameterError(LindbladOscError, ValueError):
    """Non-finite input, a value outside its domain, or the wrong damping regime."""


class ConstraintViolation(LindbladOscError, ValueError):
    """Diffusion coefficients violate the complete-positivity inequalities."""

    def __init__(self, message, report=None, line=None):
        super().__init__(message)
        self.report = report
        self.line = line


class InvalidStateError(LindbladOscError, ValueError):
    """A Gaussian state or density matrix violates the uncertainty relation or positivity."""


class NumericalConsistencyError(LindbladOscError, ArithmeticError):
    """Two quantities that must agree analytically disagree numerically."""


class ConvergenceError(LindbladOscError, RuntimeError):
    """Step-halving of an integrator disagrees beyond tolerance."""

    def __init__(self, message, deviation=None):
        super().__init__(message)
        self.deviation = deviation


class TruncationError(LindbladOscError, RuntimeError):
    """A truncated Fock basis is too small for the evolved state."""

    def __init__(self, message, deviation=None, dim=None):
        super().__init__(message)
        self.deviation = deviation
        self.dim = dim


class ConfigError(LindbladOscError, ValueError):
    """Malformed run configuration; carries the offending line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
