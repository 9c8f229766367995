class SimulationError(Exception):
    """Base class for every error raised by the simulator."""


class NumericDomainError(SimulationError, ValueError):
    """A vector or scalar left the finite reals (NaN or Inf)."""


class DimensionMismatchError(SimulationError, ValueError):
    pass


class ContractError(SimulationError, ValueError):
    """A precondition of an operation was violated by its caller."""


class ConfigError(SimulationError, ValueError):
    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


class DataFormatError(SimulationError, ValueError):
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number
