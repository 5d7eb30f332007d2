"""Domain exceptions shared by the engine, the CLI and the HTTP API."""


class EngineError(Exception):
    """Base class for every error raised on purpose by the engine."""


class BraidParseError(EngineError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ColoringError(EngineError, ValueError):
    pass


class VerificationError(EngineError):
    """A forced identity did not hold. Always an implementation bug."""


class BudgetExceeded(EngineError):
    pass


class ResampleError(EngineError, ZeroDivisionError):
    """Denominator vanished at a random point; pick another point."""


class CertificationRefused(EngineError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class DegenerateSystem(EngineError):
    pass
