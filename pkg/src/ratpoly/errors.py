__all__ = [
    "PackageInitializationError",
    "RatPolyError",
    "DimensionError",
    "SingularMatrixError",
    "PreconditionError",
    "EmptyPolyhedronError",
    "NotPointedError",
    "UnsupportedShapeError",
    "ResourceLimitError",
    "ContractViolationError",
    "ParseError",
]


class PackageInitializationError(Exception):
    pass


class RatPolyError(Exception):
    pass


class DimensionError(RatPolyError):
    pass


class SingularMatrixError(RatPolyError):
    pass


class PreconditionError(RatPolyError):
    pass


class EmptyPolyhedronError(PreconditionError):
    pass


class NotPointedError(PreconditionError):
    pass


class UnsupportedShapeError(PreconditionError):
    pass


class ResourceLimitError(RatPolyError):
    pass


class ContractViolationError(RatPolyError):
    pass


class ParseError(RatPolyError):
    line: int | None

    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
