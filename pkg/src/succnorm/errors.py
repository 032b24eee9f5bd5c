"""Exception hierarchy shared across the package."""


class SuccNormError(Exception):
    """Base class for every error raised by succnorm."""


class InvalidInputError(SuccNormError, ValueError):
    """Input is not a finite, non-empty two-dimensional array."""


class ShapeMismatchError(SuccNormError, ValueError):
    """Two matrices that must share a shape do not."""

    def __init__(self, a_shape, b_shape):
        self.a_shape = tuple(a_shape)
        self.b_shape = tuple(b_shape)
        super().__init__(f"incompatible shapes {self.a_shape} and {self.b_shape}")


class DegenerateAxisError(SuccNormError, ArithmeticError):
    """A row or column has zero standard deviation, so it cannot be scaled."""

    def __init__(self, axis, index, std):
        self.axis = axis
        self.index = int(index)
        self.std = float(std)
        super().__init__(
            f"{axis.value[:-1]} {self.index} has zero standard deviation "
            f"(std={self.std:.3g}); normalization is not defined"
        )


class DimensionGateError(SuccNormError, ValueError):
    """Matrix is too small for the requested normalization mode."""

    def __init__(self, required, shape, mode):
        self.required = int(required)
        self.shape = tuple(shape)
        self.mode = mode
        msg = (
            f"{mode.value} normalization needs at least {self.required} rows "
            f"and {self.required} columns, got shape {self.shape[0]}x{self.shape[1]}"
        )
        if self.required >= 3:
            msg += (
                "; with only two rows or columns a standardized line is always "
                "(-1, +1), so the cross-axis variance can vanish and the "
                "iteration is not well defined"
            )
        super().__init__(msg)


class ConfigError(SuccNormError, ValueError):
    """Invalid configuration or experiment definition."""


class MissingSnapshotsError(SuccNormError, ValueError):
    """A diagnostic needs per-iteration snapshots the run did not capture."""


class TieDetectedError(SuccNormError, ValueError):
    """A row or column contains equal entries, so its strict order is undefined."""


class DomainError(SuccNormError, ValueError):
    """Argument outside the mathematical domain of a function."""


class MatrixFileError(SuccNormError):
    """Base class for matrix file problems."""


class ParseError(MatrixFileError, ValueError):
    def __init__(self, path, line, column, text):
        self.path = str(path)
        self.line = line
        self.column = column
        super().__init__(f"{self.path}:{line}:{column}: cannot parse {text!r} as a finite number")


class RaggedRowsError(MatrixFileError, ValueError):
    def __init__(self, path, line, expected, got):
        self.path = str(path)
        self.line = line
        super().__init__(f"{self.path}:{line}: expected {expected} fields, found {got}")


class EmptyFileError(MatrixFileError, ValueError):
    def __init__(self, path):
        self.path = str(path)
        super().__init__(f"{self.path}: no data rows")
