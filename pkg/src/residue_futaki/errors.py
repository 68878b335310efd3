"""Exception hierarchy shared by the library and the CLI.

Each exception class carries the process exit code the CLI maps it to.
"""


class ResidueFutakiError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class UsageError(ResidueFutakiError, ValueError):
    """Invalid input: mismatched variables, bad shapes, violated preconditions."""

    exit_code = 2


class ParseError(UsageError):
    """Expression syntax error with a 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class SchemaError(UsageError):
    """Job document violation at a field path such as ``charts[1].order``."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ZeroFunctionError(ResidueFutakiError, ZeroDivisionError):
    """Division by the zero function, or by a factor that vanishes on evaluation."""

    exit_code = 3


class RepresentationNotFoundError(ResidueFutakiError, RuntimeError):
    """No monomial representation exists within the configured solver caps."""

    exit_code = 3

    def __init__(self, max_exponent: int, max_cofactor_degree: int):
        self.max_exponent = max_exponent
        self.max_cofactor_degree = max_cofactor_degree
        super().__init__(
            "no representation found within caps "
            f"(max_exponent={max_exponent}, max_cofactor_degree={max_cofactor_degree})"
        )


class IntegrityError(ResidueFutakiError, RuntimeError):
    """An internal cross-check failed. Always indicates an engine bug."""

    exit_code = 4


class ChartComputationError(ResidueFutakiError, RuntimeError):
    """A residue failed inside a fixed-point sum."""

    def __init__(self, chart_index: int, cause: Exception):
        self.chart_index = chart_index
        self.cause = cause
        super().__init__(f"chart {chart_index}: {cause}")

    @property
    def exit_code(self) -> int:  # type: ignore[override]
        return 4 if isinstance(self.cause, IntegrityError) else 3
