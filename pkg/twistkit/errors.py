"""
Exceptions raised by twistkit
"""


class TwistkitError(Exception):
    """Base class of every error raised by the package."""


class StructuralError(TwistkitError):
    """Operands do not fit together: truncation orders, tensor arities,
    Lie algebras or function models differ."""


class DomainError(TwistkitError):
    """Input is well-formed but mathematically outside the domain of the
    operation (non-invertible head, T(1) != 1, non-periodic coefficient...)."""


class SpecError(TwistkitError):
    """Error in a `.twk` document. Carries a source position and a code."""
    code = "E_SPEC"

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{self.code} {line}:{column}: {message}")


class LexError(SpecError):
    code = "E_LEX"


class ParseSyntaxError(SpecError):
    code = "E_SYNTAX"

    def __init__(self, message: str, line: int = 0, column: int = 0, expected=()) -> None:
        self.expected = tuple(sorted(set(expected)))
        if self.expected:
            message = f"{message}, expected one of: {' '.join(self.expected)}"
        super().__init__(message, line, column)


class UnresolvedNameError(SpecError):
    code = "E_UNRESOLVED"


class ArityError(SpecError):
    code = "E_ARITY"


class ExpressionTypeError(SpecError):
    code = "E_TYPE"


class DuplicateNameError(SpecError):
    code = "E_DUPLICATE"
