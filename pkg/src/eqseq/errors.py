"""Exception hierarchy shared by all eqseq modules."""


class EqseqError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(EqseqError):
    """An argument violates a documented precondition (bad modulus, mismatched pair, ...)."""


class UnsupportedInputError(EqseqError):
    """The input is well-formed but outside the supported scope (e.g. even cyclotomic index)."""


class ResourceError(EqseqError):
    """The requested computation exceeds the configured period/degree budget."""


class InternalConsistencyError(EqseqError):
    """An identity that must hold by construction failed; indicates an arithmetic bug."""


class ParseError(EqseqError):
    """A sequence file could not be parsed; carries the offending position."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
