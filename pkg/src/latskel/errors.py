"""Exception hierarchy.  Every error carries a stable ``name`` used by the CLI."""


class LatskelError(Exception):
    @property
    def name(self) -> str:
        return type(self).__name__


class NotALattice(LatskelError):
    pass


class NoBounds(NotALattice):
    pass


class EmptyLattice(NoBounds):
    pass


class CycleDetected(LatskelError):
    pass


class TooLarge(LatskelError):
    pass


class NotComparable(LatskelError):
    pass


class BlockNotInterval(LatskelError):
    pass


class ChainDependentWeight(LatskelError):
    pass


class IsZeta0(LatskelError):
    pass


class InvalidWDS(LatskelError):
    """An abstract weighted double skeleton violates one of its axioms."""

    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        super().__init__(f"{axiom}: {detail}" if detail else axiom)


class NegativeJCount(LatskelError):
    pass


class InconsistentCounts(LatskelError):
    pass


class UnknownSuite(LatskelError):
    pass


class ParseError(LatskelError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InputFileError(LatskelError):
    pass
