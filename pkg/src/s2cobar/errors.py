"""Exception types shared across the package."""


class S2CobarError(Exception):
    """Base class for all package errors."""


class InvalidValue(S2CobarError, ValueError):
    pass


class WindowExceeded(S2CobarError):
    """A computation needed data outside the configured degree/length window."""


class WindowTooNarrow(WindowExceeded):
    pass


class SlotOutOfRange(S2CobarError, IndexError):
    pass


class ArityMismatch(S2CobarError, ValueError):
    pass


class NotComplexityTwo(S2CobarError, ValueError):
    pass


class NotACycle(S2CobarError, ValueError):
    pass


class NotATwistingMorphism(S2CobarError):
    pass


class NotPrimitivelyGenerated(S2CobarError, ValueError):
    pass


class NoWitness(S2CobarError):
    pass


class NonConfluentStraightening(S2CobarError):
    pass


class SchemaError(S2CobarError, ValueError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class AxiomViolation(S2CobarError):
    def __init__(self, axiom, witness=None):
        msg = axiom if witness is None else f"{axiom}: witness {witness!r}"
        super().__init__(msg)
        self.axiom = axiom
        self.witness = witness
