"""Exception hierarchy shared by every module in the package."""


class IllusionError(Exception):
    """Base class; the CLI maps every subclass to exit code 2."""

    kind = "error"


class DomainError(IllusionError, ValueError):
    kind = "domain"


class PaletteError(IllusionError, ValueError):
    kind = "palette"


class FractionError(IllusionError, ValueError):
    kind = "fraction"


class PreconditionError(IllusionError, ValueError):
    kind = "precondition"


class PlanValidityError(IllusionError, ValueError):
    kind = "plan"


class ParseError(IllusionError, ValueError):
    kind = "parse"

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapacityError(IllusionError, RuntimeError):
    kind = "capacity"


class GenerationError(IllusionError, ValueError):
    kind = "generation"


class WitnessError(IllusionError, ValueError):
    kind = "witness"


class ConstructionError(IllusionError, RuntimeError):
    """An internal invariant of a gadget construction did not hold."""

    kind = "construction"
