"""Exception and warning classes."""


class MembraneKitError(Exception):
    """Base class for all package errors."""


class ValidationError(MembraneKitError, ValueError):
    """Bad input: out-of-domain argument, invalid config, failed precondition."""


class DimensionError(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class MediumInvalidError(ValidationError):
    """Superfluid model used outside its temperature range."""


class GeometryError(ValidationError):
    pass


class ConfigError(ValidationError):
    def __init__(self, message, line=None, field=None):
        self.message = message
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class ResolutionError(ValidationError):
    """Spectrum too coarse to resolve the resonance linewidth."""


class NumericalError(MembraneKitError, ArithmeticError):
    """Non-finite state, failed root bracketing and similar numerical failures."""


class PhysicsWarning(UserWarning):
    """A model is being used near or outside its stated range of validity."""
