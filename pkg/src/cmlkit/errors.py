"""Exception types raised across the package."""


class CmlError(Exception):
    """Base class for all library errors."""


class EmptyGraph(CmlError):
    pass


class DisconnectedInput(CmlError):
    pass


class EnumerationCapExceeded(CmlError):
    pass


class CapExceeded(CmlError):
    pass


class InvalidPartition(CmlError):
    pass


class BadMerge(CmlError):
    def __init__(self, step, label, reason=""):
        self.step = step
        self.label = label
        msg = f"bad merge at step {step}: label {label}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class InvalidWitness(CmlError):
    pass


class InvalidInstance(CmlError):
    pass


class InternalValidityFailure(CmlError):
    pass


class PropertyCheckFailed(CmlError):
    pass


class AxiomViolation(CmlError):
    pass


class BlackEdgeInComponent(CmlError):
    pass


class BoundViolation(CmlError):
    """A counting bound that must hold was exceeded at runtime."""


class ParseError(CmlError):
    pass
