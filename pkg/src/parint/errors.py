"""Exception hierarchy shared by every module of the toolkit."""


class ParintError(Exception):
    """Base class of all toolkit errors."""


# interaction model

class InvalidSignature(ParintError, ValueError):
    pass


class UnknownType(ParintError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unknown component type {self.name!r}"


class UnknownPort(ParintError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unknown port {self.name!r}"


class EmptyInteraction(ParintError, ValueError):
    pass


class InstanceOutOfRange(ParintError, ValueError):
    pass


class DuplicateInstanceInInteraction(ParintError, ValueError):
    pass


class AlphabetTooLarge(ParintError, ValueError):
    def __init__(self, size, cap):
        super().__init__(f"alphabet of {size} interactions exceeds the cap of {cap}")
        self.size = size
        self.cap = cap


class SignatureMismatch(ParintError, ValueError):
    pass


# syntax and validation

class FormulaSyntaxError(ParintError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UnboundVariableInGuard(ParintError, ValueError):
    pass


class ValidationError(ParintError, ValueError):
    def __init__(self, message, path=()):
        where = "/".join(path) or "<root>"
        super().__init__(f"{message} (at {where})")
        self.path = tuple(path)


class NegationOutsideFragment(ValidationError):
    pass


class WeightedUnderUnweighted(ValidationError):
    pass


class FreeVariable(ValidationError):
    pass


class VariableRebound(ValidationError):
    pass


class RepeatedComponentType(ParintError, ValueError):
    pass


class MissingWeight(ParintError, ValueError):
    pass


# semantics

class UnboundVariable(ParintError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"variable {self.name!r} has no value in the assignment"


# semirings

class UnknownSemiring(ParintError, KeyError):
    pass


class LiteralNotInSemiring(ParintError, ValueError):
    pass


# automata

class NotComplete(ParintError, ValueError):
    pass


class NotDeterministic(ParintError, ValueError):
    pass


class AlphabetMismatch(ParintError, ValueError):
    pass


class UnknownLetter(ParintError, KeyError):
    pass


class SemiringMismatch(ParintError, ValueError):
    pass


class NotProper(ParintError, ValueError):
    pass


class NotAField(ParintError, ValueError):
    pass
