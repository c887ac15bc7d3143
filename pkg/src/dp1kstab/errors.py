"""Exceptions raised by the toolkit."""


class DelPezzoError(Exception):
    """Base class for domain errors."""


class NotAmple(DelPezzoError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotPseff(DelPezzoError):
    pass


class NotInCone(DelPezzoError):
    pass


class UnboundedProgram(DelPezzoError):
    pass


class MalformedFace(DelPezzoError):
    pass


class ParseError(DelPezzoError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class AmbiguousForm(ParseError):
    pass
