"""Exception hierarchy shared by all modules."""


class QGaloisError(Exception):
    """Base class for library errors."""


class DivisionByZero(QGaloisError, ZeroDivisionError):
    pass


class ForbiddenSpecialization(QGaloisError, ValueError):
    """A quantum parameter was bound to zero or a root of unity."""


class KindMismatch(QGaloisError, TypeError):
    pass


class NotAMonomial(QGaloisError, ValueError):
    pass


class ActionMismatch(QGaloisError, TypeError):
    pass


class DataMismatch(QGaloisError, TypeError):
    pass


class UnknownInstance(QGaloisError, KeyError):
    pass


class UndefinedAction(QGaloisError, TypeError):
    pass


class GroupTooLarge(QGaloisError, RuntimeError):
    pass


class MissingImage(QGaloisError, KeyError):
    pass


class UnknownClaim(QGaloisError, KeyError):
    pass


class ParseError(QGaloisError, ValueError):
    pass
