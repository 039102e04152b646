"""Exception hierarchy shared by all modules."""


class LinsetError(Exception):
    pass


class NotPrime(LinsetError, ValueError):
    pass


class ReducibleModulus(LinsetError, ValueError):
    pass


class DegreeMismatch(LinsetError, ValueError):
    pass


class FieldTooLarge(LinsetError, ValueError):
    pass


class NotASubfield(LinsetError, ValueError):
    pass


class ZeroArgument(LinsetError, ZeroDivisionError):
    pass


class CtxMismatch(LinsetError, ValueError):
    pass


class NotABasis(LinsetError, ValueError):
    pass


class SingularMatrix(LinsetError, ValueError):
    pass


class ShapeMismatch(LinsetError, ValueError):
    pass


class BadTheta(LinsetError, ValueError):
    pass


class BadShape(LinsetError, ValueError):
    pass


class NoSolution(LinsetError):
    pass


class SearchExhausted(LinsetError):
    pass


class SearchSpaceTooLarge(LinsetError):
    def __init__(self, candidates, budget):
        super().__init__(f"search space of {candidates} candidates exceeds budget {budget}")
        self.candidates = candidates
        self.budget = budget


class PreconditionViolated(LinsetError, ValueError):
    pass


class UnknownSuite(LinsetError, KeyError):
    pass


class ParseError(LinsetError, ValueError):
    def __init__(self, message, position=None, expected=()):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        where = "" if position is None else f" at position {position}"
        hint = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{where}{hint}")


class ExponentOutOfRange(ParseError):
    pass
