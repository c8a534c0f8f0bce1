"""Exception hierarchy.

Every error raised by the engine derives from :class:`DefcatError` so the CLI
can map it to exit code 1.  Errors that point at a specific instance (a
pentagon, a tuple of simples, a JSON location) carry it in ``index`` or
``location``.
"""
from __future__ import annotations


class DefcatError(Exception):
    def __init__(self, message: str = "", index=None):
        super().__init__(message)
        self.index = index

    def to_json(self) -> dict:
        out = {"error": type(self).__name__, "message": str(self)}
        if self.index is not None:
            out["index"] = _jsonable(self.index)
        return out


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str)) or x is None:
        return x
    return str(x)


# arithmetic
class FieldMismatch(DefcatError, ValueError):
    pass


class DivisionByZero(DefcatError, ZeroDivisionError):
    pass


class OrderMismatch(DefcatError, ValueError):
    pass


class NotInvertible(DefcatError, ArithmeticError):
    pass


# homology core
class DegreeOutOfRange(DefcatError, IndexError):
    pass


class NotAChainMap(DefcatError, ValueError):
    pass


class NotAComplex(DefcatError, ValueError):
    pass


# categories
class ShapeError(DefcatError, ValueError):
    pass


class SingularF(DefcatError, ValueError):
    pass


class UnitRuleViolation(DefcatError, ValueError):
    pass


class PentagonViolation(DefcatError, ValueError):
    pass


class TriangleViolation(DefcatError, ValueError):
    pass


class ArityMismatch(DefcatError, ValueError):
    pass


class ShapeChainBroken(DefcatError, ValueError):
    pass


# functors and bimodules
class HexagonViolation(DefcatError, ValueError):
    pass


class UnitSquareViolation(DefcatError, ValueError):
    pass


class LeftHexagonViolation(DefcatError, ValueError):
    pass


class RightHexagonViolation(DefcatError, ValueError):
    pass


class MiddleHexagonViolation(DefcatError, ValueError):
    pass


class UnitViolation(DefcatError, ValueError):
    pass


class NotAssociative(DefcatError, ValueError):
    pass


class NotUnital(DefcatError, ValueError):
    pass


class NotMonoidalTransformation(DefcatError, ValueError):
    pass


class NotBimodule(DefcatError, ValueError):
    pass


# complexes and deformations
class KindMismatch(DefcatError, ValueError):
    pass


class IndexOutOfRange(DefcatError, IndexError):
    pass


class DegreeOverflow(DefcatError, ValueError):
    pass


class LowerOrderNotDeformation(DefcatError, ValueError):
    pass


class CoherenceFailure(DefcatError, ValueError):
    pass


class KindDegreeMismatch(DefcatError, ValueError):
    pass


class MismatchAt(DefcatError, AssertionError):
    pass


# io
class ParseError(DefcatError, ValueError):
    pass


class SchemaError(DefcatError, ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location

    def to_json(self) -> dict:
        return {"error": "SchemaError", "location": self.location, "message": str(self)}


class ValidationError(DefcatError, ValueError):
    def __init__(self, location: str, cause: DefcatError):
        super().__init__(f"{location}: {type(cause).__name__}: {cause}")
        self.location = location
        self.cause = cause

    def to_json(self) -> dict:
        out = {"error": "ValidationError", "location": self.location,
               "cause": type(self.cause).__name__, "message": str(self)}
        if getattr(self.cause, "index", None) is not None:
            out["index"] = _jsonable(self.cause.index)
        return out


class UnknownCommand(DefcatError, ValueError):
    pass
