# curveframes/exceptions.py
"""
Error hierarchy shared by the numeric library and the command layer.

Every error knows the process exit code the CLI reports for it:
input problems exit with 2, numeric degeneracies with 3.
"""
from typing import Any, Dict, Optional


class CurveFramesError(Exception):
    exit_code = 1

    def __init__(self, message: str = "", **details: Any):
        self.message = message or self.__class__.__name__
        self.details = details
        super().__init__(self.message)

    @property
    def error_type(self) -> str:
        return self.__class__.__name__

    def as_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"type": self.error_type, "message": self.message}
        payload.update(self.details)
        return payload


class InputError(CurveFramesError):
    exit_code = 2


class NumericError(CurveFramesError):
    exit_code = 3


# --- input problems -------------------------------------------------------

class SampleCountTooSmall(InputError):
    pass


class DegenerateInterval(InputError):
    pass


class ExprSyntaxError(InputError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}", offset=offset)
        self.offset = offset


class UnknownIdentifier(InputError):
    def __init__(self, name: str, offset: Optional[int] = None):
        super().__init__(f"unknown identifier '{name}'", name=name, offset=offset)
        self.name = name
        self.offset = offset


class DomainError(InputError):
    def __init__(self, function: str, argument: float):
        super().__init__(f"{function} is undefined at {argument!r}", function=function, argument=float(argument))
        self.function = function
        self.argument = float(argument)


class CsvFormatError(InputError):
    pass


class ConfigError(InputError):
    pass


class OutOfDomain(InputError):
    def __init__(self, value: float, low: float, high: float):
        super().__init__(
            f"{value!r} outside admissible interval [{low!r}, {high!r}]",
            value=float(value), interval=[float(low), float(high)],
        )
        self.interval = (low, high)


class IndexOutOfRange(InputError):
    pass


class NonpositiveRadius(InputError):
    pass


# --- numeric degeneracies -------------------------------------------------

class IrregularCurve(NumericError):
    pass


class NotUnitSpeed(NumericError):
    pass


class VanishingCurvature(NumericError):
    def __init__(self, s: float):
        super().__init__(f"curvature vanishes near s={s!r}", s=float(s))
        self.s = float(s)


class DegenerateSpeed(NumericError):
    def __init__(self, s: float, speed: Optional[float] = None):
        super().__init__(f"Smarandache curve is stationary near s={s!r}", s=float(s))
        self.s = float(s)
        self.speed = speed


class ParamDegenerate(NumericError):
    pass


class GridMismatch(NumericError):
    pass


class DiscriminantNegative(NumericError):
    def __init__(self, discriminant: float):
        super().__init__(f"discriminant {discriminant!r} is negative", discriminant=float(discriminant))
        self.discriminant = float(discriminant)


class DivisionByZero(NumericError):
    pass


class SphereTooSmall(NumericError):
    def __init__(self, radius: float, minimum: float):
        super().__init__(f"radius {radius!r} below admissible minimum {minimum!r}", radius=float(radius), minimum=float(minimum))
        self.minimum = float(minimum)


class DegenerateFrame(NumericError):
    pass


class OsculatingUndefined(NumericError):
    def __init__(self, w: float):
        super().__init__(f"osculating sphere undefined, |W|={abs(w)!r}", w=float(w))
        self.w = float(w)
