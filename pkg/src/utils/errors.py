from typing import Optional


class PolyspaceError(ValueError):
    """Base class for every error raised by the polygon-space library."""


class InternalFault(PolyspaceError):
    """A computation reached a state that must be impossible for valid input."""


# Weight vector validation

class NonPositiveEntry(PolyspaceError):
    def __init__(self, index: int, value):
        self.index = index
        self.value = value
        super().__init__(f"weight m_{index} = {value} is not positive")


class TooFewSides(PolyspaceError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"a polygon needs at least 3 sides, got {n}")


class TooManySides(PolyspaceError):
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(f"{n} sides exceeds the configured cap of {cap}")


class PolygonInequalityViolated(PolyspaceError):
    """The polygon space is empty for this weight vector."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(
            f"polygon inequality fails at side {index}: m_{index} is not less than the sum of the others"
        )


class WeightParseError(PolyspaceError):
    def __init__(self, text: str, reason: str):
        self.text = text
        super().__init__(f"cannot parse weights {text!r}: {reason}")


class NotSmooth(PolyspaceError):
    """The weight vector lies on a wall, some subset has exactly half the mass."""

    def __init__(self, wall_indices):
        self.wall = tuple(wall_indices)
        rendered = ",".join(str(i) for i in self.wall)
        super().__init__(f"weights lie on a wall: subset {{{rendered}}} has exactly half the total mass")


# Computation

class NonExactDivision(InternalFault):
    def __init__(self, factor: str, remainder: int):
        self.factor = factor
        self.remainder = remainder
        super().__init__(f"numerator is not divisible by {factor} (remainder {remainder})")


class DegreeOutOfRange(PolyspaceError):
    def __init__(self, degree: int, top: int):
        super().__init__(f"degree {degree} outside 0..{top}")


class WrongDegree(PolyspaceError):
    def __init__(self, degree: int, expected: int):
        self.degree = degree
        self.expected = expected
        super().__init__(f"class has degree {degree}, top degree is {expected}")


class WallHit(InternalFault):
    def __init__(self, value):
        super().__init__(f"signed sum {value} hit a window boundary")


class TooFewParts(PolyspaceError):
    def __init__(self, count: int, needed: int):
        super().__init__(f"partition has {count} parts, need {needed}")


class EqualIndices(PolyspaceError):
    def __init__(self, index: int):
        super().__init__(f"indices must differ, both are {index}")


class BadCenter(PolyspaceError):
    def __init__(self, center: int, reason: str):
        super().__init__(f"bad star center {center}: {reason}")


class NotHomogeneousTop(PolyspaceError):
    def __init__(self, degrees, top: int):
        super().__init__(f"expected a homogeneous class of degree {top}, got degrees {sorted(degrees)}")


class ParseError(PolyspaceError):
    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        super().__init__(f"{reason} at position {position} in {text!r}")


class RouteMismatch(InternalFault):
    def __init__(self, monomial: str, signs: int, cycles: int, extra: Optional[str] = None):
        message = f"{monomial}: sign sum gives {signs}, cycle reduction gives {cycles}"
        if extra:
            message = f"{message} ({extra})"
        super().__init__(message)


class UsageError(PolyspaceError):
    """Malformed or inconsistent command-line arguments."""
