"""Exception hierarchy for pidensity."""

from typing import Optional


class PiDensityError(ValueError):
    """Base class for every computation error raised by the library."""


class DegreeMismatch(PiDensityError):
    """Two permutations (or a permutation and a group) act on different point sets."""

    def __init__(self, left: int, right: int):
        super().__init__(f"degree mismatch: {left} != {right}")
        self.left = left
        self.right = right


class DegreeTooLarge(PiDensityError):
    """Requested degree exceeds the supported point limit."""

    def __init__(self, degree: int, limit: int):
        super().__init__(f"degree {degree} exceeds the limit of {limit} points")
        self.degree = degree
        self.limit = limit


class OrderExceedsCap(PiDensityError):
    """A group is too large to enumerate under the configured cap."""

    def __init__(self, order: int, cap: int):
        super().__init__(f"group order {order} exceeds enumeration cap {cap}")
        self.order = order
        self.cap = cap


class IndexExceedsCap(PiDensityError):
    """A coset action would need more points than allowed."""

    def __init__(self, index: int, cap: int):
        super().__init__(f"subgroup index {index} exceeds cap {cap}")
        self.index = index
        self.cap = cap


class ElementNotInGroup(PiDensityError):
    """A permutation was expected to lie in a group and does not."""


class NotNormal(PiDensityError):
    """A subgroup was expected to be normal and is not."""


class NotPrime(PiDensityError):
    """An integer was expected to be prime."""

    def __init__(self, value: int):
        super().__init__(f"{value} is not prime")
        self.value = value


class PrimeDoesNotDivideOrder(PiDensityError):
    """Sylow machinery was asked for a prime that does not divide |G|."""

    def __init__(self, p: int, order: int):
        super().__init__(f"prime {p} does not divide group order {order}")
        self.p = p
        self.order = order


class InvalidParameters(PiDensityError):
    """Parameters of a group constructor violate its preconditions."""


class GroupExprSyntaxError(PiDensityError):
    """A group expression could not be parsed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownAtom(GroupExprSyntaxError):
    """The expression names a group family that does not exist."""


class ArityMismatch(GroupExprSyntaxError):
    """A group family received the wrong number of parameters."""


class GeneratorFileError(PiDensityError):
    """A generator file is malformed."""

    def __init__(self, message: str, line: Optional[int] = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line


class MalformedCycle(GeneratorFileError):
    """A permutation line is not valid disjoint-cycle notation."""


class PointOutOfRange(GeneratorFileError):
    """A cycle mentions a point outside 0..degree-1."""


class EmptyGeneratorFile(GeneratorFileError):
    """The file declares no degree or no content."""


class DefiningCharacteristicInPi(PiDensityError):
    """The torus count was asked for a prime set containing the field characteristic."""


class EvenPrimeInPi(PiDensityError):
    """The torus count only applies to sets of odd primes."""
