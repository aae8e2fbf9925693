"""Exception types used across the package."""


class MgnError(Exception):
    """Base class for every error raised by this package."""


class InvalidGenerator(MgnError, ValueError):
    """A label does not name a basis generator of the requested space."""


class SpaceMismatch(MgnError, ValueError):
    """Operands live on different moduli spaces."""


class UnknownCoefficient(MgnError, ValueError):
    """An operation that needs fully known coefficients met an unknown one."""


class InvalidEmbedding(MgnError, ValueError):
    """A point embedding is not an injection into the target labels."""


class UnsupportedGenus(MgnError, ValueError):
    """The built-in test-curve catalog is not defined at this genus."""


class NoBNClass(MgnError, ValueError):
    """Requested a Brill-Noether class on a space where none is effective."""


class InvalidSpec(MgnError, ValueError):
    """Invalid parameters for a named divisor class."""


class DimensionMismatch(MgnError, ValueError):
    """A coefficient vector has the wrong length."""


class ParseError(MgnError, ValueError):
    """A class expression failed to parse; ``position`` points at the offender."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InconsistentSystem(MgnError, ValueError):
    """No class satisfies the given pairing equations.

    ``combination`` lists (equation label, multiplier) pairs whose weighted
    sum of equations has a zero left-hand side but right-hand side
    ``residue`` != 0, which certifies the inconsistency.
    """

    def __init__(self, combination, residue):
        combo = " + ".join(f"({m})*[{name}]" for name, m in combination)
        super().__init__(f"inconsistent system: {combo} reduces to 0 = {residue}")
        self.combination = tuple(combination)
        self.residue = residue
