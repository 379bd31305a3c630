"""Exception hierarchy.

Errors fall in three families that the CLI maps to exit codes:
invalid input (2), unsupported or out-of-cap (3), and failed checks (1).
"""


class OmegacError(Exception):
    """Base class. ``witness`` carries the offending object when there is one."""

    exit_code = 2

    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidInput(OmegacError):
    exit_code = 2


class Unsupported(OmegacError):
    exit_code = 3


# adc
class DegreeMismatch(InvalidInput):
    pass


class DifferentialNotSquareZero(InvalidInput):
    pass


class AugmentationNotAnnihilating(InvalidInput):
    pass


class DuplicateId(InvalidInput):
    pass


class UnknownBasisElement(InvalidInput):
    pass


class UnknownKey(InvalidInput):
    pass


class NotPositive(InvalidInput):
    pass


class NotChainMap(InvalidInput):
    pass


class NotAugmented(InvalidInput):
    pass


class SourceTargetMismatch(InvalidInput):
    pass


class PreconditionViolated(InvalidInput):
    pass


# omega
class IndexOutOfRange(InvalidInput):
    pass


class NotComposable(InvalidInput):
    pass


class BadDimension(InvalidInput):
    pass


class NotACell(InvalidInput):
    pass


# theta
class GSSyntaxError(InvalidInput):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}", witness=position)
        self.position = position


class ShapeMismatch(InvalidInput):
    pass


class BadIndices(InvalidInput):
    pass


# twodim
class NotPartialOrder(InvalidInput):
    pass


class NotDecomposable(OmegacError):
    exit_code = 1


# colim
class NotQuasiRigid(InvalidInput):
    pass


class ValidationFailed(OmegacError):
    exit_code = 1


class TorsionInColimit(Unsupported):
    pass


class NoBasisFound(Unsupported):
    pass


class CapExceeded(Unsupported):
    pass
