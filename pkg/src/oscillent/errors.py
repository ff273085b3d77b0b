"""Exception hierarchy shared across the package."""


class OscillentError(ValueError):
    """Base class for invalid physical or numerical input."""


class NonPositiveFrequency(OscillentError):
    pass


class CouplingTooLarge(OscillentError):
    pass


class Unstable(OscillentError):
    """The quadratic Hamiltonian has no real normal frequency."""


class DegenerateCoupling(OscillentError):
    """r = 0 with R != 1: the mixing angle only exists as a limit."""


class IndexOutOfManifold(OscillentError):
    pass


class LevelTooHigh(OscillentError):
    pass


class NotNormalized(OscillentError):
    pass


class EmptyGrid(OscillentError):
    pass


class GridOutOfRange(OscillentError):
    pass


class InsufficientNodes(OscillentError):
    pass


class IoFailure(OSError):
    pass
