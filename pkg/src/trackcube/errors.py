"""Exception hierarchy shared by every module of the package."""


class TrackCubeError(Exception):
    """Base class for all errors raised by trackcube."""


class InputError(TrackCubeError):
    """Malformed instance file or argument (CLI exit code 2)."""


# complexes
class MissingSimplex(TrackCubeError):
    pass


class DuplicateSimplex(TrackCubeError):
    pass


class DegenerateSimplex(TrackCubeError):
    pass


class DanglingEdge(TrackCubeError):
    pass


class PreconditionH1(TrackCubeError):
    """The complex has nonzero first cohomology with Z/2 coefficients."""


# drawings and patterns
class AxiomViolation(TrackCubeError):
    def __init__(self, axiom, location, message=""):
        self.axiom = axiom
        self.location = location
        text = f"drawing axiom ({axiom}) violated at {location}"
        if message:
            text += f": {message}"
        super().__init__(text)


class NonEmptyRequired(TrackCubeError):
    pass


class NotATrack(TrackCubeError):
    pass


class InstanceTooLarge(TrackCubeError):
    pass


class DegenerateArrangement(TrackCubeError):
    pass


class NotTwoSided(TrackCubeError):
    pass


class VertexInessentialTrack(TrackCubeError):
    pass


class Not2Pattern(TrackCubeError):
    pass


# pocsets and duals
class PocsetError(TrackCubeError):
    pass


class NotAntisymmetric(PocsetError):
    pass


class InvolutionNotReversing(PocsetError):
    pass


class ComplementComparable(PocsetError):
    pass


class SamePair(TrackCubeError):
    pass


class CapExceeded(TrackCubeError):
    pass


class NoSeed(TrackCubeError):
    pass


class MedianMissing(TrackCubeError):
    pass


# interval analysis
class NotInInterval(TrackCubeError):
    pass


class CrossingInput(TrackCubeError):
    pass


class Lemma1Violation(TrackCubeError):
    pass


class Lemma2Violation(TrackCubeError):
    pass


class TrichotomyGap(TrackCubeError):
    pass


class BoundViolation(TrackCubeError):
    pass


# resolutions
class ParityViolation(TrackCubeError):
    pass


class NotAnUltrafilter(TrackCubeError):
    pass


# normalization
class BoundaryReturn(TrackCubeError):
    pass


class NonManifoldEdge(TrackCubeError):
    pass


class NotInnermost(TrackCubeError):
    pass


# generators
class RejectionBudgetExceeded(TrackCubeError):
    pass
