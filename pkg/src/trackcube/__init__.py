"""Tracks on 2-complexes, their dual CAT(0) cube complexes, and bounds on parallelism classes."""
from .complex import SimplicialComplex2, complex_from_faces, validate_complex
from .dual import CubeComplex, coarse_dual, dual_complex, fine_dual, interval, median
from .errors import TrackCubeError
from .pattern import Arc, Drawing, Pattern, make_pattern, validate_drawing
from .pocset import Pocset, validate_pocset
from .regions import PatternComplement
from .analysis import check_theorem_A
from .resolution import check_resolution, pullback_pattern, resolve
from .normalize import normalize

__version__ = "0.1.0"

__all__ = [
    "SimplicialComplex2", "complex_from_faces", "validate_complex",
    "CubeComplex", "coarse_dual", "dual_complex", "fine_dual", "interval", "median",
    "TrackCubeError", "Arc", "Drawing", "Pattern", "make_pattern", "validate_drawing",
    "Pocset", "validate_pocset", "PatternComplement", "check_theorem_A",
    "check_resolution", "pullback_pattern", "resolve", "normalize",
]
