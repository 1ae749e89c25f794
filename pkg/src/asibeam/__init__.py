"""Array-size invariant broad-beam synthesis for dual-polarized arrays."""

from ._backend import name as backend
from .geometry import Direction, UlaGeometry, UraGeometry
from .weights import DualPolWeights

__version__ = "0.1.0"

__all__ = ["Direction", "DualPolWeights", "UlaGeometry", "UraGeometry", "backend", "__version__"]
