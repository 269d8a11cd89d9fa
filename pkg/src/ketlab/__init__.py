"""ketlab: finite-dimensional complex Hilbert space computations.

Vectors (kets), bounded operators as matrices, the orthomodular lattice of
closed subspaces, a randomized conformance suite, and a small expression
language with a CLI and an HTTP service on top.
"""

from .errors import KetlabError
from .numeric import DEFAULT_TOL, RngStream, Tolerance

__version__ = "0.1.0"

__all__ = ["KetlabError", "Tolerance", "RngStream", "DEFAULT_TOL", "__version__"]
