"""Minor lifts of multiaffine stable polynomials and their hyperbolicity cones."""

from .kernels import BACKEND as KERNEL_BACKEND
from .polys import ExactPoly, Graph, MultiAffinePoly, UniPoly, spanning_tree_poly

__all__ = [
    "KERNEL_BACKEND",
    "ExactPoly",
    "Graph",
    "MultiAffinePoly",
    "UniPoly",
    "spanning_tree_poly",
]

__version__ = "0.1.0"
