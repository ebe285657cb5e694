"""
Services package for the computations.
"""
from .clifford import CliffordService
from .grading import GradingService
from .homology import HomologyService
from .signs import SignService
from .grid import GridService
from .torus_triangles import TriangleService

__all__ = [
    "CliffordService",
    "GradingService",
    "HomologyService",
    "SignService",
    "GridService",
    "TriangleService",
]
