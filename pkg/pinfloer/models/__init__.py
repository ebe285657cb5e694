"""
Domain types for pinfloer.
"""
from .clifford import (
    Scalar, CliffordElement, PinElement, CoupledSpinElement, OrthogonalMatrix
)
from .grading import (
    SymplecticSpace, LagrangianSubspace, SurfaceHomologyData, GeneratorLocalData,
    CoupledOrientation
)
from .signs import DirectedRectangle, Equation, EquationKind, ConstraintSystem, SignAssignment
from .grid import (
    GridDiagram, GridState, GridMove, MoveKind, Axis, Corner, MarkingKind, Flavor,
    BigradedIntegerComplex, AnnulusCertificate
)
from .homology import SparseIntMatrix, SmithForm, ChainComplex, HomologyGroup, HomologySummary
from .torus import GenusOneTriple, TriangleClass, BigonConfiguration, BigonClass, Crossing

__all__ = [
    "Scalar",
    "CliffordElement",
    "PinElement",
    "CoupledSpinElement",
    "OrthogonalMatrix",
    "SymplecticSpace",
    "LagrangianSubspace",
    "SurfaceHomologyData",
    "GeneratorLocalData",
    "CoupledOrientation",
    "DirectedRectangle",
    "Equation",
    "EquationKind",
    "ConstraintSystem",
    "SignAssignment",
    "GridDiagram",
    "GridState",
    "GridMove",
    "MoveKind",
    "Axis",
    "Corner",
    "MarkingKind",
    "Flavor",
    "BigradedIntegerComplex",
    "AnnulusCertificate",
    "SparseIntMatrix",
    "SmithForm",
    "ChainComplex",
    "HomologyGroup",
    "HomologySummary",
    "GenusOneTriple",
    "TriangleClass",
    "BigonConfiguration",
    "BigonClass",
    "Crossing",
]
