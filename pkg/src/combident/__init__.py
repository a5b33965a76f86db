"""Exact combinatorial linear algebra: path systems, cycle covers and the
identities they prove, checked in rational or polynomial arithmetic."""

from .errors import CapExceeded, InputError, ModeMismatchError, NotAcyclicError, SingularMatrixError
from .graph import Edge, Matrix, WeightedDigraph
from .report import Check, Report
from .ring import MPoly, Weight

__all__ = [
    "CapExceeded",
    "Check",
    "Edge",
    "InputError",
    "MPoly",
    "Matrix",
    "ModeMismatchError",
    "NotAcyclicError",
    "Report",
    "SingularMatrixError",
    "Weight",
    "WeightedDigraph",
]

__version__ = "0.1.0"
