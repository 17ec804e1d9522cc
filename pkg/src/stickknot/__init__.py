"""Bezier curves that converge isotopically to a stick knot under collinear insertion."""
from .bezier import BezierKnot, hodograph, second_diff
from .certificate import (DeltaCertificate, IterationBounds, compute_delta,
                          iterations_from_values, required_iterations)
from .diagnostics import diagnose_iteration, determinant, project
from .polygon import PolyKnot, collinear_insert, refine, validate

__version__ = "0.1.0"
