"""Finite classical geometry: orbit counts, exact and sampled span probabilities, and bound checks."""

from .field import GF, FieldElem, FieldSpec
from .geometry import (
    ClassicalSpace,
    DegenerateSubspaceError,
    FormKind,
    PointClass,
    SignParams,
    Subspace,
    TypeLabel,
    classify,
    point_class,
    standard_space,
)
from .counting import CountingContext, IllegalContext, gaussian_binomial, gl_span_proportion
from .enumeration import BudgetExceeded, EmptyOrbitError, PhiExact, exact_phi, iterate_subspaces
from .sampling import PhiEstimate, estimate_phi, random_subspace
from .bounds import TABLE1, BoundReport, verify_theorems

__version__ = "0.1.0"

__all__ = [
    "GF", "FieldElem", "FieldSpec",
    "ClassicalSpace", "DegenerateSubspaceError", "FormKind", "PointClass", "SignParams",
    "Subspace", "TypeLabel", "classify", "point_class", "standard_space",
    "CountingContext", "IllegalContext", "gaussian_binomial", "gl_span_proportion",
    "BudgetExceeded", "EmptyOrbitError", "PhiExact", "exact_phi", "iterate_subspaces",
    "PhiEstimate", "estimate_phi", "random_subspace",
    "TABLE1", "BoundReport", "verify_theorems",
]
