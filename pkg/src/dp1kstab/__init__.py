"""Exact K-stability checks for ample classes on a degree 1 del Pezzo surface."""
from .alpha import AlphaReport, alpha_c_closed_form, alpha_c_oracle, alpha_report, compare
from .cones import Decomposition, compute_mu, decompose, is_ample, is_nef, is_pseff
from .errors import AmbiguousForm, DelPezzoError, NotAmple, NotInCone, NotPseff, ParseError, UnboundedProgram
from .estimator import DecompositionTransformer, KStabilityClassifier, check_classes
from .kstab import Outcome, Verdict, slope_nu, verdict
from .lattice import DivClass, canonical_class, conic_classes, e, enumerate_curves, enumerate_roots, h, intersect
from .parsing import parse_class

__version__ = "0.1.0"

__all__ = [
    "AlphaReport", "AmbiguousForm", "Decomposition", "DecompositionTransformer", "DelPezzoError", "DivClass",
    "KStabilityClassifier", "NotAmple", "NotInCone", "NotPseff", "Outcome", "ParseError", "UnboundedProgram",
    "Verdict", "alpha_c_closed_form", "alpha_c_oracle", "alpha_report", "canonical_class", "check_classes",
    "compare", "compute_mu", "conic_classes", "decompose", "e", "enumerate_curves", "enumerate_roots", "h",
    "intersect", "is_ample", "is_nef", "is_pseff", "parse_class", "slope_nu", "verdict",
]
