"""Exact quaternionic analysis: k-Cauchy-Fueter operators, ASD forms,
regular conjugates, decompositions through L0/L1 and S^3 period checks."""

from .errors import (
    EvalAtSingularity,
    KFueterError,
    NoSolutionInAnsatz,
    NonPolynomialInput,
    NonR2Denominator,
    NotClosed,
    NotHarmonic,
    ParseError,
)
from .exact import ExactComplex, Poly4, SymField, R2, X0, X1, X2, X3, I
from .quaternion import Quat, cf_D, cf_Dbar, is_regular, tau_embed, tau_pair
from .spinor import MixedSpinorField, SymSpinorField, dk_apply, d1k_apply, L_apply, kernel_basis
from .forms import ASDForm, DiffForm, eta, eta_inverse, exterior_d, flux3form, hodge_star

__version__ = "0.1.0"
