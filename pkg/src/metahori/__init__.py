"""Exact engine for metaplectic Iwahori ice and its Whittaker values."""

from .coefficients import GaussElem, gauss_symbol
from .laurent import LaurentPoly, NotDivisible, RationalLaurent
from .lattice import LatticeState, SystemSpec, enumerate_states, fuse, partition_function
from .weyl import Permutation, almost_dominant_decompose, bruhat_path, ceiln, floorn, length
from .whittaker import (GradingViolation, NotAlmostDominant, WhittakerVector,
                        apply_T, apply_T_inv, averaged_T, base_case, cg_star,
                        evaluate, evaluate_vector, tau_coeffs)

__version__ = "0.1.0"

__all__ = [
    "GaussElem", "gauss_symbol",
    "LaurentPoly", "RationalLaurent", "NotDivisible",
    "SystemSpec", "LatticeState", "enumerate_states", "partition_function", "fuse",
    "Permutation", "length", "bruhat_path", "almost_dominant_decompose",
    "ceiln", "floorn",
    "WhittakerVector", "base_case", "apply_T", "apply_T_inv", "evaluate",
    "evaluate_vector", "tau_coeffs", "cg_star", "averaged_T",
    "NotAlmostDominant", "GradingViolation",
    "__version__",
]
