"""nilquat: exact verification of quaternionic structures on nilmanifold
quotients, their twistor-chart calculus, deformation cohomology,
Maurer-Cartan power series and automorphism moduli counts, all over exact
Gaussian rationals at desk scale (m = 1..4)."""

__version__ = "0.1.0"

from .exact_linalg import (ExactMatrix, GaussRat, NO_SOLUTION, kernel_basis,
                           rank, rat, solve)
from .lie_core import (AlgVector, LieAlgebra, bracket, center_subspace,
                       check_jacobi, derivation_dimension, derived_ideal,
                       make_heisenberg_ext)
from .hypercomplex import (Endo, HyperTriple, check_quaternion_relations,
                           nijenhuis_invariant, obata_connection,
                           standard_triple, unit_combination)
from .coord_calc import (CoordPoly, PolyField, PolyForm, ext_d, field_bracket,
                         group_mul, left_invariant_fields, numeric_eval,
                         theta, triple_on_oneforms,
                         verify_quaternionic_coordinates)
from .twistor import (FormSymbol, FrameSymbol, FrameVector, SphereScalar,
                      VectorValuedForm, chart_restrict, dbar_apply,
                      dbar_primitive, frame_bracket, is_smooth_on_sphere,
                      lie_derivative_form, nijenhuis_bracket,
                      numeric_crosscheck, verify_bracket_closure)
from .cohomology import (CohoElement, GradedSpace, assemble_H1_W_D,
                         basis_space, delta0_map, delta1_map,
                         quaternionic_sequence, space_E, torus_dims)
from .mc_solver import (DeformationParam, MCSeries, check_holomorphic_projection,
                        check_invariance, mc_residual, norm_growth, solve_mc)
from .automorphisms import (AutMatrix, SymplecticData, group_dimensions,
                            is_hypercomplex_automorphism, is_lie_automorphism,
                            is_triangular_form, is_compatible_form)

__all__ = [
    "__version__",
    "ExactMatrix", "GaussRat", "NO_SOLUTION", "kernel_basis", "rank", "rat", "solve",
    "AlgVector", "LieAlgebra", "bracket", "center_subspace", "check_jacobi",
    "derivation_dimension", "derived_ideal", "make_heisenberg_ext",
    "Endo", "HyperTriple", "check_quaternion_relations", "nijenhuis_invariant",
    "obata_connection", "standard_triple", "unit_combination",
    "CoordPoly", "PolyField", "PolyForm", "ext_d", "field_bracket", "group_mul",
    "left_invariant_fields", "numeric_eval", "theta", "triple_on_oneforms",
    "verify_quaternionic_coordinates",
    "FormSymbol", "FrameSymbol", "FrameVector", "SphereScalar",
    "VectorValuedForm", "chart_restrict", "dbar_apply", "dbar_primitive",
    "frame_bracket", "is_smooth_on_sphere", "lie_derivative_form",
    "nijenhuis_bracket", "numeric_crosscheck", "verify_bracket_closure",
    "CohoElement", "GradedSpace", "assemble_H1_W_D", "basis_space",
    "delta0_map", "delta1_map", "quaternionic_sequence", "space_E", "torus_dims",
    "DeformationParam", "MCSeries", "check_holomorphic_projection",
    "check_invariance", "mc_residual", "norm_growth", "solve_mc",
    "AutMatrix", "SymplecticData", "group_dimensions",
    "is_hypercomplex_automorphism", "is_lie_automorphism", "is_triangular_form",
    "is_compatible_form",
]
