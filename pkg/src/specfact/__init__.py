"""Exact spectral factorization of rational matrix functions, paraunitary
construction from disk data, and unit-row completion, all in exact
arithmetic over towers of real quadratic extensions of Q."""

from .completion import (CompletionResult, CoronaSolution, UnitRow, build_phi_row,
                         complete, solve_corona, solve_poly_bezout,
                         unitary_completion_constant, verify_unit_row)
from .construct import (Certificate, ColumnSolution, JLSystem, ParaunitaryResult,
                        PhiRow, UnknownLayout, build_column_system,
                        construct_paraunitary, merge_poles, solve_system)
from .errors import (CompletionError, CoronaError, DescriptorError,
                     FactorizationError, FieldError, InternalInvariantError,
                     PoleDataError, ProblemFormatError, SingularSystemError,
                     SpecfactError)
from .expressions import (build_tower, parse_element, parse_ratfn, render_element,
                          render_partial_fraction, render_poly, render_ratfn)
from .fields import (FieldElement, FieldTower, conj, field_arith, in_open_disk,
                     sign_real)
from .matrices import RatMatrix
from .ratfun import (PartialFraction, Poly, PoleSpec, RationalFn, pf_to_ratfn,
                     principal_part, ratfn_arith, ratfn_to_pf, split_plus_minus,
                     taylor_coeffs, tilde)
from .spectral import (FactorizationResult, TriangularFactor, VerificationReport,
                       factorize, split_bottom_row, verify_against_S)
from .taylor import TransferMatrix, apply_transfer, series_power, transfer_matrix

__version__ = "0.1.0"

__all__ = [
    "Certificate", "ColumnSolution", "CompletionError", "CompletionResult",
    "CoronaError", "CoronaSolution", "DescriptorError", "FactorizationError",
    "FactorizationResult", "FieldElement", "FieldError", "FieldTower",
    "InternalInvariantError", "JLSystem", "ParaunitaryResult", "PartialFraction",
    "PhiRow", "Poly", "PoleDataError", "PoleSpec", "ProblemFormatError",
    "RatMatrix", "RationalFn", "SingularSystemError", "SpecfactError",
    "TransferMatrix", "TriangularFactor", "UnitRow", "UnknownLayout",
    "VerificationReport", "apply_transfer", "build_column_system", "build_phi_row",
    "build_tower", "complete", "conj", "construct_paraunitary", "factorize",
    "field_arith", "in_open_disk", "merge_poles", "parse_element", "parse_ratfn",
    "pf_to_ratfn", "principal_part", "ratfn_arith", "ratfn_to_pf",
    "render_element", "render_partial_fraction", "render_poly", "render_ratfn",
    "series_power", "sign_real", "solve_corona", "solve_poly_bezout",
    "solve_system", "split_bottom_row", "split_plus_minus", "taylor_coeffs",
    "tilde", "transfer_matrix", "unitary_completion_constant", "verify_against_S",
    "verify_unit_row",
]
