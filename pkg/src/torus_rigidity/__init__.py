"""Exact arithmetic for x A maps on the n-torus.

Tridiagonal matrix families, strong independence certificates, cyclotomic
number fields, measures with exact Fourier coefficients, ergodicity and
mixing diagnostics, and a rigidity harness.
"""

from .errors import (ContractError, DimensionError, DomainError, InputFormatError,
                     NotInvariantError, RigidityError, SingularMatrixError, UnsupportedError)
from .exact_linalg import (IntMatrix, RatMatrix, det, identity, inverse_rational, mat_mul,
                           mat_pow, rank_rational, stack_rows)
from .algebraic_numbers import (CyclotomicNumber, NumberField, NumberFieldElement, RatPolynomial,
                                cyclotomic_poly, minpoly_of_shifted_cos, real_cyclotomic_minpoly)
from .tridiagonal import (TridiagSpec, char_poly_M2, det_closed_form, det_recurrence,
                          eigenvalues_M2, make_matrix, rational_root_classification)
from .strong_independence import (MatrixFamily, SICertificate, box_check, check_vector,
                                  powers_family, prove_powers_M2, si_report)
from .folner import FolnerSequence, IntegerSubset, density, folner_check
from .measures import (AtomicMeasure, Lebesgue, TorusPointQ, finite_support_candidates, fourier,
                       fourier_exact, is_invariant, pushforward, support_constraint)
from .mixing import (DiagnosticsReport, DiagnosticsRequest, diagnose, ergodic_average,
                     orbit_measure, strong_mixing_tail, weak_mixing_average)
from .rigidity import RigidityReport, dirac_check, rigidity_harness
from .report import emit_report

__version__ = "0.1.0"
