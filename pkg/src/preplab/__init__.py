"""Exact and numeric computation with normal-form polynomial families.

The exact layer works over Q with :class:`~fractions.Fraction`; the numeric
layer (root finding, escape grids) uses complex doubles and a compiled
kernel when one is available (see :mod:`preplab.kernels`).
"""

from .arith import (NEG_INF, BiPoly, DensePoly, Ring, T, deg_t, dumps, from_text, loads,
                    poly_compose, poly_mul, to_text, tpoly)
from .errors import (ContractError, ConvergenceError, FieldObstructionError,
                     InvalidInputError, NotAffineError, NotApplicableError, PreplabError,
                     ResourceError)
from .family import (Escapes, Family, OrbitRecord, Preperiodic, Unknown, check_degree_law,
                     is_preperiodic_exact, orbit, specialize_line, specialize_point)
from .kernels import BACKEND
from .lines import (Line, SigmaMap, StartingPoints, build_line, decompose_AB, lagrange_B,
                    vanishing_poly)
from .prepfind import (EscapeGrid, PrepHit, confirm_exact, escape_grid, find_prep_params,
                       orbit_gap_poly, roots, write_pgm)
from .structure import (Exceptional, LinearMap, chebyshev, commutes, compositional_root,
                        is_exceptional, linear_commutant, to_normal_form)
from .verify import (check_expansion_bound, check_md1_branch, check_refined_expansion,
                     obstruction_report, sigma_difference, xi_ratio)

__version__ = "0.1.0"
