"""Exact-arithmetic tools for set-pair systems: colex and shadow combinatorics,
a sparse exterior algebra over the rationals, theorem verifiers, a proof replay
engine and an exhaustive search for extremal families."""

from .combinatorics import (Hypergraph, Order, colex_initial_segment, full_star, is_full_star,
                            is_t_intersecting, kk_min_lower_shadow, local_lym_intersecting_check,
                            lovasz_kk_bound, lower_shadow, revcolex_compare, upper_shadow)
from .errors import (ChainInvariantError, GradeError, HypothesisViolation, InfeasibleParameterError,
                     InvalidComparisonError, PreconditionError, ReductionFailure, ResampleFailure,
                     SetpairError, SingularMatrixError, StabilityFailure)
from .exterior import (BasisMatrix, ExteriorSubspace, Multivector, apply_linear_map, basis_monomial,
                       echelonize, initial_hypergraph, initial_set, is_self_annihilating,
                       monomial_subspace, wedge, wedge_all, wedge_of_subspace, wedge_spaces,
                       wedge_with_full_power)
from .linalg import RationalSubspace, intersection_dim, subspace_ops
from .proof import (GeneralPositionConfig, ProofTrace, build_z_chain, forced_center_check,
                    general_position_subspace, lift_sets, local_lym_subspace_check,
                    moment_curve_config, reduce_instance, replay, triangular_criterion)
from .search import (Profile, SearchResult, SearchSpec, ak_bound, canonical_form,
                     certify_uniqueness_t0, conjecture41_probe, search_max_family)
from .verifiers import (SETS, SUBSPACES, PairFamilyInstance, VerifierReport, check_bollobas,
                        check_conjecture41, check_furedi_subspaces, check_hemibundled,
                        check_weighted_space, recognize_extremal_t0)

__version__ = "0.1.0"
