"""Exact rational divisor-class calculus on moduli spaces of pointed
stable curves: generator bases, pullback operators, test-curve solves and
effectivity certificates."""

__version__ = "0.1.0"

from .algebra import (UNKNOWN, ComparisonReport, DivisorClass, add,
                      average_over, class_from_json_dict, class_to_json_dict,
                      combination, compare, from_psi_coordinates,
                      omega_in_psi_basis, permute_class, psi_in_omega_basis,
                      scale, to_psi_coordinates, unit_class, zero_class)
from .audit import AUDIT_CASES, AuditReport, Finding, TrackedForm, \
    run_audit, tracked_form
from .basis import (DELTA_IRR, LAMBDA, Gen, Space, apply_permutation,
                    canonicalize, compose_permutations, cycle_permutation,
                    enumerate_basis, generator_from_name,
                    identity_permutation, omega, permutation_powers,
                    validate_generator)
from .certificates import (Certificate, CertificateProblem, CheckReport,
                           CoordinateCheck, Infeasible, check_combination,
                           find_certificate)
from .classes import (PointedBNSpec, brill_noether, canonical_tracked,
                      pointed_bn_partial)
from .curves import (Ansatz, TestCurve, UnderdeterminedSolution,
                     builtin_catalog, curve_from_json_dict,
                     curve_to_json_dict, pair, pushforward_equations,
                     solve_for_class)
from .errors import (DimensionMismatch, InconsistentSystem, InvalidEmbedding,
                     InvalidGenerator, InvalidSpec, MgnError, NoBNClass,
                     ParseError, SpaceMismatch, UnknownCoefficient,
                     UnsupportedGenus)
from .expr import format_class, parse_class
from .pullbacks import (ClutchPullback, ForgetPullback, clutch_image_of_d0,
                        clutch_pullback, embedding_from_text,
                        embedding_to_text, forget_pullback, lift_and_average)
