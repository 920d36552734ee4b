"""Exact computation and verification of classes of upper k-gap balancing numbers."""

__version__ = "0.1.0"

from .arithmetic import Rational, count_divisors, is_perfect_square, isqrt, triangular
from .classes import (
    BalancerClass,
    BalancingClass,
    Seed,
    class_count,
    classes_for,
    conjugate_seed,
    enumerate_seeds,
    step_balancer,
    step_balancer_inverse,
    step_balancing,
    step_balancing_inverse,
    tandem_balancer_class,
)
from .core import (
    BalancerPair,
    BalancingPair,
    GapContext,
    PellPoint,
    balancer_of,
    convert_nomenclature,
    counterbalancer_of,
    is_upper_gap_balancing,
    to_pell,
    verify_triangular_identity,
)
from .errors import DomainError, InvariantError
from .series import RationalFunction, class_genfun, expand, interleaved_genfun
from .transitions import (
    NON_INTEGRAL,
    TransitionMap,
    check_conjugate_symmetry,
    derive_balancer_transition,
    derive_transition,
    sorting_balancer_transitions,
    sorting_transitions,
)
