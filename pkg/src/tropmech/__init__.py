"""Exact incentive-compatibility and affine-maximizer checks via tropical geometry."""

from .errors import (DimensionMismatch, EmptyGrid, IndexOutOfRange, InputError, InvalidOutcome,
                     NonpositiveAlpha, NonSquare, NotIC, ShapeMismatch, TooLarge, TropmechError,
                     UnassignedVariable, UnknownVariable)
from .feasibility import (EQ, GE, GT, Constraint, InfeasCert, Infeasible, LinearSystem, Witness,
                          check_certificate, check_point, solve, solve_difference)
from .mechanism import (OutcomeFunction, TypeSpace, ic_equal, ic_set, is_ic_multi, is_ic_single,
                        is_ic_single_minor, minkowski_combine, multifield)
from .rational import to_matrix, to_rat
from .roberts import (AMWitness, am_check, am_system, check_am_witness, encode_ic_equality,
                      perturb_second_player)
from .tropical import covector_at, optimal_bijections, tropical_det

__version__ = "0.1.0"
