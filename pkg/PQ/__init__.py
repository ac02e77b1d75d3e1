"""
PQ Package for the periplectic quantum supergroup

This package contains modules for exact arithmetic over Q(q), graded tensor
operators, the periplectic Lie superalgebra and its bialgebra structure, the
S-matrix, the quantum group U_q(p_n), the periplectic q-Brauer algebra and
the centralizer computations, together with the verification reports that
check each of them.
"""

from .centralizer import CommutantBasis, CommutantProblem, solve_commutant
from .qbrauer import BrauerRep, BrauerWord, brauer_rep
from .reports import ReportStore, VerificationReport
from .scalar import Frac, Scalar
from .suite import RunConfig, run_suite
from .superspace import GradedOperator

__version__ = "1.0.0"
__author__ = "PQ Team"

__all__ = [
    "Scalar",
    "Frac",
    "GradedOperator",
    "BrauerRep",
    "BrauerWord",
    "brauer_rep",
    "CommutantProblem",
    "CommutantBasis",
    "solve_commutant",
    "VerificationReport",
    "ReportStore",
    "RunConfig",
    "run_suite",
]
