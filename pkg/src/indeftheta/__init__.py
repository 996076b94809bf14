"""Exact computation of indefinite theta series Theta_{Q,f} and their Hecke presentation."""

from .arith import ConeSector, QuadElem
from .errors import (
    AdmissibilityViolation,
    IterationExceeded,
    NonIntegralExponent,
    ThetaError,
    VerificationFailed,
)
from .hecke import (
    HeckeCoset,
    QuadLattice,
    coset_preserved_by,
    hecke_to_qf,
    qf_to_hecke,
    satz1_vanishing,
    stabilizer_power,
    theta_hecke,
)
from .orbits import contains_minus_id, gn_orbits, orbit_sign_function, prop_opp_residues, prop_symodd_check
from .periodic import PeriodicFunction, check_admissible, pf_tau_t
from .qseries import QSeries
from .quadform import QuadForm, qf_new
from .relations import find_linear_relations, symbolic_relations
from .theta import theta_quadrant, theta_sector, verify_main_identity

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityViolation",
    "ConeSector",
    "HeckeCoset",
    "IterationExceeded",
    "NonIntegralExponent",
    "PeriodicFunction",
    "QSeries",
    "QuadElem",
    "QuadForm",
    "QuadLattice",
    "ThetaError",
    "VerificationFailed",
    "check_admissible",
    "contains_minus_id",
    "coset_preserved_by",
    "find_linear_relations",
    "gn_orbits",
    "hecke_to_qf",
    "orbit_sign_function",
    "pf_tau_t",
    "prop_opp_residues",
    "prop_symodd_check",
    "qf_new",
    "qf_to_hecke",
    "satz1_vanishing",
    "stabilizer_power",
    "symbolic_relations",
    "theta_hecke",
    "theta_quadrant",
    "theta_sector",
    "verify_main_identity",
]
