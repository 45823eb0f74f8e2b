"""Exact construction and verification of simple-root bases for extended Shi arrangements."""
from .arrangement import (
    AffineArrangement,
    CentralArrangement,
    MultiArrangement,
    b_gamma,
    catalan_arrangement,
    cone,
    cone_form,
    constant_multiarrangement,
    crystallographic_arrangement,
    shi_arrangement,
    shifted_multiarrangement,
    ziegler_multiplicity,
)
from .logmod import (
    Derivation,
    FreenessVerdict,
    GradedBasis,
    MembershipError,
    decide_freeness,
    euler_derivation,
    graded_derivations,
    graded_dimension,
    is_member,
    saito_test,
    weyl_act,
    ziegler_restrict,
)
from .rootsys import RootSystem, UnsupportedRootSystem, build_root_system
from .srb import SrbResult, TheoremFalsified, compute_srb
from .verify import SUITES, VerificationReport, run_suites

__version__ = "0.1.0"

__all__ = [
    "AffineArrangement",
    "CentralArrangement",
    "Derivation",
    "FreenessVerdict",
    "GradedBasis",
    "MembershipError",
    "MultiArrangement",
    "RootSystem",
    "SUITES",
    "SrbResult",
    "TheoremFalsified",
    "UnsupportedRootSystem",
    "VerificationReport",
    "b_gamma",
    "build_root_system",
    "catalan_arrangement",
    "compute_srb",
    "cone",
    "cone_form",
    "constant_multiarrangement",
    "crystallographic_arrangement",
    "decide_freeness",
    "euler_derivation",
    "graded_derivations",
    "graded_dimension",
    "is_member",
    "run_suites",
    "saito_test",
    "shi_arrangement",
    "shifted_multiarrangement",
    "weyl_act",
    "ziegler_multiplicity",
    "ziegler_restrict",
]
