"""Exact computation of the p-primary Farrell cohomology of low-genus pure
mapping class groups Gamma_g^i."""

from .assembly import AltSet, FarrellReport, PeriodicCohomology, PGroup, farrell, normalizer_cohomology
from .cohen import CohenTables, GradedDims
from .errors import DomainError, FarrellError, UnsupportedAction, UnsupportedCase
from .fpdata import FixedPointData, SymPart, canonicalize, enumerate_classes, power_data, sym_part
from .rh import RHSolution, admissible_solutions, remark_table, solve_rh, torsion_primes

__all__ = [
    "AltSet",
    "CohenTables",
    "DomainError",
    "FarrellError",
    "FarrellReport",
    "FixedPointData",
    "GradedDims",
    "PGroup",
    "PeriodicCohomology",
    "RHSolution",
    "SymPart",
    "UnsupportedAction",
    "UnsupportedCase",
    "admissible_solutions",
    "canonicalize",
    "enumerate_classes",
    "farrell",
    "normalizer_cohomology",
    "power_data",
    "remark_table",
    "solve_rh",
    "sym_part",
    "torsion_primes",
]

__version__ = "0.1.0"
