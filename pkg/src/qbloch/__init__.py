"""Dilogarithm variational systems for q-hypergeometric terms.

The library encodes q-hypergeometric terms by integer forms, solves their
variational (critical-point) equations, builds extended Bloch-style elements
at the solutions, evaluates dilogarithmic regulators on them, and probes the
singularities of the associated coefficient generating series against the
resulting critical-value set.

Entry points:

    qterm      term encodings, exact q-arithmetic, lattice-point geometry
    dilog      Li2 / Bloch-Wigner / Rogers on the abelian cover, five-term
    solver     multistart Newton for the logarithmic variational equations
    bloch      elements, potential, critical values, certificates
    series     coefficient sequences, growth rate, Pade poles, the report
    laurent    sparse integer Laurent polynomials
    io         schema-validated term files, atomic artifact writers
    battery    the seeded random-term stress corpus
    acceptance the eleven-check acceptance battery
    cli        `qbloch` command-line tool
"""

from .errors import (AdmissibilityError, BranchParityError, ConfigError,
                     DegenerateFamilyError, DegenerateTupleError, DomainError,
                     InsufficientDataError, NotOnVarietyError, OddShiftError,
                     PolytopeError, SchemaError, SingularSystemError)
from .laurent import LaurentPoly, norm1
from .qterm import (LinForm, QuadForm, QTerm, SpecialQTerm, four_one_special,
                    one_variable_family, q_binomial, q_factorial)
from .dilog import (CHatPoint, ModZ1Value, ModZ2Value, bloch_wigner,
                    deck_shift, five_term_defect_D2, five_term_defect_rogers,
                    li2, phi, plog, rogers_hat)
from .solver import (CriticalPoint, SolverConfig, solve_poly_1var,
                     solve_variational)
from .bloch import (BlochElement, CVSet, ExtBlochElement, NuHatCertificate,
                    beta, beta_hat, bw_of_element, certify_diagram,
                    certify_nu_hat, cv_set, potential, rogers_of_element)
from .series import (ConjectureConfig, ConjectureReport, SeriesData,
                     SingularityEstimate, check_conjecture,
                     crosscheck_exact_numeric, empirical_potential_defect,
                     exact_polynomial, growth_rate, kashaev_41_oracle,
                     laplace_ratio_check, pade_poles, pinned_qterm,
                     qfactorial_asymptotics_defect, sequence)
from .io import parse_qterm, parse_qterm_obj, serialize_qterm

__version__ = "1.0.0"

__all__ = [
    "AdmissibilityError", "BranchParityError", "ConfigError",
    "DegenerateFamilyError", "DegenerateTupleError", "DomainError",
    "InsufficientDataError", "NotOnVarietyError", "OddShiftError",
    "PolytopeError", "SchemaError", "SingularSystemError",
    "LaurentPoly", "norm1",
    "LinForm", "QuadForm", "QTerm", "SpecialQTerm", "four_one_special",
    "one_variable_family", "q_binomial", "q_factorial",
    "CHatPoint", "ModZ1Value", "ModZ2Value", "bloch_wigner", "deck_shift",
    "five_term_defect_D2", "five_term_defect_rogers", "li2", "phi", "plog",
    "rogers_hat",
    "CriticalPoint", "SolverConfig", "solve_poly_1var", "solve_variational",
    "BlochElement", "CVSet", "ExtBlochElement", "NuHatCertificate", "beta",
    "beta_hat", "bw_of_element", "certify_diagram", "certify_nu_hat",
    "cv_set", "potential", "rogers_of_element",
    "ConjectureConfig", "ConjectureReport", "SeriesData",
    "SingularityEstimate", "check_conjecture", "crosscheck_exact_numeric",
    "empirical_potential_defect", "exact_polynomial", "growth_rate",
    "kashaev_41_oracle", "laplace_ratio_check", "pade_poles", "pinned_qterm",
    "qfactorial_asymptotics_defect", "sequence",
    "parse_qterm", "parse_qterm_obj", "serialize_qterm",
    "__version__",
]
