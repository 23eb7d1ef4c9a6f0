"""Numerical verification of sharp operator-mean inequalities.

Weighted operator means, matrix functions, positive linear maps and the
scalar constants of the inequalities, plus a registry of checks that turn
each inequality into a signed Loewner margin over seeded random instances.
"""
from .checks import CheckResult, Instance, list_checks, make_instance, run_check, sharpness_probe
from .constants import ConstantBundle, endpoint_constants, power_constants, scalar_mean
from .hermitian import DomainError, NotHermitianError, PreconditionError, loewner_margin
from .means import MeanDescriptor, arithmetic_mean, geometric_mean, harmonic_mean
from .suite import SuiteConfig, parse_config, run_suite

__version__ = "0.1.0"

__all__ = [
    "CheckResult", "ConstantBundle", "DomainError", "Instance", "MeanDescriptor", "NotHermitianError",
    "PreconditionError", "SuiteConfig", "arithmetic_mean", "endpoint_constants", "geometric_mean",
    "harmonic_mean", "list_checks", "loewner_margin", "make_instance", "parse_config", "power_constants",
    "run_check", "run_suite", "scalar_mean", "sharpness_probe",
]
