"""Numerical services: units, special functions, spinors, form factors and cross sections."""

from .figure import figure1_dataset
from .limits import ClassicalLimitAnalyzer
from .units import natural, physical_cgs, unit_system
from .xsec import evaluate, master_xsec, theta_scan

__all__ = [
    "figure1_dataset",
    "ClassicalLimitAnalyzer",
    "natural",
    "physical_cgs",
    "unit_system",
    "evaluate",
    "master_xsec",
    "theta_scan",
]
