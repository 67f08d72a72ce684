"""Pydantic schemas for cross-section inputs, results and datasets."""

from .models import (
    Regime,
    FormulaType,
    BesselBranch,
    BesselEval,
    UnitSystem,
    SpinAveraged,
    Helicity,
    BeamSpec,
    SolenoidSpec,
    ScatterPoint,
    XsecValue,
    FourVector,
    GammaSet,
    DiracSpinor,
    DeltaFlag,
    UniformFieldCoefficient,
    FormFactorRegion,
    FormFactorMethod,
    PlanarTransferQ,
    FormFactorValue,
    RegimeReport,
    ScanResult,
    WindowAverage,
    Figure1Spec,
    Dataset,
    VerificationCheck,
    VerificationReport,
)

__all__ = [
    "Regime",
    "FormulaType",
    "BesselBranch",
    "BesselEval",
    "UnitSystem",
    "SpinAveraged",
    "Helicity",
    "BeamSpec",
    "SolenoidSpec",
    "ScatterPoint",
    "XsecValue",
    "FourVector",
    "GammaSet",
    "DiracSpinor",
    "DeltaFlag",
    "UniformFieldCoefficient",
    "FormFactorRegion",
    "FormFactorMethod",
    "PlanarTransferQ",
    "FormFactorValue",
    "RegimeReport",
    "ScanResult",
    "WindowAverage",
    "Figure1Spec",
    "Dataset",
    "VerificationCheck",
    "VerificationReport",
]
