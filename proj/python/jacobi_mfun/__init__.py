"""Weyl and Donoghue m-functions of the Jacobi differential expression."""

from ._core import (
    CountMismatch,
    DegenerateCase,
    DomainError,
    JacobiError,
    KMatrixSingular,
    NonConvergence,
    NotStrictlyPositive,
    ParamError,
    PoleError,
    SpectrumPole,
    StepFailure,
    classify,
    friedrichs_spectrum,
    friedrichs_spectrum_numeric,
    jacobi_polynomial,
    krein_R,
    m_donoghue,
    m_weyl,
    m_weyl_array,
    solution,
)

__all__ = [
    "CountMismatch",
    "DegenerateCase",
    "DomainError",
    "JacobiError",
    "KMatrixSingular",
    "NonConvergence",
    "NotStrictlyPositive",
    "ParamError",
    "PoleError",
    "SpectrumPole",
    "StepFailure",
    "classify",
    "friedrichs_spectrum",
    "friedrichs_spectrum_numeric",
    "jacobi_polynomial",
    "krein_R",
    "m_donoghue",
    "m_weyl",
    "m_weyl_array",
    "solution",
]
