"""Exact verification of the R-matrix construction of the quantum spin
Calogero-Moser / Ruijsenaars-Schneider Hamiltonians over U_q(sl_n)."""

from .diffop import DiffOp, op_equal
from .report import CheckResult, Report
from .scalars import ParamPoint, SamplingExhausted, ScalarPoint, SingularPoint, qint, sample_point

__all__ = [
    "CheckResult",
    "DiffOp",
    "ParamPoint",
    "Report",
    "SamplingExhausted",
    "ScalarPoint",
    "SingularPoint",
    "op_equal",
    "qint",
    "sample_point",
]
