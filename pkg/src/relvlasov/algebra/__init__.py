"""Exact symbolic algebra over phase-space expressions and operators."""

from .expr import Expr
from .operators import FieldOp, derivation
from .certify import CertificateReport, run_catalog
from . import weights

__all__ = [
    "Expr",
    "FieldOp",
    "derivation",
    "CertificateReport",
    "run_catalog",
    "weights",
]
