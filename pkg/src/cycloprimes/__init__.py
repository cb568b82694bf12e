"""Cyclotomic values Phi_m(2): primitive parts, Aurifeuillian splits, primality surveys."""

from .cyclotomic import CyclotomicRecord, aurifeuillian_split, cyclotomic_record, intrinsic_factor, phi_value, psi_split
from .primality import Classification, PipelineConfig, Tag, classify

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "CyclotomicRecord",
    "PipelineConfig",
    "Tag",
    "aurifeuillian_split",
    "classify",
    "cyclotomic_record",
    "intrinsic_factor",
    "phi_value",
    "psi_split",
]
