"""Claim verifiers replaying the almost-Kahler classification argument."""

from .report import VerificationReport
from .ds_kahler import verify_dS_kahler
from .abelian_rr30 import verify_abelian_rr30
from .r2prime_conf_flat import verify_r2prime_conf_flat
from .r2prime_ak import verify_r2prime_ak
from .invariants import verify_mode_agreement, verify_tensor_invariants
from .scan import ScanSummary, scan_family
from .main_theorem import verify_main_theorem

__all__ = [
    "VerificationReport",
    "verify_dS_kahler",
    "verify_abelian_rr30",
    "verify_r2prime_conf_flat",
    "verify_r2prime_ak",
    "verify_mode_agreement",
    "verify_tensor_invariants",
    "ScanSummary",
    "scan_family",
    "verify_main_theorem",
]
