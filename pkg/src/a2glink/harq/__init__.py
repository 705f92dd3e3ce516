"""Retransmission state machines over a pluggable PHY and channel."""

from ..codec.rate_match import HarqScheme
from .engine import (
    HarqPool,
    HarqProcess,
    SubframeOutcome,
    harq_index,
    step_type1_nocomb,
    step_type1_cc,
    step_type3_ir,
    step_burst_cc,
    step_scheme,
)

__all__ = [
    "HarqScheme",
    "HarqPool",
    "HarqProcess",
    "SubframeOutcome",
    "harq_index",
    "step_type1_nocomb",
    "step_type1_cc",
    "step_type3_ir",
    "step_burst_cc",
    "step_scheme",
]
