"""ACK/NACK feedback channels: LTE PUCCH format 1a and 5G PUCCH format 1."""

from .decision import AckNackDecision
from .lte import (
    LtePucchConfig,
    encode_format1a,
    estimate_channel_lte,
    decode_format1a,
    decode_format1a_batch,
)
from .nr import (
    NrPucchConfig,
    base_sequence,
    cyclic_shift,
    encode_format1,
    estimate_channel_nr,
    detect_decode_format1,
    detect_decode_format1_batch,
    channel_est_rmse,
    load_phi_table,
)

__all__ = [
    "AckNackDecision",
    "LtePucchConfig",
    "encode_format1a",
    "estimate_channel_lte",
    "decode_format1a",
    "decode_format1a_batch",
    "NrPucchConfig",
    "base_sequence",
    "cyclic_shift",
    "encode_format1",
    "estimate_channel_nr",
    "detect_decode_format1",
    "detect_decode_format1_batch",
    "channel_est_rmse",
    "load_phi_table",
]
