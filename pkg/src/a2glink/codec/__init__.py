"""Transport-block channel coding: rate-1/3 turbo mother code, circular-
buffer rate matching with self-decodable redundancy versions, and soft
LLR accumulation across retransmissions."""

from .turbo import TurboConfig, turbo_encode_mother, turbo_decode_mother, qpp_interleaver
from .rate_match import (
    CodecConfig,
    RateMatchSpec,
    CircularSoftBuffer,
    HarqScheme,
    encode,
    decode,
    deposit,
    rv_schedule,
    transport_block_size,
)

__all__ = [
    "TurboConfig",
    "turbo_encode_mother",
    "turbo_decode_mother",
    "qpp_interleaver",
    "CodecConfig",
    "RateMatchSpec",
    "CircularSoftBuffer",
    "HarqScheme",
    "encode",
    "decode",
    "deposit",
    "rv_schedule",
    "transport_block_size",
]
