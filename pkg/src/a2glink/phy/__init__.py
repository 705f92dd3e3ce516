"""Shared physical-layer primitives: modulation, soft demodulation, CRC,
orthogonal cover codes, and the resource-grid container."""

from .modulation import (
    bpsk_modulate,
    qpsk_modulate,
    bpsk_hard_bits,
    qpsk_hard_bits,
    llr_awgn,
    qpsk_soft_bits,
)
from .crc import CRC24_POLY, crc_attach, crc_check
from .occ import OCC_LENGTH3, OCC_LENGTH4, occ_sequence
from .grid import CellKind, PucchLayout, ResourceGrid, lte_format1a_layout, nr_format1_layout

__all__ = [
    "bpsk_modulate",
    "qpsk_modulate",
    "bpsk_hard_bits",
    "qpsk_hard_bits",
    "llr_awgn",
    "qpsk_soft_bits",
    "CRC24_POLY",
    "crc_attach",
    "crc_check",
    "OCC_LENGTH3",
    "OCC_LENGTH4",
    "occ_sequence",
    "CellKind",
    "PucchLayout",
    "ResourceGrid",
    "lte_format1a_layout",
    "nr_format1_layout",
]
