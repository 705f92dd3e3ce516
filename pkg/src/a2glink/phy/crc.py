"""24-bit CRC for transport blocks.

Generator polynomial 0x864CFB (x^24 + x^23 + x^18 + x^17 + x^14 + x^11 +
x^10 + x^7 + x^6 + x^5 + x^4 + x^3 + x + 1) with the customary nonzero
initial register 0xB704CE, so the all-zero block is not a valid
codeword. Operates on bit vectors (MSB-first within the vector order).
"""

from __future__ import annotations

import numpy as np
from numba import njit

CRC24_POLY = 0x864CFB
CRC24_INIT = 0xB704CE
CRC_LEN = 24


@njit(cache=True, nogil=True)
def _crc24_remainder(bits: np.ndarray) -> np.int64:
    reg = np.int64(CRC24_INIT)
    poly = np.int64(CRC24_POLY)
    mask = np.int64((1 << 24) - 1)
    top = np.int64(1 << 23)
    for i in range(bits.shape[0]):
        fb = ((reg & top) != 0) ^ (bits[i] != 0)
        reg = (reg << 1) & mask
        if fb:
            reg ^= poly
    return reg


def _crc_bits(payload: np.ndarray) -> np.ndarray:
    rem = int(_crc24_remainder(payload))
    return np.array([(rem >> (CRC_LEN - 1 - k)) & 1 for k in range(CRC_LEN)], dtype=np.uint8)


def crc_attach(payload) -> np.ndarray:
    """Append the 24-bit CRC of ``payload`` (nonempty bit vector)."""
    p = np.asarray(payload, dtype=np.uint8).ravel()
    if p.size == 0:
        raise ValueError("crc_attach requires a nonempty payload")
    return np.concatenate([p, _crc_bits(p)])


def crc_check(block) -> bool:
    """True iff ``block`` (payload + appended CRC) is consistent."""
    b = np.asarray(block, dtype=np.uint8).ravel()
    if b.size < CRC_LEN:
        raise ValueError(f"block of {b.size} bits is shorter than the {CRC_LEN}-bit CRC")
    if b.size == CRC_LEN:
        return False  # no payload to check against
    return bool(np.array_equal(_crc_bits(np.ascontiguousarray(b[:-CRC_LEN])), b[-CRC_LEN:]))
