"""Wi-Fi frame PHY: K=7 rate-1/2 convolutional code (generators 133/171
octal) with QPSK, soft Viterbi decoding, and FCS verification.

The transmitted bit stream is a 16-bit all-zero SERVICE prefix, the
frame octets LSB-first, and 6 zero tail bits closing the trellis. No
scrambler (BLER-neutral over AWGN). Both the ACK and data frames use
QPSK at rate 1/2 so the comparison across standards runs at one
modulation and coding point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from ..phy.modulation import qpsk_modulate
from .frames import WifiFrame, bits_to_frame, fcs_check, frame_to_bits

K_CONSTRAINT = 7
N_STATES = 64
G0, G1 = 0o133, 0o171
SERVICE_BITS = 16
TAIL_BITS = 6


@dataclass(frozen=True)
class WifiPhyConfig:
    service_bits: int = SERVICE_BITS
    tail_bits: int = TAIL_BITS


def _build_tables():
    """Transition tables over 64 states; register MSB is the newest bit so
    generator taps read at lags 0..6."""
    nxt = np.zeros((N_STATES, 2), dtype=np.int64)
    out = np.zeros((N_STATES, 2, 2), dtype=np.int64)
    for s in range(N_STATES):
        for b in (0, 1):
            reg = (b << 6) | s
            out[s, b, 0] = bin(reg & G0).count("1") & 1
            out[s, b, 1] = bin(reg & G1).count("1") & 1
            nxt[s, b] = reg >> 1
    return nxt, out

_NEXT, _OUT = _build_tables()


@njit(cache=True, nogil=True)
def _conv_encode(bits, nxt, out):
    n = bits.shape[0]
    coded = np.empty(2 * n, dtype=np.uint8)
    s = 0
    for i in range(n):
        b = bits[i]
        coded[2 * i] = out[s, b, 0]
        coded[2 * i + 1] = out[s, b, 1]
        s = nxt[s, b]
    return coded, s


@njit(cache=True, nogil=True)
def _viterbi(llrs, nxt, out):
    """Soft Viterbi over a zero-terminated trellis. Positive LLR favours
    bit 0; llrs has two entries per trellis step."""
    n = llrs.shape[0] // 2
    inf = 1.0e30
    pm = np.full(N_STATES, -inf)
    pm[0] = 0.0
    pm_next = np.empty(N_STATES)
    back = np.empty((n, N_STATES), dtype=np.uint8)
    for i in range(n):
        l0 = llrs[2 * i]
        l1 = llrs[2 * i + 1]
        for s in range(N_STATES):
            pm_next[s] = -inf
        for s in range(N_STATES):
            m = pm[s]
            if m <= -inf:
                continue
            for b in range(2):
                g = (l0 if out[s, b, 0] == 0 else -l0) * 0.5
                g += (l1 if out[s, b, 1] == 0 else -l1) * 0.5
                ns = nxt[s, b]
                cand = m + g
                if cand > pm_next[ns]:
                    pm_next[ns] = cand
                    back[i, ns] = (s << 1) | b
        mmax = pm_next[0]
        for s in range(1, N_STATES):
            if pm_next[s] > mmax:
                mmax = pm_next[s]
        for s in range(N_STATES):
            pm[s] = pm_next[s] - mmax
    bits = np.empty(n, dtype=np.uint8)
    s = np.int64(0)  # tail closes the trellis in state 0
    for i in range(n - 1, -1, -1):
        prev = np.int64(back[i, s])
        bits[i] = prev & np.int64(1)
        s = prev >> np.int64(1)
    return bits


@njit(cache=True, nogil=True)
def _viterbi_batch(llrs, nxt, out):
    t = llrs.shape[0]
    n = llrs.shape[1] // 2
    bits = np.empty((t, n), dtype=np.uint8)
    for row in range(t):
        bits[row] = _viterbi(llrs[row], nxt, out)
    return bits


def frame_bits(frame: WifiFrame, cfg: WifiPhyConfig = WifiPhyConfig()) -> np.ndarray:
    """SERVICE + frame octets + tail, as transmitted."""
    return np.concatenate(
        [
            np.zeros(cfg.service_bits, dtype=np.uint8),
            frame_to_bits(frame),
            np.zeros(cfg.tail_bits, dtype=np.uint8),
        ]
    )


def coded_length(n_octets: int, cfg: WifiPhyConfig = WifiPhyConfig()) -> int:
    """QPSK symbols per frame: (8*octets + service + tail) * 2 / 2."""
    return 8 * n_octets + cfg.service_bits + cfg.tail_bits


def wifi_encode(frame: WifiFrame, cfg: WifiPhyConfig = WifiPhyConfig()) -> np.ndarray:
    """Convolutionally encode and QPSK-modulate one frame."""
    bits = frame_bits(frame, cfg)
    coded, end_state = _conv_encode(np.ascontiguousarray(bits), _NEXT, _OUT)
    if end_state != 0:
        raise AssertionError("tail failed to terminate the trellis")
    return qpsk_modulate(coded)


def wifi_decode(llrs: np.ndarray, cfg: WifiPhyConfig = WifiPhyConfig()) -> tuple[WifiFrame, bool]:
    """Soft Viterbi decode coded-bit LLRs back to a frame and check its
    FCS. LLR length must match an encodable frame size."""
    llr = np.ascontiguousarray(np.asarray(llrs, dtype=np.float64).ravel())
    n = llr.size // 2
    n_payload = n - cfg.service_bits - cfg.tail_bits
    if llr.size % 2 or n_payload <= 0 or n_payload % 8:
        raise ValueError(f"LLR count {llr.size} does not match an encodable frame")
    bits = _viterbi(llr, _NEXT, _OUT)
    frame = bits_to_frame(bits[cfg.service_bits : cfg.service_bits + n_payload])
    return frame, fcs_check(frame)


def conv_encode_bits(bits: np.ndarray) -> np.ndarray:
    coded, _ = _conv_encode(np.ascontiguousarray(np.asarray(bits, dtype=np.uint8)), _NEXT, _OUT)
    return coded


def viterbi_decode_batch(llrs: np.ndarray) -> np.ndarray:
    """Decode a (T, 2N) LLR batch to (T, N) bits."""
    return _viterbi_batch(np.ascontiguousarray(np.asarray(llrs, dtype=np.float64)), _NEXT, _OUT)
