"""Circular-buffer rate matching and the accumulating soft buffer.

Every transmission carries all K systematic bits followed by G-K parity
bits read circularly from the parity readout sequence, starting at a
redundancy-version offset at the quarter points of that sequence. The
readout interlaces the two parity streams (p1[0], p2[0], p1[1], ...,
then the 12 tail bits) so any contiguous window feeds both constituent
decoders. Re-including the systematic bits in every redundancy version
keeps each transmission self-decodable; reads that wrap repeat parity
positions, which then accumulate on deposit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from ..phy.crc import CRC_LEN, crc_check
from .turbo import N_TAIL, TurboConfig, turbo_decode_mother, turbo_encode_mother


class HarqScheme(Enum):
    TYPE1_NO_COMBINING = "type1-nc"
    TYPE1_CHASE_COMBINING = "type1-cc"
    TYPE3_INCREMENTAL_REDUNDANCY = "type3-ir"
    BURST_CHASE_COMBINING = "burst-cc"


#: redundancy-version transmission order for incremental redundancy
RV_CYCLE = (0, 2, 3, 1)
NUM_RVS = 4


@dataclass(frozen=True)
class CodecConfig:
    """Mother code is fixed at rate 1/3 with 4 redundancy versions."""

    decoder_iterations: int = 8
    early_exit: bool = True

    def turbo(self) -> TurboConfig:
        if self.decoder_iterations < 1:
            raise ValueError("decoder_iterations must be >= 1")
        return TurboConfig(n_iterations=self.decoder_iterations, early_exit=self.early_exit)


@dataclass(frozen=True)
class RateMatchSpec:
    """One transmission: G coded bits of a K-bit block at redundancy
    version rv."""

    g: int
    tb_size: int  # information bits including CRC
    rv: int = 0

    def __post_init__(self):
        if self.tb_size <= 0:
            raise ValueError("tb_size must be positive")
        if self.g < self.tb_size:
            raise ValueError(f"uncodeable rate: G={self.g} < tb_size={self.tb_size}")
        if not 0 <= self.rv < NUM_RVS:
            raise ValueError(f"rv must be in 0..{NUM_RVS - 1}, got {self.rv}")

    @property
    def mother_len(self) -> int:
        return 3 * self.tb_size + N_TAIL


def transport_block_size(g: int, coding_rate: float) -> int:
    """Payload bits (CRC excluded) carried by G coded bits at the target
    rate: floor(G * rate) - 24."""
    tbs = int(np.floor(g * coding_rate)) - CRC_LEN
    if tbs <= 0:
        raise ValueError(f"no payload fits G={g} at rate {coding_rate}")
    return tbs


@lru_cache(maxsize=64)
def _parity_order(k: int) -> np.ndarray:
    """Mother-buffer indices of the parity readout sequence.

    The two parity streams are interlaced and each is read in a
    coprime-stride (golden-ratio) permutation, so any contiguous circular
    window feeds both constituent decoders with parity spread uniformly
    over the trellis instead of erasing whole spans.
    """
    q = max(1, round(0.618 * k))
    while math.gcd(q, k) != 1:
        q += 1
    perm = (np.arange(k, dtype=np.int64) * q) % k
    order = np.empty(2 * k + N_TAIL, dtype=np.int64)
    order[0 : 2 * k : 2] = k + perm  # parity 1
    order[1 : 2 * k : 2] = 2 * k + perm  # parity 2
    order[2 * k :] = np.arange(3 * k, 3 * k + N_TAIL)
    return order


@lru_cache(maxsize=256)
def _readout_chunks(g: int, k: int, rv: int) -> tuple[np.ndarray, ...]:
    """Mother-buffer index arrays read by one transmission, in order.

    Each chunk holds distinct indices (wraps start a new chunk), so
    gathers and `buf[chunk] += x` scatters are both well defined.
    """
    order = _parity_order(k)
    parity_len = order.size
    chunks = [np.arange(k, dtype=np.int64)]
    remaining = g - k
    pos = (rv * (parity_len // NUM_RVS)) % parity_len
    while remaining > 0:
        take = min(remaining, parity_len - pos)
        chunks.append(order[pos : pos + take])
        remaining -= take
        pos = (pos + take) % parity_len
    return tuple(chunks)


def rv_schedule(scheme: HarqScheme, attempt: int) -> int:
    """Redundancy version for the 1-based transmission attempt."""
    if attempt < 1:
        raise ValueError("attempt is 1-based")
    if scheme is HarqScheme.TYPE3_INCREMENTAL_REDUNDANCY:
        return RV_CYCLE[(attempt - 1) % NUM_RVS]
    return 0


def encode(tb: np.ndarray, spec: RateMatchSpec, cfg: CodecConfig = CodecConfig()) -> np.ndarray:
    """Turbo-encode a transport block (CRC attached) and read out the G
    coded bits selected by ``spec.rv``."""
    bits = np.asarray(tb, dtype=np.uint8).ravel()
    if bits.size != spec.tb_size:
        raise ValueError(f"transport block has {bits.size} bits, spec says {spec.tb_size}")
    mother = turbo_encode_mother(bits)
    out = np.empty(spec.g, dtype=np.uint8)
    pos = 0
    for chunk in _readout_chunks(spec.g, spec.tb_size, spec.rv):
        out[pos : pos + chunk.size] = mother[chunk]
        pos += chunk.size
    return out


class CircularSoftBuffer:
    """Soft buffer accumulating de-rate-matched LLR deposits.

    Deposits are kept individually and combined with a balanced pairwise
    sum, so N identical deposits combine to exactly N times the first.
    Single-writer: one buffer must not take concurrent deposits.
    """

    def __init__(self, spec: RateMatchSpec):
        self.tb_size = spec.tb_size
        self.mother_len = spec.mother_len
        self._deposits: list[np.ndarray] = []
        self.filled = np.zeros(self.mother_len, dtype=bool)

    @property
    def n_deposits(self) -> int:
        return len(self._deposits)

    def deposit(self, llrs: np.ndarray, spec: RateMatchSpec) -> None:
        """Map G received LLRs back onto mother positions and accumulate.
        Positions read twice within one transmission accumulate too."""
        if spec.tb_size != self.tb_size:
            raise ValueError("deposit spec does not match buffer block size")
        llr = np.asarray(llrs, dtype=np.float64).ravel()
        if llr.size != spec.g:
            raise ValueError(f"expected {spec.g} LLRs, got {llr.size}")
        d = np.zeros(self.mother_len)
        pos = 0
        for chunk in _readout_chunks(spec.g, spec.tb_size, spec.rv):
            d[chunk] += llr[pos : pos + chunk.size]
            self.filled[chunk] = True
            pos += chunk.size
        self._deposits.append(d)

    def combined(self) -> np.ndarray:
        """Balanced-tree sum of all deposits."""
        if not self._deposits:
            raise ValueError("soft buffer is empty")
        level = list(self._deposits)
        while len(level) > 1:
            nxt = [level[i] + level[i + 1] for i in range(0, len(level) - 1, 2)]
            if len(level) % 2:
                nxt.append(level[-1])
            level = nxt
        return level[0]


def deposit(buffer: CircularSoftBuffer, llrs: np.ndarray, spec: RateMatchSpec) -> CircularSoftBuffer:
    """Functional wrapper over :meth:`CircularSoftBuffer.deposit`."""
    buffer.deposit(llrs, spec)
    return buffer


def decode(
    buffer: CircularSoftBuffer,
    spec: RateMatchSpec,
    cfg: CodecConfig = CodecConfig(),
) -> tuple[np.ndarray, bool]:
    """Decode the accumulated soft buffer; returns (K bits, crc verdict)."""
    if buffer.n_deposits == 0:
        raise ValueError("cannot decode an empty soft buffer")
    mother = buffer.combined()
    return turbo_decode_mother(mother, spec.tb_size, cfg.turbo(), crc_ok=crc_check)
