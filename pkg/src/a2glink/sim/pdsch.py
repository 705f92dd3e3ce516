"""Transport-block pipeline for one DL link: payload generation, turbo
encode + rate match, QPSK, coherent demodulation with known channel
gain, and soft-buffer management.

PDSCH reception assumes perfect channel knowledge (the feedback channels
are where estimation quality is under study); the per-axis LLR scale
after equalization uses the effective noise variance sigma^2 / |H|^2.
"""

from __future__ import annotations

import numpy as np

from .. import channel as ch
from ..codec.rate_match import (
    CircularSoftBuffer,
    CodecConfig,
    RateMatchSpec,
    decode as codec_decode,
    encode as codec_encode,
)
from ..phy.crc import crc_attach
from ..phy.modulation import qpsk_modulate, qpsk_soft_bits
from .params import McsConfig, SimParams

_NOISE_VAR_FLOOR = 1e-12  # keeps LLRs finite on a noiseless channel


class PdschLink:
    """PHY adapter the retransmission engine drives."""

    def __init__(self, mcs: McsConfig, params: SimParams, payload_rng: np.random.Generator):
        self.mcs = mcs
        self.params = params
        self.g = params.coded_bits_dl()
        self.payload_bits = params.payload_bits(mcs)
        self.tb_size = self.payload_bits + 24
        self.codec_cfg = CodecConfig(decoder_iterations=params.decoder_iterations)
        self._rng = payload_rng

    def spec(self, rv: int) -> RateMatchSpec:
        return RateMatchSpec(g=self.g, tb_size=self.tb_size, rv=rv)

    def new_transport_block(self, subframe: int) -> np.ndarray:
        payload = self._rng.integers(0, 2, self.payload_bits, dtype=np.uint8)
        return crc_attach(payload)

    def transmit(self, tb: np.ndarray, rv: int) -> np.ndarray:
        return qpsk_modulate(codec_encode(tb, self.spec(rv), self.codec_cfg))

    def demodulate(self, rx: np.ndarray, h: complex, noise_var: float) -> np.ndarray:
        y = rx / h
        eff_var = max(noise_var / abs(h) ** 2, _NOISE_VAR_FLOOR)
        return qpsk_soft_bits(y, eff_var)

    def make_buffer(self) -> CircularSoftBuffer:
        return CircularSoftBuffer(self.spec(0))

    def deposit(self, buffer: CircularSoftBuffer, llrs: np.ndarray, rv: int) -> CircularSoftBuffer:
        buffer.deposit(llrs, self.spec(rv))
        return buffer

    def decode(self, buffer: CircularSoftBuffer):
        return codec_decode(buffer, self.spec(0), self.codec_cfg)


class LinkChannel:
    """Channel adapter: one propagate() call per subframe."""

    def __init__(self, cfg: ch.ChannelConfig, rng: np.random.Generator, n_subframes: int | None = None):
        self.cfg = cfg
        self.state = ch.make_state(cfg, rng, n_subframes)
        self.noise_var = ch.noise_var_from_sinr(cfg.sinr_db)

    def propagate(self, symbols: np.ndarray):
        rx, h, _ = ch.apply(symbols, self.cfg, self.state)
        return rx, h, self.noise_var
