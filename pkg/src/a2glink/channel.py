"""AWGN and temporally correlated flat Rayleigh fading at resource-element
level.

The SINR convention is unit signal power: sigma^2 = 10^(-SINR/10), with
circularly symmetric complex noise (per-axis variance sigma^2/2). Fading
is block-constant over one 1 ms subframe and evolves across subframes as
a complex Gaussian process with the Jakes autocorrelation
J0(2*pi*f_D*k*1ms), generated exactly by circulant embedding. Each
simulation run owns its own state; states are never shared across
concurrent sweep cells.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SUBFRAME_S = 1e-3

AWGN = "awgn"
RAYLEIGH = "rayleigh"


@dataclass(frozen=True)
class ChannelConfig:
    model: str = AWGN
    doppler_hz: float = 5.0
    sinr_db: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.model not in (AWGN, RAYLEIGH):
            raise ValueError(f"unknown channel model {self.model!r}")
        if self.doppler_hz < 0:
            raise ValueError("doppler_hz must be >= 0")


def noise_var_from_sinr(sinr_db: float) -> float:
    """Complex noise variance for unit signal power: 10^(-SINR/10)."""
    return float(10.0 ** (-float(sinr_db) / 10.0))


def jakes_gain_sequence(rng: np.random.Generator, n: int, doppler_hz: float) -> np.ndarray:
    """n correlated CN(0,1) subframe gains with autocovariance
    J0(2*pi*f_D*k*1ms).

    Frequency-domain synthesis from the Jakes spectrum: each FFT bin
    inside the Doppler band gets the exact spectral mass
    (asin(f_hi/f_D) - asin(f_lo/f_D)) / pi, so the process is exactly
    Gaussian with exactly unit power, and the autocorrelation matches J0
    up to the spectral discretization (negligible at the lags of
    interest)."""
    if doppler_hz == 0.0:
        h = (rng.standard_normal() + 1j * rng.standard_normal()) / np.sqrt(2.0)
        return np.full(n, h, dtype=np.complex128)
    fs = 1.0 / SUBFRAME_S
    if doppler_hz >= fs / 2:
        raise ValueError("Doppler must be below half the subframe rate")
    # resolution: many bins across the Doppler band, and room for n samples
    m = 1 << int(np.ceil(np.log2(max(2 * n, 64.0 * fs / doppler_hz, 256.0))))
    freqs = np.fft.fftfreq(m, d=SUBFRAME_S)
    df = fs / m
    lo = np.clip((freqs - df / 2) / doppler_hz, -1.0, 1.0)
    hi = np.clip((freqs + df / 2) / doppler_hz, -1.0, 1.0)
    mass = (np.arcsin(hi) - np.arcsin(lo)) / np.pi
    z = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / np.sqrt(2.0)
    h = np.fft.ifft(np.sqrt(mass) * z) * m
    return h[:n].astype(np.complex128)


class ChannelState:
    """Per-run mutable channel state: one gain per subframe plus the noise
    stream. Single-owner; advance with :func:`apply` once per subframe."""

    def __init__(self, cfg: ChannelConfig, rng: np.random.Generator, block: int = 4096):
        self.cfg = cfg
        self.rng = rng
        self.subframe_index = 0
        self._block = max(16, block)
        self._gains = np.empty(0, dtype=np.complex128)
        self._pos = 0
        self.gain = 1.0 + 0.0j

    def _next_gain(self) -> complex:
        if self.cfg.model == AWGN:
            return 1.0 + 0.0j
        if self._pos >= self._gains.size:
            self._gains = jakes_gain_sequence(self.rng, self._block, self.cfg.doppler_hz)
            self._pos = 0
        h = self._gains[self._pos]
        self._pos += 1
        return complex(h)


def make_state(cfg: ChannelConfig, rng: np.random.Generator, n_subframes: int | None = None) -> ChannelState:
    block = 4096 if n_subframes is None else max(16, int(n_subframes))
    return ChannelState(cfg, rng, block=block)


def apply(symbols: np.ndarray, cfg: ChannelConfig, state: ChannelState):
    """Propagate one subframe of symbols: received = H*x + n.

    Returns (received, true H, state). The state advances by one
    subframe per call.
    """
    x = np.asarray(symbols, dtype=np.complex128)
    flat = x.ravel()
    h = state._next_gain()
    state.gain = h
    state.subframe_index += 1
    sigma2 = noise_var_from_sinr(cfg.sinr_db)
    noise = state.rng.standard_normal(2 * flat.size) * np.sqrt(sigma2 / 2.0)
    rx = h * flat + noise[: flat.size] + 1j * noise[flat.size :]
    return rx.reshape(x.shape), h, state
