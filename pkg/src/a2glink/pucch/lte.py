"""LTE PUCCH format 1a: one HARQ indicator bit spread over 96 cells.

Transmit chain: BPSK bit -> length-12 phase-rotation sequence
x'_n = x_n * exp(j*m*pi*n/6) -> length-4 orthogonal cover across the four
data symbols of each slot -> edge resource-block mapping (kept as
metadata; with flat fading both edge blocks see the same channel).
Receive chain: least-squares channel estimates on the three centre DMRS
symbols of each slot, linear interpolation/extrapolation in time,
per-symbol equalization, then the normalized error metric

    e_b = | sum_i (y_i - s_b,i) s_b,i^* / sum_i |s_b,i|^2 |^2

against both candidate bits; the argmin wins if it clears the detection
threshold, otherwise the verdict is DTX.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..phy.grid import N_SUBCARRIERS, N_SYMBOLS, PucchLayout, ResourceGrid, lte_format1a_layout
from ..phy.occ import occ_sequence
from .decision import ACK_CODE, DTX_CODE, NACK_CODE, AckNackDecision

_DMRS_SLOT_SYMBOLS = ((2, 3, 4), (9, 10, 11))
_SLOT_SYMBOLS = (tuple(range(7)), tuple(range(7, 14)))


@dataclass(frozen=True)
class LtePucchConfig:
    """Format 1a parameters; defaults follow the evaluation setup
    (threshold 0.83, cover-code row 1, rotation index 0)."""

    phase_index: int = 0  # m, 0..11
    occ_index: int = 1  # 1-based Walsh row
    threshold: float = 0.83
    edge_rb_index: int = 0  # metadata only under flat fading
    layout: PucchLayout = field(default_factory=lte_format1a_layout, repr=False)

    def __post_init__(self):
        if not 0 <= self.phase_index <= 11:
            raise ValueError("phase_index must be in 0..11")

    @property
    def rotation(self) -> np.ndarray:
        n = np.arange(N_SUBCARRIERS)
        return np.exp(1j * np.pi * self.phase_index * n / 6.0)


def encode_format1a(bit, cfg: LtePucchConfig) -> ResourceGrid:
    """Spread one HARQ indicator bit onto the format 1a grid.

    ``bit`` may be a scalar or an array; leading dimensions batch
    independent grids.
    """
    b = np.asarray(bit)
    x = (1.0 - 2.0 * b).astype(np.complex128)  # BPSK, bit 0 -> +1
    occ = occ_sequence(4, cfg.occ_index)
    rot = cfg.rotation
    cells = np.zeros(b.shape + (N_SUBCARRIERS, N_SYMBOLS), dtype=np.complex128)
    for slot in range(2):
        for i, t in enumerate(cfg.layout.slot_data_symbols[slot]):
            cells[..., :, t] = x[..., None] * rot * occ[i]
    for t in cfg.layout.dmrs_symbols:
        cells[..., :, t] = rot
    return ResourceGrid(cells, cfg.layout)


def _interp_weights() -> np.ndarray:
    """(14, 6) linear map from the six DMRS-symbol estimates to all
    symbol positions: piecewise-linear interpolation in time, held
    constant beyond the outermost DMRS symbols."""
    pilots = np.array([t for slot in _DMRS_SLOT_SYMBOLS for t in slot], dtype=float)
    w = np.zeros((N_SYMBOLS, pilots.size))
    for t in range(N_SYMBOLS):
        if t <= pilots[0]:
            w[t, 0] = 1.0
        elif t >= pilots[-1]:
            w[t, -1] = 1.0
        else:
            j = int(np.searchsorted(pilots, t, side="right")) - 1
            frac = (t - pilots[j]) / (pilots[j + 1] - pilots[j])
            w[t, j] = 1.0 - frac
            w[t, j + 1] = frac
    return w

_INTERP_W = _interp_weights()


def estimate_channel_lte(rx_grid: ResourceGrid, cfg: LtePucchConfig) -> np.ndarray:
    """Per-symbol channel estimates (..., 14).

    Least squares against the rotated base sequence on each DMRS symbol,
    averaged across subcarriers, then linear interpolation in time
    between the DMRS symbols (endpoint-held at the subframe edges).
    """
    cells = rx_grid.cells
    if not set(cfg.layout.dmrs_symbols):
        raise ValueError("layout has no DMRS symbols")
    rot = cfg.rotation
    dmrs = [t for slot in _DMRS_SLOT_SYMBOLS for t in slot]
    ls = np.stack([np.mean(cells[..., :, t] * np.conj(rot), axis=-1) for t in dmrs], axis=-1)
    return ls @ _INTERP_W.T


def _equalize(cells: np.ndarray, h_est: np.ndarray) -> np.ndarray:
    denom = np.where(np.abs(h_est) == 0, 1.0, h_est)
    eq = cells / denom[..., None, :]
    return np.where(np.abs(h_est)[..., None, :] == 0, 0.0, eq)


def error_metrics(rx_grid: ResourceGrid, cfg: LtePucchConfig, h_est: np.ndarray) -> np.ndarray:
    """Normalized error metric e_b for b in {0, 1}; shape (..., 2)."""
    y = _equalize(rx_grid.cells, h_est)[..., :, list(cfg.layout.data_symbols)]
    out = []
    for b in (0, 1):
        ref = encode_format1a(np.asarray(b), cfg).cells[:, list(cfg.layout.data_symbols)]
        num = np.sum((y - ref) * np.conj(ref), axis=(-2, -1))
        den = np.sum(np.abs(ref) ** 2)
        out.append(np.abs(num / den) ** 2)
    return np.stack(out, axis=-1)


def decode_format1a_batch(rx_cells: np.ndarray, cfg: LtePucchConfig) -> np.ndarray:
    """Vectorized detector: integer codes (1 ACK, 0 NACK, -1 DTX)."""
    grid = ResourceGrid(rx_cells, cfg.layout)
    h = estimate_channel_lte(grid, cfg)
    e = error_metrics(grid, cfg, h)
    best = np.argmin(e, axis=-1)  # metric index equals the candidate bit
    emin = np.take_along_axis(e, best[..., None], axis=-1)[..., 0]
    codes = np.where(best == 1, ACK_CODE, NACK_CODE)
    return np.where(emin < cfg.threshold, codes, DTX_CODE).astype(np.int8)


def decode_format1a(rx_grid: ResourceGrid, cfg: LtePucchConfig, h_est: np.ndarray | None = None) -> AckNackDecision:
    """Detect one grid; see :func:`error_metrics` for the statistic."""
    if h_est is None:
        h_est = estimate_channel_lte(rx_grid, cfg)
    e = error_metrics(rx_grid, cfg, h_est)
    if e.ndim != 1:
        raise ValueError("decode_format1a expects a single grid; use decode_format1a_batch")
    if min(e) >= cfg.threshold:
        return AckNackDecision.DTX
    return AckNackDecision.from_bit(int(np.argmin(e)))
