"""5G PUCCH format 1 over 14 symbols with alternating DMRS.

Transmit chain: BPSK bit -> multiply by the cyclically shifted length-12
base sequence r_u,v(n) = exp(j*alpha*n) * exp(j*phi(n)*pi/4) -> length-3
orthogonal cover over the 3 data symbols of the first slot and length-4
over the 4 of the second -> grid mapping. DMRS symbols carry the shifted
base sequence itself.

Detection computes the normalized correlation

    c = |sum_i y_i s_1,i^*| / sqrt(sum|y_i|^2 * sum|s_1,i|^2)

over the 84 equalized data cells against the bit-1 reference (the
transmitted bit is unknown, so the reference is always generated with
bit 1). If c clears the threshold the sign of the averaged matched
filter decides ACK/NACK, otherwise DTX.

The per-symbol shift schedule alpha is a pseudo-random sequence known to
both ends; a deterministic schedule from the run's seeded generator
leaves the detection statistics unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from ..phy.grid import N_SUBCARRIERS, N_SYMBOLS, PucchLayout, ResourceGrid, nr_format1_layout
from ..phy.occ import occ_sequence
from .decision import ACK_CODE, DTX_CODE, NACK_CODE, AckNackDecision

_SLOT_SYMBOLS = (tuple(range(7)), tuple(range(7, 14)))


@lru_cache(maxsize=8)
def _load_phi_table_cached(path: str | None) -> np.ndarray:
    if path is None:
        text = resources.files("a2glink.pucch").joinpath("phi_table.txt").read_text()
    else:
        with open(path) as f:
            text = f.read()
    rows = [[int(v) for v in line.split()] for line in text.strip().splitlines() if line.strip()]
    table = np.asarray(rows, dtype=np.int64)
    if table.ndim != 2 or table.shape[1] != N_SUBCARRIERS:
        raise ValueError(f"phi table rows must have {N_SUBCARRIERS} entries")
    table.setflags(write=False)
    return table


def load_phi_table(path: str | None = None) -> np.ndarray:
    """Load the base-sequence table: one row per group u, 12 integers per
    row. Ships with 30 low-PAPR rows over the {-3,-1,1,3} alphabet."""
    return _load_phi_table_cached(path)


def base_sequence(u: int, v: int, phi_table: np.ndarray | None = None) -> np.ndarray:
    """Length-12 base sequence exp(j*phi(n)*pi/4) for group ``u``.

    ``v`` selects among sequences within a group; length-12 tables carry
    a single sequence per group, so any ``v`` maps to that row.
    """
    table = load_phi_table() if phi_table is None else np.asarray(phi_table)
    if not 0 <= u < table.shape[0]:
        raise ValueError(f"no phi table row for group u={u}")
    return np.exp(1j * table[u] * np.pi / 4.0)


def cyclic_shift(seq: np.ndarray, alpha: float) -> np.ndarray:
    """Apply the phase ramp exp(j*alpha*n); energy preserving."""
    s = np.asarray(seq)
    if s.shape[-1] != N_SUBCARRIERS:
        raise ValueError("cyclic_shift expects length-12 sequences")
    n = np.arange(N_SUBCARRIERS)
    return s * np.exp(1j * np.asarray(alpha)[..., None] * n)


@dataclass(frozen=True)
class NrPucchConfig:
    """Format 1 parameters; thresholds and cover-code rows default to the
    evaluation setup (threshold 0.22, rows 1)."""

    group: int = 0  # u
    sequence: int = 0  # v
    occ_index_slot1: int = 1  # length-3 row
    occ_index_slot2: int = 1  # length-4 row
    threshold: float = 0.22
    shift_schedule: tuple[float, ...] = (0.0,) * N_SYMBOLS  # alpha per symbol, radians
    intra_slot_hopping: bool = True  # metadata only under flat fading
    layout: PucchLayout = field(default_factory=nr_format1_layout, repr=False)
    phi_table_path: str | None = None

    def __post_init__(self):
        if len(self.shift_schedule) != N_SYMBOLS:
            raise ValueError(f"shift_schedule must have {N_SYMBOLS} entries")

    def shifted_sequences(self) -> np.ndarray:
        """(14, 12) per-symbol shifted base sequences."""
        return _shifted_sequences(self.group, self.sequence, self.shift_schedule, self.phi_table_path)


@lru_cache(maxsize=512)
def _shifted_sequences(group: int, sequence: int, schedule: tuple, path: str | None) -> np.ndarray:
    base = base_sequence(group, sequence, load_phi_table(path))
    out = cyclic_shift(base, np.asarray(schedule))
    out.setflags(write=False)
    return out


def encode_format1(bit, cfg: NrPucchConfig) -> ResourceGrid:
    """Spread one HARQ indicator bit onto the format 1 grid; ``bit`` may
    carry leading batch dimensions."""
    b = np.asarray(bit)
    x = (1.0 - 2.0 * b).astype(np.complex128)
    seqs = cfg.shifted_sequences()  # (14, 12)
    occs = (occ_sequence(3, cfg.occ_index_slot1), occ_sequence(4, cfg.occ_index_slot2))
    cells = np.zeros(b.shape + (N_SUBCARRIERS, N_SYMBOLS), dtype=np.complex128)
    for slot in range(2):
        for i, t in enumerate(cfg.layout.slot_data_symbols[slot]):
            cells[..., :, t] = x[..., None] * seqs[t] * occs[slot][i]
    for t in cfg.layout.dmrs_symbols:
        cells[..., :, t] = seqs[t]
    return ResourceGrid(cells, cfg.layout)


def estimate_channel_nr(rx_grid: ResourceGrid, cfg: NrPucchConfig) -> np.ndarray:
    """Per-symbol channel estimates (..., 14).

    Least squares on each DMRS symbol; each data symbol takes the mean of
    its adjacent DMRS estimates (the last symbol has a single
    neighbour). DMRS symbols keep their own estimate.
    """
    cells = rx_grid.cells
    if not set(cfg.layout.dmrs_symbols):
        raise ValueError("layout has no DMRS symbols")
    seqs = cfg.shifted_sequences()
    h = np.empty(cells.shape[:-2] + (N_SYMBOLS,), dtype=np.complex128)
    ls = {t: np.mean(cells[..., :, t] * np.conj(seqs[t]), axis=-1) for t in cfg.layout.dmrs_symbols}
    for t in cfg.layout.dmrs_symbols:
        h[..., t] = ls[t]
    for t in cfg.layout.data_symbols:
        neighbours = [s for s in (t - 1, t + 1) if s in ls]
        h[..., t] = sum(ls[s] for s in neighbours) / len(neighbours)
    return h


def _equalize(cells: np.ndarray, h_est: np.ndarray) -> np.ndarray:
    denom = np.where(np.abs(h_est) == 0, 1.0, h_est)
    eq = cells / denom[..., None, :]
    return np.where(np.abs(h_est)[..., None, :] == 0, 0.0, eq)


def _detection_stats(rx_cells: np.ndarray, cfg: NrPucchConfig, h_est: np.ndarray):
    data_cols = list(cfg.layout.data_symbols)
    y = _equalize(rx_cells, h_est)[..., :, data_cols]
    ref = encode_format1(np.asarray(1), cfg).cells[:, data_cols]
    corr = np.sum(y * np.conj(ref), axis=(-2, -1))
    energy_y = np.sum(np.abs(y) ** 2, axis=(-2, -1))
    energy_s = np.sum(np.abs(ref) ** 2)
    denom = np.sqrt(energy_y * energy_s)
    c = np.where(denom > 0, np.abs(corr) / np.where(denom > 0, denom, 1.0), 0.0)
    return c, corr.real / cfg.layout.n_data_cells


def detect_decode_format1_batch(rx_cells: np.ndarray, cfg: NrPucchConfig) -> np.ndarray:
    """Vectorized detector: integer codes (1 ACK, 0 NACK, -1 DTX)."""
    grid = ResourceGrid(rx_cells, cfg.layout)
    h = estimate_channel_nr(grid, cfg)
    c, mf = _detection_stats(grid.cells, cfg, h)
    codes = np.where(mf > 0, ACK_CODE, NACK_CODE)
    return np.where(c >= cfg.threshold, codes, DTX_CODE).astype(np.int8)


def detect_decode_format1(
    rx_grid: ResourceGrid, cfg: NrPucchConfig, h_est: np.ndarray | None = None
) -> AckNackDecision:
    """Detect one grid via the normalized correlation statistic."""
    if h_est is None:
        h_est = estimate_channel_nr(rx_grid, cfg)
    c, mf = _detection_stats(rx_grid.cells, cfg, h_est)
    if np.ndim(c) != 0:
        raise ValueError("detect_decode_format1 expects a single grid; use the batch variant")
    if c < cfg.threshold:
        return AckNackDecision.DTX
    return AckNackDecision.ACK if mf > 0 else AckNackDecision.NACK


def channel_est_rmse(estimates: np.ndarray, truths: np.ndarray) -> float:
    """Root mean squared channel-estimation error sqrt(mean |H_hat - H|^2)."""
    e = np.asarray(estimates)
    t = np.asarray(truths)
    if e.shape != t.shape:
        raise ValueError(f"shape mismatch: {e.shape} vs {t.shape}")
    if e.size == 0:
        raise ValueError("need at least one sample")
    return float(np.sqrt(np.mean(np.abs(e - t) ** 2)))
