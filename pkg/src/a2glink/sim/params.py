"""Simulation parameterization.

Defaults follow the evaluation setup: 500 subframes per sweep point, 8
parallel processes for incremental redundancy, at most 4 transmissions
per block, 50 DL / 6 UL resource blocks, SISO, FDD, QPSK at coding rates
0.25 / 0.5 / 0.75 for MCS 1..3. Each resource-block-pair contributes 126
data resource elements (12 subcarriers x 11 non-control symbols minus 6
pilot cells), so one DL subframe carries n_rb_dl * 126 * 2 coded bits at
QPSK with all overheads accounted.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..codec.rate_match import transport_block_size

DATA_RE_PER_RB_PAIR = 126
QPSK_BITS_PER_RE = 2

MCS_CODING_RATES = {1: 0.25, 2: 0.5, 3: 0.75}


@dataclass(frozen=True)
class McsConfig:
    index: int
    coding_rate: float
    modulation: str = "qpsk"

    @classmethod
    def from_index(cls, index: int) -> "McsConfig":
        if index not in MCS_CODING_RATES:
            raise ValueError(f"MCS must be one of {sorted(MCS_CODING_RATES)}, got {index}")
        return cls(index=index, coding_rate=MCS_CODING_RATES[index])


@dataclass(frozen=True)
class SimParams:
    n_subframes: int = 500
    n_harq: int = 8
    n_tr_max: int = 4
    n_rb_dl: int = 50
    n_rb_ul: int = 6
    transmission_mode: str = "siso"
    bw_dl_mhz: float = 10.0
    bw_ul_mhz: float = 1.4
    duplex: str = "fdd"
    decoder_iterations: int = 8

    def coded_bits_dl(self) -> int:
        return self.n_rb_dl * DATA_RE_PER_RB_PAIR * QPSK_BITS_PER_RE

    def payload_bits(self, mcs: McsConfig) -> int:
        """Transport block size (CRC excluded) per DL subframe."""
        return transport_block_size(self.coded_bits_dl(), mcs.coding_rate)


@dataclass(frozen=True)
class LatencyModel:
    """Latency components in milliseconds (one TTI = 1 ms)."""

    t_l1l2_ms: float = 1.0
    t_align_ms: float = 1.0
    t_tx_ms: float = 1.0
    t_proc_ms: float = 3.0

    def __post_init__(self):
        for v in (self.t_l1l2_ms, self.t_align_ms, self.t_tx_ms, self.t_proc_ms):
            if v < 0:
                raise ValueError("latency components must be >= 0")


@dataclass(frozen=True)
class AsymmetryConfig:
    """Feedback-link setup for the closed-loop evaluation."""

    ul_offset_db: float = 0.0
    feedback_standard: str = "lte"  # or "nr"
    perfect_feedback: bool = False

    def __post_init__(self):
        if self.ul_offset_db < 0:
            raise ValueError("the UL offset is a deficit, must be >= 0")
        if self.feedback_standard not in ("lte", "nr"):
            raise ValueError("feedback_standard must be 'lte' or 'nr'")
