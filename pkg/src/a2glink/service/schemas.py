"""Request/response models for the experiment service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, field_validator

from ..sim.params import MCS_CODING_RATES

SchemeName = Literal["type1-nc", "type1-cc", "type3-ir", "burst-cc"]
StandardName = Literal["lte", "nr"]
ChannelName = Literal["awgn", "rayleigh"]
ALL_SCHEMES: tuple[str, ...] = ("type1-nc", "type1-cc", "type3-ir", "burst-cc")


class ChannelSpec(BaseModel):
    model: ChannelName = "awgn"
    doppler_hz: float = Field(default=5.0, ge=0)


class ParamsSpec(BaseModel):
    n_subframes: int = Field(default=500, ge=1)
    n_harq: int = Field(default=8, ge=1)
    n_tr_max: int = Field(default=4, ge=1)
    n_rb_dl: int = Field(default=50, ge=1)
    n_rb_ul: int = Field(default=6, ge=1)
    decoder_iterations: int = Field(default=8, ge=1)


class LatencySpec(BaseModel):
    t_l1l2_ms: float = Field(default=1.0, ge=0)
    t_align_ms: float = Field(default=1.0, ge=0)
    t_tx_ms: float = Field(default=1.0, ge=0)
    t_proc_ms: float = Field(default=3.0, ge=0)


class _BaseRequest(BaseModel):
    sinr_db: list[float]
    seed: int = 0
    jobs: int = Field(default=1, ge=1, le=64)
    channel: ChannelSpec = ChannelSpec()
    params: ParamsSpec = ParamsSpec()

    @field_validator("sinr_db")
    @classmethod
    def _nonempty_monotone(cls, v: list[float]) -> list[float]:
        if not v:
            raise ValueError("sinr_db grid is empty")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("sinr_db grid must be strictly increasing")
        return v


def _check_mcs(mcs: int) -> int:
    if mcs not in MCS_CODING_RATES:
        raise ValueError(f"mcs must be one of {sorted(MCS_CODING_RATES)}")
    return mcs


class SweepRequest(_BaseRequest):
    scheme: SchemeName = "type3-ir"
    mcs: int = 2
    latency: LatencySpec = LatencySpec()

    _mcs = field_validator("mcs")(_check_mcs)


class LatencyRequest(_BaseRequest):
    schemes: list[SchemeName] = Field(default_factory=lambda: list(ALL_SCHEMES))
    mcs: int = 2
    latency: LatencySpec = LatencySpec()

    _mcs = field_validator("mcs")(_check_mcs)


class AsymmetryRequest(_BaseRequest):
    standard: StandardName = "lte"
    offsets_db: list[float] = Field(default_factory=lambda: [0.0, 5.0, 10.0, 15.0])
    include_perfect: bool = True
    scheme: SchemeName = "type3-ir"
    mcs: int = 2

    _mcs = field_validator("mcs")(_check_mcs)

    @field_validator("offsets_db")
    @classmethod
    def _nonneg(cls, v: list[float]) -> list[float]:
        if any(o < 0 for o in v):
            raise ValueError("offsets are UL deficits and must be >= 0")
        return v


class BlerRequest(_BaseRequest):
    curves: list[str] = Field(
        default_factory=lambda: ["lte-pdsch", "lte-pucch", "nr-pucch", "wifi-data", "wifi-ack"]
    )
    trials: int | None = None  # None -> per-curve defaults


class RmseRequest(BaseModel):
    sinr_db: list[float]
    trials: int = Field(default=10_000, ge=1)
    channel_model: ChannelName = "awgn"
    seed: int = 0
    jobs: int = Field(default=1, ge=1, le=64)


class RowModel(BaseModel):
    dl_sinr_db: float
    ul_sinr_db: float
    scheme: str
    mcs: str
    standard: str
    throughput_bps: float
    throughput_ratio_pct: float
    bler: float
    avg_latency_ms: float
    attempts_mean: float
    seed: int
    attempts_histogram: dict[int, int] = Field(default_factory=dict)


class SweepResponse(BaseModel):
    rows: list[RowModel]
    metadata: dict


class RmseRow(BaseModel):
    dl_sinr_db: float
    standard: str
    rmse: float
    n_trials: int
    seed: int


class RmseResponse(BaseModel):
    rows: list[RmseRow]
    metadata: dict
