"""End-to-end experiment drivers and their parameterization."""

from .params import LatencyModel, McsConfig, SimParams, AsymmetryConfig, MCS_CODING_RATES
from .pdsch import PdschLink, LinkChannel
from .report import (
    SweepRow,
    SweepReport,
    CSV_HEADER,
    RMSE_CSV_HEADER,
    write_csv,
    write_metadata,
    rows_to_csv,
    rmse_rows_to_csv,
    write_rmse_csv,
)
from .drivers import (
    harq_latency,
    burst_latency,
    throughput_ratio,
    average_gap,
    run_dl_throughput,
    run_asymmetric,
    run_bler_suite,
    run_latency_sweep,
    run_chanest_rmse,
    BLER_CURVES,
)

__all__ = [
    "LatencyModel",
    "McsConfig",
    "SimParams",
    "AsymmetryConfig",
    "MCS_CODING_RATES",
    "PdschLink",
    "LinkChannel",
    "SweepRow",
    "SweepReport",
    "CSV_HEADER",
    "RMSE_CSV_HEADER",
    "write_csv",
    "write_metadata",
    "rows_to_csv",
    "rmse_rows_to_csv",
    "write_rmse_csv",
    "harq_latency",
    "burst_latency",
    "throughput_ratio",
    "average_gap",
    "run_dl_throughput",
    "run_asymmetric",
    "run_bler_suite",
    "run_latency_sweep",
    "run_chanest_rmse",
    "BLER_CURVES",
]
