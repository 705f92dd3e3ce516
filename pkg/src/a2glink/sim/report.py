"""Sweep reports, the fixed CSV schema, and the metadata sidecar.

Every experiment emits one CSV row per sweep point with the fixed header

    dl_sinr_db,ul_sinr_db,scheme,mcs,standard,throughput_bps,
    throughput_ratio_pct,bler,avg_latency_ms,attempts_mean,seed

plus a JSON sidecar (<out>.meta.json) carrying the full configuration,
the PRNG identifier and the package version, so a run can be reproduced
byte for byte. The channel-estimation experiment has its own schema
(see drivers.run_chanest_rmse): the fixed header has no error-magnitude
column.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .. import __version__
from ..rng import PRNG_ID

CSV_HEADER = (
    "dl_sinr_db,ul_sinr_db,scheme,mcs,standard,throughput_bps,"
    "throughput_ratio_pct,bler,avg_latency_ms,attempts_mean,seed"
)

RMSE_CSV_HEADER = "dl_sinr_db,standard,rmse,n_trials,seed"


@dataclass
class SweepRow:
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
    attempts_histogram: dict[int, int] = field(default_factory=dict)

    def csv_fields(self) -> list[str]:
        return [
            _fmt(self.dl_sinr_db),
            _fmt(self.ul_sinr_db),
            self.scheme,
            self.mcs,
            self.standard,
            _fmt(self.throughput_bps),
            _fmt(self.throughput_ratio_pct),
            _fmt(self.bler),
            _fmt(self.avg_latency_ms),
            _fmt(self.attempts_mean),
            str(self.seed),
        ]


@dataclass
class SweepReport:
    rows: list[SweepRow]
    metadata: dict

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(float(x))
    return str(x)


def rows_to_csv(rows: list[SweepRow]) -> str:
    lines = [CSV_HEADER]
    lines += [",".join(r.csv_fields()) for r in rows]
    return "\n".join(lines) + "\n"


def write_csv(report: SweepReport, path: str, force: bool = False) -> None:
    """Write the report CSV and its metadata sidecar; refuses to
    overwrite existing output unless forced."""
    sidecar = metadata_path(path)
    for p in (path, sidecar):
        if os.path.exists(p) and not force:
            raise FileExistsError(f"{p} exists; pass force to overwrite")
    with open(path, "w") as f:
        f.write(rows_to_csv(report.rows))
    write_metadata(report, sidecar)


def metadata_path(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + ".meta.json"


def write_metadata(report: SweepReport, path: str) -> None:
    meta = dict(report.metadata)
    meta.setdefault("prng", PRNG_ID)
    meta.setdefault("version", __version__)
    meta["attempts_histograms"] = [
        {str(k): v for k, v in sorted(r.attempts_histogram.items())} for r in report.rows
    ]
    with open(path, "w") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
        f.write("\n")


def rmse_rows_to_csv(rows) -> str:
    lines = [RMSE_CSV_HEADER]
    for sinr, standard, rmse, n, seed in rows:
        lines.append(f"{_fmt(float(sinr))},{standard},{_fmt(float(rmse))},{int(n)},{int(seed)}")
    return "\n".join(lines) + "\n"


def write_rmse_csv(rows, metadata: dict, path: str, force: bool = False) -> None:
    sidecar = metadata_path(path)
    for p in (path, sidecar):
        if os.path.exists(p) and not force:
            raise FileExistsError(f"{p} exists; pass force to overwrite")
    with open(path, "w") as f:
        f.write(rmse_rows_to_csv(rows))
    meta = dict(metadata)
    meta.setdefault("prng", PRNG_ID)
    meta.setdefault("version", __version__)
    with open(sidecar, "w") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
        f.write("\n")
