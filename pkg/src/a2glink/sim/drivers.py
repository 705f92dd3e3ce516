"""Experiment drivers: throughput sweeps with perfect feedback, the
closed-loop UL/DL asymmetry evaluation, standalone feedback/data BLER
curves, channel-estimation error curves, and latency accounting.

Each sweep point is an independent cell: its payload, channel and
feedback streams derive from (seed, role, SINR value), so cells can run
on a thread pool and still merge deterministically in grid order, and
the no-combining / chase / incremental-redundancy runs at one seed see
paired noise.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict

import numpy as np

from .. import channel as ch
from .. import rng as rngmod
from ..codec.rate_match import HarqScheme
from ..harq.engine import HarqPool, step_scheme
from ..phy.grid import N_SYMBOLS, ResourceGrid
from ..phy.modulation import qpsk_soft_bits
from ..pucch import lte as pucch_lte
from ..pucch import nr as pucch_nr
from ..wifi import frames as wifi_frames
from ..wifi import phy as wifi_phy
from .params import AsymmetryConfig, LatencyModel, McsConfig, SimParams
from .pdsch import LinkChannel, PdschLink
from .report import SweepReport, SweepRow

BLER_CURVES = ("lte-pdsch", "lte-pucch", "nr-pucch", "wifi-data", "wifi-ack")

_DEFAULT_BLER_TRIALS = {
    "lte-pdsch": 2000,
    "lte-pucch": 100_000,
    "nr-pucch": 100_000,
    "wifi-data": 500,
    "wifi-ack": 100_000,
}


def _gamma_tag(sinr_db: float) -> int:
    return int(round(float(sinr_db) * 1000.0))


# ---------------------------------------------------------------------------
# latency formulas
# ---------------------------------------------------------------------------

def harq_latency(k: int, model: LatencyModel = LatencyModel()) -> float:
    """Total latency in ms of a block delivered after k retransmissions:
    2*T_L1L2 + T_Align + 2(k+1)*T_Proc + 2(k+1)*T_Tx."""
    if k < 0:
        raise ValueError("retransmission count must be >= 0")
    return 2 * model.t_l1l2_ms + model.t_align_ms + 2 * (k + 1) * (model.t_proc_ms + model.t_tx_ms)


def burst_latency(model: LatencyModel = LatencyModel()) -> float:
    """Burst latency in ms: 2*T_L1L2 + T_Align + 4*T_Tx + T_Proc (the
    receiver pipelines processing, so it is paid once)."""
    return 2 * model.t_l1l2_ms + model.t_align_ms + 4 * model.t_tx_ms + model.t_proc_ms


def throughput_ratio(th_bps: float, mcs: McsConfig, params: SimParams) -> float:
    """Percentage of the maximum achievable throughput TBS / 1 ms."""
    if th_bps < 0:
        raise ValueError("throughput must be >= 0")
    th_max = params.payload_bits(mcs) / 1e-3
    return th_bps / th_max * 100.0


def average_gap(report: SweepReport, baseline: SweepReport, sinr_lo: float, sinr_hi: float) -> float:
    """Mean (baseline - report) throughput-ratio difference, in
    percentage points, over grid points within [sinr_lo, sinr_hi]."""
    if report.column("dl_sinr_db") != baseline.column("dl_sinr_db"):
        raise ValueError("reports lie on different SINR grids")
    gaps = [
        b.throughput_ratio_pct - r.throughput_ratio_pct
        for r, b in zip(report.rows, baseline.rows)
        if sinr_lo <= r.dl_sinr_db <= sinr_hi
    ]
    if not gaps:
        raise ValueError("no grid points inside the averaging window")
    return float(np.mean(gaps))


# ---------------------------------------------------------------------------
# perfect-feedback throughput / latency sweeps
# ---------------------------------------------------------------------------

def _run_cell(
    scheme: HarqScheme,
    mcs: McsConfig,
    channel_cfg: ch.ChannelConfig,
    sinr_db: float,
    params: SimParams,
    seed: int,
    latency_model: LatencyModel,
    feedback: AsymmetryConfig | None = None,
) -> SweepRow:
    tag = _gamma_tag(sinr_db)
    link = PdschLink(mcs, params, rngmod.substream(seed, rngmod.PAYLOAD, tag))
    burst = scheme is HarqScheme.BURST_CHASE_COMBINING
    hint = params.n_subframes * (4 if burst else 1)
    cfg = ch.ChannelConfig(
        model=channel_cfg.model, doppler_hz=channel_cfg.doppler_hz, sinr_db=sinr_db, seed=seed
    )
    chan = LinkChannel(cfg, rngmod.substream(seed, rngmod.NOISE, tag), hint)
    pool = HarqPool.create(params.n_harq if scheme is HarqScheme.TYPE3_INCREMENTAL_REDUNDANCY else 1)

    fb = _FeedbackLink(feedback, channel_cfg, sinr_db, params, seed) if feedback else None

    delivered = 0
    credited = 0
    elapsed = 0
    crc_fails = 0
    decodes = 0
    latencies: list[float] = []
    attempts_done: list[int] = []
    hist: dict[int, int] = {}
    fb_errors = 0
    for sf in range(params.n_subframes):
        o = step_scheme(scheme, pool, link, chan, sf, params.n_tr_max)
        elapsed += o.subframes_elapsed
        decodes += 1
        crc_fails += 0 if o.crc_ok else 1
        delivered += o.delivered_bits
        if fb is not None and not fb.perfect:
            matched = fb.exchange(sf, o.crc_ok)
            fb_errors += 0 if matched else 1
            credited += o.delivered_bits if matched else 0
        else:
            credited += o.delivered_bits
        if o.completed:
            attempts_done.append(o.attempts_used)
            hist[o.attempts_used] = hist.get(o.attempts_used, 0) + 1
            if o.crc_ok:
                latencies.append(
                    burst_latency(latency_model) if burst else harq_latency(o.attempts_used - 1, latency_model)
                )
    th = credited / (elapsed * 1e-3)
    row = SweepRow(
        dl_sinr_db=float(sinr_db),
        ul_sinr_db=float(sinr_db - (feedback.ul_offset_db if feedback else 0.0)),
        scheme=scheme.value,
        mcs=str(mcs.index),
        standard=(feedback.feedback_standard if feedback else "lte"),
        throughput_bps=float(th),
        throughput_ratio_pct=throughput_ratio(th, mcs, params),
        bler=crc_fails / decodes,
        avg_latency_ms=float(np.mean(latencies)) if latencies else float("nan"),
        attempts_mean=float(np.mean(attempts_done)) if attempts_done else float("nan"),
        seed=seed,
        attempts_histogram=hist,
    )
    row.feedback_errors = fb_errors  # type: ignore[attr-defined]
    return row


class _FeedbackLink:
    """UL ACK/NACK leg of the closed-loop run (one sweep cell)."""

    def __init__(self, asym: AsymmetryConfig, dl_cfg: ch.ChannelConfig, dl_sinr: float, params: SimParams, seed: int):
        self.perfect = asym.perfect_feedback
        self.standard = asym.feedback_standard
        tag = _gamma_tag(dl_sinr)
        self.cfg = ch.ChannelConfig(
            model=dl_cfg.model, doppler_hz=dl_cfg.doppler_hz, sinr_db=dl_sinr - asym.ul_offset_db, seed=seed
        )
        if not self.perfect:
            self.state = ch.make_state(self.cfg, rngmod.substream(seed, rngmod.FEEDBACK_NOISE, tag), params.n_subframes)
            self.lte_cfg = pucch_lte.LtePucchConfig()
            self._alpha_rng = rngmod.substream(seed, rngmod.SHIFT_SCHEDULE, tag)

    def exchange(self, subframe: int, crc_ok: bool) -> bool:
        """Transmit the true indicator over the UL; True iff the decoded
        verdict matches (DTX mismatches)."""
        bit = 1 if crc_ok else 0
        if self.standard == "lte":
            cfg = self.lte_cfg
            grid = pucch_lte.encode_format1a(bit, cfg)
            rx, _, _ = ch.apply(grid.cells, self.cfg, self.state)
            decision = pucch_lte.decode_format1a(ResourceGrid(rx, cfg.layout), cfg)
        else:
            schedule = tuple(self._alpha_rng.uniform(0.0, 2.0 * np.pi, N_SYMBOLS))
            cfg = pucch_nr.NrPucchConfig(shift_schedule=schedule)
            grid = pucch_nr.encode_format1(bit, cfg)
            rx, _, _ = ch.apply(grid.cells, self.cfg, self.state)
            decision = pucch_nr.detect_decode_format1(ResourceGrid(rx, cfg.layout), cfg)
        return decision.bit == bit


def _sweep(cells, jobs: int):
    if jobs <= 1:
        return [fn() for fn in cells]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn) for fn in cells]
        return [f.result() for f in futures]


def run_dl_throughput(
    scheme: HarqScheme,
    mcs: McsConfig,
    channel_cfg: ch.ChannelConfig,
    sweep_db,
    params: SimParams = SimParams(),
    seed: int = 0,
    latency_model: LatencyModel = LatencyModel(),
    jobs: int = 1,
) -> SweepReport:
    """Throughput / latency sweep with ideal feedback: N_SF subframes per
    SINR point, TH = delivered bits / elapsed time (the burst scheme
    spends four subframes per block)."""
    sweep = [float(s) for s in sweep_db]
    cells = [
        (lambda s=s: _run_cell(scheme, mcs, channel_cfg, s, params, seed, latency_model))
        for s in sweep
    ]
    rows = _sweep(cells, jobs)
    meta = {
        "experiment": "sweep",
        "scheme": scheme.value,
        "mcs": mcs.index,
        "channel": asdict(channel_cfg),
        "sweep_db": sweep,
        "seed": seed,
        "params": asdict(params),
        "latency_model": asdict(latency_model),
        "notes": "PDSCH uses the same turbo transport-block path for both standards",
    }
    return SweepReport(rows=rows, metadata=meta)


def run_latency_sweep(
    schemes,
    mcs: McsConfig,
    channel_cfg: ch.ChannelConfig,
    sweep_db,
    params: SimParams = SimParams(),
    seed: int = 0,
    latency_model: LatencyModel = LatencyModel(),
    jobs: int = 1,
) -> SweepReport:
    """Average delivered-block latency per SINR point for each scheme."""
    all_rows: list[SweepRow] = []
    for scheme in schemes:
        rep = run_dl_throughput(scheme, mcs, channel_cfg, sweep_db, params, seed, latency_model, jobs)
        all_rows.extend(rep.rows)
    meta = {
        "experiment": "latency",
        "schemes": [s.value for s in schemes],
        "mcs": mcs.index,
        "channel": asdict(channel_cfg),
        "sweep_db": [float(s) for s in sweep_db],
        "seed": seed,
        "params": asdict(params),
        "latency_model": asdict(latency_model),
    }
    return SweepReport(rows=all_rows, metadata=meta)


def run_asymmetric(
    asym: AsymmetryConfig,
    channel_cfg: ch.ChannelConfig,
    sweep_db,
    mcs: McsConfig = McsConfig.from_index(2),
    scheme: HarqScheme = HarqScheme.TYPE3_INCREMENTAL_REDUNDANCY,
    params: SimParams = SimParams(),
    seed: int = 0,
    latency_model: LatencyModel = LatencyModel(),
    jobs: int = 1,
) -> SweepReport:
    """Closed-loop throughput sweep with the HARQ indicator carried over
    a worse UL.

    Per subframe the ground unit decodes the DL block, answers with the
    true ACK/NACK over a feedback channel at (DL SINR - offset), and the
    air unit drops the subframe's delivered bits from the throughput
    when the decoded verdict (DTX included) mismatches. Retransmission
    state keeps following the true CRC. With perfect feedback this
    reduces bit-for-bit to :func:`run_dl_throughput`.
    """
    sweep = [float(s) for s in sweep_db]
    cells = [
        (lambda s=s: _run_cell(scheme, mcs, channel_cfg, s, params, seed, latency_model, feedback=asym))
        for s in sweep
    ]
    rows = _sweep(cells, jobs)
    meta = {
        "experiment": "asymmetry",
        "scheme": scheme.value,
        "mcs": mcs.index,
        "standard": asym.feedback_standard,
        "ul_offset_db": asym.ul_offset_db,
        "perfect_feedback": asym.perfect_feedback,
        "channel": asdict(channel_cfg),
        "sweep_db": sweep,
        "seed": seed,
        "params": asdict(params),
        "feedback_errors": [int(getattr(r, "feedback_errors", 0)) for r in rows],
    }
    return SweepReport(rows=rows, metadata=meta)


# ---------------------------------------------------------------------------
# standalone BLER curves
# ---------------------------------------------------------------------------

def _bler_pdsch(sinr_db: float, trials: int, params: SimParams, seed: int) -> float:
    mcs = McsConfig.from_index(2)  # rate 1/2 comparison point
    tag = _gamma_tag(sinr_db)
    link = PdschLink(mcs, params, rngmod.substream(seed, rngmod.PAYLOAD, tag))
    cfg = ch.ChannelConfig(model=ch.AWGN, sinr_db=sinr_db, seed=seed)
    chan = LinkChannel(cfg, rngmod.substream(seed, rngmod.NOISE, tag), trials)
    fails = 0
    for i in range(trials):
        tb = link.new_transport_block(i)
        rx, h, nv = chan.propagate(link.transmit(tb, 0))
        buf = link.make_buffer()
        link.deposit(buf, link.demodulate(rx, h, nv), 0)
        _, ok = link.decode(buf)
        fails += 0 if ok else 1
    return fails / trials


def _bler_pucch(standard: str, sinr_db: float, trials: int, seed: int, chunk: int = 20000) -> float:
    tag = _gamma_tag(sinr_db)
    r = rngmod.substream(seed, rngmod.FEEDBACK_NOISE, tag)
    sigma2 = ch.noise_var_from_sinr(sinr_db)
    errors = 0
    done = 0
    while done < trials:
        t = min(chunk, trials - done)
        bits = r.integers(0, 2, t)
        if standard == "lte":
            cfg = pucch_lte.LtePucchConfig()
            cells = pucch_lte.encode_format1a(bits, cfg).cells
        else:
            schedule = tuple(r.uniform(0.0, 2.0 * np.pi, N_SYMBOLS))
            cfg = pucch_nr.NrPucchConfig(shift_schedule=schedule)
            cells = pucch_nr.encode_format1(bits, cfg).cells
        noise = (r.standard_normal(cells.shape) + 1j * r.standard_normal(cells.shape)) * np.sqrt(sigma2 / 2.0)
        rx = cells + noise
        if standard == "lte":
            codes = pucch_lte.decode_format1a_batch(rx, cfg)
        else:
            codes = pucch_nr.detect_decode_format1_batch(rx, cfg)
        errors += int(np.sum(codes != bits))
        done += t
    return errors / trials


def _bler_wifi(kind: str, sinr_db: float, trials: int, seed: int) -> float:
    frame = wifi_frames.build_ack_frame() if kind == "wifi-ack" else wifi_frames.build_data_frame()
    cfg = wifi_phy.WifiPhyConfig()
    tx_bits = wifi_phy.frame_bits(frame, cfg)
    symbols = wifi_phy.wifi_encode(frame, cfg)
    sigma2 = ch.noise_var_from_sinr(sinr_db)
    r = rngmod.substream(seed, rngmod.FEEDBACK_NOISE, _gamma_tag(sinr_db))
    chunk = 4000 if kind == "wifi-ack" else 50
    errors = 0
    done = 0
    while done < trials:
        t = min(chunk, trials - done)
        noise = (r.standard_normal((t, symbols.size)) + 1j * r.standard_normal((t, symbols.size))) * np.sqrt(sigma2 / 2.0)
        llrs = qpsk_soft_bits((symbols + noise).ravel(), sigma2).reshape(t, -1)
        bits = wifi_phy.viterbi_decode_batch(llrs)
        errors += int(np.sum(np.any(bits != tx_bits, axis=1)))
        done += t
    return errors / trials


def run_bler_suite(
    sweep_db,
    curves=BLER_CURVES,
    trials: int | dict | None = None,
    params: SimParams = SimParams(),
    seed: int = 0,
    jobs: int = 1,
) -> SweepReport:
    """Monte-Carlo BLER per SINR point for the data and feedback channels
    over AWGN, all at QPSK and (where coded) rate 1/2. A feedback "block
    error" is any decoded verdict differing from the transmitted one;
    DTX counts as an error."""
    if isinstance(trials, int):
        n_trials = {c: trials for c in curves}
    else:
        n_trials = dict(_DEFAULT_BLER_TRIALS)
        n_trials.update(trials or {})
    sweep = [float(s) for s in sweep_db]

    def cell(curve: str, s: float) -> SweepRow:
        if curve == "lte-pdsch":
            b = _bler_pdsch(s, n_trials[curve], params, seed)
        elif curve in ("lte-pucch", "nr-pucch"):
            b = _bler_pucch("lte" if curve == "lte-pucch" else "nr", s, n_trials[curve], seed)
        elif curve in ("wifi-ack", "wifi-data"):
            b = _bler_wifi(curve, s, n_trials[curve], seed)
        else:
            raise ValueError(f"unknown BLER curve {curve!r}")
        return SweepRow(
            dl_sinr_db=s,
            ul_sinr_db=s,
            scheme="-",
            mcs="2" if curve == "lte-pdsch" else "-",
            standard=curve,
            throughput_bps=0.0,
            throughput_ratio_pct=0.0,
            bler=b,
            avg_latency_ms=float("nan"),
            attempts_mean=float("nan"),
            seed=seed,
        )

    cells = [(lambda c=c, s=s: cell(c, s)) for c in curves for s in sweep]
    rows = _sweep(cells, jobs)
    meta = {
        "experiment": "bler",
        "curves": list(curves),
        "trials": {c: n_trials[c] for c in curves},
        "sweep_db": sweep,
        "seed": seed,
        "params": asdict(params),
    }
    return SweepReport(rows=rows, metadata=meta)


# ---------------------------------------------------------------------------
# channel-estimation error curves
# ---------------------------------------------------------------------------

def run_chanest_rmse(
    sweep_db,
    trials: int = 10_000,
    channel_model: str = ch.AWGN,
    seed: int = 0,
    jobs: int = 1,
):
    """Channel-estimation RMSE sqrt(mean |H_hat - H|^2) per SINR point
    for the LTE and 5G feedback channels; every symbol of every trial
    grid contributes one sample. Returns (rows, metadata) where each row
    is (dl_sinr_db, standard, rmse, n_trials, seed)."""
    sweep = [float(s) for s in sweep_db]

    def cell(standard: str, s: float):
        tag = _gamma_tag(s)
        r = rngmod.substream(seed, rngmod.FEEDBACK_FADING, tag)
        sigma2 = ch.noise_var_from_sinr(s)
        bits = r.integers(0, 2, trials)
        if standard == "lte":
            cfg = pucch_lte.LtePucchConfig()
            cells = pucch_lte.encode_format1a(bits, cfg).cells
        else:
            schedule = tuple(r.uniform(0.0, 2.0 * np.pi, N_SYMBOLS))
            cfg = pucch_nr.NrPucchConfig(shift_schedule=schedule)
            cells = pucch_nr.encode_format1(bits, cfg).cells
        if channel_model == ch.RAYLEIGH:
            h = (r.standard_normal((trials, 1, 1)) + 1j * r.standard_normal((trials, 1, 1))) / np.sqrt(2.0)
        else:
            h = np.ones((trials, 1, 1), dtype=np.complex128)
        noise = (r.standard_normal(cells.shape) + 1j * r.standard_normal(cells.shape)) * np.sqrt(sigma2 / 2.0)
        rx = h * cells + noise
        grid = ResourceGrid(rx, cfg.layout)
        est = (
            pucch_lte.estimate_channel_lte(grid, cfg)
            if standard == "lte"
            else pucch_nr.estimate_channel_nr(grid, cfg)
        )
        truth = np.broadcast_to(h[..., 0], est.shape)
        return (s, standard, pucch_nr.channel_est_rmse(est, truth), trials, seed)

    cells = [(lambda st=st, s=s: cell(st, s)) for st in ("lte", "nr") for s in sweep]
    rows = _sweep(cells, jobs)
    meta = {
        "experiment": "chanest-rmse",
        "channel_model": channel_model,
        "trials": trials,
        "sweep_db": sweep,
        "seed": seed,
    }
    return rows, meta
