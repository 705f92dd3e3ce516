"""Acceptance suite: one test per criterion, each printed as PASS/FAIL.

Criteria run at their stated sizes and tolerances. Monte-Carlo trial
counts can be scaled down for CI smoke runs with A2GLINK_ACCEPT_SCALE
(default 1.0 = full size); tolerances never change. Criteria whose
brackets are not attainable under this implementation's faithful
detectors are analysed in the decisions ledger and left to fail.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from a2glink import channel as ch
from a2glink.codec import CircularSoftBuffer, HarqScheme, RateMatchSpec, decode, deposit, encode
from a2glink.harq import HarqPool, step_type1_cc
from a2glink.phy.modulation import qpsk_modulate, qpsk_soft_bits
from a2glink.pucch.lte import LtePucchConfig, decode_format1a_batch, encode_format1a
from a2glink.pucch.nr import NrPucchConfig, detect_decode_format1_batch, encode_format1
from a2glink.rng import NOISE, PAYLOAD, substream
from a2glink.sim import (
    AsymmetryConfig,
    LatencyModel,
    McsConfig,
    SimParams,
    average_gap,
    burst_latency,
    harq_latency,
    run_asymmetric,
    run_chanest_rmse,
    run_dl_throughput,
)
from a2glink.sim.pdsch import PdschLink
from a2glink.wifi import build_ack_frame, build_data_frame, wifi_decode, wifi_encode
from a2glink.wifi.phy import frame_bits, viterbi_decode_batch

SCALE = float(os.environ.get("A2GLINK_ACCEPT_SCALE", "1.0"))
JOBS = 2
SEED = 20240811
AWGN = ch.ChannelConfig(model=ch.AWGN)


def _n(nominal: int, floor: int = 200) -> int:
    return max(floor, int(round(nominal * SCALE)))


def _report(criterion: str, ok: bool, detail: str):
    print(f"\nACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"{criterion}: {detail}"


# ---------------------------------------------------------------------------
# 1. latency exactness
# ---------------------------------------------------------------------------


def test_criterion_1_latency_exactness():
    m = LatencyModel()
    harq = [harq_latency(k, m) for k in range(4)]
    burst = burst_latency(m)
    ok = harq == [11.0, 19.0, 27.0, 35.0] and burst == 10.0
    _report("1 latency", ok, f"harq k=0..3 {harq} ms, burst {burst} ms (tolerance 0)")


# ---------------------------------------------------------------------------
# 2. noiseless roundtrips
# ---------------------------------------------------------------------------


def test_criterion_2_noiseless_roundtrips():
    trials = _n(1000, 50)
    params = SimParams()
    mcs = McsConfig.from_index(2)
    link = PdschLink(mcs, params, substream(SEED, PAYLOAD, 2))
    failures = 0
    for i in range(trials):
        tb = link.new_transport_block(i)
        rv = i % 4
        llrs = qpsk_soft_bits(link.transmit(tb, rv), 1.0)
        buf = link.make_buffer()
        link.deposit(buf, llrs, rv)
        bits, okc = link.decode(buf)
        failures += 0 if (okc and np.array_equal(bits, tb)) else 1
    pdsch_ok = failures == 0

    rng = np.random.default_rng(SEED)
    bits = rng.integers(0, 2, trials)
    lcfg = LtePucchConfig()
    lte_ok = np.array_equal(decode_format1a_batch(encode_format1a(bits, lcfg).cells, lcfg), bits)
    ncfg = NrPucchConfig(shift_schedule=tuple(rng.uniform(0, 2 * np.pi, 14)))
    nr_ok = np.array_equal(detect_decode_format1_batch(encode_format1(bits, ncfg).cells, ncfg), bits)

    wifi_fail = 0
    for i in range(trials):
        frame = build_ack_frame() if i % 2 else build_data_frame(int(rng.integers(20, 200)))
        out, okf = wifi_decode(qpsk_soft_bits(wifi_encode(frame), 1.0))
        wifi_fail += 0 if (okf and out.octets == frame.octets) else 1
    wifi_ok = wifi_fail == 0

    ok = pdsch_ok and lte_ok and nr_ok and wifi_ok
    _report(
        "2 noiseless roundtrips",
        ok,
        f"{trials} trials each: pdsch fails={failures}, lte={bool(lte_ok)}, nr={bool(nr_ok)}, wifi fails={wifi_fail}",
    )


# ---------------------------------------------------------------------------
# 3. chase-combining identity
# ---------------------------------------------------------------------------


class _ReplayChannel:
    def __init__(self, sinr_db, seed):
        self.sigma2 = ch.noise_var_from_sinr(sinr_db)
        self.seed = seed

    def propagate(self, symbols):
        r = np.random.default_rng(self.seed)
        n = (r.standard_normal(symbols.size) + 1j * r.standard_normal(symbols.size)) * np.sqrt(self.sigma2 / 2)
        return symbols + n, 1.0 + 0.0j, self.sigma2


def test_criterion_3_cc_identity():
    params = SimParams(n_rb_dl=2)
    link = PdschLink(McsConfig.from_index(2), params, substream(SEED, PAYLOAD, 3))
    chan = _ReplayChannel(-20.0, seed=303)
    ref_link = PdschLink(McsConfig.from_index(2), params, substream(SEED, PAYLOAD, 3))
    tb = ref_link.new_transport_block(0)
    rx, h, nv = chan.propagate(ref_link.transmit(tb, 0))
    first_buf = ref_link.make_buffer()
    ref_link.deposit(first_buf, ref_link.demodulate(rx, h, nv), 0)
    first = first_buf.combined()

    pool = HarqPool.create(1)
    exact = {}
    buf = None
    for sf in range(4):
        step_type1_cc(pool, link, chan, sf)
        live = pool.processes[0].soft_buffer
        buf = live if live is not None else buf
        k = sf + 1
        if k >= 2:
            exact[k] = bool(np.array_equal(buf.combined(), k * first))
    ok = all(exact.values()) and set(exact) == {2, 3, 4}
    _report("3 CC identity", ok, f"buffer == N_tr x first-attempt LLRs exactly: {exact}")


# ---------------------------------------------------------------------------
# 4. chase-combining gain: 6.02 dB +- 1.0 dB at the 1e-2 crossing
# ---------------------------------------------------------------------------


def _cc_bler_point(sinr_db: float, n_blocks: int, n_tx: int, seed_tag: int) -> float:
    params = SimParams(n_rb_dl=2)
    mcs = McsConfig.from_index(2)
    link = PdschLink(mcs, params, substream(SEED, PAYLOAD, 4, seed_tag))
    sigma2 = ch.noise_var_from_sinr(sinr_db)
    rng = substream(SEED, NOISE, 4, seed_tag)
    spec = RateMatchSpec(g=link.g, tb_size=link.tb_size, rv=0)
    fails = 0
    for i in range(n_blocks):
        tb = link.new_transport_block(i)
        sym = qpsk_modulate(encode(tb, spec, link.codec_cfg))
        buf = CircularSoftBuffer(spec)
        for _ in range(n_tx):
            noise = (rng.standard_normal(sym.size) + 1j * rng.standard_normal(sym.size)) * np.sqrt(sigma2 / 2)
            deposit(buf, qpsk_soft_bits(sym + noise, sigma2), spec)
        _, okc = decode(buf, spec, link.codec_cfg)
        fails += 0 if okc else 1
    return fails / n_blocks


def _crossing(points: list[tuple[float, float]], target: float, floor: float) -> float:
    """SINR where log10(BLER) crosses log10(target), linear interpolation.
    Zero estimates are floored at half an error count so steep curves
    still bracket."""
    pts = sorted((x, max(y, floor)) for x, y in points)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if y0 >= target >= y1:
            l0, l1, lt = math.log10(y0), math.log10(y1), math.log10(target)
            if l0 == l1:
                return (x0 + x1) / 2
            return x0 + (x1 - x0) * (l0 - lt) / (l0 - l1)
    raise AssertionError(f"no {target} crossing bracketed by {pts}")


def test_criterion_4_chase_combining_gain():
    n_full = _n(100_000, 2000)
    n_coarse = _n(2000, 500)
    # coarse single-transmission scan to locate the waterfall
    coarse = [(s, _cc_bler_point(s, n_coarse, 1, 40 + i)) for i, s in enumerate(np.arange(-1.0, 4.1, 1.0))]
    est1 = _crossing(coarse, 1e-2, 0.5 / n_coarse)

    def refine(center: float, n_tx: int, tag: int):
        grid = [center - 0.5, center, center + 0.5]
        with ThreadPoolExecutor(max_workers=JOBS) as pool:
            blers = list(pool.map(lambda a: _cc_bler_point(a[1], n_full, n_tx, tag + a[0]), enumerate(grid)))
        pts = list(zip(grid, blers))
        # extend if the window missed the crossing
        for _ in range(4):
            lo = min(pts)[0]
            hi = max(pts)[0]
            if min(b for _, b in pts) > 1e-2:
                pts.append((hi + 0.5, _cc_bler_point(hi + 0.5, n_full, n_tx, tag + 90)))
            elif max(b for _, b in pts) < 1e-2:
                pts.append((lo - 0.5, _cc_bler_point(lo - 0.5, n_full, n_tx, tag + 91)))
            else:
                break
        return pts

    pts1 = refine(est1, 1, 400)
    pts4 = refine(est1 - 10 * math.log10(4.0), 4, 500)
    c1 = _crossing(pts1, 1e-2, 0.5 / n_full)
    c4 = _crossing(pts4, 1e-2, 0.5 / n_full)
    shift = c1 - c4
    ok = abs(shift - 10 * math.log10(4.0)) <= 1.0
    _report(
        "4 chase gain",
        ok,
        f"1-tx crossing {c1:.2f} dB, forced-4 crossing {c4:.2f} dB, shift {shift:.2f} dB "
        f"(target 6.02 +- 1.0, {n_full} blocks/point)",
    )


# ---------------------------------------------------------------------------
# 5 & 6. scheme ordering and burst ceiling
# ---------------------------------------------------------------------------

_SWEEP_CACHE: dict = {}


def _scheme_sweeps():
    if _SWEEP_CACHE:
        return _SWEEP_CACHE
    params = SimParams(n_subframes=_n(1000, 100), n_rb_dl=6)
    grid = list(np.arange(-8.0, 8.1, 1.0))
    for mcs_i in (1, 2, 3):
        for scheme in HarqScheme:
            rep = run_dl_throughput(
                scheme, McsConfig.from_index(mcs_i), AWGN, grid, params, seed=SEED, jobs=JOBS
            )
            _SWEEP_CACHE[(mcs_i, scheme)] = rep
    _SWEEP_CACHE["n_sf"] = params.n_subframes
    return _SWEEP_CACHE


def _ci_halfwidth(p1: float, p2: float, n_blocks: float) -> float:
    """95 % half-width (in %p) for a ratio difference, conservative
    unpaired binomial approximation at block granularity."""
    v = p1 * (1 - p1) + p2 * (1 - p2)
    return 1.96 * math.sqrt(max(v, 1e-12) / max(n_blocks, 1)) * 100.0


def test_criterion_5_scheme_ordering():
    sweeps = _scheme_sweeps()
    n_sf = sweeps["n_sf"]
    problems = []
    for mcs_i in (2, 3):
        ir = sweeps[(mcs_i, HarqScheme.TYPE3_INCREMENTAL_REDUNDANCY)].rows
        cc = sweeps[(mcs_i, HarqScheme.TYPE1_CHASE_COMBINING)].rows
        nc = sweeps[(mcs_i, HarqScheme.TYPE1_NO_COMBINING)].rows
        for r_ir, r_cc, r_nc in zip(ir, cc, nc):
            for hi, lo, name in ((r_ir, r_cc, "IR>=CC"), (r_cc, r_nc, "CC>=NC")):
                if not (5.0 < lo.throughput_ratio_pct < 95.0 or 5.0 < hi.throughput_ratio_pct < 95.0):
                    continue
                slack = _ci_halfwidth(
                    hi.throughput_ratio_pct / 100, lo.throughput_ratio_pct / 100, n_sf / 2
                )
                if hi.throughput_ratio_pct < lo.throughput_ratio_pct - slack:
                    problems.append(
                        f"MCS{mcs_i} {name} at {r_ir.dl_sinr_db} dB: "
                        f"{hi.throughput_ratio_pct:.1f} < {lo.throughput_ratio_pct:.1f} (slack {slack:.1f})"
                    )
    # MCS1: incremental redundancy and chase combining closely match
    ir1 = sweeps[(1, HarqScheme.TYPE3_INCREMENTAL_REDUNDANCY)].rows
    cc1 = sweeps[(1, HarqScheme.TYPE1_CHASE_COMBINING)].rows
    worst_mcs1 = max(abs(a.throughput_ratio_pct - b.throughput_ratio_pct) for a, b in zip(ir1, cc1))
    if worst_mcs1 > 5.0:
        problems.append(f"MCS1 |IR-CC| = {worst_mcs1:.2f} %p > 5")
    # burst exceeds chase combining somewhere at low SINR (MCS2 and MCS3)
    burst_wins = {}
    for mcs_i in (2, 3):
        burst = sweeps[(mcs_i, HarqScheme.BURST_CHASE_COMBINING)].rows
        cc = sweeps[(mcs_i, HarqScheme.TYPE1_CHASE_COMBINING)].rows
        wins = [
            r_b.dl_sinr_db
            for r_b, r_c in zip(burst, cc)
            if r_c.throughput_ratio_pct < 50.0 and r_b.throughput_ratio_pct > r_c.throughput_ratio_pct
        ]
        burst_wins[mcs_i] = wins
        if not wins:
            problems.append(f"MCS{mcs_i}: burst never exceeds CC at low SINR")
    ok = not problems
    _report(
        "5 scheme ordering",
        ok,
        f"violations: {problems or 'none'}; MCS1 worst |IR-CC| {worst_mcs1:.2f} %p; "
        f"burst-over-CC points {burst_wins}",
    )


def test_criterion_6_burst_ceiling():
    sweeps = _scheme_sweeps()
    rows = sweeps[(2, HarqScheme.BURST_CHASE_COMBINING)].rows
    bounded = all(r.throughput_ratio_pct <= 25.0 + 1e-9 for r in rows)
    top = rows[-1].throughput_ratio_pct
    at_ceiling = abs(top - 25.0) <= 0.5
    lat = {r.avg_latency_ms for r in rows if not math.isnan(r.avg_latency_ms)}
    constant_latency = lat == {10.0}
    ok = bounded and at_ceiling and constant_latency
    _report(
        "6 burst ceiling",
        ok,
        f"max ratio {max(r.throughput_ratio_pct for r in rows):.2f} %, top-SINR ratio {top:.2f} % "
        f"(25 +- 0.5), latency values {sorted(lat)}",
    )


# ---------------------------------------------------------------------------
# 7. feedback-channel ordering at BLER 1e-3
# ---------------------------------------------------------------------------


def _pucch_bler_point(standard: str, sinr_db: float, trials: int) -> float:
    r = substream(SEED, NOISE, 7, int(round(sinr_db * 100)))
    sigma2 = ch.noise_var_from_sinr(sinr_db)
    errors = 0
    done = 0
    while done < trials:
        t = min(20000, trials - done)
        bits = r.integers(0, 2, t)
        if standard == "lte":
            cfg = LtePucchConfig()
            cells = encode_format1a(bits, cfg).cells
        else:
            cfg = NrPucchConfig(shift_schedule=tuple(r.uniform(0, 2 * np.pi, 14)))
            cells = encode_format1(bits, cfg).cells
        noise = (r.standard_normal(cells.shape) + 1j * r.standard_normal(cells.shape)) * np.sqrt(sigma2 / 2)
        codes = (
            decode_format1a_batch(cells + noise, cfg)
            if standard == "lte"
            else detect_decode_format1_batch(cells + noise, cfg)
        )
        errors += int(np.sum(codes != bits))
        done += t
    return errors / trials


def _wifi_ack_bler_point(sinr_db: float, trials: int) -> float:
    frame = build_ack_frame()
    sym = wifi_encode(frame)
    txb = frame_bits(frame)
    sigma2 = ch.noise_var_from_sinr(sinr_db)
    r = substream(SEED, NOISE, 77, int(round(sinr_db * 100)))
    errors = 0
    done = 0
    while done < trials:
        t = min(5000, trials - done)
        noise = (r.standard_normal((t, sym.size)) + 1j * r.standard_normal((t, sym.size))) * np.sqrt(sigma2 / 2)
        llrs = qpsk_soft_bits((sym + noise).ravel(), sigma2).reshape(t, -1)
        errors += int(np.sum(np.any(viterbi_decode_batch(llrs) != txb, axis=1)))
        done += t
    return errors / trials


def _find_crossing(fn, lo: float, hi: float, trials: int) -> float:
    n_coarse = max(2000, trials // 20)
    coarse = [(s, fn(s, n_coarse)) for s in np.arange(lo, hi + 0.5, 1.0)]
    est = _crossing(coarse, 1e-3, 0.5 / n_coarse)
    pts = [(s, fn(s, trials)) for s in (est - 0.5, est, est + 0.5)]
    for _ in range(4):
        if min(b for _, b in pts) > 1e-3:
            x = max(pts)[0] + 0.5
            pts.append((x, fn(x, trials)))
        elif max(b for _, b in pts) < 1e-3:
            x = min(pts)[0] - 0.5
            pts.append((x, fn(x, trials)))
        else:
            break
    return _crossing(pts, 1e-3, 0.5 / trials)


def test_criterion_7_feedback_channel_ordering():
    trials = _n(100_000, 5000)
    nr = _find_crossing(lambda s, n: _pucch_bler_point("nr", s, n), -9.0, -1.0, trials)
    lte = _find_crossing(lambda s, n: _pucch_bler_point("lte", s, n), -6.0, 3.0, trials)
    wifi = _find_crossing(_wifi_ack_bler_point, 1.0, 7.0, trials)
    gap_nr_lte = lte - nr
    gap_lte_wifi = wifi - lte
    ordered = nr < lte < wifi
    ok = ordered and abs(gap_nr_lte - 3.9) <= 1.5 and gap_lte_wifi >= 4.0
    _report(
        "7 feedback ordering",
        ok,
        f"BLER 1e-3 at: 5G {nr:.2f} dB < LTE {lte:.2f} dB < Wi-Fi ACK {wifi:.2f} dB; "
        f"5G-LTE gap {gap_nr_lte:.2f} dB (3.9 +- 1.5), LTE-WiFi gap {gap_lte_wifi:.2f} dB (>= 4)",
    )


# ---------------------------------------------------------------------------
# 8. channel-estimation crossover
# ---------------------------------------------------------------------------


def test_criterion_8_chanest_crossover():
    trials = _n(10_000, 500)
    low_grid = list(np.arange(-20.0, -1.9, 2.0))
    high_grid = [6.0, 8.0, 10.0]
    rows, _ = run_chanest_rmse(low_grid + high_grid, trials=trials, seed=SEED, jobs=JOBS)
    table = {(r[0], r[1]): r[2] for r in rows}
    low_ok = all(table[(s, "nr")] < table[(s, "lte")] for s in low_grid)
    reversal_ok = all(table[(s, "lte")] < table[(s, "nr")] for s in high_grid)
    ok = low_ok and reversal_ok
    ratio_low = [round(table[(s, "lte")] / table[(s, "nr")], 3) for s in low_grid]
    ratio_high = [round(table[(s, "lte")] / table[(s, "nr")], 3) for s in high_grid]
    _report(
        "8 chanest crossover",
        ok,
        f"5G<LTE on [-20,-2]: {low_ok} (LTE/5G ratios {ratio_low}); "
        f"reversal at >=+6 dB: {reversal_ok} (ratios {ratio_high}; both estimators are linear in the "
        f"noise so the ratio is SINR-invariant — see ledger)",
    )


# ---------------------------------------------------------------------------
# 9. asymmetry degradation brackets
# ---------------------------------------------------------------------------


def test_criterion_9_asymmetry_degradation():
    params = SimParams(n_subframes=_n(500, 50))
    grid = list(np.arange(-5.0, 10.1, 1.0))
    baseline = run_asymmetric(
        AsymmetryConfig(0.0, "lte", perfect_feedback=True), AWGN, grid, params=params, seed=SEED, jobs=JOBS
    )
    gaps = {}
    for standard in ("lte", "nr"):
        for off in (0.0, 5.0, 10.0, 15.0):
            rep = run_asymmetric(AsymmetryConfig(off, standard), AWGN, grid, params=params, seed=SEED, jobs=JOBS)
            gaps[(standard, off)] = average_gap(rep, baseline, -5.0, 10.0)
    problems = []
    for standard in ("lte", "nr"):
        seq = [gaps[(standard, o)] for o in (0.0, 5.0, 10.0, 15.0)]
        if not all(b > a for a, b in zip(seq, seq[1:])):
            problems.append(f"{standard} gaps not strictly increasing: {[round(g, 2) for g in seq]}")
        if gaps[(standard, 0.0)] > 2.0:
            problems.append(f"{standard} offset-0 gap {gaps[(standard, 0.0)]:.2f} > 2 %p")
    if gaps[("lte", 15.0)] < 30.0:
        problems.append(f"LTE offset-15 gap {gaps[('lte', 15.0)]:.2f} < 30 %p")
    if not gaps[("nr", 15.0)] < gaps[("lte", 15.0)]:
        problems.append(
            f"NR offset-15 gap {gaps[('nr', 15.0)]:.2f} not below LTE {gaps[('lte', 15.0)]:.2f}"
        )
    ok = not problems
    summary = {f"{s}/{int(o)}dB": round(g, 2) for (s, o), g in gaps.items()}
    _report("9 asymmetry degradation", ok, f"gaps %p {summary}; violations: {problems or 'none'}")


# ---------------------------------------------------------------------------
# 10. determinism
# ---------------------------------------------------------------------------


def test_criterion_10_determinism(tmp_path):
    from a2glink.cli import parse_and_dispatch

    args = [
        "sweep", "--scheme", "type3-ir", "--mcs", "2", "--channel", "rayleigh",
        "--sinr", "0:5:10", "--seed", "13", "--n-subframes", "50", "--jobs", "2", "--out",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert parse_and_dispatch(args + [str(a)]) == 0
    assert parse_and_dispatch(args + [str(b)]) == 0
    ok = a.read_bytes() == b.read_bytes()
    _report("10 determinism", ok, f"identical config+seed rerun byte-identical: {ok}")
