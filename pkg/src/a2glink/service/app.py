"""Experiment endpoints.

Runs are synchronous: at desk scale a sweep returns within the request.
Every endpoint answers with the result rows plus the full metadata block
the client needs to write a reproducible CSV + sidecar pair.
"""

from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI

from .. import __version__
from .. import channel as ch
from ..codec.rate_match import HarqScheme
from ..sim.drivers import run_asymmetric, run_bler_suite, run_chanest_rmse, run_dl_throughput, run_latency_sweep
from ..sim.params import AsymmetryConfig, LatencyModel, McsConfig, SimParams
from ..sim.report import SweepReport
from . import schemas as sc


def _params(spec: sc.ParamsSpec) -> SimParams:
    return SimParams(
        n_subframes=spec.n_subframes,
        n_harq=spec.n_harq,
        n_tr_max=spec.n_tr_max,
        n_rb_dl=spec.n_rb_dl,
        n_rb_ul=spec.n_rb_ul,
        decoder_iterations=spec.decoder_iterations,
    )


def _channel(spec: sc.ChannelSpec) -> ch.ChannelConfig:
    return ch.ChannelConfig(model=spec.model, doppler_hz=spec.doppler_hz)


def _latency(spec: sc.LatencySpec) -> LatencyModel:
    return LatencyModel(**spec.model_dump())


def _response(report: SweepReport) -> sc.SweepResponse:
    return sc.SweepResponse(rows=[sc.RowModel(**asdict(r)) for r in report.rows], metadata=report.metadata)


def create_app() -> FastAPI:
    app = FastAPI(title="a2glink", version=__version__)

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/v1/sweep", response_model=sc.SweepResponse)
    def sweep(req: sc.SweepRequest):
        report = run_dl_throughput(
            HarqScheme(req.scheme),
            McsConfig.from_index(req.mcs),
            _channel(req.channel),
            req.sinr_db,
            _params(req.params),
            seed=req.seed,
            latency_model=_latency(req.latency),
            jobs=req.jobs,
        )
        return _response(report)

    @app.post("/v1/latency", response_model=sc.SweepResponse)
    def latency(req: sc.LatencyRequest):
        report = run_latency_sweep(
            [HarqScheme(s) for s in req.schemes],
            McsConfig.from_index(req.mcs),
            _channel(req.channel),
            req.sinr_db,
            _params(req.params),
            seed=req.seed,
            latency_model=_latency(req.latency),
            jobs=req.jobs,
        )
        return _response(report)

    @app.post("/v1/asymmetry", response_model=sc.SweepResponse)
    def asymmetry(req: sc.AsymmetryRequest):
        rows = []
        feedback_errors = []
        scheme = HarqScheme(req.scheme)
        mcs = McsConfig.from_index(req.mcs)
        if req.include_perfect:
            base = run_asymmetric(
                AsymmetryConfig(0.0, req.standard, perfect_feedback=True),
                _channel(req.channel),
                req.sinr_db,
                mcs=mcs,
                scheme=scheme,
                params=_params(req.params),
                seed=req.seed,
                jobs=req.jobs,
            )
            for r in base.rows:
                r.standard = "perfect"
            rows.extend(base.rows)
            feedback_errors.append({"offset_db": None, "errors": base.metadata["feedback_errors"]})
        for offset in req.offsets_db:
            rep = run_asymmetric(
                AsymmetryConfig(offset, req.standard),
                _channel(req.channel),
                req.sinr_db,
                mcs=mcs,
                scheme=scheme,
                params=_params(req.params),
                seed=req.seed,
                jobs=req.jobs,
            )
            rows.extend(rep.rows)
            feedback_errors.append({"offset_db": offset, "errors": rep.metadata["feedback_errors"]})
        meta = {
            "experiment": "asymmetry",
            "standard": req.standard,
            "offsets_db": req.offsets_db,
            "include_perfect": req.include_perfect,
            "scheme": req.scheme,
            "mcs": req.mcs,
            "channel": req.channel.model_dump(),
            "sweep_db": req.sinr_db,
            "seed": req.seed,
            "params": req.params.model_dump(),
            "feedback_errors": feedback_errors,
        }
        return _response(SweepReport(rows=rows, metadata=meta))

    @app.post("/v1/bler", response_model=sc.SweepResponse)
    def bler(req: sc.BlerRequest):
        report = run_bler_suite(
            req.sinr_db,
            curves=tuple(req.curves),
            trials=req.trials,
            params=_params(req.params),
            seed=req.seed,
            jobs=req.jobs,
        )
        return _response(report)

    @app.post("/v1/chanest-rmse", response_model=sc.RmseResponse)
    def chanest(req: sc.RmseRequest):
        rows, meta = run_chanest_rmse(
            req.sinr_db, trials=req.trials, channel_model=req.channel_model, seed=req.seed, jobs=req.jobs
        )
        return sc.RmseResponse(
            rows=[
                sc.RmseRow(dl_sinr_db=r[0], standard=r[1], rmse=r[2], n_trials=r[3], seed=r[4])
                for r in rows
            ],
            metadata=meta,
        )

    return app
