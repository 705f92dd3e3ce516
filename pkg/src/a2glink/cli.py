"""Command-line client for the experiment service.

The CLI is a thin HTTP client: it assembles a request from defaults, an
optional JSON config file, ``A2GLINK_*`` environment overrides and
command-line flags (later sources win), posts it to the service, and
writes the returned rows as CSV plus a ``.meta.json`` sidecar. Without
``--server`` the service runs in-process, so no network is involved.

Exit codes: 0 success, 2 configuration/usage error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import httpx

from .service.app import create_app
from .sim.report import SweepReport, SweepRow, write_csv, write_rmse_csv

EXPERIMENTS = ("sweep", "asymmetry", "bler", "latency", "chanest-rmse")
ENV_PREFIX = "A2GLINK_"
_ENV_KEYS = (
    "scheme",
    "mcs",
    "channel",
    "sinr",
    "offset",
    "standard",
    "seed",
    "jobs",
    "trials",
    "doppler",
    "n_subframes",
    "server",
)


class ConfigError(Exception):
    pass


def parse_sinr_range(spec: str) -> list[float]:
    """Parse 'lo:step:hi' (inclusive) or a comma list of values."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ConfigError(f"SINR range must be lo:step:hi, got {spec!r}")
        try:
            lo, step, hi = (float(p) for p in parts)
        except ValueError as e:
            raise ConfigError(f"bad SINR range {spec!r}") from e
        if step <= 0 or hi < lo:
            raise ConfigError(f"bad SINR range {spec!r}")
        out = []
        k = 0
        while True:
            v = lo + k * step
            if v > hi + 1e-9:
                break
            out.append(round(v, 9))
            k += 1
        return out
    try:
        return [float(v) for v in spec.split(",") if v.strip()]
    except ValueError as e:
        raise ConfigError(f"bad SINR list {spec!r}") from e


def _parse_offsets(spec: str) -> list[float]:
    try:
        return [float(v) for v in str(spec).split(",") if str(v).strip()]
    except ValueError as e:
        raise ConfigError(f"bad offset list {spec!r}") from e


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="a2glink", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="experiment")

    def common(sp):
        sp.add_argument("--sinr", help="SINR grid, lo:step:hi inclusive or comma list (dB)")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--out", help="output CSV path (writes <out> and <out>.meta.json)")
        sp.add_argument("--config", help="JSON config file; flags override its values")
        sp.add_argument("--jobs", type=int, help="parallel sweep cells")
        sp.add_argument("--force", action="store_true", help="overwrite existing output")
        sp.add_argument("--server", help="remote service URL (default: run in-process)")
        sp.add_argument("--n-subframes", dest="n_subframes", type=int)
        sp.add_argument("--channel", choices=("awgn", "rayleigh"))
        sp.add_argument("--doppler", type=float, help="Doppler in Hz for the fading model")

    sp = sub.add_parser("sweep", help="DL throughput sweep with perfect feedback")
    common(sp)
    sp.add_argument("--scheme", choices=("type1-nc", "type1-cc", "type3-ir", "burst-cc"))
    sp.add_argument("--mcs", type=int)

    sp = sub.add_parser("asymmetry", help="closed-loop throughput with a worse UL")
    common(sp)
    sp.add_argument("--scheme", choices=("type1-nc", "type1-cc", "type3-ir", "burst-cc"))
    sp.add_argument("--mcs", type=int)
    sp.add_argument("--standard", choices=("lte", "nr"))
    sp.add_argument("--offset", help="comma list of UL SINR deficits in dB")

    sp = sub.add_parser("bler", help="standalone BLER curves over AWGN")
    common(sp)
    sp.add_argument("--curves", help="comma list from: lte-pdsch,lte-pucch,nr-pucch,wifi-data,wifi-ack")
    sp.add_argument("--trials", type=int, help="Monte-Carlo trials per point (all curves)")

    sp = sub.add_parser("latency", help="average HARQ latency per scheme")
    common(sp)
    sp.add_argument("--mcs", type=int)
    sp.add_argument("--schemes", help="comma list of schemes (default: all four)")

    sp = sub.add_parser("chanest-rmse", help="channel-estimation RMSE, LTE vs 5G")
    common(sp)
    sp.add_argument("--trials", type=int)

    sp = sub.add_parser("serve", help="run the experiment service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    return p


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as f:
            cfg = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config file: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file is not valid JSON: {e}") from e
    if not isinstance(cfg, dict):
        raise ConfigError("config file must hold a JSON object")
    return cfg


def _env_overrides() -> dict:
    out = {}
    for key in _ENV_KEYS:
        val = os.environ.get(ENV_PREFIX + key.upper())
        if val is not None:
            out[key] = val
    return out


def _merged(args: argparse.Namespace) -> dict:
    cfg = _load_config(getattr(args, "config", None))
    cfg.update(_env_overrides())
    for key, val in vars(args).items():
        if key in ("experiment", "config") or val in (None, False):
            continue
        cfg[key] = val
    return cfg


def _int(cfg: dict, key: str, default: int) -> int:
    try:
        return int(cfg.get(key, default))
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{key} must be an integer") from e


def _request_body(experiment: str, cfg: dict) -> dict:
    sinr = cfg.get("sinr")
    if sinr is None:
        raise ConfigError("--sinr is required (lo:step:hi or comma list)")
    grid = parse_sinr_range(sinr) if isinstance(sinr, str) else [float(v) for v in sinr]
    channel = {"model": cfg.get("channel", "awgn"), "doppler_hz": float(cfg.get("doppler", 5.0))}
    params = {}
    if "n_subframes" in cfg:
        params["n_subframes"] = _int(cfg, "n_subframes", 500)
    body: dict = {
        "sinr_db": grid,
        "seed": _int(cfg, "seed", 0),
        "jobs": _int(cfg, "jobs", 1),
        "channel": channel,
        "params": params,
    }
    if experiment == "sweep":
        body["scheme"] = cfg.get("scheme", "type3-ir")
        body["mcs"] = _int(cfg, "mcs", 2)
    elif experiment == "asymmetry":
        body["scheme"] = cfg.get("scheme", "type3-ir")
        body["mcs"] = _int(cfg, "mcs", 2)
        body["standard"] = cfg.get("standard", "lte")
        offsets = cfg.get("offset", "0,5,10,15")
        body["offsets_db"] = _parse_offsets(offsets) if isinstance(offsets, str) else [float(v) for v in offsets]
    elif experiment == "bler":
        if "curves" in cfg:
            curves = cfg["curves"]
            body["curves"] = curves.split(",") if isinstance(curves, str) else list(curves)
        if "trials" in cfg:
            body["trials"] = _int(cfg, "trials", 0)
    elif experiment == "latency":
        body["mcs"] = _int(cfg, "mcs", 2)
        if "schemes" in cfg:
            schemes = cfg["schemes"]
            body["schemes"] = schemes.split(",") if isinstance(schemes, str) else list(schemes)
    elif experiment == "chanest-rmse":
        body = {
            "sinr_db": grid,
            "seed": _int(cfg, "seed", 0),
            "jobs": _int(cfg, "jobs", 1),
            "trials": _int(cfg, "trials", 10_000),
            "channel_model": cfg.get("channel", "awgn"),
        }
    return body


def _post(server: str | None, path: str, body: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            return client.post(path, json=body)

    async def _go() -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://a2glink", timeout=None) as client:
            return await client.post(path, json=body)

    import asyncio

    return asyncio.run(_go())


def _write_output(experiment: str, payload: dict, out: str, force: bool) -> None:
    if experiment == "chanest-rmse":
        rows = [(r["dl_sinr_db"], r["standard"], r["rmse"], r["n_trials"], r["seed"]) for r in payload["rows"]]
        write_rmse_csv(rows, payload["metadata"], out, force=force)
        return
    rows = []
    for r in payload["rows"]:
        hist = {int(k): int(v) for k, v in (r.get("attempts_histogram") or {}).items()}
        r = dict(r)
        r["attempts_histogram"] = hist
        for key in ("avg_latency_ms", "attempts_mean"):
            if r.get(key) is None:  # JSON transport nulls NaN
                r[key] = float("nan")
        rows.append(SweepRow(**r))
    write_csv(SweepReport(rows=rows, metadata=payload["metadata"]), out, force=force)


def _join_dash_values(argv: list[str]) -> list[str]:
    """Rewrite ``--sinr -10:1:15`` to ``--sinr=-10:1:15`` so argparse does
    not read the leading dash as an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--sinr", "--offset") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def parse_and_dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_dash_values(list(sys.argv[1:] if argv is None else argv)))
    if args.experiment is None:
        parser.print_usage(sys.stderr)
        return 2
    if args.experiment == "serve":
        import uvicorn

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0
    try:
        cfg = _merged(args)
        out = cfg.get("out")
        if not out:
            raise ConfigError("--out is required")
        force = bool(cfg.get("force", False))
        for path in (out, os.path.splitext(out)[0] + ".meta.json"):
            if os.path.exists(path) and not force:
                raise ConfigError(f"refusing to overwrite {path} (use --force)")
        body = _request_body(args.experiment, cfg)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    try:
        resp = _post(cfg.get("server"), f"/v1/{args.experiment}", body)
        if resp.status_code == 422:
            print(f"error: invalid configuration: {resp.text}", file=sys.stderr)
            return 2
        resp.raise_for_status()
        _write_output(args.experiment, resp.json(), out, force)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileExistsError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001 - surface anything else as a runtime failure
        print(f"runtime error: {e}", file=sys.stderr)
        return 1
    print(out)
    return 0


def main() -> None:
    sys.exit(parse_and_dispatch())


if __name__ == "__main__":
    main()
