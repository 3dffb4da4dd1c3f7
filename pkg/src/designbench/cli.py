"""Command-line entry points: batch harness, one-shot proposer, log
analysis, the API server, and a thin HTTP client for live sessions."""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click

from .analysis import session_report
from .domain import DesignParams
from .errors import CorruptLogError, DesignbenchError
from .evaluation import evaluation_from_means
from .harness import run_simulation
from .mobo import MoboConfig, propose_next
from .oracle import StrategyConfig
from .session import canonical_json, replay

OBSERVATION_COLUMNS = [
    "design.D",
    "design.k",
    "design.G",
    "design.A",
    "mean_time_ms",
    "mean_error_cm",
]


@click.group()
def main():
    """Design optimization workbench for the Go-Go 3D-touch technique."""


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read config {path}: {exc}")


@main.command()
@click.option("--sessions", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--modes",
    type=click.Choice(["both", "optimizer", "baselines"]),
    default="both",
    show_default=True,
)
@click.option(
    "--baseline",
    type=click.Choice(["random", "fixated"]),
    default="fixated",
    show_default=True,
)
@click.option("--out", "out_dir", type=click.Path(), required=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="JSON file with optional 'strategy' and 'mobo' overrides.")
def simulate(sessions, seed, modes, baseline, out_dir, config_path):
    """Run seeded synthetic sessions and write logs plus summary files."""
    if sessions < 1:
        raise click.UsageError("--sessions must be >= 1")
    config = _load_config(config_path)
    strategy_overrides = config.get("strategy", {})
    mobo_overrides = config.get("mobo", {})
    if "kind" not in strategy_overrides:
        strategy_overrides = {
            "kind": "random_explorer" if baseline == "random" else "fixated_hill_climber",
            **strategy_overrides,
        }
    try:
        strategy = StrategyConfig(**strategy_overrides)
        result = run_simulation(
            sessions=sessions,
            seed=seed,
            modes=modes,
            out_dir=out_dir,
            strategy=strategy,
            n_init=int(mobo_overrides.get("n_init", 10)),
            n_total=int(mobo_overrides.get("n_total", 40)),
        )
    except DesignbenchError as exc:
        raise click.UsageError(str(exc))
    except OSError as exc:
        click.echo(f"IO failure: {exc}", err=True)
        sys.exit(1)
    click.echo(f"wrote {len(result['rows'])} session rows to {out_dir}/summary.csv")


@main.command()
@click.option("--observations", type=click.Path(exists=True), required=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--seed", type=int, default=None)
def propose(observations, config_path, seed):
    """Print the next proposed design for a CSV of past observations."""
    config = _load_config(config_path)
    cfg_fields = config.get("mobo", config)
    if seed is not None:
        cfg_fields = {**cfg_fields, "seed": seed}
    try:
        cfg = MoboConfig.from_dict(cfg_fields)
    except (TypeError, DesignbenchError) as exc:
        raise click.UsageError(f"bad config: {exc}")

    history = []
    with open(observations, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is not None:
            missing = [c for c in OBSERVATION_COLUMNS if c not in reader.fieldnames]
            if missing:
                raise click.UsageError(f"observations CSV missing columns: {missing}")
            for lineno, row in enumerate(reader, start=2):
                try:
                    design = DesignParams(
                        D=float(row["design.D"]),
                        k=float(row["design.k"]),
                        G=float(row["design.G"]),
                        A=float(row["design.A"]),
                    )
                    history.append(
                        evaluation_from_means(
                            design,
                            float(row["mean_time_ms"]),
                            float(row["mean_error_cm"]),
                        )
                    )
                except (TypeError, ValueError, DesignbenchError) as exc:
                    raise click.UsageError(f"observations row {lineno}: {exc}")
    try:
        design, tag = propose_next(history, cfg)
    except DesignbenchError as exc:
        raise click.UsageError(str(exc))
    click.echo(canonical_json({"design": design.to_dict(), "tag": tag}))


@main.command()
@click.option("--log", "log_path", type=click.Path(exists=True), required=True)
@click.option("--m", "m_list", default="2,3", show_default=True)
def analyze(log_path, m_list):
    """Replay a session log and print its exploration report as JSON."""
    try:
        m_values = [int(v) for v in m_list.split(",") if v.strip()]
    except ValueError:
        raise click.UsageError(f"bad --m list {m_list!r}")
    try:
        state = replay(Path(log_path).read_text(encoding="utf-8"))
        report = session_report(state, m_values=m_values)
    except CorruptLogError as exc:
        click.echo(f"corrupt log: {exc}", err=True)
        sys.exit(1)
    except DesignbenchError as exc:
        raise click.UsageError(str(exc))
    click.echo(canonical_json(report))


@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data", "data_dir", type=click.Path(), required=True)
def serve(port, host, data_dir):
    """Run the session HTTP API."""
    import uvicorn

    from .service import create_app

    try:
        uvicorn.run(create_app(data_dir), host=host, port=port)
    except OSError as exc:
        click.echo(f"cannot bind {host}:{port}: {exc}", err=True)
        sys.exit(1)


@main.group()
@click.option("--base-url", default="http://127.0.0.1:8000", show_default=True)
@click.pass_context
def client(ctx, base_url):
    """Thin HTTP client for a running session service."""
    ctx.obj = base_url.rstrip("/")


def _request(base_url: str, method: str, path: str, **kwargs):
    import httpx

    resp = httpx.request(method, base_url + path, timeout=600.0, **kwargs)
    if resp.status_code >= 400:
        click.echo(f"HTTP {resp.status_code}: {resp.text}", err=True)
        sys.exit(1)
    return resp.json()


def _design_from_json(design_json: str) -> dict:
    try:
        return json.loads(design_json)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"bad design JSON: {exc}")


@client.command("create")
@click.option("--mode", type=click.Choice(["designer_led", "optimizer_driven"]), required=True)
@click.option("--seed", type=int, default=0)
@click.pass_obj
def client_create(base_url, mode, seed):
    data = _request(base_url, "POST", "/api/sessions", json={"mode": mode, "cfg": {"seed": seed}})
    click.echo(canonical_json(data))


@client.command("show")
@click.argument("session_id")
@click.pass_obj
def client_show(base_url, session_id):
    click.echo(canonical_json(_request(base_url, "GET", f"/api/sessions/{session_id}")))


@client.command("proposal")
@click.argument("session_id")
@click.pass_obj
def client_proposal(base_url, session_id):
    click.echo(canonical_json(_request(base_url, "GET", f"/api/sessions/{session_id}/proposal")))


@client.command("evaluate")
@click.argument("session_id")
@click.option("--design", "design_json", required=True, help='e.g. {"D":0.5,"k":0.2,"G":5,"A":1.3}')
@click.option("--source", type=click.Choice(["synthetic", "manual"]), default="synthetic")
@click.option("--mean-time-ms", type=float, default=None)
@click.option("--mean-error-cm", type=float, default=None)
@click.pass_obj
def client_evaluate(base_url, session_id, design_json, source, mean_time_ms, mean_error_cm):
    body = {"design": _design_from_json(design_json), "source": source}
    if source == "manual":
        if mean_time_ms is None or mean_error_cm is None:
            raise click.UsageError("manual source needs --mean-time-ms and --mean-error-cm")
        body["metrics"] = {"mean_time_ms": mean_time_ms, "mean_error_cm": mean_error_cm}
    click.echo(
        canonical_json(
            _request(base_url, "POST", f"/api/sessions/{session_id}/evaluations", json=body)
        )
    )


@client.command("test")
@click.argument("session_id")
@click.option("--design", "design_json", required=True)
@click.pass_obj
def client_test(base_url, session_id, design_json):
    body = {"design": _design_from_json(design_json)}
    click.echo(
        canonical_json(_request(base_url, "POST", f"/api/sessions/{session_id}/tests", json=body))
    )


@client.command("pareto")
@click.argument("session_id")
@click.pass_obj
def client_pareto(base_url, session_id):
    click.echo(canonical_json(_request(base_url, "GET", f"/api/sessions/{session_id}/pareto")))


@client.command("decide")
@click.argument("session_id")
@click.argument("picks", nargs=3, type=int)
@click.pass_obj
def client_decide(base_url, session_id, picks):
    click.echo(
        canonical_json(
            _request(
                base_url,
                "POST",
                f"/api/sessions/{session_id}/decision",
                json={"picks": list(picks)},
            )
        )
    )


@client.command("analysis")
@click.argument("session_id")
@click.option("--m", "m_list", default="2,3", show_default=True)
@click.pass_obj
def client_analysis(base_url, session_id, m_list):
    click.echo(
        canonical_json(
            _request(base_url, "GET", f"/api/sessions/{session_id}/analysis?m={m_list}")
        )
    )


if __name__ == "__main__":
    main()
