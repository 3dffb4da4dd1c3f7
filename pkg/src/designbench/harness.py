"""Synthetic experiment harness: optimizer-driven vs baseline sessions,
final-pick re-measurement, and the summary/comparison outputs."""

from __future__ import annotations

import csv
import json
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from .analysis import session_report, welch_t
from .baselines import run_baseline_session
from .mobo import MoboConfig, pareto_front
from .oracle import SkillProfile, StrategyConfig, simulate_evaluation
from .rng import derive_seed
from .session import (
    MODE_OPTIMIZER,
    SessionState,
    canonical_json,
    create_session,
    get_proposal,
    serialize_log,
    submit_decision,
    submit_evaluation,
)

_CFG_TAG, _SKILL_TAG, _REMEASURE_TAG = 1, 2, 3

SUMMARY_COLUMNS = [
    "mode",
    "seed",
    "mean_time",
    "mean_error",
    "coverage_m2",
    "coverage_m3",
    "tsd",
    "ntsd",
]


def logical_clock(start: str = "2000-01-01T00:00:00+00:00"):
    """Deterministic clock: one second per event, for reproducible logs."""
    t0 = datetime.fromisoformat(start)
    counter = {"n": 0}

    def tick() -> str:
        counter["n"] += 1
        return (t0 + timedelta(seconds=counter["n"])).isoformat()

    return tick


def automatic_picks(evaluations) -> list[int]:
    """Fixed decision policy: speed extreme, accuracy extreme, best sum,
    each restricted to the Pareto front."""
    front = pareto_front([(e.speed, e.accuracy) for e in evaluations])
    by_speed = max(front, key=lambda i: evaluations[i].speed)
    by_accuracy = max(front, key=lambda i: evaluations[i].accuracy)
    by_sum = max(front, key=lambda i: evaluations[i].speed + evaluations[i].accuracy)
    return [by_speed, by_accuracy, by_sum]


def run_optimizer_session(
    base_seed: int,
    index: int,
    n_init: int = 10,
    n_total: int = 40,
    session_id: str | None = None,
) -> SessionState:
    """Full synthetic optimizer-driven protocol through the decision."""
    cfg = MoboConfig(
        n_init=n_init, n_total=n_total, seed=derive_seed(base_seed, _CFG_TAG, index)
    )
    skill = SkillProfile(seed=derive_seed(base_seed, _SKILL_TAG, index))
    clock = logical_clock()
    state = create_session(
        MODE_OPTIMIZER,
        cfg=cfg,
        skill=skill,
        session_id=session_id or f"optimizer-{index:04d}",
        clock=clock,
    )
    for _ in range(n_total):
        state = get_proposal(state, clock=clock)
        state = submit_evaluation(state, state.pending_proposal, clock=clock)
    state = submit_decision(state, automatic_picks(state.evaluations), clock=clock)
    return state


def run_baseline(
    base_seed: int,
    index: int,
    strategy: StrategyConfig,
    session_id: str | None = None,
) -> SessionState:
    skill = SkillProfile(seed=derive_seed(base_seed, _SKILL_TAG, index))
    clock = logical_clock()
    state = run_baseline_session(
        strategy,
        skill,
        seed=derive_seed(base_seed, _CFG_TAG, 0x62, index),
        session_id=session_id or f"baseline-{index:04d}",
        clock=clock,
    )
    return submit_decision(state, automatic_picks(state.evaluations), clock=clock)


def remeasure_picks(state: SessionState, base_seed: int, index: int) -> list:
    """Re-evaluate the 3 picked designs with fresh trial seeds, so every
    session's final designs are measured under equal conditions."""
    out = []
    for j, i in enumerate(state.picks):
        block_seed = derive_seed(base_seed, _REMEASURE_TAG, index, j)
        out.append(
            simulate_evaluation(state.evaluations[i].design, state.skill, block_seed)
        )
    return out


def _session_row(state: SessionState, remeasured, index: int) -> dict:
    report = session_report(state, m_values=(2, 3))
    return {
        "mode": "optimizer" if state.mode == MODE_OPTIMIZER else "baseline",
        "seed": index,
        "mean_time": float(np.mean([e.mean_time_ms for e in remeasured])),
        "mean_error": float(np.mean([e.mean_error_cm for e in remeasured])),
        "coverage_m2": report["coverage"]["2"]["covered"],
        "coverage_m3": report["coverage"]["3"]["covered"],
        "tsd": report["total_successive_distance"],
        "ntsd": report["normalized_successive_distance"],
    }


def _fmt(v) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def run_simulation(
    sessions: int,
    seed: int,
    modes: str = "both",
    baseline: str = "fixated",
    out_dir=None,
    n_init: int = 10,
    n_total: int = 40,
    strategy: StrategyConfig | None = None,
) -> dict:
    """Run the comparative harness and write logs, summary CSV, plot data,
    and (when both modes run) the comparison block."""
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        (out / "logs").mkdir(parents=True, exist_ok=True)

    if strategy is None:
        strategy = StrategyConfig(
            kind="random_explorer" if baseline == "random" else "fixated_hill_climber"
        )
    rows: list[dict] = []
    scatter: list[dict] = []
    states: dict[str, list[SessionState]] = {"optimizer": [], "baseline": []}

    run_opt = modes in ("both", "optimizer")
    run_base = modes in ("both", "baselines")
    for i in range(sessions):
        for mode, runner in (("optimizer", run_opt), ("baseline", run_base)):
            if not runner:
                continue
            if mode == "optimizer":
                state = run_optimizer_session(seed, i, n_init=n_init, n_total=n_total)
            else:
                state = run_baseline(seed, i, strategy)
            states[mode].append(state)
            remeasured = remeasure_picks(state, seed, i)
            rows.append(_session_row(state, remeasured, i))
            for j, e in enumerate(state.evaluations):
                scatter.append(
                    {
                        "mode": mode,
                        "seed": i,
                        "index": j,
                        "speed": e.speed,
                        "accuracy": e.accuracy,
                    }
                )
            if out is not None:
                (out / "logs" / f"{state.id}.jsonl").write_text(
                    serialize_log(state), encoding="utf-8"
                )

    comparison = None
    if run_opt and run_base and sessions >= 2:
        comparison = compare_rows(rows)

    result = {"rows": rows, "comparison": comparison, "scatter": scatter}
    if out is not None:
        write_summary_csv(out / "summary.csv", rows)
        write_plot_points(out / "plot_points.csv", scatter)
        if comparison is not None:
            (out / "comparison.json").write_text(
                canonical_json(comparison) + "\n", encoding="utf-8"
            )
    return result


def compare_rows(rows: list[dict]) -> dict:
    """Per-mode means/SDs plus Welch t for the headline metrics."""
    comparison = {}
    for metric in ("mean_time", "mean_error", "coverage_m2", "coverage_m3", "tsd", "ntsd"):
        a = [r[metric] for r in rows if r["mode"] == "optimizer"]
        b = [r[metric] for r in rows if r["mode"] == "baseline"]
        t, df = welch_t(a, b)
        comparison[metric] = {
            "optimizer_mean": float(np.mean(a)),
            "optimizer_sd": float(np.std(a, ddof=1)),
            "baseline_mean": float(np.mean(b)),
            "baseline_sd": float(np.std(b, ddof=1)),
            "welch_t": t,
            "welch_df": df,
        }
    return comparison


def write_summary_csv(path, rows) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for r in rows:
            writer.writerow([_fmt(r[c]) for c in SUMMARY_COLUMNS])


def write_plot_points(path, scatter) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["mode", "seed", "index", "speed", "accuracy"])
        for p in scatter:
            writer.writerow(
                [p["mode"], p["seed"], p["index"], _fmt(p["speed"]), _fmt(p["accuracy"])]
            )
