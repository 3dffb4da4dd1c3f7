"""Designer-led baseline strategies for the comparative harness.

Two caricatures of unaided designers: a random explorer that samples the
cube uniformly, and a fixated hill-climber that perturbs its incumbent with
small Gaussian steps and accepts only scalarized improvements.
"""

from __future__ import annotations

import numpy as np

from .domain import decode_unit
from .mobo import MoboConfig
from .oracle import SkillProfile, StrategyConfig
from .rng import Xoshiro256PP
from .session import (
    MODE_DESIGNER,
    SessionState,
    create_session,
    submit_evaluation,
    utc_clock,
)

_BASELINE_TAG = 0x6273


def run_baseline_session(
    strategy: StrategyConfig,
    skill: SkillProfile,
    seed: int,
    session_id: str | None = None,
    clock=utc_clock,
) -> SessionState:
    """Run one designer-led baseline session; every proposal is formally
    evaluated, and the returned state is replayable from its log."""
    rng = Xoshiro256PP(_BASELINE_TAG, seed, strategy.budget_evaluations)
    state = create_session(
        MODE_DESIGNER,
        cfg=MoboConfig(seed=seed),
        skill=skill,
        session_id=session_id,
        clock=clock,
    )
    w = strategy.scalarization_weight

    def scalar(ev):
        return w * ev.speed + (1.0 - w) * ev.accuracy

    incumbent_u = None
    incumbent_score = -np.inf
    for _ in range(strategy.budget_evaluations):
        if incumbent_u is None or strategy.kind == "random_explorer":
            u = np.array(rng.uniforms(4))
        else:
            step = np.array([rng.normal(0.0, strategy.step_sigma) for _ in range(4)])
            u = np.clip(incumbent_u + step, 0.0, 1.0)
        state = submit_evaluation(state, decode_unit(u), source="synthetic", clock=clock)
        score = scalar(state.evaluations[-1])
        if strategy.kind == "random_explorer":
            if score > incumbent_score:
                incumbent_u, incumbent_score = u, score
        else:
            if incumbent_u is None or score > incumbent_score:
                incumbent_u, incumbent_score = u, score
    return state
