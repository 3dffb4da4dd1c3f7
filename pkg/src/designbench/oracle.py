"""Synthetic pointing oracle standing in for the human participant.

A Fitts-style movement-time model plus a gain-scaled overshoot model, fully
deterministic given (skill seed, block seed, trial index). Model constants
are invented; they are tuned so raw metrics span roughly [900, 1600] ms and
[0, 1] cm over the design space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .domain import (
    DesignParams,
    PARAM_BOUNDS,
    TargetSpec,
    generate_trial_block,
)
from .errors import ConfigError, DomainError, RangeViolationError
from .evaluation import EvaluationResult, TrialOutcome, aggregate_evaluation
from .rng import Xoshiro256PP, derive_seed
from .transfer import DEFAULT_R_MAX, gain, inverse_transfer

# Invented model constants, centralized here.
TIMEOUT_MS = 3000.0
VERIFY_BASE_MS = 300.0  # echoes the 300 ms cue duration
CORRECTION_MS_PER_CM = 40.0
TIME_NOISE_SD_MS = 50.0
TIME_FLOOR_MS = 200.0
MIN_EFFECTIVE_WIDTH_CM = 0.1
WIDTH_SLACK_CM_PER_CM = 0.1

_TRIAL_STREAM_TAG = 0x7472

SKILL_RANGES = {
    "a_ms": (225.0, 275.0),
    "b_ms_per_bit": (135.0, 165.0),
    "m0_cm": (0.32, 0.48),
    "s0_cm": (0.4, 0.6),
}


@dataclass(frozen=True)
class SkillProfile:
    """Parameters of the synthetic participant."""

    a_ms: float = 250.0
    b_ms_per_bit: float = 150.0
    m0_cm: float = 0.4
    s0_cm: float = 0.4
    arm_cm: float = 70.0
    r_max: float = DEFAULT_R_MAX
    seed: int = 0

    def __post_init__(self):
        for name, (lo, hi) in SKILL_RANGES.items():
            v = getattr(self, name)
            if not (lo <= v <= hi):
                raise RangeViolationError(name, v, lo, hi)

    def to_dict(self) -> dict:
        return {
            "a_ms": self.a_ms,
            "b_ms_per_bit": self.b_ms_per_bit,
            "m0_cm": self.m0_cm,
            "s0_cm": self.s0_cm,
            "arm_cm": self.arm_cm,
            "r_max": self.r_max,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SkillProfile":
        return cls(**{k: (int(v) if k == "seed" else float(v)) for k, v in d.items()})


@dataclass(frozen=True)
class StrategyConfig:
    """Designer-led baseline behavior."""

    kind: str = "fixated_hill_climber"  # or "random_explorer"
    budget_evaluations: int = 12
    step_sigma: float = 0.05
    scalarization_weight: float = 0.7

    def __post_init__(self):
        if self.kind not in ("random_explorer", "fixated_hill_climber"):
            raise ConfigError(f"unknown strategy kind {self.kind!r}")
        if self.budget_evaluations < 1:
            raise ConfigError("budget_evaluations must be >= 1")
        if self.step_sigma <= 0:
            raise ConfigError("step_sigma must be positive")
        if not (0.0 <= self.scalarization_weight <= 1.0):
            raise ConfigError("scalarization_weight must be in [0, 1]")


def haptic_benefit(G: float, A: float) -> float:
    """Benefit factor in [0, 1]: peaks at a 5 cm gap and full amplitude."""
    lo_g, hi_g = PARAM_BOUNDS["G"]
    lo_a, hi_a = PARAM_BOUNDS["A"]
    if not (lo_g <= G <= hi_g):
        raise DomainError(f"G={G} outside [{lo_g}, {hi_g}]")
    if not (lo_a <= A <= hi_a):
        raise DomainError(f"A={A} outside [{lo_a}, {hi_a}]")
    return max(0.0, 1.0 - abs(G - 5.0) / 10.0) * math.sqrt(A / hi_a)


def expected_trial(
    design: DesignParams, target: TargetSpec, skill: SkillProfile
) -> tuple[float, float, bool]:
    """Deterministic core: (time_ms, overshoot mean parameter cm, timed_out)."""
    r_req = inverse_transfer(target.distance_units, design.D, design.k)
    if r_req > skill.r_max:
        return TIMEOUT_MS, 0.0, True
    g_t = gain(r_req, design.D, design.k)
    w_eff = max(target.width_cm / g_t, MIN_EFFECTIVE_WIDTH_CM)
    index_of_difficulty = math.log2(r_req * skill.arm_cm / w_eff + 1.0)
    movement_time = skill.a_ms + skill.b_ms_per_bit * index_of_difficulty
    beta = haptic_benefit(design.G, design.A)
    verify = VERIFY_BASE_MS * (1.0 - 0.5 * beta)
    mu_overshoot = (
        skill.m0_cm * g_t * (1.0 - 0.7 * beta)
        - WIDTH_SLACK_CM_PER_CM * target.width_cm
    )
    return movement_time + verify, mu_overshoot, False


def trial_rng(skill_seed: int, block_seed: int, index: int) -> Xoshiro256PP:
    """Independent stream per trial so draws never leak across trials."""
    return Xoshiro256PP(_TRIAL_STREAM_TAG, skill_seed, block_seed, index)


def simulate_trial(
    design: DesignParams,
    target: TargetSpec,
    skill: SkillProfile,
    rng: Xoshiro256PP,
    noise_scale: float = 1.0,
) -> TrialOutcome:
    """One noisy trial. ``noise_scale=0`` collapses to the expected values."""
    base_time, mu_o, timed_out = expected_trial(design, target, skill)
    if timed_out:
        return TrialOutcome(TIMEOUT_MS, 0.0, timed_out=True)
    beta = haptic_benefit(design.G, design.A)
    g_t = gain(
        inverse_transfer(target.distance_units, design.D, design.k),
        design.D,
        design.k,
    )
    time = max(TIME_FLOOR_MS, base_time + rng.normal(0.0, TIME_NOISE_SD_MS * noise_scale))
    spread = skill.s0_cm * g_t * (1.0 - 0.5 * beta) * noise_scale
    overshoot = max(0.0, rng.normal(mu_o, spread))
    time += CORRECTION_MS_PER_CM * overshoot
    return TrialOutcome(time, overshoot, timed_out=False)


def simulate_trials(
    design: DesignParams,
    targets,
    skill: SkillProfile,
    block_seed: int,
    noise_scale: float = 1.0,
) -> list[TrialOutcome]:
    return [
        simulate_trial(design, t, skill, trial_rng(skill.seed, block_seed, i), noise_scale)
        for i, t in enumerate(targets)
    ]


def simulate_evaluation(
    design: DesignParams,
    skill: SkillProfile,
    block_seed: int,
    noise_scale: float = 1.0,
) -> EvaluationResult:
    """Run the oracle over a balanced 36-trial block and aggregate."""
    block = generate_trial_block(derive_seed(skill.seed, block_seed))
    trials = simulate_trials(design, block, skill, block_seed, noise_scale)
    return aggregate_evaluation(design, trials)
