"""Pydantic request/response models for the session HTTP API."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..mobo import MoboConfig
from ..oracle import SkillProfile

# Schema defaults mirror the core dataclasses; build instances once so the
# two layers cannot drift apart.
_CFG_DEFAULTS = MoboConfig()
_SKILL_DEFAULTS = SkillProfile()


class DesignModel(BaseModel):
    D: float
    k: float
    G: float
    A: float


class CfgModel(BaseModel):
    n_init: int = _CFG_DEFAULTS.n_init
    n_total: int = _CFG_DEFAULTS.n_total
    q: int = _CFG_DEFAULTS.q
    mc_samples: int = _CFG_DEFAULTS.mc_samples
    restarts: int = _CFG_DEFAULTS.restarts
    raw_candidates: int = _CFG_DEFAULTS.raw_candidates
    ref_point: tuple[float, float] = _CFG_DEFAULTS.ref_point
    seed: int = _CFG_DEFAULTS.seed
    sobol_init: bool = _CFG_DEFAULTS.sobol_init


class SkillModel(BaseModel):
    a_ms: float = _SKILL_DEFAULTS.a_ms
    b_ms_per_bit: float = _SKILL_DEFAULTS.b_ms_per_bit
    m0_cm: float = _SKILL_DEFAULTS.m0_cm
    s0_cm: float = _SKILL_DEFAULTS.s0_cm
    arm_cm: float = _SKILL_DEFAULTS.arm_cm
    r_max: float = _SKILL_DEFAULTS.r_max
    seed: int = _SKILL_DEFAULTS.seed


class CreateSessionRequest(BaseModel):
    mode: Literal["designer_led", "optimizer_driven"]
    cfg: Optional[CfgModel] = None
    skill: Optional[SkillModel] = None


class CreateSessionResponse(BaseModel):
    id: str


class EvaluationModel(BaseModel):
    design: DesignModel
    mean_time_ms: float
    mean_error_cm: float
    speed: float
    accuracy: float
    trial_count: int


class SessionView(BaseModel):
    id: str
    mode: str
    stage: str
    cfg: CfgModel
    skill: SkillModel
    created_at: str
    evaluations: list[EvaluationModel]
    informal_tests: list[DesignModel]
    pending_proposal: Optional[DesignModel]
    pending_tag: Optional[str]
    picks: Optional[list[int]]


class ProposalResponse(BaseModel):
    design: DesignModel
    tag: str


class ManualMetrics(BaseModel):
    mean_time_ms: float
    mean_error_cm: float


class EvaluationRequest(BaseModel):
    design: DesignModel
    source: Literal["synthetic", "manual"] = "synthetic"
    metrics: Optional[ManualMetrics] = None


class InformalTestRequest(BaseModel):
    design: DesignModel


class AckResponse(BaseModel):
    ack: bool = True
    informal_test_count: int


class ObjectivePointModel(BaseModel):
    speed: float
    accuracy: float


class ParetoResponse(BaseModel):
    front: list[int]
    points: list[ObjectivePointModel]


class DecisionRequest(BaseModel):
    picks: list[int] = Field(min_length=3, max_length=3)
