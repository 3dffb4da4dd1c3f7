"""Event-sourced session state machine and its JSON-lines persistence.

A session is a pure fold over its event log: commands validate against the
current state, emit one event, and the fold applies it. Replaying a log
therefore reproduces the state byte-identically.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

from .domain import DesignParams
from .errors import (
    ConfigError,
    CorruptLogError,
    DomainError,
    InvalidSelectionError,
    ModeError,
    ProtocolError,
    SequencingError,
    StageError,
)
from .evaluation import EvaluationResult, evaluation_from_means
from .mobo import MoboConfig, decision_stage, pareto_front, propose_next
from .oracle import SkillProfile, simulate_evaluation
from .rng import derive_seed

MODE_DESIGNER = "designer_led"
MODE_OPTIMIZER = "optimizer_driven"
STAGE_DESIGN = "design"
STAGE_DECISION = "decision"
STAGE_COMPLETE = "complete"

EVENT_TYPES = (
    "session_created",
    "design_tested",
    "proposal_issued",
    "evaluation_completed",
    "decision_made",
)

_BLOCK_TAG = 0x626C


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def utc_clock() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


@dataclass(frozen=True)
class Event:
    seq: int
    at: str
    type: str
    payload: dict

    def to_dict(self) -> dict:
        return {"seq": self.seq, "at": self.at, "type": self.type, "payload": self.payload}

    @classmethod
    def from_dict(cls, d: dict) -> "Event":
        return cls(seq=int(d["seq"]), at=str(d["at"]), type=str(d["type"]), payload=d["payload"])


@dataclass(frozen=True)
class SessionState:
    id: str
    mode: str
    stage: str
    cfg: MoboConfig
    skill: SkillProfile
    created_at: str
    evaluations: tuple = ()
    informal_tests: tuple = ()
    visited: tuple = ()  # informal tests and evaluated designs, in event order
    pending_proposal: DesignParams | None = None
    pending_tag: str | None = None
    picks: tuple | None = None
    events: tuple = ()

    def view(self) -> dict:
        """Canonical serializable view of the state (no event log)."""
        return {
            "id": self.id,
            "mode": self.mode,
            "stage": self.stage,
            "cfg": self.cfg.to_dict(),
            "skill": self.skill.to_dict(),
            "created_at": self.created_at,
            "evaluations": [e.to_dict() for e in self.evaluations],
            "informal_tests": [d.to_dict() for d in self.informal_tests],
            "pending_proposal": (
                self.pending_proposal.to_dict() if self.pending_proposal else None
            ),
            "pending_tag": self.pending_tag,
            "picks": list(self.picks) if self.picks is not None else None,
        }


def apply_event(state: SessionState | None, event: Event) -> SessionState:
    """Pure fold step."""
    if event.type == "session_created":
        p = event.payload
        return SessionState(
            id=p["id"],
            mode=p["mode"],
            stage=STAGE_DESIGN,
            cfg=MoboConfig.from_dict(p["cfg"]),
            skill=SkillProfile.from_dict(p["skill"]),
            created_at=event.at,
            events=(event,),
        )
    if state is None:
        raise CorruptLogError("first event must be session_created")
    events = state.events + (event,)
    if event.type == "design_tested":
        d = DesignParams.from_dict(event.payload["design"])
        return replace(
            state,
            informal_tests=state.informal_tests + (d,),
            visited=state.visited + (d,),
            events=events,
        )
    if event.type == "proposal_issued":
        return replace(
            state,
            pending_proposal=DesignParams.from_dict(event.payload["design"]),
            pending_tag=event.payload["tag"],
            events=events,
        )
    if event.type == "evaluation_completed":
        ev = EvaluationResult.from_dict(event.payload["evaluation"])
        evaluations = state.evaluations + (ev,)
        stage = state.stage
        if state.mode == MODE_OPTIMIZER and len(evaluations) == state.cfg.n_total:
            stage = STAGE_DECISION
        return replace(
            state,
            evaluations=evaluations,
            visited=state.visited + (ev.design,),
            pending_proposal=None,
            pending_tag=None,
            stage=stage,
            events=events,
        )
    if event.type == "decision_made":
        return replace(
            state,
            picks=tuple(int(i) for i in event.payload["picks"]),
            stage=STAGE_COMPLETE,
            events=events,
        )
    raise CorruptLogError(f"unknown event type {event.type!r}")


def _emit(state: SessionState, type_: str, payload: dict, clock) -> SessionState:
    event = Event(seq=len(state.events) + 1, at=clock(), type=type_, payload=payload)
    return apply_event(state, event)


def create_session(
    mode: str,
    cfg: MoboConfig | None = None,
    skill: SkillProfile | None = None,
    session_id: str | None = None,
    clock=utc_clock,
) -> SessionState:
    if mode not in (MODE_DESIGNER, MODE_OPTIMIZER):
        raise ConfigError(f"unknown mode {mode!r}")
    cfg = cfg or MoboConfig()
    skill = skill or SkillProfile()
    sid = session_id or uuid.uuid4().hex
    event = Event(
        seq=1,
        at=clock(),
        type="session_created",
        payload={"id": sid, "mode": mode, "cfg": cfg.to_dict(), "skill": skill.to_dict()},
    )
    return apply_event(None, event)


def _require_design_stage(state: SessionState):
    if state.stage == STAGE_COMPLETE:
        raise StageError("session is complete")
    if state.stage != STAGE_DESIGN:
        raise StageError("session is in the decision stage")


def get_proposal(state: SessionState, clock=utc_clock) -> SessionState:
    """Issue the next optimizer proposal; the new pending proposal is on the
    returned state."""
    if state.mode != MODE_OPTIMIZER:
        raise ModeError("proposals are only issued in optimizer-driven mode")
    if state.stage == STAGE_DECISION:
        raise StageError("all evaluations done; proceed to the decision stage")
    _require_design_stage(state)
    if state.pending_proposal is not None:
        raise SequencingError("pending proposal must be evaluated first")
    design, tag = propose_next(state.evaluations, state.cfg)
    return _emit(state, "proposal_issued", {"design": design.to_dict(), "tag": tag}, clock)


def submit_evaluation(
    state: SessionState,
    design: DesignParams,
    source: str = "synthetic",
    manual_metrics: dict | None = None,
    clock=utc_clock,
) -> SessionState:
    _require_design_stage(state)
    if state.mode == MODE_OPTIMIZER:
        if state.pending_proposal is None:
            raise SequencingError("no pending proposal to evaluate")
        if design.to_dict() != state.pending_proposal.to_dict():
            raise ProtocolError("evaluated design must equal the pending proposal")
    if source == "synthetic":
        block_seed = derive_seed(_BLOCK_TAG, state.skill.seed, len(state.evaluations))
        ev = simulate_evaluation(design, state.skill, block_seed)
    elif source == "manual":
        if not manual_metrics:
            raise DomainError("manual source requires mean_time_ms and mean_error_cm")
        try:
            ev = evaluation_from_means(
                design,
                float(manual_metrics["mean_time_ms"]),
                float(manual_metrics["mean_error_cm"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed manual metrics: {exc}") from exc
    else:
        raise DomainError(f"unknown evaluation source {source!r}")
    return _emit(
        state,
        "evaluation_completed",
        {"evaluation": ev.to_dict(), "source": source},
        clock,
    )


def record_informal_test(state: SessionState, design: DesignParams, clock=utc_clock) -> SessionState:
    if state.mode != MODE_DESIGNER:
        raise ModeError("informal tests exist only in designer-led mode")
    _require_design_stage(state)
    return _emit(state, "design_tested", {"design": design.to_dict()}, clock)


def get_pareto(state: SessionState) -> dict:
    if not state.evaluations:
        raise DomainError("session has no evaluations yet")
    points = [(e.speed, e.accuracy) for e in state.evaluations]
    return {
        "front": pareto_front(points),
        "points": [{"speed": s, "accuracy": a} for s, a in points],
    }


def submit_decision(state: SessionState, picks, clock=utc_clock) -> SessionState:
    picks = [int(i) for i in picks]
    if state.stage == STAGE_COMPLETE:
        raise StageError("session is complete")
    if state.mode == MODE_OPTIMIZER:
        if state.stage != STAGE_DECISION:
            raise StageError("decision stage not reached yet")
        decision_stage(state.evaluations, picks)
    else:
        if not state.evaluations:
            raise StageError("designer-led decision needs at least one evaluation")
        if len(picks) != 3:
            raise ProtocolError(f"exactly 3 picks required, got {len(picks)}")
        for i in picks:
            if not (0 <= i < len(state.evaluations)):
                raise InvalidSelectionError(f"pick {i} does not reference an evaluation")
    return _emit(state, "decision_made", {"picks": picks}, clock)


def serialize_log(state: SessionState) -> str:
    """Canonical JSON-lines form of the event log (one event per line)."""
    return "".join(canonical_json(e.to_dict()) + "\n" for e in state.events)


def replay(lines) -> SessionState:
    """Fold a JSON-lines log (string or iterable of lines) back into state."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    state: SessionState | None = None
    expected_seq = 1
    for raw in lines:
        raw = raw.strip()
        if not raw:
            continue
        try:
            event = Event.from_dict(json.loads(raw))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CorruptLogError(f"unparseable event at seq {expected_seq}: {exc}") from exc
        if event.seq != expected_seq:
            raise CorruptLogError(f"expected seq {expected_seq}, found {event.seq}")
        if expected_seq == 1 and event.type != "session_created":
            raise CorruptLogError("first event must be session_created")
        state = apply_event(state, event)
        expected_seq += 1
    if state is None:
        raise CorruptLogError("empty event log")
    return state


class SessionStore:
    """Append-only JSON-lines persistence, one file per session."""

    def __init__(self, data_dir):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)

    def path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.jsonl"

    def save(self, state: SessionState) -> None:
        self.path(state.id).write_text(serialize_log(state), encoding="utf-8")

    def append_new_events(self, before: SessionState, after: SessionState) -> None:
        new = after.events[len(before.events):]
        with self.path(after.id).open("a", encoding="utf-8") as fh:
            for e in new:
                fh.write(canonical_json(e.to_dict()) + "\n")

    def load(self, session_id: str) -> SessionState:
        p = self.path(session_id)
        if not p.exists():
            raise KeyError(session_id)
        return replay(p.read_text(encoding="utf-8"))

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.data_dir.glob("*.jsonl"))
