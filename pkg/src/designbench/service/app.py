"""FastAPI service wrapping the session engine.

All business logic lives in the core package; the service only validates
payloads, serializes state, and enforces single-writer access per session.
"""

from __future__ import annotations

import threading
from collections import defaultdict

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from .. import session as sess
from ..analysis import session_report
from ..domain import DesignParams
from ..errors import (
    CorruptLogError,
    DesignbenchError,
    DomainError,
    InvalidSelectionError,
    ModeError,
    ProtocolError,
    RangeViolationError,
    SequencingError,
    StageError,
)
from ..mobo import MoboConfig
from ..oracle import SkillProfile
from . import schemas


def _status_for(exc: DesignbenchError) -> int:
    if isinstance(exc, (RangeViolationError, DomainError)):
        return 400
    if isinstance(exc, (StageError, ModeError, SequencingError, InvalidSelectionError, ProtocolError)):
        return 409
    if isinstance(exc, CorruptLogError):
        return 500
    return 400


def create_app(data_dir) -> FastAPI:
    store = sess.SessionStore(data_dir)
    locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
    cache: dict[str, sess.SessionState] = {}

    app = FastAPI(title="designbench session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def load(session_id: str) -> sess.SessionState:
        if session_id in cache:
            return cache[session_id]
        try:
            state = store.load(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        cache[session_id] = state
        return state

    def commit(before: sess.SessionState | None, after: sess.SessionState) -> None:
        if before is None:
            store.save(after)
        else:
            store.append_new_events(before, after)
        cache[after.id] = after

    @app.exception_handler(DesignbenchError)
    async def _domain_error(request, exc: DesignbenchError):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=_status_for(exc), content={"detail": str(exc)})

    @app.post("/api/sessions", response_model=schemas.CreateSessionResponse)
    def create_session(req: schemas.CreateSessionRequest):
        cfg = MoboConfig.from_dict(req.cfg.model_dump()) if req.cfg else MoboConfig()
        skill = SkillProfile.from_dict(req.skill.model_dump()) if req.skill else SkillProfile()
        state = sess.create_session(req.mode, cfg=cfg, skill=skill)
        commit(None, state)
        return {"id": state.id}

    @app.get("/api/sessions/{session_id}", response_model=schemas.SessionView)
    def get_session(session_id: str):
        return load(session_id).view()

    @app.get("/api/sessions/{session_id}/proposal", response_model=schemas.ProposalResponse)
    def get_proposal(session_id: str):
        with locks[session_id]:
            before = load(session_id)
            after = sess.get_proposal(before)
            commit(before, after)
            return {"design": after.pending_proposal.to_dict(), "tag": after.pending_tag}

    @app.post("/api/sessions/{session_id}/evaluations", response_model=schemas.EvaluationModel)
    def submit_evaluation(session_id: str, req: schemas.EvaluationRequest):
        with locks[session_id]:
            before = load(session_id)
            after = sess.submit_evaluation(
                before,
                DesignParams.from_dict(req.design.model_dump()),
                source=req.source,
                manual_metrics=req.metrics.model_dump() if req.metrics else None,
            )
            commit(before, after)
            return after.evaluations[-1].to_dict()

    @app.post("/api/sessions/{session_id}/tests", response_model=schemas.AckResponse)
    def record_test(session_id: str, req: schemas.InformalTestRequest):
        with locks[session_id]:
            before = load(session_id)
            after = sess.record_informal_test(
                before, DesignParams.from_dict(req.design.model_dump())
            )
            commit(before, after)
            return {"ack": True, "informal_test_count": len(after.informal_tests)}

    @app.get("/api/sessions/{session_id}/pareto", response_model=schemas.ParetoResponse)
    def get_pareto(session_id: str):
        return sess.get_pareto(load(session_id))

    @app.post("/api/sessions/{session_id}/decision")
    def submit_decision(session_id: str, req: schemas.DecisionRequest):
        with locks[session_id]:
            before = load(session_id)
            after = sess.submit_decision(before, req.picks)
            commit(before, after)
            return session_report(after)

    @app.get("/api/sessions/{session_id}/analysis")
    def get_analysis(session_id: str, m: str = "2,3"):
        try:
            m_values = [int(v) for v in m.split(",") if v.strip()]
        except ValueError:
            raise HTTPException(status_code=400, detail=f"bad m list {m!r}")
        if not m_values or any(v < 1 for v in m_values):
            raise HTTPException(status_code=400, detail=f"bad m list {m!r}")
        return session_report(load(session_id), m_values=m_values)

    return app
