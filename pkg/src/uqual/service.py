"""HTTP JSON API hosting live workshop scoring sessions.

Everything the API mutates is also achievable through files and the CLI;
the service adds liveness for the browser client, not capability.
Validation failures map to 4xx responses with the underlying message; 5xx
is reserved for genuine internal faults.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Mapping

from fastapi import Body, FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .diagnostic import InfluenceScore, Thresholds
from .errors import SchemaError, SessionStateError, UnknownIdError
from .fixtures import CRITERIA_SETS
from .jsonio import check_keys
from .pedigree import StrengthBands, criteria_from_dict, registry_from_dict, score_from_dict
from .session import SessionStore

DATA_DIR_ENV = "UQUAL_DATA_DIR"


def _data_dir(override: str | Path | None = None) -> Path:
    return Path(override or os.environ.get(DATA_DIR_ENV, "uqual-data"))


def _parse_create_payload(payload: Mapping[str, Any]):
    check_keys(
        payload, "create session",
        required=("assumptions", "criteria_set", "roster"),
        optional=("id", "influences", "thresholds", "bands"),
        versioned=True,
    )
    assumptions = registry_from_dict({"assumptions": payload["assumptions"]}, label="assumptions")
    criteria_ref = payload["criteria_set"]
    if isinstance(criteria_ref, str):
        if criteria_ref not in CRITERIA_SETS:
            raise SchemaError(
                f"unknown criteria set {criteria_ref!r}; bundled sets: {', '.join(sorted(CRITERIA_SETS))}"
            )
        criteria = CRITERIA_SETS[criteria_ref]()
    else:
        criteria = criteria_from_dict(criteria_ref)
    roster = [str(e) for e in payload["roster"]]
    influences = [
        InfluenceScore(str(i["assumption"]), float(i["value"]), str(i.get("source", "elicited")))
        for i in payload.get("influences", ())
    ]
    thresholds_doc = payload.get("thresholds", {})
    thresholds = Thresholds(
        pedigree=float(thresholds_doc.get("pedigree", 0.5)),
        influence=float(thresholds_doc.get("influence", 0.5)),
    )
    bands_doc = payload.get("bands", {})
    bands = StrengthBands(
        weak_below=float(bands_doc.get("weak_below", 0.4)),
        strong_at=float(bands_doc.get("strong_at", 0.7)),
    )
    return assumptions, criteria, roster, influences, thresholds, bands, payload.get("id")


def create_app(data_dir: str | Path | None = None, store: SessionStore | None = None) -> FastAPI:
    store = store or SessionStore(_data_dir(data_dir))
    app = FastAPI(title="uqual workshop service", version="0.1.0")

    @app.exception_handler(SchemaError)
    async def _schema_error(request, exc):
        # Safety net for schema errors escaping a route's own handling.
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    def _get_session(session_id: str):
        try:
            return store.get(session_id)
        except UnknownIdError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.get("/sessions")
    def list_sessions() -> dict:
        out = []
        for sid in store.list_ids():
            session = store.get(sid)
            out.append({"id": sid, "state": session.state.value, "version": session.version})
        return {"sessions": out}

    @app.post("/sessions", status_code=201)
    def create_session(payload: dict = Body(...)) -> dict:
        try:
            assumptions, criteria, roster, influences, thresholds, bands, sid = (
                _parse_create_payload(payload)
            )
            session = store.create(
                assumptions, criteria, roster, influences, thresholds, bands, session_id=sid
            )
        except (SchemaError, ValueError, KeyError, TypeError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return session.metadata()

    @app.get("/sessions/{session_id}")
    def session_metadata(session_id: str) -> dict:
        return _get_session(session_id).metadata()

    @app.post("/sessions/{session_id}/open")
    def open_session(session_id: str) -> dict:
        session = _get_session(session_id)
        try:
            store.open(session_id)
        except SessionStateError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return session.metadata()

    @app.post("/sessions/{session_id}/close")
    def close_session(session_id: str) -> dict:
        _get_session(session_id)
        try:
            snapshot = store.close(session_id)
        except SessionStateError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return snapshot.to_dict()

    @app.post("/sessions/{session_id}/scores", status_code=201)
    def submit_score(session_id: str, payload: dict = Body(...)) -> dict:
        _get_session(session_id)
        try:
            record = score_from_dict(payload, label="score submission")
            record_id, version = store.submit(session_id, record)
        except SchemaError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except UnknownIdError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except SessionStateError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return {"record_id": record_id, "version": version}

    @app.get("/sessions/{session_id}/snapshot")
    def snapshot(session_id: str) -> dict:
        _get_session(session_id)
        return store.snapshot(session_id).to_dict()

    @app.get("/sessions/{session_id}/view")
    def join_view(session_id: str, expert: str) -> dict:
        """Join-time view for one expert: metadata plus the current snapshot.

        Draft sessions refuse joins, closed sessions serve a read-only view
        of the final snapshot.
        """
        session = _get_session(session_id)
        if expert not in session.roster:
            raise HTTPException(status_code=403, detail=f"expert {expert!r} not on the roster")
        if session.state.value == "draft":
            raise HTTPException(status_code=409, detail="session has not opened scoring yet")
        live: dict[tuple[str, str], int] = {}
        for r in session.scores:
            if r.expert_id == expert:
                live[(r.assumption_id, r.criterion_id)] = r.score
        my_scores = [
            {"assumption": aid, "criterion": cid, "score": score}
            for (aid, cid), score in live.items()
        ]
        return {
            "metadata": session.metadata(),
            "snapshot": store.snapshot(session_id).to_dict(),
            "expert": expert,
            "my_scores": my_scores,
            "read_only": session.state.value == "closed",
        }

    return app
