"""Live workshop scoring sessions: state machine, snapshots, file persistence.

A session moves Draft -> ScoringOpen -> Closed, never backwards.  Scores are
accepted only while open; every accepted score bumps the version counter, so
a snapshot at version v reflects exactly the first v accepted submissions.
Persistence is one JSON document per session in a data directory; no
database at workshop scale.
"""
from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .diagnostic import InfluenceScore, Thresholds, build_diagram, diagram_to_dict
from .errors import SessionStateError, UnknownIdError
from .jsonio import check_keys, read_json, write_json
from .pedigree import (
    AssumptionRegistry,
    CriteriaSet,
    ScoreLog,
    ScoreRecord,
    StrengthBands,
    aggregate_all,
    criteria_from_dict,
    criteria_to_dict,
    pedigree_result_to_dict,
    registry_from_dict,
    registry_to_dict,
    score_from_dict,
    score_to_dict,
)


class SessionState(str, Enum):
    DRAFT = "draft"
    SCORING_OPEN = "scoring_open"
    CLOSED = "closed"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class SessionSnapshot:
    """Consistent read of a session: pedigree results plus the diagram JSON."""

    session_id: str
    version: int
    state: str
    results: tuple[dict, ...]
    diagram: Mapping[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": 1,
            "session": self.session_id,
            "version": self.version,
            "state": self.state,
            "results": list(self.results),
            "diagram": dict(self.diagram),
        }


class WorkshopSession:
    """One elicitation workshop: registry, criteria, roster, and the score log."""

    def __init__(
        self,
        session_id: str,
        assumptions: AssumptionRegistry,
        criteria: CriteriaSet,
        roster: Sequence[str],
        influences: Iterable[InfluenceScore] = (),
        thresholds: Thresholds = Thresholds(),
        bands: StrengthBands = StrengthBands(),
        created_at: str | None = None,
    ):
        if not session_id:
            raise ValueError("session id must be nonempty")
        if not roster:
            raise ValueError("roster must list at least one expert id")
        self.id = session_id
        self.assumptions = assumptions
        self.criteria = criteria
        self.roster = tuple(roster)
        self.influences = tuple(influences)
        self.thresholds = thresholds
        self.bands = bands
        self.state = SessionState.DRAFT
        self.created_at = created_at or _now()
        self.closed_at: str | None = None
        self._log = ScoreLog(assumptions, criteria, roster=self.roster)

    @property
    def version(self) -> int:
        return len(self._log)

    @property
    def scores(self) -> tuple[ScoreRecord, ...]:
        return self._log.entries

    def open(self) -> None:
        if self.state is not SessionState.DRAFT:
            raise SessionStateError(f"cannot open a session in state {self.state.value!r}")
        self.state = SessionState.SCORING_OPEN

    def close(self) -> SessionSnapshot:
        """Freeze the score log and emit the final snapshot."""
        if self.state is SessionState.CLOSED:
            raise SessionStateError("terminal state: session already closed")
        if self.state is not SessionState.SCORING_OPEN:
            raise SessionStateError(f"cannot close a session in state {self.state.value!r}")
        self.state = SessionState.CLOSED
        self.closed_at = _now()
        return self.snapshot()

    def submit(self, record: ScoreRecord) -> int:
        """Accept one score while open; returns the accepted-score sequence id."""
        if self.state is not SessionState.SCORING_OPEN:
            raise SessionStateError(
                f"scores are accepted only while scoring is open (state: {self.state.value!r})"
            )
        return self._log.record(record)

    def snapshot(self) -> SessionSnapshot:
        results = aggregate_all(self._log, self.bands)
        diagram = build_diagram(
            results,
            self.influences,
            thresholds=self.thresholds,
            provenance={
                "session": self.id,
                "methods": sorted({i.source for i in self.influences}),
            },
        )
        return SessionSnapshot(
            session_id=self.id,
            version=self.version,
            state=self.state.value,
            results=tuple(pedigree_result_to_dict(r) for r in results),
            diagram=diagram_to_dict(diagram),
        )

    def metadata(self) -> dict[str, Any]:
        return {
            "schema_version": 1,
            "id": self.id,
            "state": self.state.value,
            "roster": list(self.roster),
            "assumptions": registry_to_dict(self.assumptions)["assumptions"],
            "criteria": criteria_to_dict(self.criteria),
            "thresholds": {
                "pedigree": self.thresholds.pedigree,
                "influence": self.thresholds.influence,
            },
            "version": self.version,
            "created_at": self.created_at,
            "closed_at": self.closed_at,
        }


# --- persistence ---------------------------------------------------------------


def session_to_dict(session: WorkshopSession) -> dict[str, Any]:
    return {
        "schema_version": 1,
        "id": session.id,
        "state": session.state.value,
        "roster": list(session.roster),
        "assumptions": registry_to_dict(session.assumptions)["assumptions"],
        "criteria": criteria_to_dict(session.criteria),
        "influences": [
            {"assumption": i.assumption_id, "value": i.value, "source": i.source}
            for i in session.influences
        ],
        "thresholds": {
            "pedigree": session.thresholds.pedigree,
            "influence": session.thresholds.influence,
        },
        "bands": {
            "weak_below": session.bands.weak_below,
            "strong_at": session.bands.strong_at,
        },
        "scores": [score_to_dict(s) for s in session.scores],
        "created_at": session.created_at,
        "closed_at": session.closed_at,
    }


def session_from_dict(doc: Mapping[str, Any], label: str = "session") -> WorkshopSession:
    check_keys(
        doc, label,
        required=("id", "state", "roster", "assumptions", "criteria"),
        optional=("influences", "thresholds", "bands", "scores", "created_at", "closed_at"),
        versioned=True,
    )
    thresholds_doc = doc.get("thresholds", {})
    bands_doc = doc.get("bands", {})
    session = WorkshopSession(
        session_id=str(doc["id"]),
        assumptions=registry_from_dict(
            {"assumptions": doc["assumptions"]}, label=f"{label}: assumptions"
        ),
        criteria=criteria_from_dict(doc["criteria"], label=f"{label}: criteria"),
        roster=[str(e) for e in doc["roster"]],
        influences=[
            InfluenceScore(str(i["assumption"]), float(i["value"]), str(i["source"]))
            for i in doc.get("influences", ())
        ],
        thresholds=Thresholds(
            pedigree=float(thresholds_doc.get("pedigree", 0.5)),
            influence=float(thresholds_doc.get("influence", 0.5)),
        ),
        bands=StrengthBands(
            weak_below=float(bands_doc.get("weak_below", 0.4)),
            strong_at=float(bands_doc.get("strong_at", 0.7)),
        ),
        created_at=doc.get("created_at"),
    )
    # Replay the log through the open state, then restore the stored state.
    session.state = SessionState.SCORING_OPEN
    for i, entry in enumerate(doc.get("scores", ())):
        session.submit(score_from_dict(entry, label=f"{label}: scores[{i}]"))
    session.state = SessionState(doc["state"])
    session.closed_at = doc.get("closed_at")
    return session


class SessionStore:
    """One JSON file per session in a data directory; single-writer per store.

    The lock serializes mutations so concurrent submissions are applied in
    one total order, and readers always see a consistent snapshot.
    """

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        self._cache: dict[str, WorkshopSession] = {}

    def _path(self, session_id: str) -> Path:
        return self.data_dir / f"session_{session_id}.json"

    def create(
        self,
        assumptions: AssumptionRegistry,
        criteria: CriteriaSet,
        roster: Sequence[str],
        influences: Iterable[InfluenceScore] = (),
        thresholds: Thresholds = Thresholds(),
        bands: StrengthBands = StrengthBands(),
        session_id: str | None = None,
    ) -> WorkshopSession:
        with self._lock:
            sid = session_id or uuid.uuid4().hex[:12]
            if self._path(sid).exists():
                raise ValueError(f"session {sid!r} already exists")
            session = WorkshopSession(sid, assumptions, criteria, roster, influences, thresholds, bands)
            self._cache[sid] = session
            self._save(session)
            return session

    def get(self, session_id: str) -> WorkshopSession:
        with self._lock:
            if session_id in self._cache:
                return self._cache[session_id]
            path = self._path(session_id)
            if not path.exists():
                raise UnknownIdError(f"unknown session id {session_id!r}")
            session = session_from_dict(read_json(path), label=str(path))
            self._cache[session_id] = session
            return session

    def list_ids(self) -> list[str]:
        with self._lock:
            ids = {p.stem.removeprefix("session_") for p in self.data_dir.glob("session_*.json")}
            ids.update(self._cache)
            return sorted(ids)

    def _save(self, session: WorkshopSession) -> None:
        write_json(self._path(session.id), session_to_dict(session))

    def open(self, session_id: str) -> WorkshopSession:
        with self._lock:
            session = self.get(session_id)
            session.open()
            self._save(session)
            return session

    def close(self, session_id: str) -> SessionSnapshot:
        with self._lock:
            session = self.get(session_id)
            snapshot = session.close()
            self._save(session)
            return snapshot

    def submit(self, session_id: str, record: ScoreRecord) -> tuple[int, int]:
        """Apply one score; returns (record id, new version)."""
        with self._lock:
            session = self.get(session_id)
            record_id = session.submit(record)
            self._save(session)
            return record_id, session.version

    def snapshot(self, session_id: str) -> SessionSnapshot:
        with self._lock:
            return self.get(session_id).snapshot()
