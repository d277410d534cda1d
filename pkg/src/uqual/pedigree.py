"""Epistemic appraisal: assumption registries, shortlist surveys, criterion
scales, expert scoring, and aggregation into pedigree strengths.

Scores live on the conventional 0..4 pedigree scale.  Aggregation is
median-of-experts per criterion followed by mean-of-criteria, normalized by
the scale maximum: robust to outlier experts and invariant to expert
ordering.  Medians use the lower-median convention for even counts and
quartiles use nearest-rank, so every intermediate statistic is an integer
actually submitted by some expert.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .errors import SchemaError, UnknownIdError
from .jsonio import check_keys

SCALE_MAX = 4


@dataclass(frozen=True)
class Assumption:
    """A model assumption under appraisal."""

    id: str
    title: str
    statement: str
    category: str = ""
    value_ladenness_notes: str = ""
    source_refs: tuple[str, ...] = ()
    parameter_links: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("assumption id must be nonempty")
        if not self.statement:
            raise ValueError(f"assumption {self.id!r}: statement must be nonempty")
        object.__setattr__(self, "source_refs", tuple(self.source_refs))
        object.__setattr__(self, "parameter_links", tuple(self.parameter_links))


class AssumptionRegistry:
    """Ordered collection of assumptions with unique ids."""

    def __init__(self, assumptions: Iterable[Assumption] = ()):
        self._items: dict[str, Assumption] = {}
        for a in assumptions:
            self.add(a)

    def add(self, assumption: Assumption) -> None:
        if assumption.id in self._items:
            raise ValueError(f"duplicate assumption id {assumption.id!r}")
        self._items[assumption.id] = assumption

    def get(self, assumption_id: str) -> Assumption:
        try:
            return self._items[assumption_id]
        except KeyError:
            raise UnknownIdError(f"unknown assumption id {assumption_id!r}") from None

    def __contains__(self, assumption_id: str) -> bool:
        return assumption_id in self._items

    def __iter__(self) -> Iterator[Assumption]:
        return iter(self._items.values())

    def __len__(self) -> int:
        return len(self._items)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(self._items)


@dataclass(frozen=True)
class CriterionDef:
    """A pedigree criterion with descriptions anchoring each score 0..4."""

    id: str
    name: str
    description: str
    scale_anchors: tuple[str, str, str, str, str]

    def __post_init__(self) -> None:
        anchors = tuple(self.scale_anchors)
        if len(anchors) != SCALE_MAX + 1:
            raise ValueError(
                f"criterion {self.id!r}: exactly {SCALE_MAX + 1} scale anchors required"
            )
        object.__setattr__(self, "scale_anchors", anchors)


@dataclass(frozen=True)
class CriteriaSet:
    name: str
    criteria: tuple[CriterionDef, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "criteria", tuple(self.criteria))
        if not self.criteria:
            raise ValueError("criteria set must be nonempty")
        ids = [c.id for c in self.criteria]
        if len(set(ids)) != len(ids):
            raise ValueError("criterion ids must be unique within a set")

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.criteria)

    def __contains__(self, criterion_id: str) -> bool:
        return criterion_id in self.ids


@dataclass(frozen=True)
class ScoreRecord:
    expert_id: str
    assumption_id: str
    criterion_id: str
    score: int
    rationale: str = ""
    timestamp: str = ""

    def __post_init__(self) -> None:
        if not isinstance(self.score, int) or isinstance(self.score, bool):
            raise ValueError(f"score must be an integer, got {self.score!r}")
        if not 0 <= self.score <= SCALE_MAX:
            raise ValueError(f"score {self.score} outside score scale 0..{SCALE_MAX}")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.expert_id, self.assumption_id, self.criterion_id)


class ScoreLog:
    """Append-only score log with a live view.

    At most one record per (expert, assumption, criterion) is live; later
    submissions supersede earlier ones.  The full submission history is kept
    for archival export.
    """

    def __init__(
        self,
        assumptions: AssumptionRegistry,
        criteria: CriteriaSet,
        roster: Sequence[str] | None = None,
    ):
        self.assumptions = assumptions
        self.criteria = criteria
        self.roster = tuple(roster) if roster is not None else None
        self._log: list[ScoreRecord] = []

    def record(self, score: ScoreRecord) -> int:
        """Validate and store a record; returns its sequence id (1-based)."""
        if self.roster is not None and score.expert_id not in self.roster:
            raise UnknownIdError(f"expert {score.expert_id!r} not on the roster")
        if score.assumption_id not in self.assumptions:
            raise UnknownIdError(f"unknown assumption id {score.assumption_id!r}")
        if score.criterion_id not in self.criteria:
            raise UnknownIdError(f"unknown criterion id {score.criterion_id!r}")
        self._log.append(score)
        return len(self._log)

    @property
    def entries(self) -> tuple[ScoreRecord, ...]:
        return tuple(self._log)

    def live(self) -> dict[tuple[str, str, str], ScoreRecord]:
        view: dict[tuple[str, str, str], ScoreRecord] = {}
        for record in self._log:
            view[record.key] = record
        return view

    def live_for(self, assumption_id: str) -> list[ScoreRecord]:
        return [r for r in self.live().values() if r.assumption_id == assumption_id]

    def scored_assumptions(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for record in self.live().values():
            seen.setdefault(record.assumption_id, None)
        return tuple(seen)

    def __len__(self) -> int:
        return len(self._log)


def lower_median(values: Sequence[int]) -> int:
    """Median with the lower of the two middle values for even counts."""
    ordered = sorted(values)
    if not ordered:
        raise ValueError("median of empty sequence")
    n = len(ordered)
    return ordered[(n + 1) // 2 - 1]


def nearest_rank(values: Sequence[int], q: float) -> int:
    """Value at 1-based rank ceil(q*n) of the sorted scores."""
    ordered = sorted(values)
    rank = max(1, math.ceil(q * len(ordered)))
    return ordered[rank - 1]


@dataclass(frozen=True)
class StrengthBands:
    """Half-open strength bands: [0, weak_below) weak, [weak_below,
    strong_at) moderate, [strong_at, 1] strong."""

    weak_below: float = 0.4
    strong_at: float = 0.7

    def __post_init__(self) -> None:
        if not 0.0 < self.weak_below < self.strong_at <= 1.0:
            raise ValueError(
                f"bands not ordered: need 0 < weak_below < strong_at <= 1, "
                f"got ({self.weak_below}, {self.strong_at})"
            )


def classify_strength(strength: float, bands: StrengthBands = StrengthBands()) -> str:
    if not 0.0 <= strength <= 1.0:
        raise ValueError(f"strength {strength} outside [0, 1]")
    if strength < bands.weak_below:
        return "weak"
    if strength < bands.strong_at:
        return "moderate"
    return "strong"


@dataclass(frozen=True)
class CriterionStats:
    median: int
    iqr: int
    experts: int


@dataclass(frozen=True)
class PedigreeResult:
    assumption_id: str
    criteria: Mapping[str, CriterionStats]
    strength: float
    band: str
    gaps: tuple[str, ...] = ()  # criteria in the set with no scores


def disagreement(records: Iterable[ScoreRecord]) -> dict[str, int]:
    """Per-criterion interquartile range (Q3 - Q1, nearest-rank quartiles)."""
    by_criterion: dict[str, list[int]] = {}
    for r in records:
        by_criterion.setdefault(r.criterion_id, []).append(r.score)
    return {
        cid: nearest_rank(scores, 0.75) - nearest_rank(scores, 0.25)
        for cid, scores in by_criterion.items()
    }


def aggregate_pedigree(
    records: Iterable[ScoreRecord],
    criteria_set: CriteriaSet,
    bands: StrengthBands = StrengthBands(),
) -> PedigreeResult:
    """Aggregate one assumption's live records into a pedigree strength.

    strength = mean(per-criterion lower-medians) / 4; criteria with no
    scores are excluded from the mean and listed as gaps.
    """
    records = list(records)
    if not records:
        raise ValueError("no scores to aggregate")
    assumption_ids = {r.assumption_id for r in records}
    if len(assumption_ids) != 1:
        raise ValueError(f"records span multiple assumptions: {sorted(assumption_ids)}")
    (assumption_id,) = assumption_ids

    by_criterion: dict[str, list[int]] = {}
    experts_per_criterion: dict[str, set[str]] = {}
    for r in records:
        if r.criterion_id not in criteria_set:
            raise UnknownIdError(f"unknown criterion id {r.criterion_id!r}")
        by_criterion.setdefault(r.criterion_id, []).append(r.score)
        experts_per_criterion.setdefault(r.criterion_id, set()).add(r.expert_id)

    iqrs = disagreement(records)
    stats: dict[str, CriterionStats] = {}
    medians: list[int] = []
    gaps: list[str] = []
    for criterion in criteria_set.criteria:
        scores = by_criterion.get(criterion.id)
        if not scores:
            gaps.append(criterion.id)
            continue
        med = lower_median(scores)
        medians.append(med)
        stats[criterion.id] = CriterionStats(
            median=med, iqr=iqrs[criterion.id], experts=len(experts_per_criterion[criterion.id])
        )
    strength = sum(medians) / len(medians) / SCALE_MAX
    return PedigreeResult(
        assumption_id=assumption_id,
        criteria=stats,
        strength=strength,
        band=classify_strength(strength, bands),
        gaps=tuple(gaps),
    )


def aggregate_all(
    log: ScoreLog, bands: StrengthBands = StrengthBands()
) -> list[PedigreeResult]:
    """Pedigree results for every assumption with at least one live score."""
    return [
        aggregate_pedigree(log.live_for(aid), log.criteria, bands)
        for aid in log.scored_assumptions()
    ]


# --- shortlist survey ---------------------------------------------------------


@dataclass(frozen=True)
class SurveyBallot:
    """Approval-style ballot: the assumptions one expert marks as critical."""

    expert_id: str
    selected: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "selected", tuple(self.selected))
        if len(set(self.selected)) != len(self.selected):
            raise ValueError(f"ballot of {self.expert_id!r} contains duplicate ids")


@dataclass(frozen=True)
class RankEntry:
    assumption_id: str
    approvals: int  # distinct experts approving
    mentions: int   # ballots listing the assumption


@dataclass(frozen=True)
class ShortlistResult:
    selected: tuple[str, ...]
    ranking: tuple[RankEntry, ...]
    tied_at_cutoff: tuple[str, ...] = ()


def shortlist_assumptions(
    registry: AssumptionRegistry, ballots: Iterable[SurveyBallot], k: int
) -> ShortlistResult:
    """Top-k assumptions by approval count.

    Ties break by total mentions, then lexicographic id, making the output a
    deterministic total order.  The full ranking is retained, and ids tied
    with the cutoff entry are reported so facilitators can see near-misses.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    approvals: dict[str, set[str]] = {aid: set() for aid in registry.ids}
    mentions: dict[str, int] = {aid: 0 for aid in registry.ids}
    for ballot in ballots:
        for aid in ballot.selected:
            if aid not in registry:
                raise UnknownIdError(f"unknown assumption id {aid!r} in ballot of {ballot.expert_id!r}")
            approvals[aid].add(ballot.expert_id)
            mentions[aid] += 1

    ranking = sorted(
        (RankEntry(aid, len(approvals[aid]), mentions[aid]) for aid in registry.ids),
        key=lambda e: (-e.approvals, -e.mentions, e.assumption_id),
    )
    selected = tuple(e.assumption_id for e in ranking[:k])
    tied: tuple[str, ...] = ()
    if 0 < k < len(ranking):
        cutoff = ranking[k - 1]
        group = [
            e.assumption_id
            for e in ranking
            if (e.approvals, e.mentions) == (cutoff.approvals, cutoff.mentions)
        ]
        if len(group) > 1 and any(aid not in selected for aid in group):
            tied = tuple(group)
    return ShortlistResult(selected=selected, ranking=tuple(ranking), tied_at_cutoff=tied)


# --- serialization -------------------------------------------------------------

_ASSUMPTION_REQUIRED = ("id", "title", "statement")
_ASSUMPTION_OPTIONAL = ("category", "value_ladenness_notes", "source_refs", "parameter_links")
_SCORE_REQUIRED = ("expert", "assumption", "criterion", "score")
_SCORE_OPTIONAL = ("rationale", "timestamp")


def assumption_to_dict(a: Assumption) -> dict[str, Any]:
    return {
        "id": a.id,
        "title": a.title,
        "statement": a.statement,
        "category": a.category,
        "value_ladenness_notes": a.value_ladenness_notes,
        "source_refs": list(a.source_refs),
        "parameter_links": list(a.parameter_links),
    }


def assumption_from_dict(doc: Mapping[str, Any], label: str = "assumption") -> Assumption:
    check_keys(doc, label, required=_ASSUMPTION_REQUIRED, optional=_ASSUMPTION_OPTIONAL)
    try:
        return Assumption(
            id=str(doc["id"]),
            title=str(doc["title"]),
            statement=str(doc["statement"]),
            category=str(doc.get("category", "")),
            value_ladenness_notes=str(doc.get("value_ladenness_notes", "")),
            source_refs=tuple(doc.get("source_refs", ())),
            parameter_links=tuple(doc.get("parameter_links", ())),
        )
    except ValueError as exc:
        raise SchemaError(f"{label}: {exc}") from exc


def registry_to_dict(registry: AssumptionRegistry) -> dict[str, Any]:
    return {"schema_version": 1, "assumptions": [assumption_to_dict(a) for a in registry]}


def registry_from_dict(doc: Mapping[str, Any], label: str = "registry") -> AssumptionRegistry:
    check_keys(doc, label, required=("assumptions",), versioned=True)
    entries = doc["assumptions"]
    if not isinstance(entries, list):
        raise SchemaError(f"{label}: \"assumptions\" must be an array")
    try:
        return AssumptionRegistry(
            assumption_from_dict(e, f"{label}: assumptions[{i}]") for i, e in enumerate(entries)
        )
    except ValueError as exc:
        raise SchemaError(f"{label}: {exc}") from exc


def criteria_to_dict(criteria: CriteriaSet) -> dict[str, Any]:
    return {
        "schema_version": 1,
        "name": criteria.name,
        "criteria": [
            {
                "id": c.id,
                "name": c.name,
                "description": c.description,
                "scale_anchors": list(c.scale_anchors),
            }
            for c in criteria.criteria
        ],
    }


def criteria_from_dict(doc: Mapping[str, Any], label: str = "criteria") -> CriteriaSet:
    check_keys(doc, label, required=("name", "criteria"), versioned=True)
    defs = []
    for i, entry in enumerate(doc["criteria"]):
        where = f"{label}: criteria[{i}]"
        check_keys(entry, where, required=("id", "name", "description", "scale_anchors"))
        anchors = entry["scale_anchors"]
        if not isinstance(anchors, list) or len(anchors) != SCALE_MAX + 1:
            raise SchemaError(f"{where}: exactly {SCALE_MAX + 1} scale anchors required")
        defs.append(
            CriterionDef(
                id=str(entry["id"]),
                name=str(entry["name"]),
                description=str(entry["description"]),
                scale_anchors=tuple(str(a) for a in anchors),
            )
        )
    try:
        return CriteriaSet(name=str(doc["name"]), criteria=tuple(defs))
    except ValueError as exc:
        raise SchemaError(f"{label}: {exc}") from exc


def score_to_dict(record: ScoreRecord) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "expert": record.expert_id,
        "assumption": record.assumption_id,
        "criterion": record.criterion_id,
        "score": record.score,
    }
    if record.rationale:
        doc["rationale"] = record.rationale
    if record.timestamp:
        doc["timestamp"] = record.timestamp
    return doc


def score_from_dict(doc: Mapping[str, Any], label: str = "score") -> ScoreRecord:
    check_keys(doc, label, required=_SCORE_REQUIRED, optional=_SCORE_OPTIONAL)
    raw = doc["score"]
    if not isinstance(raw, int) or isinstance(raw, bool):
        raise SchemaError(f"{label}: score must be an integer, got {raw!r}")
    try:
        return ScoreRecord(
            expert_id=str(doc["expert"]),
            assumption_id=str(doc["assumption"]),
            criterion_id=str(doc["criterion"]),
            score=raw,
            rationale=str(doc.get("rationale", "")),
            timestamp=str(doc.get("timestamp", "")),
        )
    except ValueError as exc:
        raise SchemaError(f"{label}: {exc}") from exc


def ballots_from_dict(doc: Mapping[str, Any], label: str = "ballots") -> list[SurveyBallot]:
    check_keys(doc, label, required=("ballots",), versioned=True)
    ballots = []
    for i, entry in enumerate(doc["ballots"]):
        where = f"{label}: ballots[{i}]"
        check_keys(entry, where, required=("expert", "selected"))
        try:
            ballots.append(
                SurveyBallot(expert_id=str(entry["expert"]), selected=tuple(entry["selected"]))
            )
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from exc
    return ballots


def pedigree_result_to_dict(result: PedigreeResult) -> dict[str, Any]:
    return {
        "assumption": result.assumption_id,
        "strength": result.strength,
        "band": result.band,
        "criteria": {
            cid: {"median": s.median, "iqr": s.iqr, "experts": s.experts}
            for cid, s in result.criteria.items()
        },
        "gaps": list(result.gaps),
    }


def pedigree_result_from_dict(doc: Mapping[str, Any], label: str = "pedigree") -> PedigreeResult:
    check_keys(doc, label, required=("assumption", "strength", "band"), optional=("criteria", "gaps"))
    criteria = {
        cid: CriterionStats(median=int(s["median"]), iqr=int(s["iqr"]), experts=int(s["experts"]))
        for cid, s in doc.get("criteria", {}).items()
    }
    return PedigreeResult(
        assumption_id=str(doc["assumption"]),
        criteria=criteria,
        strength=float(doc["strength"]),
        band=str(doc["band"]),
        gaps=tuple(doc.get("gaps", ())),
    )


def scores_to_csv(records: Iterable[ScoreRecord]) -> str:
    """Workshop-archival CSV of the full submission log."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["expert", "assumption", "criterion", "score", "timestamp"])
    for r in records:
        writer.writerow([r.expert_id, r.assumption_id, r.criterion_id, r.score, r.timestamp])
    return buf.getvalue()
