"""Diagnostic diagram: pedigree strength (x) against sensitivity/influence (y).

Quadrant convention (pedigree rightward, influence upward, boundary counts
as strong/high):

    Q4  danger zone   x <  t_p,  y >= t_i   (high influence, weak pedigree)
    Q2  watch         x >= t_p,  y >= t_i
    Q3  low priority  x <  t_p,  y <  t_i
    Q1  comfortable   x >= t_p,  y <  t_i
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Union
from xml.sax.saxutils import escape as _xml_escape

from .errors import SchemaError, UnknownIdError
from .jsonio import check_keys, sig6
from .pedigree import Assumption, PedigreeResult
from .sensitivity.scores import SensitivityScores

AXIS_LABELS = {"x": "pedigree strength", "y": "sensitivity / influence"}

QUADRANTS = ("Q1", "Q2", "Q3", "Q4")


@dataclass(frozen=True)
class Thresholds:
    pedigree: float = 0.5
    influence: float = 0.5

    def __post_init__(self) -> None:
        for name, v in (("pedigree", self.pedigree), ("influence", self.influence)):
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} threshold {v} outside (0, 1)")


@dataclass(frozen=True)
class InfluenceScore:
    """Per-assumption influence in [0, 1]; source records how it was obtained."""

    assumption_id: str
    value: float
    source: str  # "computed:EE" | "computed:Sobol-ST" | "elicited"

    def __post_init__(self) -> None:
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(
                f"influence {self.value} for {self.assumption_id!r} outside [0, 1]"
            )


@dataclass(frozen=True)
class DiagnosticPoint:
    assumption_id: str
    x: float  # pedigree strength
    y: float  # influence
    quadrant: str
    source: str = ""


@dataclass(frozen=True)
class DiagnosticDiagram:
    points: tuple[DiagnosticPoint, ...]
    thresholds: Thresholds
    labels: Mapping[str, str] = field(default_factory=lambda: dict(AXIS_LABELS))
    provenance: Mapping[str, Any] = field(default_factory=dict)
    gaps: Mapping[str, tuple[str, ...]] = field(default_factory=dict)


def classify_quadrant(x: float, y: float, thresholds: Thresholds = Thresholds()) -> str:
    """Total function on [0,1]^2; y >= threshold counts high, x >= counts strong."""
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError(f"({x}, {y}) outside the unit square")
    strong = x >= thresholds.pedigree
    high = y >= thresholds.influence
    if strong and high:
        return "Q2"
    if strong:
        return "Q1"
    if high:
        return "Q4"
    return "Q3"


def attach_influence(
    assumptions: Iterable[Assumption],
    scores: Union[SensitivityScores, Mapping[str, float]],
) -> list[InfluenceScore]:
    """Assumption-level influence from parameter scores or elicited values.

    The computed path takes the max normalized score over an assumption's
    linked parameters (an assumption is as influential as its most
    influential parameter); the elicited path passes values through.
    """
    assumptions = list(assumptions)
    influences = []
    if isinstance(scores, SensitivityScores):
        source = f"computed:{scores.method}"
        for a in assumptions:
            if not a.parameter_links:
                raise ValueError(
                    f"unlinked assumption {a.id!r}: the computed path requires parameter_links"
                )
            missing = [p for p in a.parameter_links if p not in scores.scores]
            if missing:
                raise UnknownIdError(
                    f"assumption {a.id!r} links unknown parameter(s): {', '.join(missing)}"
                )
            value = max(scores.scores[p] for p in a.parameter_links)
            influences.append(InfluenceScore(a.id, value, source))
    else:
        by_id = {str(k): float(v) for k, v in dict(scores).items()}
        stray = sorted(set(by_id) - {a.id for a in assumptions})
        if stray:
            raise UnknownIdError(
                f"elicited values for unregistered assumption(s): {', '.join(stray)}"
            )
        for a in assumptions:
            if a.id in by_id:
                influences.append(InfluenceScore(a.id, by_id[a.id], "elicited"))
    return influences


def build_diagram(
    pedigree_results: Iterable[PedigreeResult],
    influences: Iterable[InfluenceScore],
    thresholds: Thresholds = Thresholds(),
    provenance: Mapping[str, Any] | None = None,
) -> DiagnosticDiagram:
    """Join the two axes into classified points, one per assumption.

    Assumptions present on only one axis are listed as gaps, not plotted.
    """
    strengths: dict[str, float] = {}
    for result in pedigree_results:
        if result.assumption_id in strengths:
            raise ValueError(f"duplicate assumption id {result.assumption_id!r} in pedigree results")
        strengths[result.assumption_id] = result.strength
    influence_map: dict[str, InfluenceScore] = {}
    for inf in influences:
        if inf.assumption_id in influence_map:
            raise ValueError(f"duplicate assumption id {inf.assumption_id!r} in influences")
        influence_map[inf.assumption_id] = inf

    points = []
    for aid, inf in influence_map.items():
        if aid not in strengths:
            continue
        x = strengths[aid]
        y = inf.value
        points.append(
            DiagnosticPoint(aid, x, y, classify_quadrant(x, y, thresholds), inf.source)
        )
    gaps = {
        "missing_influence": tuple(a for a in strengths if a not in influence_map),
        "missing_pedigree": tuple(a for a in influence_map if a not in strengths),
    }
    return DiagnosticDiagram(
        points=tuple(points),
        thresholds=thresholds,
        labels=dict(AXIS_LABELS),
        provenance=dict(provenance or {}),
        gaps=gaps,
    )


# --- JSON ----------------------------------------------------------------------


def diagram_to_dict(diagram: DiagnosticDiagram) -> dict[str, Any]:
    return {
        "schema_version": 1,
        "thresholds": {
            "pedigree": diagram.thresholds.pedigree,
            "influence": diagram.thresholds.influence,
        },
        "labels": dict(diagram.labels),
        "provenance": dict(diagram.provenance),
        "gaps": {k: list(v) for k, v in diagram.gaps.items()},
        "points": [
            {
                "assumption": p.assumption_id,
                "pedigree": p.x,
                "influence": p.y,
                "quadrant": p.quadrant,
                "source": p.source,
            }
            for p in diagram.points
        ],
    }


def diagram_from_dict(doc: Mapping[str, Any], label: str = "diagram") -> DiagnosticDiagram:
    check_keys(
        doc, label,
        required=("thresholds", "points"),
        optional=("labels", "provenance", "gaps"),
        versioned=True,
    )
    thresholds = Thresholds(
        pedigree=float(doc["thresholds"]["pedigree"]),
        influence=float(doc["thresholds"]["influence"]),
    )
    points = []
    for i, entry in enumerate(doc["points"]):
        check_keys(
            entry, f"{label}: points[{i}]",
            required=("assumption", "pedigree", "influence", "quadrant"),
            optional=("source",),
        )
        if entry["quadrant"] not in QUADRANTS:
            raise SchemaError(f"{label}: points[{i}]: unknown quadrant {entry['quadrant']!r}")
        points.append(
            DiagnosticPoint(
                assumption_id=str(entry["assumption"]),
                x=float(entry["pedigree"]),
                y=float(entry["influence"]),
                quadrant=str(entry["quadrant"]),
                source=str(entry.get("source", "")),
            )
        )
    return DiagnosticDiagram(
        points=tuple(points),
        thresholds=thresholds,
        labels=dict(doc.get("labels", AXIS_LABELS)),
        provenance=dict(doc.get("provenance", {})),
        gaps={k: tuple(v) for k, v in doc.get("gaps", {}).items()},
    )


# --- CSV -----------------------------------------------------------------------


def diagram_to_csv(diagram: DiagnosticDiagram) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["assumption", "pedigree", "influence", "quadrant", "source"])
    for p in diagram.points:
        writer.writerow([p.assumption_id, sig6(p.x), sig6(p.y), p.quadrant, p.source])
    return buf.getvalue()


def diagram_from_csv(text: str, thresholds: Thresholds = Thresholds()) -> DiagnosticDiagram:
    """Re-import an exported CSV; stored quadrant labels are authoritative."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["assumption", "pedigree", "influence", "quadrant", "source"]:
        raise SchemaError(f"unexpected diagram CSV header: {header}")
    points = []
    for row in reader:
        if not row:
            continue
        aid, x, y, quadrant, source = row
        if quadrant not in QUADRANTS:
            raise SchemaError(f"unknown quadrant {quadrant!r} for {aid!r}")
        points.append(DiagnosticPoint(aid, float(x), float(y), quadrant, source))
    return DiagnosticDiagram(points=tuple(points), thresholds=thresholds)


# --- SVG -----------------------------------------------------------------------

_SVG_WIDTH = 640
_SVG_HEIGHT = 480
_MARGIN = 60


def _sx(x: float) -> float:
    return _MARGIN + x * (_SVG_WIDTH - 2 * _MARGIN)


def _sy(y: float) -> float:
    return _SVG_HEIGHT - _MARGIN - y * (_SVG_HEIGHT - 2 * _MARGIN)


def diagram_to_svg(diagram: DiagnosticDiagram) -> str:
    """Standalone SVG: shaded Q4 region, two threshold lines, one marker per point."""
    tx = _sx(diagram.thresholds.pedigree)
    ty = _sy(diagram.thresholds.influence)
    left, right = _sx(0.0), _sx(1.0)
    top, bottom = _sy(1.0), _sy(0.0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_WIDTH}" height="{_SVG_HEIGHT}" '
        f'viewBox="0 0 {_SVG_WIDTH} {_SVG_HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        # Q4 danger zone: weak pedigree (left of tx), high influence (above ty).
        f'<rect class="q4-zone" x="{left:.1f}" y="{top:.1f}" width="{tx - left:.1f}" '
        f'height="{ty - top:.1f}" fill="#fbdcdc"/>',
        f'<text class="q4-label" x="{left + 8:.1f}" y="{top + 18:.1f}" '
        'font-size="13" fill="#a33">Q4 danger zone</text>',
        f'<line class="threshold" x1="{tx:.1f}" y1="{top:.1f}" x2="{tx:.1f}" y2="{bottom:.1f}" '
        'stroke="#888" stroke-dasharray="5,4"/>',
        f'<line class="threshold" x1="{left:.1f}" y1="{ty:.1f}" x2="{right:.1f}" y2="{ty:.1f}" '
        'stroke="#888" stroke-dasharray="5,4"/>',
        f'<rect class="frame" x="{left:.1f}" y="{top:.1f}" width="{right - left:.1f}" '
        f'height="{bottom - top:.1f}" fill="none" stroke="black"/>',
        f'<text class="axis-label" x="{(left + right) / 2:.1f}" y="{_SVG_HEIGHT - 18}" '
        f'font-size="14" text-anchor="middle">'
        f'{_xml_escape(diagram.labels.get("x", AXIS_LABELS["x"]))}</text>',
        f'<text class="axis-label" x="18" y="{(top + bottom) / 2:.1f}" font-size="14" '
        f'text-anchor="middle" transform="rotate(-90 18 {(top + bottom) / 2:.1f})">'
        f'{_xml_escape(diagram.labels.get("y", AXIS_LABELS["y"]))}</text>',
    ]
    for tick in (0.0, 0.5, 1.0):
        parts.append(
            f'<text class="tick" x="{_sx(tick):.1f}" y="{bottom + 16:.1f}" font-size="11" '
            f'text-anchor="middle">{tick:g}</text>'
        )
        parts.append(
            f'<text class="tick" x="{left - 10:.1f}" y="{_sy(tick) + 4:.1f}" font-size="11" '
            f'text-anchor="end">{tick:g}</text>'
        )
    for p in diagram.points:
        fill = "#c0392b" if p.quadrant == "Q4" else "#2c5f8a"
        name = _xml_escape(p.assumption_id, {'"': "&quot;"})
        parts.append(
            f'<circle class="point" data-assumption="{name}" data-quadrant="{p.quadrant}" '
            f'cx="{_sx(p.x):.1f}" cy="{_sy(p.y):.1f}" r="5" fill="{fill}"/>'
        )
        parts.append(
            f'<text class="point-label" x="{_sx(p.x) + 7:.1f}" y="{_sy(p.y) - 6:.1f}" '
            f'font-size="11">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
