"""Command-line entry points.

Every command is deterministic given its inputs and seeds: identical
invocations produce byte-identical artifacts regardless of worker count.
"""
from __future__ import annotations

import functools

import click

from . import fixtures as fixtures_mod
from .audit import new_report, render_report, report_from_dict, report_to_dict
from .diagnostic import (
    InfluenceScore,
    Thresholds,
    attach_influence,
    build_diagram,
    diagram_to_csv,
    diagram_to_dict,
    diagram_to_svg,
)
from .errors import EvaluationError, SchemaError, UnknownIdError
from .jsonio import check_keys, read_json, write_json, write_text
from .models import load_model
from .pedigree import (
    StrengthBands,
    aggregate_pedigree,
    ballots_from_dict,
    criteria_from_dict,
    pedigree_result_from_dict,
    pedigree_result_to_dict,
    registry_from_dict,
    score_from_dict,
    shortlist_assumptions,
)
from .sensitivity import (
    build_trajectories,
    ee_result_from_dict,
    ee_result_to_csv,
    ee_result_to_dict,
    elementary_effects,
    estimate_sobol,
    normalize_scores,
    sobol_result_from_dict,
    sobol_result_to_csv,
    sobol_result_to_dict,
)
from .space import load_space


def friendly_errors(fn):
    """Map domain errors to clean nonzero exits instead of tracebacks."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (SchemaError, UnknownIdError, EvaluationError, ValueError) as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


@click.group()
@click.version_option(package_name="uqual")
def main() -> None:
    """Uncertainty-quality toolkit: sensitivity analysis, pedigree scoring,
    diagnostic diagrams, and sensitivity auditing."""


# --- sensitivity analysis -------------------------------------------------------


@main.group()
def sa() -> None:
    """Quantitative sensitivity analysis on a study file."""


@sa.command("morris")
@click.option("--space", "space_path", required=True, type=click.Path(), help="Study JSON with a parameters section.")
@click.option("--model", "model_path", required=True, type=click.Path(), help="Study JSON with a model section.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-r", "--trajectories", type=int, default=10, show_default=True)
@click.option("-p", "--levels", type=int, default=4, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("-o", "--out", required=True, help="Output prefix; writes <out>.json and <out>.csv.")
@friendly_errors
def sa_morris(space_path, model_path, seed, trajectories, levels, workers, out):
    """Elementary-effects screening (mu, mu*, sigma per parameter)."""
    space = load_space(space_path)
    model = load_model(model_path)
    ts = build_trajectories(space, r=trajectories, levels=levels, seed=seed)
    result = elementary_effects(model, space, ts, workers=workers)
    write_json(f"{out}.json", ee_result_to_dict(result))
    write_text(f"{out}.csv", ee_result_to_csv(result))
    click.echo(f"wrote {out}.json and {out}.csv")


@sa.command("sobol")
@click.option("--space", "space_path", required=True, type=click.Path())
@click.option("--model", "model_path", required=True, type=click.Path())
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-n", "--samples", type=int, default=10_000, show_default=True, help="Base sample size per matrix.")
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("-o", "--out", required=True, help="Output prefix; writes <out>.json and <out>.csv.")
@friendly_errors
def sa_sobol(space_path, model_path, seed, samples, workers, out):
    """Variance-based first-order and total indices."""
    space = load_space(space_path)
    model = load_model(model_path)
    result = estimate_sobol(model, space, n=samples, seed=seed, workers=workers)
    write_json(f"{out}.json", sobol_result_to_dict(result))
    write_text(f"{out}.csv", sobol_result_to_csv(result))
    click.echo(f"wrote {out}.json and {out}.csv")


# --- pedigree --------------------------------------------------------------------


def _load_criteria(ref: str):
    if ref in fixtures_mod.CRITERIA_SETS:
        return fixtures_mod.CRITERIA_SETS[ref]()
    return criteria_from_dict(read_json(ref), label=ref)


@main.group()
def pedigree() -> None:
    """Expert pedigree scoring."""


@pedigree.command("aggregate")
@click.option("--scores", "scores_path", required=True, type=click.Path(), help="Score document (criteria_set + scores).")
@click.option("--criteria", "criteria_ref", default=None, help="Criteria set name or JSON file; overrides the document.")
@click.option("--weak-below", type=float, default=0.4, show_default=True)
@click.option("--strong-at", type=float, default=0.7, show_default=True)
@click.option("-o", "--out", required=True, type=click.Path())
@friendly_errors
def pedigree_aggregate(scores_path, criteria_ref, weak_below, strong_at, out):
    """Aggregate score records into per-assumption pedigree strengths."""
    doc = read_json(scores_path)
    check_keys(doc, scores_path, required=("scores",), optional=("criteria_set",), versioned=True)
    if criteria_ref is None:
        criteria_ref = doc.get("criteria_set", "nusap-5")
    criteria = _load_criteria(criteria_ref) if isinstance(criteria_ref, str) else criteria_from_dict(criteria_ref)
    bands = StrengthBands(weak_below=weak_below, strong_at=strong_at)

    records = [score_from_dict(e, f"{scores_path}: scores[{i}]") for i, e in enumerate(doc["scores"])]
    live = {record.key: record for record in records}  # later entries supersede
    grouped: dict[str, list] = {}
    for record in live.values():
        grouped.setdefault(record.assumption_id, []).append(record)
    results = [aggregate_pedigree(recs, criteria, bands) for recs in grouped.values()]
    write_json(
        out,
        {
            "schema_version": 1,
            "criteria_set": criteria.name,
            "bands": {"weak_below": bands.weak_below, "strong_at": bands.strong_at},
            "results": [pedigree_result_to_dict(r) for r in results],
        },
    )
    click.echo(f"wrote {out} ({len(results)} assumptions)")


# --- diagnostic diagram ------------------------------------------------------------


def _load_sensitivity_result(path: str):
    doc = read_json(path)
    method = doc.get("method")
    if method == "morris":
        return ee_result_from_dict(doc)
    if method == "sobol":
        return sobol_result_from_dict(doc)
    raise SchemaError(f"{path}: expected a sensitivity result with method morris|sobol")


@main.group()
def diagram() -> None:
    """Diagnostic diagrams joining pedigree and sensitivity."""


@diagram.command("build")
@click.option("--pedigree", "pedigree_path", required=True, type=click.Path(), help="Output of `pedigree aggregate`.")
@click.option("--sensitivity", "sensitivity_path", default=None, type=click.Path(), help="Morris/Sobol result JSON (computed influence).")
@click.option("--registry", "registry_path", default=None, type=click.Path(), help="Assumption registry with parameter links (required with --sensitivity).")
@click.option("--elicited", "elicited_path", default=None, type=click.Path(), help="Elicited influence document.")
@click.option("--pedigree-threshold", type=float, default=0.5, show_default=True)
@click.option("--influence-threshold", type=float, default=0.5, show_default=True)
@click.option("-o", "--out", required=True, help="Output prefix; writes <out>.json, <out>.csv, <out>.svg.")
@friendly_errors
def diagram_build(pedigree_path, sensitivity_path, registry_path, elicited_path,
                  pedigree_threshold, influence_threshold, out):
    """Classify assumptions into quadrants, including the Q4 danger zone."""
    if sensitivity_path is None and elicited_path is None:
        raise click.ClickException("provide --sensitivity (with --registry) and/or --elicited")

    doc = read_json(pedigree_path)
    check_keys(doc, pedigree_path, required=("results",), optional=("criteria_set", "bands"), versioned=True)
    results = [pedigree_result_from_dict(e, f"{pedigree_path}: results[{i}]") for i, e in enumerate(doc["results"])]

    influences: dict[str, InfluenceScore] = {}
    methods = []
    if sensitivity_path is not None:
        if registry_path is None:
            raise click.ClickException("--sensitivity requires --registry for parameter links")
        registry = registry_from_dict(read_json(registry_path), label=registry_path)
        scores = normalize_scores(_load_sensitivity_result(sensitivity_path))
        for inf in attach_influence(list(registry), scores):
            influences[inf.assumption_id] = inf
        methods.append(scores.method)
    if elicited_path is not None:
        elicited_doc = read_json(elicited_path)
        check_keys(elicited_doc, elicited_path, required=("influences",), versioned=True)
        for aid, value in elicited_doc["influences"].items():
            influences[aid] = InfluenceScore(str(aid), float(value), "elicited")
        methods.append("elicited")

    thresholds = Thresholds(pedigree=pedigree_threshold, influence=influence_threshold)
    result = build_diagram(
        results, influences.values(), thresholds=thresholds, provenance={"methods": methods}
    )
    write_json(f"{out}.json", diagram_to_dict(result))
    write_text(f"{out}.csv", diagram_to_csv(result))
    write_text(f"{out}.svg", diagram_to_svg(result))
    click.echo(f"wrote {out}.json, {out}.csv, {out}.svg ({len(result.points)} points)")


# --- audit ---------------------------------------------------------------------------


@main.group()
def audit() -> None:
    """Seven-point sensitivity-auditing reports."""


@audit.command("new")
@click.option("--subject", required=True)
@click.option("--auditor", "auditors", multiple=True)
@click.option("--date", default="", help="ISO date; stored verbatim.")
@click.option("-o", "--out", required=True, type=click.Path())
@friendly_errors
def audit_new(subject, auditors, date, out):
    """Create a report skeleton with all seven items not yet assessed."""
    report = new_report(subject, auditors=tuple(auditors), date=date)
    write_json(out, report_to_dict(report))
    click.echo(f"wrote {out}")


@audit.command("render")
@click.option("--report", "report_path", required=True, type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["markdown", "json"]), default="markdown", show_default=True)
@click.option("-o", "--out", default=None, type=click.Path(), help="Write to file instead of stdout.")
@friendly_errors
def audit_render(report_path, fmt, out):
    """Render a report deterministically in checklist order."""
    report = report_from_dict(read_json(report_path), label=report_path)
    rendered = render_report(report, fmt)
    if out:
        write_text(out, rendered)
        click.echo(f"wrote {out}")
    else:
        click.echo(rendered, nl=False)


# --- survey ---------------------------------------------------------------------------


@main.group()
def survey() -> None:
    """Shortlist surveys over assumption registries."""


@survey.command("shortlist")
@click.option("--ballots", "ballots_path", required=True, type=click.Path())
@click.option("--registry", "registry_path", required=True, type=click.Path())
@click.option("-k", "--count", type=int, required=True, help="Number of assumptions to select.")
@click.option("-o", "--out", default=None, type=click.Path())
@friendly_errors
def survey_shortlist(ballots_path, registry_path, count, out):
    """Select the k most critical assumptions by approval vote."""
    registry = registry_from_dict(read_json(registry_path), label=registry_path)
    ballots = ballots_from_dict(read_json(ballots_path), label=ballots_path)
    result = shortlist_assumptions(registry, ballots, k=count)
    doc = {
        "schema_version": 1,
        "selected": list(result.selected),
        "tied_at_cutoff": list(result.tied_at_cutoff),
        "ranking": [
            {"assumption": e.assumption_id, "approvals": e.approvals, "mentions": e.mentions}
            for e in result.ranking
        ],
    }
    if out:
        write_json(out, doc)
        click.echo(f"wrote {out}")
    else:
        from .jsonio import canonical_dumps

        click.echo(canonical_dumps(doc), nl=False)


# --- fixtures and service ----------------------------------------------------------------


@main.command("fixtures")
@click.option("--dest", required=True, type=click.Path(), help="Directory for the bundled fixture files.")
@friendly_errors
def fixtures_cmd(dest):
    """Materialize the bundled fixtures (studies, registries, criteria, audit)."""
    written = fixtures_mod.dump_fixtures(dest)
    click.echo(f"wrote {len(written)} fixture files to {dest}")


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--data-dir", default=None, type=click.Path(), help="Session directory (default: $UQUAL_DATA_DIR or ./uqual-data).")
def serve(host, port, data_dir):
    """Run the workshop scoring service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(data_dir=data_dir), host=host, port=port)


if __name__ == "__main__":
    main()
