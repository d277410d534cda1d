import json

from uqual.audit import ChecklistItem, Verdict, completeness, render_report, report_from_dict
from uqual.diagnostic import attach_influence, build_diagram
from uqual.fixtures import (
    dump_fixtures,
    ecological_footprint_audit,
    esme_criteria,
    esme_like_registry,
    esme_like_scores,
    esme_like_sensitivity,
    externe_assumptions,
    externe_ballots,
    externe_gross_list,
    keepin_config,
    keepin_space,
    nets_assumptions,
    nets_elicited_influence,
    nets_example_scores,
    nusap_criteria,
)
from uqual.models import evaluate_portfolio, load_model
from uqual.pedigree import ScoreLog, aggregate_all, shortlist_assumptions
from uqual.sensitivity import normalize_scores
from uqual.space import load_space, validate_space


class TestKeepinFixture:
    def test_space_valid(self):
        assert validate_space(keepin_space()).ok

    def test_baseline_all_nuclear(self):
        out = evaluate_portfolio(keepin_config(), keepin_space().baseline_point())
        assert out.share("nuclear") == 1.0

    def test_tipping_at_published_magnitudes(self):
        out = evaluate_portfolio(keepin_config(), keepin_space().point([1.16, 1.07]))
        assert out.share("nuclear") == 0.0


class TestCriteria:
    def test_nusap_five_criteria(self):
        criteria = nusap_criteria()
        assert criteria.ids == (
            "proxy",
            "empirical_basis",
            "methodological_rigour",
            "validation",
            "theoretical_understanding",
        )
        assert all(len(c.scale_anchors) == 5 for c in criteria.criteria)

    def test_esme_extension_adds_two(self):
        criteria = esme_criteria()
        assert criteria.ids[-2:] == ("justifiability", "peer_agreement")
        assert len(criteria.criteria) == 7


class TestRegistries:
    def test_critical_list_has_six(self):
        assert len(externe_assumptions()) == 6

    def test_gross_list_has_thirty_including_criticals(self):
        gross = externe_gross_list()
        assert len(gross) == 30
        for aid in externe_assumptions().ids:
            assert aid in gross

    def test_ballots_shortlist_to_the_six_criticals(self):
        result = shortlist_assumptions(externe_gross_list(), externe_ballots(), k=6)
        assert set(result.selected) == set(externe_assumptions().ids)

    def test_nets_registry_has_nine_in_three_categories(self):
        registry = nets_assumptions()
        assert len(registry) == 9
        assert {a.category for a in registry} == {"bioenergy", "ccs", "cross-cutting"}

    def test_nets_elicited_covers_registry(self):
        assert set(nets_elicited_influence()) == set(nets_assumptions().ids)

    def test_nets_workshop_pipeline(self):
        log = ScoreLog(nets_assumptions(), nusap_criteria())
        for record in nets_example_scores():
            log.record(record)
        results = aggregate_all(log)
        influences = attach_influence(list(nets_assumptions()), nets_elicited_influence())
        diagram = build_diagram(results, influences)
        assert len(diagram.points) == 9
        assert all(p.source == "elicited" for p in diagram.points)
        assert sum(p.quadrant == "Q4" for p in diagram.points) >= 5


class TestEsmeLikeFixture:
    def test_strengths_hit_designed_values(self):
        log = ScoreLog(esme_like_registry(), nusap_criteria())
        for record in esme_like_scores():
            log.record(record)
        strengths = {r.assumption_id: r.strength for r in aggregate_all(log)}
        assert strengths == {"BioRES": 0.3, "CCS_mbr": 0.35, "ElecDemand": 0.8}

    def test_diagram_places_biores_in_danger_zone(self):
        log = ScoreLog(esme_like_registry(), nusap_criteria())
        for record in esme_like_scores():
            log.record(record)
        scores = normalize_scores(esme_like_sensitivity())
        influences = attach_influence(list(esme_like_registry()), scores)
        diagram = build_diagram(aggregate_all(log), influences)
        by_id = {p.assumption_id: p.quadrant for p in diagram.points}
        assert by_id == {"BioRES": "Q4", "CCS_mbr": "Q4", "ElecDemand": "Q2"}


class TestFootprintAudit:
    def test_complete_with_seven_findings(self):
        report = ecological_footprint_audit()
        assert completeness(report) == ()
        assert len(report.findings) == 7

    def test_expected_verdicts(self):
        report = ecological_footprint_audit()
        assert report.finding(ChecklistItem.PERFORM_UA_SA).verdict is Verdict.FAIL
        assert report.finding(ChecklistItem.TRANSPARENCY).verdict is Verdict.CONCERN
        assert "largely overlooked" in report.finding(ChecklistItem.PERFORM_UA_SA).narrative
        assert "not openly traceable" in report.finding(ChecklistItem.TRANSPARENCY).narrative

    def test_json_round_trip_byte_identical(self):
        report = ecological_footprint_audit()
        rendered = render_report(report, "json")
        assert render_report(report_from_dict(json.loads(rendered)), "json") == rendered


class TestDump:
    def test_dump_writes_loadable_files(self, tmp_path):
        written = dump_fixtures(tmp_path)
        names = {p.name for p in written}
        assert "keepin_study.json" in names
        assert "linear_study.json" in names
        assert "ef_audit.json" in names
        space = load_space(tmp_path / "keepin_study.json")
        model = load_model(tmp_path / "keepin_study.json")
        out = model(space.point([1.16, 1.07]))
        assert out.share("nuclear") == 0.0

    def test_dump_is_deterministic(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        dump_fixtures(a)
        dump_fixtures(b)
        for path in sorted(a.iterdir()):
            assert path.read_bytes() == (b / path.name).read_bytes()
