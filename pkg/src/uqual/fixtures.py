"""Bundled fixtures: reference studies, criteria sets, assumption registries,
and a completed audit report.

The nuclear/coal/backstop tipping study is calibrated so that a 16% nuclear
cost increase combined with a 7% coal limit increase flips the dispatch from
all-nuclear to zero-nuclear.  The external-cost and negative-emissions
registries carry the assumption statements appraised in the published
workshop studies they cite; ballots, elicited influences, and example scores
are synthetic and included for demonstrations and tests.
"""
from __future__ import annotations

from pathlib import Path

from .audit import AuditReport, ChecklistItem, Finding, Verdict, new_report, record_finding, report_to_dict
from .jsonio import write_json
from .models import (
    LinearModel,
    PortfolioModel,
    PortfolioModelConfig,
    ProductModel,
    Technology,
    model_to_dict,
)
from .pedigree import (
    Assumption,
    AssumptionRegistry,
    CriteriaSet,
    CriterionDef,
    ScoreLog,
    ScoreRecord,
    SurveyBallot,
    aggregate_all,
    criteria_to_dict,
    pedigree_result_to_dict,
    registry_to_dict,
    score_to_dict,
)
from .sensitivity.morris import EEResult, ee_result_to_dict
from .space import ParameterSpace, ParameterSpec, space_to_dict

# --- reference models ---------------------------------------------------------


def keepin_space() -> ParameterSpace:
    return ParameterSpace(
        [
            ParameterSpec(
                "nuclear_cost",
                1.0,
                1.16,
                1.0,
                units="cost multiplier",
                description="Multiplier on the nuclear unit cost; the upper bound is a 16% increase.",
                assumption_link="nuclear_cost_projection",
            ),
            ParameterSpec(
                "coal_limit",
                1.0,
                1.07,
                1.0,
                units="capacity multiplier",
                description="Multiplier on the coal extraction limit; the upper bound is a 7% increase.",
                assumption_link="coal_extraction_limit",
            ),
        ]
    )


def keepin_config() -> PortfolioModelConfig:
    """Three-technology merit-order system with a cost-tipping point.

    At baseline, nuclear is cheapest and unlimited, so it serves all demand.
    Once its cost multiplier exceeds the backstop price (1.12), dispatch
    flips to coal-up-to-limit plus backstop and nuclear drops to exactly
    zero: a minimal system where small assumption changes produce large
    result changes, mirroring the sensitivity test of Keepin (1984),
    Policy Sciences 17(3), where +16% nuclear costs and +7% coal limits
    phased nuclear out of a cost-optimal global scenario.
    """
    return PortfolioModelConfig(
        demand=100.0,
        technologies=[
            Technology("nuclear", cost=1.00, cost_parameter="nuclear_cost"),
            Technology("coal", cost=1.10, limit=60.0, limit_parameter="coal_limit"),
            Technology("backstop", cost=1.12),
        ],
    )


def linear_space() -> ParameterSpace:
    return ParameterSpace(
        [ParameterSpec("x1", 0.0, 1.0, 0.5), ParameterSpec("x2", 0.0, 1.0, 0.5)]
    )


# --- criteria sets --------------------------------------------------------------


def nusap_criteria() -> CriteriaSet:
    """The five classic pedigree criteria on the 0..4 anchor scale."""
    return CriteriaSet(
        name="nusap-5",
        criteria=(
            CriterionDef(
                "proxy",
                "Proxy",
                "How close the measured or modelled quantity is to the real-world quantity it stands for.",
                (
                    "not clearly related to the quantity of interest",
                    "weakly correlated stand-in",
                    "partial overlap with the target quantity",
                    "good approximation with known limits",
                    "exact measure of the quantity of interest",
                ),
            ),
            CriterionDef(
                "empirical_basis",
                "Empirical basis",
                "Degree to which direct observations, measurements and statistics underpin the number.",
                (
                    "crude speculation",
                    "educated guesses or indirect approximation",
                    "modelled or derived data",
                    "historical or field data of uneven quality",
                    "extensive direct measurements",
                ),
            ),
            CriterionDef(
                "methodological_rigour",
                "Methodological rigour",
                "Whether the method used to derive the number meets the discipline's norms.",
                (
                    "no discernible method",
                    "preliminary method of unknown reliability",
                    "accepted method, limited consensus on reliability",
                    "reliable method, commonly applied",
                    "best available practice in a well-established discipline",
                ),
            ),
            CriterionDef(
                "validation",
                "Validation",
                "Degree to which data and assumptions have been cross-checked against independent sources.",
                (
                    "no validation performed",
                    "weak indirect validation",
                    "partial comparison with indirect measures",
                    "compared with independent measurements of related quantities",
                    "cross-checked against independent measurements of the same quantity",
                ),
            ),
            CriterionDef(
                "theoretical_understanding",
                "Theoretical understanding",
                "Extent and partiality of the theory used to generate the value.",
                (
                    "crude speculation about mechanisms",
                    "preliminary, contested theory",
                    "partial theory with limited consensus",
                    "accepted theory with gaps",
                    "well-established theoretical understanding",
                ),
            ),
        ),
    )


def esme_criteria() -> CriteriaSet:
    """NUSAP-5 extended with workshop criteria on defensibility and peer agreement."""
    base = nusap_criteria()
    extension = (
        CriterionDef(
            "justifiability",
            "Justifiable and defensible",
            "Extent to which the assumption can be justified and defended when challenged.",
            (
                "no justification can be offered",
                "ad-hoc justification only",
                "partly justifiable, open flanks remain",
                "defensible with minor reservations",
                "fully justifiable and defensible choice",
            ),
        ),
        CriterionDef(
            "peer_agreement",
            "Agreement amongst peers",
            "How likely the specific choice is to find agreement amongst peers.",
            (
                "peers would reject the choice outright",
                "substantial disagreement expected",
                "peers are split",
                "broad agreement with reservations",
                "near-universal agreement amongst peers",
            ),
        ),
    )
    return CriteriaSet(name="nusap-esme", criteria=base.criteria + extension)


CRITERIA_SETS = {"nusap-5": nusap_criteria, "nusap-esme": esme_criteria}


# --- external-cost workshop registry --------------------------------------------

_ECC_REFS = (
    "Craye, Laes & van der Sluijs (2009), re-negotiating the role of external cost calculations",
    "Laes, Meskens & van der Sluijs (2011), Energy Policy 39(9)",
)


def externe_assumptions() -> AssumptionRegistry:
    """The six critical external-cost assumptions appraised in the Belgian workshop."""
    entries = [
        (
            "hypothetical_site",
            "Hypothetical reference site",
            "External costs of a potential large-scale accident in a Belgian nuclear power "
            "plant can be determined from a calculation for a hypothetical plant located in "
            "the middle of Western Europe.",
            "accident scenario",
        ),
        (
            "atmospheric_route_only",
            "Atmospheric release route only",
            "In a large-scale accident scenario for a Belgian nuclear power plant, all "
            "radionuclide dispersion routes other than the atmospheric release route are "
            "negligible.",
            "accident scenario",
        ),
        (
            "linear_no_threshold",
            "Linear dose-response",
            "A linear correlation exists between exposure to ionising radiation and health "
            "effects, even for very small radiation doses.",
            "health impacts",
        ),
        (
            "radiological_impacts_only",
            "Radiological health impacts only",
            "All health impacts other than the radiological ones caused by exposure to "
            "ionising radiation can be neglected when assessing the consequences of a "
            "large-scale nuclear accident in a Belgian nuclear power plant.",
            "health impacts",
        ),
        (
            "risk_aversion_unreported",
            "Risk aversion left unreported",
            "The risk-aversion factor for accidents of the low-probability/high-consequence "
            "type cannot be reliably determined, and therefore does not have to be reported.",
            "valuation",
        ),
        (
            "cost_indicator_coverage",
            "Cost indicators cover total costs",
            "The adopted cost indicators (cost of countermeasures, direct economic damage, "
            "and short- and long-term health impacts) are sufficiently representative of the "
            "total costs of a potential large-scale nuclear accident in a Belgian nuclear "
            "power plant.",
            "valuation",
        ),
    ]
    return AssumptionRegistry(
        Assumption(
            id=aid,
            title=title,
            statement=statement,
            category=category,
            source_refs=_ECC_REFS,
        )
        for aid, title, statement, category in entries
    )


_GROSS_EXTRA = [
    ("source_term_size", "Source term magnitude", "release fraction of the core inventory in the reference accident"),
    ("weather_sampling", "Weather sequence sampling", "selection of weather sequences used in the dispersion runs"),
    ("plume_model", "Gaussian plume adequacy", "adequacy of a Gaussian plume model over complex terrain"),
    ("evacuation_radius", "Evacuation radius", "size of the evacuation zone assumed in countermeasure costing"),
    ("sheltering_compliance", "Sheltering compliance", "population compliance with sheltering instructions"),
    ("iodine_prophylaxis", "Iodine prophylaxis uptake", "timely distribution and uptake of stable iodine"),
    ("food_ban_duration", "Food ban duration", "duration of agricultural restrictions after deposition"),
    ("decontamination_cost", "Decontamination unit cost", "unit cost assumed for urban decontamination"),
    ("relocation_threshold", "Relocation dose threshold", "dose threshold that triggers permanent relocation"),
    ("dose_conversion", "Dose conversion factors", "conversion factors from intake to effective dose"),
    ("cancer_latency", "Cancer latency distribution", "latency distribution applied to stochastic health effects"),
    ("vsl_transfer", "Value of statistical life transfer", "transferring a value of statistical life across contexts"),
    ("discount_rate", "Discount rate for latent effects", "discount rate applied to long-term health impacts"),
    ("monetization_morbidity", "Morbidity monetization", "monetization of non-fatal health outcomes"),
    ("tourism_losses", "Tourism losses excluded", "exclusion of tourism and image losses from the cost base"),
    ("harbour_shutdown", "Harbour shutdown ripple", "treatment of industrial shutdown ripple effects near the site"),
    ("insurance_ceiling", "Insurance liability ceiling", "operator liability ceiling used in cost allocation"),
    ("accident_frequency", "Accident frequency estimate", "core-damage frequency taken from probabilistic safety assessment"),
    ("population_growth", "Population projection", "population density projection around the reference site"),
    ("crop_mix", "Regional crop mix", "regional crop mix used for ingestion pathways"),
    ("milk_pathway", "Milk pathway dominance", "dominance of the milk pathway for short-lived isotopes"),
    ("groundwater_exclusion", "Groundwater pathway excluded", "exclusion of groundwater contamination pathways"),
    ("countermeasure_effectiveness", "Countermeasure effectiveness", "assumed effectiveness of agricultural countermeasures"),
    ("long_term_stigma", "Regional stigmatization", "exclusion of stigmatization costs for contaminated regions"),
]


def externe_gross_list() -> AssumptionRegistry:
    """Thirty-assumption gross list: the six criticals plus 24 synthetic entries."""
    registry = externe_assumptions()
    for aid, title, clause in _GROSS_EXTRA:
        registry.add(
            Assumption(
                id=aid,
                title=title,
                statement=f"The external-cost calculation chain is adequate regarding the {clause}.",
                category="gross list",
                source_refs=("synthetic fixture entry",),
            )
        )
    return registry


def externe_ballots() -> list[SurveyBallot]:
    """Synthetic internet-survey ballots that put the six criticals on top."""
    registry = externe_gross_list()
    criticals = externe_assumptions().ids
    others = [aid for aid in registry.ids if aid not in criticals]
    ballots = []
    for i in range(12):
        start = (3 * i) % len(others)
        extra = [others[(start + j) % len(others)] for j in range(3)]
        ballots.append(SurveyBallot(f"expert-{i + 1:02d}", tuple(criticals) + tuple(extra)))
    return ballots


# --- negative-emissions registry -------------------------------------------------

_NETS_REF = "Vaughan & Gough (2016), Environmental Research Letters 11(9)"


def nets_assumptions() -> AssumptionRegistry:
    """Nine key assumptions behind large negative-emissions uptake in scenario models."""
    entries = [
        ("bio_land_area", "Available land area", "bioenergy",
         "Sufficient land area can be made available for dedicated energy crops without "
         "displacing food production or protected ecosystems."),
        ("bio_future_yield", "Future biomass yield", "bioenergy",
         "Future energy-crop yields will rise substantially above today's agronomic baselines."),
        ("bio_energy_share", "Bioenergy share of primary energy", "bioenergy",
         "Bioenergy can supply a large share of primary energy demand by mid-century."),
        ("ccs_storage_capacity", "CO2 storage capacity", "ccs",
         "Geological storage capacity is sufficient and accessible for cumulative captured CO2."),
        ("ccs_uptake_rate", "CCS technology uptake", "ccs",
         "Capture-and-storage deployment can scale at the pace the scenarios require."),
        ("ccs_capture_rate", "Capture rate", "ccs",
         "Capture processes achieve and sustain the assumed capture rates at commercial scale."),
        ("policy_framework", "Supportive policy framework", "cross-cutting",
         "A stable policy framework will reward negative emissions over multi-decadal horizons."),
        ("social_acceptability", "Social acceptability", "cross-cutting",
         "Large-scale deployment will be socially acceptable to affected communities."),
        ("net_negative_achievable", "Net negative emissions achievable", "cross-cutting",
         "The coupled bioenergy and storage chain delivers genuinely net-negative emissions "
         "over the cultivation time span."),
    ]
    return AssumptionRegistry(
        Assumption(id=aid, title=title, statement=statement, category=category, source_refs=(_NETS_REF,))
        for aid, title, category, statement in entries
    )


def nets_elicited_influence() -> dict[str, float]:
    """Illustrative expert-judged influence values (no computed sensitivities exist)."""
    return {
        "bio_land_area": 0.90,
        "bio_future_yield": 0.85,
        "bio_energy_share": 0.70,
        "ccs_storage_capacity": 0.80,
        "ccs_uptake_rate": 0.95,
        "ccs_capture_rate": 0.60,
        "policy_framework": 0.90,
        "social_acceptability": 0.75,
        "net_negative_achievable": 0.85,
    }


def nets_example_scores() -> list[ScoreRecord]:
    """Synthetic three-expert scoring giving mostly weak pedigrees."""
    base_levels = {
        "bio_land_area": 1,
        "bio_future_yield": 2,
        "bio_energy_share": 1,
        "ccs_storage_capacity": 2,
        "ccs_uptake_rate": 1,
        "ccs_capture_rate": 2,
        "policy_framework": 1,
        "social_acceptability": 1,
        "net_negative_achievable": 1,
    }
    records = []
    criteria = nusap_criteria().ids
    for aid, base in base_levels.items():
        for e, offset in enumerate((-1, 0, 1)):
            score = min(4, max(0, base + offset))
            for cid in criteria:
                records.append(ScoreRecord(f"expert-{e + 1}", aid, cid, score))
    return records


# --- diagnostic-diagram demo ------------------------------------------------------


def esme_like_registry() -> AssumptionRegistry:
    """Three technology assumptions linked to same-named model parameters."""
    entries = [
        ("BioRES", "Bioenergy resource", "Domestic bioenergy resource available to the energy system.",
         ("BioRES",)),
        ("CCS_mbr", "CCS build rate", "Maximum build rate of carbon capture and storage capacity.",
         ("CCS_mbr",)),
        ("ElecDemand", "Electricity demand", "Long-run electricity demand trajectory.",
         ("ElecDemand",)),
    ]
    return AssumptionRegistry(
        Assumption(id=aid, title=title, statement=statement, parameter_links=links)
        for aid, title, statement, links in entries
    )


def esme_like_sensitivity() -> EEResult:
    """Screening result placing demand first and the two Q4 candidates just below."""
    return EEResult(
        names=("BioRES", "CCS_mbr", "ElecDemand"),
        mu=(0.9, 0.8, 1.0),
        mu_star=(0.9, 0.8, 1.0),
        sigma=(0.0, 0.0, 0.0),
        r=10,
        seed=0,
        levels=4,
    )


def esme_like_scores() -> list[ScoreRecord]:
    """One-workshop score set: weak pedigree for BioRES/CCS_mbr, strong for demand."""
    per_assumption = {
        "BioRES": (1, 1, 1, 2, 1),        # strength 1.2/4 = 0.30
        "CCS_mbr": (1, 1, 2, 2, 1),       # strength 1.4/4 = 0.35
        "ElecDemand": (3, 3, 3, 4, 3),    # strength 3.2/4 = 0.80
    }
    criteria = nusap_criteria().ids
    return [
        ScoreRecord("panel", aid, cid, score)
        for aid, scores in per_assumption.items()
        for cid, score in zip(criteria, scores)
    ]


# --- completed audit fixture -------------------------------------------------------

_EF_REFS = {
    "footprints": "Giampietro & Saltelli (2014), Footprints to nowhere, Ecological Indicators 46",
    "circles": "Giampietro & Saltelli (2014), Footworking in circles, Ecological Indicators 46",
    "questioning": "Galli et al. (2016), Questioning the Ecological Footprint, Ecological Indicators 69",
}


def ecological_footprint_audit() -> AuditReport:
    """Completed seven-point audit of the Ecological Footprint indicator."""
    report = new_report(
        "Ecological Footprint as an indicator for energy policy",
        auditors=("review-panel",),
        date="2021-10-01",
    )
    findings = [
        Finding(
            ChecklistItem.RHETORICAL_USE,
            Verdict.FAIL,
            "The indicator is routinely presented as measuring the planet's biocapacity, "
            "but the accounting underneath is limited to agricultural productivity; the "
            "headline systematically over-interprets what is actually computed.",
            (_EF_REFS["footprints"],),
        ),
        Finding(
            ChecklistItem.ASSUMPTION_HUNTING,
            Verdict.CONCERN,
            "Key accounting choices stay implicit, most visibly on the bioenergy side: the "
            "declining CO2 absorption of ageing forests is ignored, and replacing natural "
            "ecosystems with more productive plantations would register as a biocapacity "
            "improvement despite the loss of biodiversity and habitat.",
            (_EF_REFS["footprints"],),
        ),
        Finding(
            ChecklistItem.DETECT_GIGO,
            Verdict.FAIL,
            "Input uncertainty is artificially constrained: no error term is carried on "
            "biocapacity, accuracy at local, national and global levels goes undiscussed, "
            "and the only quality signal is a country-level data score, which hides how "
            "information degrades as it is aggregated across scales.",
            (_EF_REFS["questioning"],),
        ),
        Finding(
            ChecklistItem.ANTICIPATE_CRITICISM,
            Verdict.FAIL,
            "Rounding of values and the cascading of uncertainty across aggregation scales "
            "leave the accounts fragile, and that fragility has not been quantified, let "
            "alone apportioned to its sources through sensitivity analysis.",
            (_EF_REFS["questioning"],),
        ),
        Finding(
            ChecklistItem.TRANSPARENCY,
            Verdict.CONCERN,
            "Documentation is published, but some technical coefficients are not openly "
            "traceable: the equivalence factors relating the productivity of different "
            "land-use types can only be retrieved from a satellite workbook available on "
            "request.",
            (_EF_REFS["questioning"],),
        ),
        Finding(
            ChecklistItem.RIGHT_SUM,
            Verdict.FAIL,
            "The accounting cannot say whether a given land allocation contributes to "
            "sustainability; a landfill is essential on the waste-sink side yet invisible "
            "in biocapacity terms, so the indicator answers a narrower question than the "
            "one policy asks of it.",
            (_EF_REFS["circles"], _EF_REFS["questioning"]),
        ),
        Finding(
            ChecklistItem.PERFORM_UA_SA,
            Verdict.FAIL,
            "Uncertainty in the accounting is largely overlooked, with the exception of a "
            "country-level data quality score; the space of assumptions is unexplored, so "
            "the indicator's responsiveness to its own uncertainty sources is unknown.",
            (_EF_REFS["footprints"],),
        ),
    ]
    for finding in findings:
        report = record_finding(report, finding)
    return AuditReport(
        subject=report.subject,
        auditors=report.auditors,
        date=report.date,
        findings=report.findings,
        summary=(
            "An accounting of agricultural productivity stretched into a planetary "
            "sustainability claim: before steering policy with it, its uncertainty needs "
            "quantification and its scope needs renegotiation."
        ),
    )


# --- file export ---------------------------------------------------------------------


def dump_fixtures(dest: str | Path) -> list[Path]:
    """Materialize every bundled fixture as JSON files under ``dest``."""
    from .pedigree import StrengthBands

    dest = Path(dest)
    dest.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def emit(name: str, doc) -> None:
        path = dest / name
        write_json(path, doc)
        written.append(path)

    keepin = space_to_dict(keepin_space())
    keepin["model"] = model_to_dict(PortfolioModel(keepin_config()))
    emit("keepin_study.json", keepin)

    linear = space_to_dict(linear_space())
    linear["model"] = model_to_dict(LinearModel([2, 1]))
    emit("linear_study.json", linear)

    product = space_to_dict(linear_space())
    product["model"] = model_to_dict(ProductModel())
    emit("product_study.json", product)

    emit("nusap5_criteria.json", criteria_to_dict(nusap_criteria()))
    emit("esme_criteria.json", criteria_to_dict(esme_criteria()))

    emit("externe_critical_registry.json", registry_to_dict(externe_assumptions()))
    emit("externe_gross_registry.json", registry_to_dict(externe_gross_list()))
    emit(
        "externe_ballots.json",
        {
            "schema_version": 1,
            "ballots": [
                {"expert": b.expert_id, "selected": list(b.selected)} for b in externe_ballots()
            ],
        },
    )

    emit("nets_registry.json", registry_to_dict(nets_assumptions()))
    emit(
        "nets_elicited.json",
        {"schema_version": 1, "influences": nets_elicited_influence()},
    )
    emit(
        "nets_scores.json",
        {
            "schema_version": 1,
            "criteria_set": "nusap-5",
            "scores": [score_to_dict(s) for s in nets_example_scores()],
        },
    )

    emit("esme_registry.json", registry_to_dict(esme_like_registry()))
    emit("esme_sensitivity.json", ee_result_to_dict(esme_like_sensitivity()))
    emit(
        "esme_scores.json",
        {
            "schema_version": 1,
            "criteria_set": "nusap-5",
            "scores": [score_to_dict(s) for s in esme_like_scores()],
        },
    )
    log = ScoreLog(esme_like_registry(), nusap_criteria())
    for record in esme_like_scores():
        log.record(record)
    emit(
        "esme_pedigree.json",
        {
            "schema_version": 1,
            "criteria_set": "nusap-5",
            "bands": {"weak_below": StrengthBands().weak_below, "strong_at": StrengthBands().strong_at},
            "results": [pedigree_result_to_dict(r) for r in aggregate_all(log)],
        },
    )

    emit("ef_audit.json", report_to_dict(ecological_footprint_audit()))
    return written
