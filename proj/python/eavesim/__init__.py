from ._eavesim import (
    AnalysisReport,
    AttackScenario,
    Basis,
    CapacityError,
    CircuitFault,
    ConfigError,
    DiagramRow,
    EveParams,
    EveReport,
    FamilyResult,
    VerificationSummary,
    __version__,
    analysis_json,
    analyze,
    closed_form,
    d_from_delta,
    delta_from_d,
    diagram_rows,
    run_verification,
    symmetric_scenario,
)

__all__ = [
    "AnalysisReport",
    "AttackScenario",
    "Basis",
    "CapacityError",
    "CircuitFault",
    "ConfigError",
    "DiagramRow",
    "EveParams",
    "EveReport",
    "FamilyResult",
    "VerificationSummary",
    "analysis_json",
    "analyze",
    "closed_form",
    "d_from_delta",
    "delta_from_d",
    "diagram_rows",
    "run_verification",
    "symmetric_scenario",
]
