"""Bounded screening estimates of LLM inference energy, carbon, and
training orders of magnitude, driven by an auditable catalog bundle.

Everything here is comparative screening arithmetic over stated
assumptions: anchored power laws, published-value calibration flagged as
such, and assumption ledgers on every result. Nothing is a measured
provider-side figure.
"""

from .bands import SCENARIOS, ScenarioTriple, ScreeningBand
from .catalog import (
    AmbiguousModelError,
    AnchorConstants,
    Catalog,
    CatalogError,
    CountryMix,
    FactorOverrides,
    FactorTable,
    ModelNotFoundError,
    ModelProfile,
    TrainingAnchor,
    default_catalog_dir,
    load_catalog,
    lookup_model,
    methodology_version,
    save_catalog,
)
from .inference import (
    Assumption,
    InferenceEstimate,
    TokenLoad,
    effective_params,
    estimate_energy,
    estimate_inference,
    standard_load,
    weighted_volume,
)
from .reporter import (
    AnnualizedEstimate,
    EstimateResult,
    ObservatoryRow,
    annualize,
    build_observatory,
    export_table,
    run_scenario,
)
from .scenario import (
    Diagnostic,
    Scenario,
    ScenarioParseError,
    parse_scenario,
    render_scenario,
)
from .training import TrainingEstimate, estimate_training, training_tokens

__version__ = "0.1.0"

__all__ = [
    "SCENARIOS",
    "ScenarioTriple",
    "ScreeningBand",
    "AmbiguousModelError",
    "AnchorConstants",
    "Catalog",
    "CatalogError",
    "CountryMix",
    "FactorOverrides",
    "FactorTable",
    "ModelNotFoundError",
    "ModelProfile",
    "TrainingAnchor",
    "default_catalog_dir",
    "load_catalog",
    "lookup_model",
    "methodology_version",
    "save_catalog",
    "Assumption",
    "InferenceEstimate",
    "TokenLoad",
    "effective_params",
    "estimate_energy",
    "estimate_inference",
    "standard_load",
    "weighted_volume",
    "AnnualizedEstimate",
    "EstimateResult",
    "ObservatoryRow",
    "annualize",
    "build_observatory",
    "export_table",
    "run_scenario",
    "Diagnostic",
    "Scenario",
    "ScenarioParseError",
    "parse_scenario",
    "render_scenario",
    "TrainingEstimate",
    "estimate_training",
    "training_tokens",
    "__version__",
]
