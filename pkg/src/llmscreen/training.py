"""Training-energy screening: order-of-magnitude estimates in GWh.

Same anchored power-law shape as inference, over two ratios (parameter
count and training-token count against a calibration anchor) times three
direct multipliers: training regime, architecture, and hardware class.
When a model ships a calibrated training override, the override replaces
the three-multiplier product.  Token counts default to a prior of
20 tokens per parameter when the catalog has no published figure.

These numbers are comparative screening output only; they are reported in
GWh with an optional tonnes-CO2e conversion and never fed into the
per-request application estimates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bands import SCENARIOS, ScenarioTriple, ScreeningBand
from .catalog import CountryMix, FactorTable, ModelProfile, TrainingAnchor
from .inference import Assumption

TRAINING_ENERGY_UNIT = "GWh"
TRAINING_CARBON_UNIT = "tCO2e"

TOKENS_PER_PARAM_PRIOR = 20.0


@dataclass(frozen=True)
class TrainingEstimate:
    energy_gwh: ScreeningBand
    carbon_t: ScreeningBand | None
    tokens_used_b: float
    tokens_provenance: str  # "catalog" or "prior_20x"
    assumptions: tuple[Assumption, ...]


def training_tokens(profile: ModelProfile) -> tuple[float, str]:
    """Training tokens in billions, with where the number came from."""
    if profile.training_tokens_b is not None:
        return profile.training_tokens_b, "catalog"
    return TOKENS_PER_PARAM_PRIOR * profile.raw_active_params_b, "prior_20x"


def training_energy_at(
    params_b: float,
    tokens_b: float,
    multiplier: float,
    anchor: TrainingAnchor,
    scenario: str,
) -> float:
    index = SCENARIOS.index(scenario)
    return (
        anchor.anchor_energy_gwh
        * (params_b / anchor.anchor_params_b) ** anchor.params_exponents[index]
        * (tokens_b / anchor.anchor_tokens_b) ** anchor.tokens_exponents[index]
        * multiplier
    )


def estimate_training(
    profile: ModelProfile,
    anchor: TrainingAnchor,
    factors: FactorTable,
    country: CountryMix | None = None,
) -> TrainingEstimate:
    tokens_b, tokens_provenance = training_tokens(profile)
    overrides = profile.factor_overrides
    fitted = overrides is not None and overrides.training is not None

    def multiplier(index: int) -> float:
        if fitted:
            return overrides.training[index]
        product = 1.0
        for kind, category in (
            ("regime", profile.training_regime),
            ("arch_training", profile.arch_note),
            ("hardware", profile.hardware_class),
        ):
            product *= factors.get(kind, category)[index]
        return product

    raw = ScenarioTriple(
        *(
            training_energy_at(
                profile.raw_active_params_b, tokens_b, multiplier(i), anchor, s
            )
            for i, s in enumerate(SCENARIOS)
        )
    )
    energy = ScreeningBand.from_scenarios(raw, TRAINING_ENERGY_UNIT)
    carbon = None
    if country is not None:
        # 1 GWh = 1e6 kWh and 1 t = 1e6 g, so tonnes = GWh x intensity.
        carbon = energy.map(
            lambda gwh: gwh * country.carbon_intensity_g_per_kwh, unit=TRAINING_CARBON_UNIT
        )

    assumptions = [
        Assumption("model", profile.id, "catalog", profile.display_name),
        Assumption(
            "active_params_b",
            f"{profile.raw_active_params_b:g}",
            "catalog",
            "assumed screening placeholder, not a provider figure"
            if profile.params_assumed
            else "published size",
        ),
        Assumption(
            "training_tokens_b",
            f"{tokens_b:g}",
            "catalog" if tokens_provenance == "catalog" else "derived",
            "" if tokens_provenance == "catalog" else "prior of 20 tokens per parameter",
        ),
        Assumption(
            "training_adjustment",
            "fitted override" if fitted else "regime/arch/hardware tables",
            "catalog",
            "calibrated so published reference outputs reproduce" if fitted else "",
        ),
        Assumption(
            "training_anchor",
            f"{anchor.anchor_energy_gwh:g} GWh at {anchor.anchor_params_b:g} B / "
            f"{anchor.anchor_tokens_b:g} B tokens",
            "catalog",
            "calibration anchor, fitted" if anchor.fitted else "",
        ),
    ]
    if country is not None:
        assumptions.append(
            Assumption(
                "grid_intensity",
                f"{country.carbon_intensity_g_per_kwh:g} gCO2e/kWh",
                "catalog",
                country.source_note,
            )
        )
    return TrainingEstimate(
        energy_gwh=energy,
        carbon_t=carbon,
        tokens_used_b=tokens_b,
        tokens_provenance=tokens_provenance,
        assumptions=tuple(assumptions),
    )
