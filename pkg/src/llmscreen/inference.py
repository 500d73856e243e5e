"""Per-request inference energy and carbon screening.

The method is an anchored power law.  A literature-reported energy per
prompt (0.24 Wh at an assumed 180 B active parameters, for the project's
standardized 1000-in/550-out request) is scaled along two axes:

  * effective model size: the raw active-parameter count adjusted by
    context/serving/modality/architecture multipliers (or replaced by a
    calibrated override), raised to a per-scenario exponent;
  * weighted token volume: input tokens plus 1.8x-weighted output tokens,
    relative to the standardized request, raised to its own exponent.

Each of the three scenarios (low/central/high) applies its own exponents
and factor column; the three raw outputs are reordered into a
(min, central, max) ScreeningBand.  Carbon is energy times the country
grid intensity.  All of it is screening arithmetic over stated
assumptions, never a measured provider-side figure, and every defaulted
input is recorded in an assumptions ledger.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bands import SCENARIOS, ScenarioTriple, ScreeningBand, carbon_from_energy
from .catalog import AnchorConstants, CountryMix, FactorTable, ModelProfile

ENERGY_UNIT = "Wh/request"
CARBON_UNIT = "gCO2e/request"

PROVENANCES = ("user", "catalog", "default", "derived")


@dataclass(frozen=True)
class TokenLoad:
    input_tokens: int
    output_tokens: int

    def __post_init__(self) -> None:
        if self.input_tokens < 0 or self.output_tokens < 0:
            raise ValueError("token counts must be >= 0")
        if self.input_tokens == 0 and self.output_tokens == 0:
            # A zero-volume request would claim a free inference; reject at
            # construction instead of producing a zero-energy estimate.
            raise ValueError("token load cannot be zero on both sides")


@dataclass(frozen=True)
class Assumption:
    """One ledger line: which input, what value was used, where it came from."""

    name: str
    value: str
    provenance: str
    note: str = ""

    def __post_init__(self) -> None:
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")


@dataclass(frozen=True)
class InferenceEstimate:
    energy_wh: ScreeningBand
    carbon_g: ScreeningBand
    effective_params_b: ScenarioTriple
    volume: float
    country_code: str
    assumptions: tuple[Assumption, ...]


def weighted_volume(load: TokenLoad, anchors: AnchorConstants) -> float:
    """Input tokens plus weighted output tokens, as an exact real value."""
    return load.input_tokens + anchors.output_token_weight * load.output_tokens


def effective_params(profile: ModelProfile, factors: FactorTable, scenario: str) -> float:
    index = SCENARIOS.index(scenario)
    overrides = profile.factor_overrides
    if overrides is not None and overrides.inference is not None:
        return profile.raw_active_params_b * overrides.inference[index]
    product = 1.0
    for kind, category in (
        ("context", profile.context_class),
        ("serving", profile.serving_mode),
        ("modality", profile.modality),
        ("arch", profile.arch_note),
    ):
        product *= factors.get(kind, category)[index]
    return profile.raw_active_params_b * product


def effective_params_triple(profile: ModelProfile, factors: FactorTable) -> ScenarioTriple:
    return ScenarioTriple(*(effective_params(profile, factors, s) for s in SCENARIOS))


def energy_at(peff_b: float, volume: float, anchors: AnchorConstants, scenario: str) -> float:
    """Scenario energy in Wh for an explicit effective size and volume."""
    index = SCENARIOS.index(scenario)
    return (
        anchors.anchor_energy_wh
        * (peff_b / anchors.anchor_active_params_b) ** anchors.params_exponents[index]
        * (volume / anchors.ref_volume) ** anchors.volume_exponents[index]
    )


def estimate_energy(
    profile: ModelProfile,
    load: TokenLoad,
    anchors: AnchorConstants,
    factors: FactorTable,
) -> ScenarioTriple:
    """Raw per-scenario energy triple, Wh/request, before band reordering."""
    volume = weighted_volume(load, anchors)
    return ScenarioTriple(
        *(
            energy_at(effective_params(profile, factors, s), volume, anchors, s)
            for s in SCENARIOS
        )
    )


def standard_load(anchors: AnchorConstants) -> TokenLoad:
    return TokenLoad(anchors.ref_input_tokens, anchors.ref_output_tokens)


def estimate_inference(
    profile: ModelProfile,
    load: TokenLoad,
    country: CountryMix,
    anchors: AnchorConstants,
    factors: FactorTable,
    *,
    load_provenance: str = "user",
    country_provenance: str = "user",
) -> InferenceEstimate:
    """Full per-request estimate with carbon and the assumptions ledger.

    The caller states where the token load and country came from
    (user/default/derived); catalog-sourced inputs are ledgered here.
    """
    raw = estimate_energy(profile, load, anchors, factors)
    energy = ScreeningBand.from_scenarios(raw, ENERGY_UNIT)
    carbon = carbon_from_energy(energy, country.carbon_intensity_g_per_kwh, CARBON_UNIT)

    fitted = profile.factor_overrides is not None and profile.factor_overrides.inference is not None
    assumptions = (
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
            "size_adjustment",
            "fitted override" if fitted else "factor tables",
            "catalog",
            "calibrated so published reference outputs reproduce" if fitted else "",
        ),
        Assumption(
            "token_load",
            f"{load.input_tokens} in / {load.output_tokens} out",
            load_provenance,
            "standardized request" if load_provenance == "default" else "",
        ),
        Assumption(
            "country",
            country.country_code,
            country_provenance,
            "provider country" if country_provenance == "default" else "",
        ),
        Assumption(
            "grid_intensity",
            f"{country.carbon_intensity_g_per_kwh:g} gCO2e/kWh",
            "catalog",
            country.source_note,
        ),
        Assumption(
            "anchor",
            f"{anchors.anchor_energy_wh:g} Wh at {anchors.anchor_active_params_b:g} B",
            "catalog",
            "literature anchor the power law scales from",
        ),
    )
    return InferenceEstimate(
        energy_wh=energy,
        carbon_g=carbon,
        effective_params_b=effective_params_triple(profile, factors),
        volume=weighted_volume(load, anchors),
        country_code=country.country_code,
        assumptions=assumptions,
    )
