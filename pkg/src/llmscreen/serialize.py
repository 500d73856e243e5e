"""JSON payload builders shared by the HTTP API and the CLI's --json mode.

The shapes live in one place so the two surfaces cannot drift apart.
Conventions: every numeric quantity is an object with an explicit "unit";
bands carry low/central/high plus the raw per-scenario outputs; display
blocks hold the strings produced by the documented rounding rules.
"""

from __future__ import annotations

from typing import Any

from . import bands
from .bands import ScreeningBand
from .catalog import Catalog, ModelProfile, methodology_version
from .inference import Assumption, InferenceEstimate
from .reporter import AnnualizedEstimate, EstimateResult, ObservatoryRow
from .scenario import Diagnostic, Scenario
from .training import TrainingEstimate

DISCLAIMER = "Screening estimate, not an audited measurement."


def quantity(value: float | int, unit: str) -> dict[str, Any]:
    return {"value": value, "unit": unit}


def band_payload(band: ScreeningBand, display=None) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "unit": band.unit,
        "low": band.low,
        "central": band.central,
        "high": band.high,
        "scenario_values": {
            "low": band.scenario_values.low,
            "central": band.scenario_values.central,
            "high": band.scenario_values.high,
        },
    }
    if display is not None:
        payload["display"] = {
            "low": display(band.low),
            "central": display(band.central),
            "high": display(band.high),
        }
    return payload


def assumptions_payload(assumptions: tuple[Assumption, ...]) -> list[dict[str, str]]:
    return [
        {"name": a.name, "value": a.value, "provenance": a.provenance, "note": a.note}
        for a in assumptions
    ]


def model_payload(profile: ModelProfile) -> dict[str, Any]:
    return {
        "id": profile.id,
        "display_name": profile.display_name,
        "active_params": quantity(profile.raw_active_params_b, "B"),
        "params_assumed": profile.params_assumed,
        "context_class": profile.context_class,
        "serving_mode": profile.serving_mode,
        "modality": profile.modality,
        "arch_note": profile.arch_note,
        "provider_country": profile.provider_country,
        "training_regime": profile.training_regime,
        "hardware_class": profile.hardware_class,
        "training_tokens": (
            quantity(profile.training_tokens_b, "B tokens")
            if profile.training_tokens_b is not None
            else None
        ),
        "factors_fitted": profile.factor_overrides is not None,
        "source_note": profile.source_note,
    }


def scenario_payload(scenario: Scenario) -> dict[str, Any]:
    return {
        "model_id": scenario.model_id,
        "request_type": scenario.request_type,
        "token_load": {
            "input_tokens": quantity(scenario.input_tokens, "tokens"),
            "output_tokens": quantity(scenario.output_tokens, "tokens"),
        },
        "requests_per_month": (
            quantity(scenario.requests_per_month, "requests/month")
            if scenario.requests_per_month is not None
            else None
        ),
        "country_code": scenario.country_code,
        "field_provenance": dict(scenario.field_provenance),
    }


def diagnostics_payload(diagnostics: tuple[Diagnostic, ...]) -> list[dict[str, Any]]:
    return [
        {"code": d.code, "message": d.message, "suggestions": list(d.suggestions)}
        for d in diagnostics
    ]


def inference_payload(estimate: InferenceEstimate) -> dict[str, Any]:
    return {
        "energy": band_payload(estimate.energy_wh, bands.format_inference_wh),
        "carbon": band_payload(estimate.carbon_g, bands.format_inference_g),
        "effective_params": {
            "unit": "B",
            "low": estimate.effective_params_b.low,
            "central": estimate.effective_params_b.central,
            "high": estimate.effective_params_b.high,
        },
        "weighted_volume": quantity(estimate.volume, "weighted tokens/request"),
        "country_code": estimate.country_code,
        "assumptions": assumptions_payload(estimate.assumptions),
    }


def annualized_payload(annualized: AnnualizedEstimate) -> dict[str, Any]:
    unit = annualized.carbon_display_unit
    grams = annualized.annual_carbon_g

    def carbon_display(value: float) -> str:
        return bands.format_annual_carbon(value, unit.removesuffix("/year"))

    return {
        "requests_per_year": quantity(annualized.requests_per_year, "requests/year"),
        "energy": band_payload(annualized.annual_energy_kwh, bands.format_annual_kwh),
        "carbon": {
            **band_payload(grams),
            "display": {
                "unit": unit,
                "low": carbon_display(grams.low),
                "central": carbon_display(grams.central),
                "high": carbon_display(grams.high),
            },
        },
    }


def estimate_payload(catalog: Catalog, result: EstimateResult) -> dict[str, Any]:
    return {
        "methodology_version": methodology_version(catalog),
        "disclaimer": DISCLAIMER,
        "model": {"id": result.profile.id, "display_name": result.profile.display_name},
        "scenario": scenario_payload(result.scenario) if result.scenario is not None else None,
        "estimate": inference_payload(result.inference),
        "annualized": (
            annualized_payload(result.annualized) if result.annualized is not None else None
        ),
    }


def training_payload(catalog: Catalog, profile: ModelProfile, estimate: TrainingEstimate) -> dict[str, Any]:
    return {
        "methodology_version": methodology_version(catalog),
        "disclaimer": DISCLAIMER,
        "model": {"id": profile.id, "display_name": profile.display_name},
        "energy": band_payload(estimate.energy_gwh, bands.format_training_gwh),
        "carbon": (
            band_payload(estimate.carbon_t) if estimate.carbon_t is not None else None
        ),
        "tokens_used": {
            **quantity(estimate.tokens_used_b, "B tokens"),
            "provenance": estimate.tokens_provenance,
        },
        "assumptions": assumptions_payload(estimate.assumptions),
    }


def observatory_row_payload(row: ObservatoryRow) -> dict[str, Any]:
    return {
        "model_id": row.model_id,
        "display_name": row.display_name,
        "energy": band_payload(row.energy_wh, bands.format_inference_wh) if row.energy_wh else None,
        "carbon": band_payload(row.carbon_g, bands.format_inference_g) if row.carbon_g else None,
        "training_energy": (
            band_payload(row.training_gwh, bands.format_training_gwh) if row.training_gwh else None
        ),
        "country_code": row.country_code,
        "params_assumed": row.params_assumed,
        "factors_fitted": row.factors_fitted,
        "error": row.error,
    }


def observatory_payload(catalog: Catalog, rows: tuple[ObservatoryRow, ...]) -> dict[str, Any]:
    return {
        "methodology_version": methodology_version(catalog),
        "disclaimer": DISCLAIMER,
        "rows": [observatory_row_payload(row) for row in rows],
    }


def models_payload(catalog: Catalog) -> dict[str, Any]:
    return {
        "methodology_version": methodology_version(catalog),
        "models": [model_payload(profile) for profile in catalog.models],
    }


def parse_payload(catalog: Catalog, scenario: Scenario) -> dict[str, Any]:
    return {
        "methodology_version": methodology_version(catalog),
        "scenario": scenario_payload(scenario),
    }


def error_payload(code: str, message: str, details: dict[str, Any] | None = None) -> dict[str, Any]:
    body: dict[str, Any] = {"code": code, "message": message}
    if details:
        body["details"] = details
    return {"error": body}
