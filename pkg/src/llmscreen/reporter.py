"""Annualization, observatory table assembly, and exports.

Annualization is pure linear scaling: months to a year is exactly 12, no
calendar subtleties, no re-estimation.  The observatory runs every catalog
model through the standardized request (provider-country grid) plus the
training screen, sorted by descending central inference energy.  Exports
are byte-stable: CSV is RFC-4180 quoted, UTF-8, LF line endings, numbers
at the documented display precision.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from . import bands
from .bands import ScreeningBand
from .catalog import Catalog, ModelProfile
from .inference import (
    Assumption,
    InferenceEstimate,
    TokenLoad,
    estimate_inference,
    standard_load,
)
from .scenario import Scenario
from .training import TrainingEstimate, estimate_training

ANNUAL_ENERGY_UNIT = "kWh/year"
ANNUAL_CARBON_UNIT = "gCO2e/year"


@dataclass(frozen=True)
class AnnualizedEstimate:
    base: InferenceEstimate
    requests_per_year: int
    annual_energy_kwh: ScreeningBand
    annual_carbon_g: ScreeningBand

    @property
    def carbon_display_unit(self) -> str:
        # Scale picked on the central value; g below 1 kg, kg below 1 t.
        base = bands.carbon_display_unit(self.annual_carbon_g.central)
        return f"{base}/year"


def annualize(estimate: InferenceEstimate, requests_per_month: int) -> AnnualizedEstimate:
    if requests_per_month < 1:
        raise ValueError("requests_per_month must be >= 1")
    requests_per_year = 12 * requests_per_month
    energy = estimate.energy_wh.map(
        lambda wh: wh * requests_per_year / 1000.0, unit=ANNUAL_ENERGY_UNIT
    )
    carbon = estimate.carbon_g.map(
        lambda g: g * requests_per_year, unit=ANNUAL_CARBON_UNIT
    )
    return AnnualizedEstimate(
        base=estimate,
        requests_per_year=requests_per_year,
        annual_energy_kwh=energy,
        annual_carbon_g=carbon,
    )


@dataclass(frozen=True)
class EstimateResult:
    """Everything one estimation run produced, for serialization and reports."""

    profile: ModelProfile
    scenario: Scenario | None
    inference: InferenceEstimate
    annualized: AnnualizedEstimate | None


_PARSER_TO_LEDGER = {"explicit": "user", "inferred": "derived", "default": "default"}


def run_scenario(catalog: Catalog, scenario: Scenario) -> EstimateResult:
    """Estimate a parsed scenario end to end, preserving field provenance."""
    profile = catalog.model(scenario.model_id)
    load = TokenLoad(scenario.input_tokens, scenario.output_tokens)
    country_code = (
        scenario.country_code if scenario.country_code is not None else profile.provider_country
    )
    country = catalog.country(country_code)
    estimate = estimate_inference(
        profile,
        load,
        country,
        catalog.anchors,
        catalog.factors,
        load_provenance=_PARSER_TO_LEDGER[scenario.field_provenance["token_load"]],
        country_provenance=(
            _PARSER_TO_LEDGER[scenario.field_provenance["country"]]
            if scenario.country_code is not None
            else "default"
        ),
    )
    annualized = (
        annualize(estimate, scenario.requests_per_month)
        if scenario.requests_per_month is not None
        else None
    )
    return EstimateResult(
        profile=profile, scenario=scenario, inference=estimate, annualized=annualized
    )


@dataclass(frozen=True)
class ObservatoryRow:
    model_id: str
    display_name: str
    energy_wh: ScreeningBand | None
    carbon_g: ScreeningBand | None
    training_gwh: ScreeningBand | None
    country_code: str
    params_assumed: bool
    factors_fitted: bool
    assumptions: tuple[Assumption, ...] = ()
    error: str | None = None


def build_observatory(catalog: Catalog) -> tuple[ObservatoryRow, ...]:
    """One row per model at the standardized request under the provider grid.

    A row that fails to estimate is kept, marked with its error, so one bad
    profile cannot take down the whole table.
    """
    rows: list[ObservatoryRow] = []
    load_template = standard_load(catalog.anchors)
    for profile in catalog.models:
        fitted = profile.factor_overrides is not None
        try:
            country = catalog.country(profile.provider_country)
            inf = estimate_inference(
                profile,
                load_template,
                country,
                catalog.anchors,
                catalog.factors,
                load_provenance="default",
                country_provenance="default",
            )
            tr: TrainingEstimate = estimate_training(
                profile, catalog.training_anchor, catalog.factors
            )
            rows.append(
                ObservatoryRow(
                    model_id=profile.id,
                    display_name=profile.display_name,
                    energy_wh=inf.energy_wh,
                    carbon_g=inf.carbon_g,
                    training_gwh=tr.energy_gwh,
                    country_code=profile.provider_country,
                    params_assumed=profile.params_assumed,
                    factors_fitted=fitted,
                    assumptions=inf.assumptions,
                )
            )
        except Exception as exc:  # defensive: keep the table alive per-row
            rows.append(
                ObservatoryRow(
                    model_id=profile.id,
                    display_name=profile.display_name,
                    energy_wh=None,
                    carbon_g=None,
                    training_gwh=None,
                    country_code=profile.provider_country,
                    params_assumed=profile.params_assumed,
                    factors_fitted=fitted,
                    error=str(exc),
                )
            )
    rows.sort(
        key=lambda r: (
            -(r.energy_wh.central if r.energy_wh is not None else float("-inf")),
            r.model_id,
        )
    )
    return tuple(rows)


CSV_COLUMNS = (
    "model_id",
    "display_name",
    "inference_wh_low",
    "inference_wh_central",
    "inference_wh_high",
    "carbon_g_low",
    "carbon_g_central",
    "carbon_g_high",
    "training_gwh_low",
    "training_gwh_central",
    "training_gwh_high",
    "country",
    "params_assumed",
    "factors_fitted",
    "error",
)


def _row_cells(row: ObservatoryRow) -> list[str]:
    def band_cells(band: ScreeningBand | None, fmt) -> list[str]:
        if band is None:
            return ["", "", ""]
        return [fmt(band.low), fmt(band.central), fmt(band.high)]

    return [
        row.model_id,
        row.display_name,
        *band_cells(row.energy_wh, bands.format_inference_wh),
        *band_cells(row.carbon_g, bands.format_inference_g),
        *band_cells(row.training_gwh, bands.format_training_gwh),
        row.country_code,
        "true" if row.params_assumed else "false",
        "true" if row.factors_fitted else "false",
        row.error or "",
    ]


def export_table(rows: tuple[ObservatoryRow, ...], format: str) -> bytes:
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")  # RFC-4180 quoting, LF
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(_row_cells(row))
        return buffer.getvalue().encode("utf-8")
    if format == "structured_text":
        table = [list(CSV_COLUMNS)] + [_row_cells(row) for row in rows]
        widths = [max(len(line[i]) for line in table) for i in range(len(CSV_COLUMNS))]
        lines = []
        for index, line in enumerate(table):
            lines.append("  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip())
            if index == 0:
                lines.append("  ".join("-" * width for width in widths))
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown export format {format!r}")
