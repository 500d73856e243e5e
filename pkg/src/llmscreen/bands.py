"""Screening bands and display rounding.

Every quantity the engine emits is a three-scenario band (low, central,
high).  The scenarios are pessimistic-to-optimistic *parameter* choices,
so the raw per-scenario outputs are not guaranteed to be ordered once a
model's effective size falls below the anchor size.  ``ScreeningBand``
therefore keeps the raw scenario outputs alongside a reordered
(min, central, max) presentation band.

Display rounding is centralised here because published reference tables
and the CSV export must agree byte-for-byte.  Python's ``format`` uses
round-half-even, which is what the reference tables were produced with.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

SCENARIOS = ("low", "central", "high")


class ScenarioTriple(NamedTuple):
    """One value per screening scenario, in fixed (low, central, high) order."""

    low: float
    central: float
    high: float

    def map(self, fn) -> "ScenarioTriple":
        return ScenarioTriple(fn(self.low), fn(self.central), fn(self.high))


@dataclass(frozen=True)
class ScreeningBand:
    """A (min, central, max) band plus the raw per-scenario values behind it.

    ``low``/``high`` are the elementwise min/max of the scenario outputs;
    ``central`` is always the central scenario's output.  For models whose
    effective size is below the anchor size the "low" scenario produces the
    *larger* number, so min/max may swap relative to the scenario labels.
    The raw triple is retained so that exports can show which scenario
    produced which value.
    """

    low: float
    central: float
    high: float
    unit: str
    scenario_values: ScenarioTriple

    def __post_init__(self) -> None:
        if not (self.low <= self.central <= self.high):
            raise ValueError(
                f"band out of order: low={self.low} central={self.central} high={self.high}"
            )

    @classmethod
    def from_scenarios(cls, values: ScenarioTriple, unit: str) -> "ScreeningBand":
        return cls(
            low=min(values),
            central=values.central,
            high=max(values),
            unit=unit,
            scenario_values=values,
        )

    def map(self, fn, unit: str | None = None) -> "ScreeningBand":
        """Apply ``fn`` elementwise to the raw scenario values and re-band.

        The reordering is recomputed rather than mapped so that a
        non-monotonic ``fn`` cannot produce an out-of-order band.
        """
        return ScreeningBand.from_scenarios(
            self.scenario_values.map(fn), unit if unit is not None else self.unit
        )


def carbon_from_energy(energy: ScreeningBand, intensity_g_per_kwh: float, unit: str) -> ScreeningBand:
    # kWh conversion first, then intensity: the exact expression matters for
    # float-level reproducibility of the reference tables.
    return energy.map(lambda wh: wh / 1000.0 * intensity_g_per_kwh, unit=unit)


# ── Display rounding ──────────────────────────────────────────────────────
#
# These return strings.  Callers that need the underlying float keep the
# band; the strings exist only for tables, CSV and human-facing reports.


def format_inference_wh(value: float) -> str:
    return f"{value:.4f}"


def format_inference_g(value: float) -> str:
    return f"{value:.4f}"


def format_training_gwh(value: float) -> str:
    # Two decimals, except genuinely small programmes where two decimals
    # would collapse to 0.00 and hide the order of magnitude.
    if value < 0.01:
        return f"{value:.4f}"
    return f"{value:.2f}"


def format_annual_kwh(value: float) -> str:
    return f"{value:.2f}"


def carbon_display_unit(grams: float) -> str:
    """Auto-scale annual carbon: grams below 1 kg, kg below 1 t, else tonnes."""
    if grams < 1000.0:
        return "gCO2e"
    if grams < 1_000_000.0:
        return "kgCO2e"
    return "tCO2e"


def format_annual_carbon(grams: float, unit: str) -> str:
    if unit == "gCO2e":
        return f"{grams:.0f}"
    if unit == "kgCO2e":
        return f"{grams / 1000.0:.2f}"
    if unit == "tCO2e":
        return f"{grams / 1_000_000.0:.2f}"
    raise ValueError(f"unknown carbon display unit: {unit}")
