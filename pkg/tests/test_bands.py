"""Band mechanics and the centralised display rounding."""

import pytest

from llmscreen.bands import (
    SCENARIOS,
    ScenarioTriple,
    ScreeningBand,
    carbon_display_unit,
    carbon_from_energy,
    format_annual_carbon,
    format_annual_kwh,
    format_inference_g,
    format_inference_wh,
    format_training_gwh,
)


def test_scenario_order_is_fixed():
    assert SCENARIOS == ("low", "central", "high")
    triple = ScenarioTriple(1.0, 2.0, 3.0)
    assert triple.low == 1.0 and triple.central == 2.0 and triple.high == 3.0


def test_triple_map_is_elementwise():
    triple = ScenarioTriple(1.0, 2.0, 3.0).map(lambda x: x * 10.0)
    assert triple == ScenarioTriple(10.0, 20.0, 30.0)


def test_band_from_ordered_scenarios():
    band = ScreeningBand.from_scenarios(ScenarioTriple(1.0, 2.0, 3.0), "Wh/request")
    assert (band.low, band.central, band.high) == (1.0, 2.0, 3.0)
    assert band.unit == "Wh/request"
    assert band.scenario_values == ScenarioTriple(1.0, 2.0, 3.0)


def test_band_reorders_inverted_scenarios():
    # Sub-anchor model sizes make the "low" scenario the larger number.
    raw = ScenarioTriple(3.0, 2.0, 1.0)
    band = ScreeningBand.from_scenarios(raw, "Wh/request")
    assert (band.low, band.central, band.high) == (1.0, 2.0, 3.0)
    assert band.scenario_values == raw


def test_band_constructor_rejects_out_of_order():
    with pytest.raises(ValueError):
        ScreeningBand(
            low=2.0, central=1.0, high=3.0, unit="Wh", scenario_values=ScenarioTriple(2.0, 1.0, 3.0)
        )


def test_band_map_rebands_non_monotonic_fn():
    band = ScreeningBand.from_scenarios(ScenarioTriple(1.0, 2.0, 3.0), "Wh/request")
    flipped = band.map(lambda x: -x, unit="negated")
    assert (flipped.low, flipped.central, flipped.high) == (-3.0, -2.0, -1.0)
    assert flipped.unit == "negated"
    assert flipped.scenario_values == ScenarioTriple(-1.0, -2.0, -3.0)


def test_band_map_keeps_unit_by_default():
    band = ScreeningBand.from_scenarios(ScenarioTriple(1.0, 2.0, 3.0), "Wh/request")
    assert band.map(lambda x: x * 2.0).unit == "Wh/request"


def test_carbon_from_energy_exact_expression():
    band = ScreeningBand.from_scenarios(
        ScenarioTriple(0.17055, 2.99219, 3.14159), "Wh/request"
    )
    carbon = carbon_from_energy(band, 385.0, "gCO2e/request")
    for wh, g in zip(band.scenario_values, carbon.scenario_values):
        assert g == wh / 1000.0 * 385.0  # bitwise: expression order is part of the contract
    assert carbon.unit == "gCO2e/request"


def test_per_request_formats_use_four_decimals():
    assert format_inference_wh(2.99219) == "2.9922"
    assert format_inference_wh(0.0099) == "0.0099"
    assert format_inference_g(1.15199) == "1.1520"
    assert format_inference_g(0.0002156) == "0.0002"


def test_training_format_switches_below_a_hundredth():
    assert format_training_gwh(125.6313) == "125.63"
    assert format_training_gwh(1.2551) == "1.26"
    assert format_training_gwh(0.01) == "0.01"
    assert format_training_gwh(0.00271) == "0.0027"
    assert format_training_gwh(0.0004) == "0.0004"


def test_annual_energy_format():
    assert format_annual_kwh(2.3849) == "2.38"
    assert format_annual_kwh(12.3093) == "12.31"


def test_carbon_display_unit_thresholds():
    assert carbon_display_unit(999.4) == "gCO2e"
    assert carbon_display_unit(1000.0) == "kgCO2e"
    assert carbon_display_unit(999_999.9) == "kgCO2e"
    assert carbon_display_unit(1_000_000.0) == "tCO2e"


def test_annual_carbon_formats_per_unit():
    assert format_annual_carbon(96.4, "gCO2e") == "96"
    assert format_annual_carbon(4738.1, "kgCO2e") == "4.74"
    assert format_annual_carbon(2_382_000.0, "tCO2e") == "2.38"
    with pytest.raises(ValueError):
        format_annual_carbon(1.0, "MtCO2e")
