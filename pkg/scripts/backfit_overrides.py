"""Solve the calibrated catalog values from the published reference outputs.

The v1 observatory release tables report central per-request energy, carbon
and training energy for a set of market models.  The underlying factor
values were never published, so the shipped bundle carries per-model
`factor_overrides` solved in closed form from those outputs.  This script
is the generator: it recomputes every fitted number and verifies, at
display rounding, that the forward pass reproduces the targets.  The
printed floats are pasted verbatim into src/llmscreen/data/catalog/.

Run:  python scripts/backfit_overrides.py
"""

from __future__ import annotations

# Anchor constants (central scenario exponents are what the fit pins).
E_A = 0.24
P_A = 180.0
OMEGA = 1.8
V_REF = 1990.0
ALPHA = (0.85, 0.95, 1.05)
BETA = (0.85, 0.92, 1.0)

TR_E_A = 1.0       # GWh, calibration anchor (fitted, not measured)
TR_P_A = 180.0
TR_TOK_A = 3600.0  # 20 tokens per parameter at the anchor size

CI_US = 385.0
CI_FR = 40.3

# (id, raw active params B, target central Wh/request, grid used by the release)
# Gemini's target is nudged inside the 0.3601 display bin so that the carbon
# column also reproduces (0.3601 * 0.385 rounds to 0.1386, not the published
# 0.1387; any energy in [0.3601299, 0.36015) displays 0.3601 and fixes that).
INFERENCE_TARGETS = [
    ("claude-opus-4-1", 2400.0, 2.9922, CI_US),
    ("gpt-5-2", 2200.0, 2.7897, CI_US),
    ("gemini-2-5-pro", 300.0, 0.36014, CI_US),
    ("gpt-5-mini", 120.0, 0.1706, CI_US),
    ("llama-3-1-70b", 70.0, 0.1043, CI_US),
    ("gpt-4o-mini", 8.0, 0.0155, CI_US),
    ("ministral-3b", 3.0, 0.0056, CI_FR),
    # Annual reference case: 20,000 chats/month for a year = 2.38 kWh.
    ("ministral-8b", 8.0, 2380.0 / 240000.0, CI_FR),
]

# (id, raw params B, training tokens B, target central GWh)
TRAINING_TARGETS = [
    ("claude-opus-4-1", 2400.0, 20.0 * 2400.0, 125.63),
    ("gpt-5-2", 2200.0, 20.0 * 2200.0, 101.76),
    ("gemini-2-5-pro", 300.0, 20.0 * 300.0, 1.26),
    ("gpt-5-mini", 120.0, 20.0 * 120.0, 0.28),
    ("llama-3-1-70b", 70.0, 15000.0, 0.16),  # public card: ~15T pretraining tokens
    ("gpt-4o-mini", 8.0, 20.0 * 8.0, 0.0027),
    ("ministral-3b", 3.0, 20.0 * 3.0, 0.0004),
]


def inference_energy(override: float, params: float, volume: float, scenario: int) -> float:
    peff = params * override
    return E_A * (peff / P_A) ** ALPHA[scenario] * (volume / V_REF) ** BETA[scenario]


def training_energy(override: float, params: float, tokens: float, scenario: int) -> float:
    base = (
        TR_E_A
        * (params / TR_P_A) ** ALPHA[scenario]
        * (tokens / TR_TOK_A) ** BETA[scenario]
    )
    return base * override


def fmt4(x: float) -> str:
    return f"{x:.4f}"


def fmt_training(x: float) -> str:
    return f"{x:.4f}" if x < 0.01 else f"{x:.2f}"


def main() -> None:
    print("# inference factor_overrides (uniform across scenarios)")
    for model_id, params, target, ci in INFERENCE_TARGETS:
        # Invert the central scenario at the standardized load (volume term = 1):
        # target = E_A * (o * P / P_A) ** alpha_central
        override = (P_A / params) * (target / E_A) ** (1.0 / ALPHA[1])
        forward = inference_energy(override, params, V_REF, 1)
        carbon = forward / 1000.0 * ci
        print(
            f"{model_id}: {override!r}  -> {fmt4(forward)} Wh, {fmt4(carbon)} g "
            f"(CI {ci})"
        )
    print()
    print("# training factor_overrides (uniform across scenarios)")
    for model_id, params, tokens, target in TRAINING_TARGETS:
        base = training_energy(1.0, params, tokens, 1)
        override = target / base
        forward = training_energy(override, params, tokens, 1)
        print(f"{model_id}: {override!r}  -> {fmt_training(forward)} GWh")
    print()
    print("# retrieval token default")
    # The published retrieval case: GPT-5 mini, 4,000 uses/month, 12.31 kWh/yr.
    # Implied per-request energy, then the weighted volume that produces it:
    implied = 12.31 * 1000.0 / 48000.0
    o = (P_A / 120.0) * (0.1706 / E_A) ** (1.0 / ALPHA[1])
    central_at_ref = inference_energy(o, 120.0, V_REF, 1)
    volume = V_REF * (implied / central_at_ref) ** (1.0 / BETA[1])
    print(f"implied Wh/request: {implied!r}; exact volume: {volume!r}")
    chosen = 2200 + OMEGA * 500  # rounded to a plausible (2200, 500) split
    annual_kwh = inference_energy(o, 120.0, chosen, 1) * 48000.0 / 1000.0
    annual_kg = annual_kwh * CI_US / 1000.0
    print(
        f"chosen (2200, 500) -> volume {chosen}; "
        f"annual {annual_kwh:.2f} kWh, {annual_kg:.2f} kg"
    )
    print()
    print("# annual chat reference case (ministral-8b, 20,000/month, FR)")
    o8 = (P_A / 8.0) * ((2380.0 / 240000.0) / E_A) ** (1.0 / ALPHA[1])
    annual_kwh = inference_energy(o8, 8.0, V_REF, 1) * 240000.0 / 1000.0
    annual_g = annual_kwh * CI_FR
    print(f"annual {annual_kwh:.2f} kWh, {annual_g:.0f} g")


if __name__ == "__main__":
    main()
