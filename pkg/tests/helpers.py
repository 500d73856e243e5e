"""Synthetic catalog bundles for tests that need controlled defects."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml

NEUTRAL_FACTORS: dict[str, dict[str, list[float]]] = {
    "context": {
        "short": [0.9, 0.95, 1.0],
        "standard": [1.0, 1.0, 1.0],
        "long": [1.0, 1.1, 1.2],
        "very_long": [1.1, 1.2, 1.4],
    },
    "serving": {
        "dedicated": [1.0, 1.0, 1.0],
        "shared_hosted": [0.9, 1.0, 1.1],
        "edge": [1.1, 1.3, 1.8],
    },
    "modality": {"text_only": [1.0, 1.0, 1.0], "multimodal": [1.0, 1.1, 1.3]},
    "arch": {
        "dense": [1.0, 1.0, 1.0],
        "moe_hybrid": [0.9, 1.05, 1.2],
        "unknown": [0.9, 1.0, 1.2],
    },
    "regime": {
        "foundation_pretraining": [1.0, 1.0, 1.0],
        "continued_pretraining": [0.2, 0.3, 0.5],
        "distilled": [0.02, 0.08, 0.2],
    },
    "arch_training": {
        "dense": [1.0, 1.0, 1.0],
        "moe_hybrid": [0.6, 0.8, 1.0],
        "unknown": [0.85, 1.0, 1.25],
    },
    "hardware": {
        "frontier_accelerator": [1.0, 1.0, 1.0],
        "standard_accelerator": [1.2, 1.5, 2.0],
        "unknown": [0.9, 1.05, 1.25],
    },
}

ANCHORS: dict[str, Any] = {
    "inference": {
        "anchor_energy_wh": 0.24,
        "anchor_active_params_b": 180.0,
        "output_token_weight": 1.8,
        "ref_input_tokens": 1000,
        "ref_output_tokens": 550,
        "ref_volume": 1990.0,
        "params_exponents": [0.85, 0.95, 1.05],
        "volume_exponents": [0.85, 0.92, 1.0],
    },
    "training": {
        "fitted": True,
        "anchor_energy_gwh": 1.0,
        "anchor_params_b": 180.0,
        "anchor_tokens_b": 3600.0,
        "params_exponents": [0.85, 0.95, 1.05],
        "tokens_exponents": [0.85, 0.92, 1.0],
    },
}

PARSER: dict[str, Any] = {
    "request_types": {
        "chat": {"input_tokens": 1000, "output_tokens": 550},
        "generic": {"input_tokens": 1000, "output_tokens": 550},
    },
    "keywords": {"chat": ["support", "chat"]},
    "periods": [
        {"phrase": "per month", "monthly_factor": 1},
        {"phrase": "per day", "monthly_factor": 30},
    ],
    "countries": [{"name": "united states", "code": "US"}],
}


def anchor_model(model_id: str = "anchor-model", **overrides: Any) -> dict[str, Any]:
    """A profile identical to the anchor: neutral categories, 180 B."""
    entry: dict[str, Any] = {
        "id": model_id,
        "display_name": model_id.replace("-", " ").title(),
        "raw_active_params_b": 180.0,
        "params_assumed": False,
        "context_class": "standard",
        "serving_mode": "dedicated",
        "modality": "text_only",
        "arch_note": "dense",
        "provider_country": "US",
        "training_regime": "foundation_pretraining",
        "hardware_class": "frontier_accelerator",
    }
    entry.update(overrides)
    return entry


def write_bundle(
    root: Path,
    *,
    models: list[dict[str, Any]] | None = None,
    countries: list[dict[str, Any]] | None = None,
    factors: dict[str, Any] | None = None,
    anchors: dict[str, Any] | None = None,
    parser: dict[str, Any] | None = None,
    format_version: str = "1",
) -> Path:
    root.mkdir(parents=True, exist_ok=True)
    files = {
        "bundle.yaml": {"format_version": format_version, "description": "test bundle"},
        "anchors.yaml": anchors if anchors is not None else ANCHORS,
        "models.yaml": {"models": models if models is not None else []},
        "factors.yaml": {"factors": factors if factors is not None else NEUTRAL_FACTORS},
        "countries.yaml": {
            "countries": countries
            if countries is not None
            else [{"country_code": "US", "carbon_intensity_g_per_kwh": 385.0, "source_note": "t"}]
        },
        "parser.yaml": parser if parser is not None else PARSER,
    }
    for name, doc in files.items():
        (root / name).write_text(yaml.safe_dump(doc, sort_keys=False), encoding="utf-8")
    return root
