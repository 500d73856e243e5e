from __future__ import annotations

import pytest

from llmscreen import (
    AmbiguousModelError,
    CatalogError,
    ModelNotFoundError,
    default_catalog_dir,
    load_catalog,
    lookup_model,
    methodology_version,
    save_catalog,
)
from llmscreen.catalog import levenshtein

from helpers import ANCHORS, NEUTRAL_FACTORS, anchor_model, write_bundle


# ── Shipped bundle ────────────────────────────────────────────────────────


def test_shipped_bundle_loads_with_expected_shape(catalog):
    assert len(catalog.models) == 8
    assert len(catalog.countries) >= 2
    a = catalog.anchors
    assert a.anchor_energy_wh == 0.24
    assert a.anchor_active_params_b == 180.0
    assert a.output_token_weight == 1.8
    assert tuple(a.params_exponents) == (0.85, 0.95, 1.05)
    assert tuple(a.volume_exponents) == (0.85, 0.92, 1.0)


def test_reference_volume_recomputes_from_its_parts(catalog):
    a = catalog.anchors
    assert a.ref_volume == a.ref_input_tokens + a.output_token_weight * a.ref_output_tokens
    assert a.ref_volume == 1000 + 1.8 * 550 == 1990.0


def test_every_fitted_value_is_flagged(catalog):
    assert catalog.training_anchor.fitted
    for profile in catalog.models:
        if profile.factor_overrides is not None:
            assert profile.factor_overrides.fitted, profile.id


def test_neutral_factor_categories_are_exactly_one(catalog):
    from llmscreen.catalog import NEUTRAL_CATEGORIES

    for kind, neutral in NEUTRAL_CATEGORIES.items():
        assert tuple(catalog.factors.get(kind, neutral)) == (1.0, 1.0, 1.0)


def test_methodology_version_tracks_anchor_changes(catalog, tmp_path):
    version = methodology_version(catalog)
    assert version.startswith(catalog.format_version + "+")
    assert len(version.split("+")[1]) == 12

    anchors = {k: dict(v) for k, v in ANCHORS.items()}
    anchors["inference"] = dict(anchors["inference"], anchor_energy_wh=0.25)
    other = load_catalog(write_bundle(tmp_path / "b", anchors=anchors))
    assert methodology_version(other) != methodology_version(
        load_catalog(write_bundle(tmp_path / "c"))
    )


def test_round_trip_is_structurally_identical(catalog, tmp_path):
    target = tmp_path / "roundtrip"
    save_catalog(catalog, target)
    again = load_catalog(target)
    assert again == catalog
    # and a second hop to be sure serialization is a fixed point
    target2 = tmp_path / "roundtrip2"
    save_catalog(again, target2)
    assert load_catalog(target2) == catalog


# ── Validation errors ─────────────────────────────────────────────────────


def test_unknown_format_version_rejected(tmp_path):
    bundle = write_bundle(tmp_path / "b", format_version="99")
    with pytest.raises(CatalogError, match="format_version"):
        load_catalog(bundle)


def test_missing_file_is_reported_by_name(tmp_path):
    bundle = write_bundle(tmp_path / "b")
    (bundle / "factors.yaml").unlink()
    with pytest.raises(CatalogError, match="factors.yaml"):
        load_catalog(bundle)


def test_duplicate_model_id_names_the_slug(tmp_path):
    bundle = write_bundle(
        tmp_path / "b",
        models=[anchor_model("gpt-5-mini"), anchor_model("gpt-5-mini")],
    )
    with pytest.raises(CatalogError, match="gpt-5-mini"):
        load_catalog(bundle)


def test_missing_factor_coverage_names_kind_and_model(tmp_path):
    factors = {kind: dict(categories) for kind, categories in NEUTRAL_FACTORS.items()}
    del factors["arch"]["moe_hybrid"]
    bundle = write_bundle(
        tmp_path / "b",
        models=[anchor_model("moe-model", arch_note="moe_hybrid")],
        factors=factors,
    )
    with pytest.raises(CatalogError, match="moe_hybrid.*moe-model"):
        load_catalog(bundle)


def test_unresolved_provider_country_rejected(tmp_path):
    bundle = write_bundle(tmp_path / "b", models=[anchor_model(provider_country="DE")])
    with pytest.raises(CatalogError, match="DE"):
        load_catalog(bundle)


def test_non_positive_numeric_rejected(tmp_path):
    bundle = write_bundle(tmp_path / "b", models=[anchor_model(raw_active_params_b=-1.0)])
    with pytest.raises(CatalogError, match="raw_active_params_b"):
        load_catalog(bundle)


def test_invalid_enum_category_rejected(tmp_path):
    bundle = write_bundle(tmp_path / "b", models=[anchor_model(serving_mode="mainframe")])
    with pytest.raises(CatalogError, match="mainframe"):
        load_catalog(bundle)


def test_non_neutral_neutral_category_rejected(tmp_path):
    factors = {kind: dict(categories) for kind, categories in NEUTRAL_FACTORS.items()}
    factors["modality"]["text_only"] = [1.0, 1.1, 1.2]
    bundle = write_bundle(tmp_path / "b", factors=factors)
    with pytest.raises(CatalogError, match="text_only"):
        load_catalog(bundle)


def test_ref_volume_identity_enforced(tmp_path):
    anchors = {k: dict(v) for k, v in ANCHORS.items()}
    anchors["inference"] = dict(anchors["inference"], ref_volume=2000.0)
    with pytest.raises(CatalogError, match="ref_volume"):
        load_catalog(write_bundle(tmp_path / "b", anchors=anchors))


def test_catalog_path_must_be_directory(tmp_path):
    with pytest.raises(CatalogError, match="not a directory"):
        load_catalog(tmp_path / "missing")


# ── Model lookup ──────────────────────────────────────────────────────────


def test_lookup_exact_slug(catalog):
    assert lookup_model(catalog, "gpt-4o-mini").id == "gpt-4o-mini"


def test_lookup_display_name_case_insensitive(catalog):
    assert lookup_model(catalog, "gpt-4o MINI").id == "gpt-4o-mini"


def test_lookup_normalized_punctuation(catalog):
    assert lookup_model(catalog, "GPT-4o-mini").id == "gpt-4o-mini"
    assert lookup_model(catalog, "gpt4omini").id == "gpt-4o-mini"
    assert lookup_model(catalog, "GPT 5.2").id == "gpt-5-2"


def test_lookup_unique_prefix(catalog):
    assert lookup_model(catalog, "claude").id == "claude-opus-4-1"
    assert lookup_model(catalog, "gemini").id == "gemini-2-5-pro"


def test_lookup_ambiguous_prefix(catalog):
    with pytest.raises(AmbiguousModelError) as exc:
        lookup_model(catalog, "gpt")
    assert set(exc.value.candidates) == {"gpt-5-2", "gpt-5-mini", "gpt-4o-mini"}
    with pytest.raises(AmbiguousModelError):
        lookup_model(catalog, "ministral")


def test_lookup_not_found_carries_three_nearest(catalog):
    with pytest.raises(ModelNotFoundError) as exc:
        lookup_model(catalog, "gpt-4o-minni")
    assert len(exc.value.suggestions) == 3
    assert exc.value.suggestions[0] == "gpt-4o-mini"


def test_lookup_total_over_fuzz_inputs(catalog):
    # Every query resolves to exactly one of profile / not-found / ambiguous.
    queries = ["", " ", "GPT", "gpt-5", "LLAMA 3.1 70B", "??", "mini", "x" * 50]
    for q in queries:
        try:
            profile = lookup_model(catalog, q)
            assert profile.id in catalog.model_ids
        except (ModelNotFoundError, AmbiguousModelError):
            pass


def test_levenshtein_basics():
    assert levenshtein("", "abc") == 3
    assert levenshtein("kitten", "sitting") == 3
    assert levenshtein("same", "same") == 0
