"""Catalog bundle: anchors, model profiles, factor tables, grid mixes.

A catalog is a directory of small YAML files so that review diffs stay
human-readable:

    bundle.yaml     format_version and a short description
    anchors.yaml    inference and training anchor constants
    models.yaml     model profiles
    factors.yaml    scenario factor triples per (kind, category)
    countries.yaml  grid carbon intensities
    parser.yaml     lexicons and token defaults for the scenario parser

Everything loaded is frozen.  Catalog swaps happen by loading a new
bundle, never by mutating an existing one.  Validation is strict and
errors name the offending file, record and field.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping

import yaml

from .bands import ScenarioTriple

SUPPORTED_FORMAT_VERSIONS = ("1",)

CONTEXT_CLASSES = ("short", "standard", "long", "very_long")
SERVING_MODES = ("dedicated", "shared_hosted", "edge")
MODALITIES = ("text_only", "multimodal")
ARCH_NOTES = ("dense", "moe_hybrid", "unknown")
TRAINING_REGIMES = ("foundation_pretraining", "continued_pretraining", "distilled")
HARDWARE_CLASSES = ("frontier_accelerator", "standard_accelerator", "unknown")

# Factor kinds, the profile field each keys off, and the neutral category
# that must carry the (1.0, 1.0, 1.0) triple.
INFERENCE_FACTOR_KINDS = ("context", "serving", "modality", "arch")
TRAINING_FACTOR_KINDS = ("regime", "arch_training", "hardware")
FACTOR_KIND_CATEGORIES: dict[str, tuple[str, ...]] = {
    "context": CONTEXT_CLASSES,
    "serving": SERVING_MODES,
    "modality": MODALITIES,
    "arch": ARCH_NOTES,
    "regime": TRAINING_REGIMES,
    "arch_training": ARCH_NOTES,
    "hardware": HARDWARE_CLASSES,
}
NEUTRAL_CATEGORIES: dict[str, str] = {
    "context": "standard",
    "serving": "dedicated",
    "modality": "text_only",
    "arch": "dense",
    "regime": "foundation_pretraining",
    "arch_training": "dense",
    "hardware": "frontier_accelerator",
}


class CatalogError(ValueError):
    """Raised when a bundle fails validation; message names file/record/field."""


class ModelNotFoundError(LookupError):
    def __init__(self, query: str, suggestions: tuple[str, ...]):
        self.query = query
        self.suggestions = suggestions
        hint = f"; closest: {', '.join(suggestions)}" if suggestions else ""
        super().__init__(f"no model matches {query!r}{hint}")


class AmbiguousModelError(LookupError):
    def __init__(self, query: str, candidates: tuple[str, ...]):
        self.query = query
        self.candidates = candidates
        super().__init__(
            f"model query {query!r} is ambiguous: matches {', '.join(candidates)}"
        )


# ── Types ─────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class AnchorConstants:
    """Inference anchor: the measured reference point the scaling bends around."""

    anchor_energy_wh: float
    anchor_active_params_b: float
    output_token_weight: float
    ref_input_tokens: int
    ref_output_tokens: int
    ref_volume: float
    params_exponents: ScenarioTriple
    volume_exponents: ScenarioTriple

    def validate(self) -> None:
        for name in ("anchor_energy_wh", "anchor_active_params_b", "output_token_weight"):
            if getattr(self, name) <= 0:
                raise CatalogError(f"anchors.yaml: inference.{name} must be > 0")
        if self.ref_input_tokens <= 0 or self.ref_output_tokens <= 0:
            raise CatalogError("anchors.yaml: inference reference token counts must be > 0")
        expected = self.ref_input_tokens + self.output_token_weight * self.ref_output_tokens
        if self.ref_volume != expected:
            raise CatalogError(
                f"anchors.yaml: inference.ref_volume is {self.ref_volume}, "
                f"but ref_input_tokens + weight * ref_output_tokens = {expected}"
            )
        _validate_exponents("anchors.yaml: inference.params_exponents", self.params_exponents)
        _validate_exponents("anchors.yaml: inference.volume_exponents", self.volume_exponents)


@dataclass(frozen=True)
class TrainingAnchor:
    """Training anchor and exponents; ``fitted`` marks calibrated values."""

    anchor_energy_gwh: float
    anchor_params_b: float
    anchor_tokens_b: float
    params_exponents: ScenarioTriple
    tokens_exponents: ScenarioTriple
    fitted: bool = False

    def validate(self) -> None:
        for name in ("anchor_energy_gwh", "anchor_params_b", "anchor_tokens_b"):
            if getattr(self, name) <= 0:
                raise CatalogError(f"anchors.yaml: training.{name} must be > 0")
        _validate_exponents("anchors.yaml: training.params_exponents", self.params_exponents)
        _validate_exponents("anchors.yaml: training.tokens_exponents", self.tokens_exponents)


def _validate_exponents(label: str, triple: ScenarioTriple) -> None:
    if not (0 < triple.low < triple.central < triple.high):
        raise CatalogError(f"{label} must be positive and strictly increasing, got {tuple(triple)}")


@dataclass(frozen=True)
class FactorOverrides:
    """Per-model calibrated factor products that replace the table route."""

    inference: ScenarioTriple | None = None
    training: ScenarioTriple | None = None
    fitted: bool = True


@dataclass(frozen=True)
class ModelProfile:
    id: str
    display_name: str
    raw_active_params_b: float
    context_class: str
    serving_mode: str
    modality: str
    arch_note: str
    provider_country: str
    training_regime: str
    hardware_class: str
    params_assumed: bool = False
    training_tokens_b: float | None = None
    factor_overrides: FactorOverrides | None = None
    source_note: str = ""

    def validate(self) -> None:
        where = f"models.yaml: model {self.id!r}"
        if not re.fullmatch(r"[a-z0-9]+(-[a-z0-9]+)*", self.id):
            raise CatalogError(f"models.yaml: model id {self.id!r} is not a lowercase slug")
        if not self.display_name.strip():
            raise CatalogError(f"{where}: display_name is empty")
        if self.raw_active_params_b <= 0:
            raise CatalogError(
                f"{where}: raw_active_params_b must be > 0, got {self.raw_active_params_b}"
            )
        if self.training_tokens_b is not None and self.training_tokens_b <= 0:
            raise CatalogError(
                f"{where}: training_tokens_b must be > 0, got {self.training_tokens_b}"
            )
        for fname, value, allowed in (
            ("context_class", self.context_class, CONTEXT_CLASSES),
            ("serving_mode", self.serving_mode, SERVING_MODES),
            ("modality", self.modality, MODALITIES),
            ("arch_note", self.arch_note, ARCH_NOTES),
            ("training_regime", self.training_regime, TRAINING_REGIMES),
            ("hardware_class", self.hardware_class, HARDWARE_CLASSES),
        ):
            if value not in allowed:
                raise CatalogError(
                    f"{where}: {fname} {value!r} not one of {', '.join(allowed)}"
                )
        if self.factor_overrides is not None:
            for route, triple in (
                ("inference", self.factor_overrides.inference),
                ("training", self.factor_overrides.training),
            ):
                if triple is not None and any(v <= 0 for v in triple):
                    raise CatalogError(
                        f"{where}: factor_overrides.{route} values must be > 0"
                    )


@dataclass(frozen=True)
class FactorTable:
    """Scenario multiplier triples keyed by (kind, category)."""

    entries: Mapping[tuple[str, str], ScenarioTriple] = field(default_factory=dict)

    def get(self, kind: str, category: str) -> ScenarioTriple:
        try:
            return self.entries[(kind, category)]
        except KeyError:
            raise CatalogError(
                f"factors.yaml: no entry for kind {kind!r}, category {category!r}"
            ) from None

    def validate(self) -> None:
        for (kind, category), triple in self.entries.items():
            if kind not in FACTOR_KIND_CATEGORIES:
                raise CatalogError(f"factors.yaml: unknown factor kind {kind!r}")
            if category not in FACTOR_KIND_CATEGORIES[kind]:
                raise CatalogError(
                    f"factors.yaml: kind {kind!r}: unknown category {category!r}"
                )
            if any(v <= 0 for v in triple):
                raise CatalogError(
                    f"factors.yaml: kind {kind!r}, category {category!r}: "
                    f"values must be > 0, got {tuple(triple)}"
                )
        for kind, neutral in NEUTRAL_CATEGORIES.items():
            triple = self.entries.get((kind, neutral))
            if triple is None:
                raise CatalogError(
                    f"factors.yaml: kind {kind!r} is missing its neutral category {neutral!r}"
                )
            if tuple(triple) != (1.0, 1.0, 1.0):
                raise CatalogError(
                    f"factors.yaml: kind {kind!r}: neutral category {neutral!r} "
                    f"must be [1.0, 1.0, 1.0], got {tuple(triple)}"
                )

    def validate_coverage(self, profiles: Iterable[ModelProfile]) -> None:
        """Every profile category must resolve; missing entries fail load, not estimate."""
        for profile in profiles:
            needs = (
                ("context", profile.context_class),
                ("serving", profile.serving_mode),
                ("modality", profile.modality),
                ("arch", profile.arch_note),
                ("regime", profile.training_regime),
                ("arch_training", profile.arch_note),
                ("hardware", profile.hardware_class),
            )
            for kind, category in needs:
                if (kind, category) not in self.entries:
                    raise CatalogError(
                        f"factors.yaml: missing entry for kind {kind!r}, category "
                        f"{category!r}, required by model {profile.id!r}"
                    )


@dataclass(frozen=True)
class CountryMix:
    country_code: str
    carbon_intensity_g_per_kwh: float
    source_note: str = ""

    def validate(self) -> None:
        if not re.fullmatch(r"[A-Z]{2}", self.country_code):
            raise CatalogError(
                f"countries.yaml: country_code {self.country_code!r} must be two uppercase letters"
            )
        if self.carbon_intensity_g_per_kwh <= 0:
            raise CatalogError(
                f"countries.yaml: {self.country_code}: carbon_intensity_g_per_kwh must be > 0"
            )


@dataclass(frozen=True)
class TokenDefault:
    input_tokens: int
    output_tokens: int
    fitted: bool = False


@dataclass(frozen=True)
class ParserLexicon:
    """Keyword tables feeding the deterministic scenario parser."""

    request_type_keywords: Mapping[str, str] = field(default_factory=dict)  # keyword -> type
    period_phrases: Mapping[str, int] = field(default_factory=dict)  # phrase -> monthly factor
    country_names: Mapping[str, str] = field(default_factory=dict)  # lowercase name -> code
    token_defaults: Mapping[str, TokenDefault] = field(default_factory=dict)

    def validate(self, country_codes: set[str]) -> None:
        for rtype, default in self.token_defaults.items():
            if default.input_tokens < 0 or default.output_tokens < 0:
                raise CatalogError(f"parser.yaml: request_types.{rtype}: negative token default")
            if default.input_tokens == 0 and default.output_tokens == 0:
                raise CatalogError(f"parser.yaml: request_types.{rtype}: all-zero token default")
        for keyword, rtype in self.request_type_keywords.items():
            if rtype not in self.token_defaults:
                raise CatalogError(
                    f"parser.yaml: keyword {keyword!r} maps to unknown request type {rtype!r}"
                )
        if "generic" not in self.token_defaults:
            raise CatalogError("parser.yaml: request_types must include 'generic'")
        for phrase, factor in self.period_phrases.items():
            if factor <= 0:
                raise CatalogError(f"parser.yaml: period {phrase!r}: monthly factor must be > 0")
        for name, code in self.country_names.items():
            if code not in country_codes:
                raise CatalogError(
                    f"parser.yaml: country name {name!r} maps to {code!r}, "
                    "which is not in countries.yaml"
                )


@dataclass(frozen=True)
class Catalog:
    format_version: str
    description: str
    anchors: AnchorConstants
    training_anchor: TrainingAnchor
    models: tuple[ModelProfile, ...]
    factors: FactorTable
    countries: tuple[CountryMix, ...]
    lexicon: ParserLexicon

    def model(self, model_id: str) -> ModelProfile:
        for profile in self.models:
            if profile.id == model_id:
                return profile
        raise ModelNotFoundError(model_id, _nearest_ids(model_id, self.models))

    def country(self, code: str) -> CountryMix:
        for mix in self.countries:
            if mix.country_code == code:
                return mix
        raise CatalogError(f"country {code!r} is not in the catalog")

    def has_country(self, code: str) -> bool:
        return any(mix.country_code == code for mix in self.countries)

    @property
    def model_ids(self) -> tuple[str, ...]:
        return tuple(profile.id for profile in self.models)


def methodology_version(catalog: Catalog) -> str:
    """Version string: format version plus a short hash of the anchor constants.

    Two bundles that would produce different numbers for the same inputs get
    different methodology versions, so cached results can be invalidated.
    """
    stamp = json.dumps(
        {
            "inference": {
                "anchor_energy_wh": catalog.anchors.anchor_energy_wh,
                "anchor_active_params_b": catalog.anchors.anchor_active_params_b,
                "output_token_weight": catalog.anchors.output_token_weight,
                "ref_volume": catalog.anchors.ref_volume,
                "params_exponents": list(catalog.anchors.params_exponents),
                "volume_exponents": list(catalog.anchors.volume_exponents),
            },
            "training": {
                "anchor_energy_gwh": catalog.training_anchor.anchor_energy_gwh,
                "anchor_params_b": catalog.training_anchor.anchor_params_b,
                "anchor_tokens_b": catalog.training_anchor.anchor_tokens_b,
                "params_exponents": list(catalog.training_anchor.params_exponents),
                "tokens_exponents": list(catalog.training_anchor.tokens_exponents),
            },
        },
        sort_keys=True,
    )
    digest = hashlib.sha256(stamp.encode("utf-8")).hexdigest()[:12]
    return f"{catalog.format_version}+{digest}"


# ── Loading ───────────────────────────────────────────────────────────────


def default_catalog_dir() -> Path:
    return Path(str(resources.files("llmscreen").joinpath("data", "catalog")))


def load_catalog(path: str | Path) -> Catalog:
    """Load and validate a bundle directory; raises CatalogError on any defect."""
    root = Path(path)
    if not root.is_dir():
        raise CatalogError(f"catalog path {str(root)!r} is not a directory")

    manifest = _read_yaml(root, "bundle.yaml")
    version = manifest.get("format_version")
    if not isinstance(version, str):
        raise CatalogError("bundle.yaml: format_version must be a string")
    if version not in SUPPORTED_FORMAT_VERSIONS:
        raise CatalogError(
            f"bundle.yaml: unsupported format_version {version!r}; "
            f"this build reads {', '.join(SUPPORTED_FORMAT_VERSIONS)}"
        )
    description = str(manifest.get("description", ""))

    anchors_doc = _read_yaml(root, "anchors.yaml")
    anchors = _parse_inference_anchor(_expect_map(anchors_doc, "anchors.yaml", "inference"))
    training_anchor = _parse_training_anchor(_expect_map(anchors_doc, "anchors.yaml", "training"))
    anchors.validate()
    training_anchor.validate()

    models_doc = _read_yaml(root, "models.yaml")
    raw_models = models_doc.get("models")
    if not isinstance(raw_models, list):
        raise CatalogError("models.yaml: top-level 'models' must be a list")
    models = tuple(_parse_model(entry, index) for index, entry in enumerate(raw_models))
    seen: set[str] = set()
    for profile in models:
        profile.validate()
        if profile.id in seen:
            raise CatalogError(f"models.yaml: duplicate model id {profile.id!r}")
        seen.add(profile.id)

    factors = _parse_factors(_read_yaml(root, "factors.yaml"))
    factors.validate()
    factors.validate_coverage(models)

    countries_doc = _read_yaml(root, "countries.yaml")
    raw_countries = countries_doc.get("countries")
    if not isinstance(raw_countries, list):
        raise CatalogError("countries.yaml: top-level 'countries' must be a list")
    countries = tuple(_parse_country(entry) for entry in raw_countries)
    codes: set[str] = set()
    for mix in countries:
        mix.validate()
        if mix.country_code in codes:
            raise CatalogError(f"countries.yaml: duplicate country_code {mix.country_code!r}")
        codes.add(mix.country_code)

    for profile in models:
        if profile.provider_country not in codes:
            raise CatalogError(
                f"models.yaml: model {profile.id!r}: provider_country "
                f"{profile.provider_country!r} is not in countries.yaml"
            )

    lexicon = _parse_lexicon(_read_yaml(root, "parser.yaml"))
    lexicon.validate(codes)

    return Catalog(
        format_version=version,
        description=description,
        anchors=anchors,
        training_anchor=training_anchor,
        models=models,
        factors=factors,
        countries=countries,
        lexicon=lexicon,
    )


def _read_yaml(root: Path, name: str) -> dict[str, Any]:
    target = root / name
    if not target.is_file():
        raise CatalogError(f"{name}: file missing from bundle {str(root)!r}")
    try:
        doc = yaml.safe_load(target.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise CatalogError(f"{name}: not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise CatalogError(f"{name}: top level must be a mapping")
    return doc


def _expect_map(doc: dict[str, Any], fname: str, key: str) -> dict[str, Any]:
    value = doc.get(key)
    if not isinstance(value, dict):
        raise CatalogError(f"{fname}: {key!r} section missing or not a mapping")
    return value


def _num(raw: dict[str, Any], fname: str, where: str, key: str) -> float:
    value = raw.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise CatalogError(f"{fname}: {where}: {key} must be a number, got {value!r}")
    return float(value)


def _triple(raw: Any, fname: str, where: str) -> ScenarioTriple:
    if (
        not isinstance(raw, list)
        or len(raw) != 3
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw)
    ):
        raise CatalogError(f"{fname}: {where} must be a list of three numbers, got {raw!r}")
    return ScenarioTriple(float(raw[0]), float(raw[1]), float(raw[2]))


def _parse_inference_anchor(raw: dict[str, Any]) -> AnchorConstants:
    f, w = "anchors.yaml", "inference"
    return AnchorConstants(
        anchor_energy_wh=_num(raw, f, w, "anchor_energy_wh"),
        anchor_active_params_b=_num(raw, f, w, "anchor_active_params_b"),
        output_token_weight=_num(raw, f, w, "output_token_weight"),
        ref_input_tokens=int(_num(raw, f, w, "ref_input_tokens")),
        ref_output_tokens=int(_num(raw, f, w, "ref_output_tokens")),
        ref_volume=_num(raw, f, w, "ref_volume"),
        params_exponents=_triple(raw.get("params_exponents"), f, f"{w}.params_exponents"),
        volume_exponents=_triple(raw.get("volume_exponents"), f, f"{w}.volume_exponents"),
    )


def _parse_training_anchor(raw: dict[str, Any]) -> TrainingAnchor:
    f, w = "anchors.yaml", "training"
    return TrainingAnchor(
        anchor_energy_gwh=_num(raw, f, w, "anchor_energy_gwh"),
        anchor_params_b=_num(raw, f, w, "anchor_params_b"),
        anchor_tokens_b=_num(raw, f, w, "anchor_tokens_b"),
        params_exponents=_triple(raw.get("params_exponents"), f, f"{w}.params_exponents"),
        tokens_exponents=_triple(raw.get("tokens_exponents"), f, f"{w}.tokens_exponents"),
        fitted=bool(raw.get("fitted", False)),
    )


def _parse_model(entry: Any, index: int) -> ModelProfile:
    if not isinstance(entry, dict):
        raise CatalogError(f"models.yaml: models[{index}] must be a mapping")
    model_id = entry.get("id")
    if not isinstance(model_id, str) or not model_id:
        raise CatalogError(f"models.yaml: models[{index}]: id missing or not a string")
    where = f"model {model_id!r}"
    overrides = None
    raw_overrides = entry.get("factor_overrides")
    if raw_overrides is not None:
        if not isinstance(raw_overrides, dict):
            raise CatalogError(f"models.yaml: {where}: factor_overrides must be a mapping")
        inf = raw_overrides.get("inference")
        tr = raw_overrides.get("training")
        overrides = FactorOverrides(
            inference=None if inf is None else _triple(inf, "models.yaml", f"{where}: factor_overrides.inference"),
            training=None if tr is None else _triple(tr, "models.yaml", f"{where}: factor_overrides.training"),
            fitted=bool(raw_overrides.get("fitted", True)),
        )
    tokens = entry.get("training_tokens_b")
    if tokens is not None:
        tokens = _num(entry, "models.yaml", where, "training_tokens_b")
    try:
        return ModelProfile(
            id=model_id,
            display_name=str(entry["display_name"]),
            raw_active_params_b=_num(entry, "models.yaml", where, "raw_active_params_b"),
            context_class=str(entry["context_class"]),
            serving_mode=str(entry["serving_mode"]),
            modality=str(entry["modality"]),
            arch_note=str(entry["arch_note"]),
            provider_country=str(entry["provider_country"]),
            training_regime=str(entry["training_regime"]),
            hardware_class=str(entry["hardware_class"]),
            params_assumed=bool(entry.get("params_assumed", False)),
            training_tokens_b=tokens,
            factor_overrides=overrides,
            source_note=str(entry.get("source_note", "")),
        )
    except KeyError as exc:
        raise CatalogError(f"models.yaml: {where}: missing field {exc.args[0]!r}") from exc


def _parse_factors(doc: dict[str, Any]) -> FactorTable:
    raw = doc.get("factors")
    if not isinstance(raw, dict):
        raise CatalogError("factors.yaml: top-level 'factors' must be a mapping")
    entries: dict[tuple[str, str], ScenarioTriple] = {}
    for kind, categories in raw.items():
        if not isinstance(categories, dict):
            raise CatalogError(f"factors.yaml: kind {kind!r} must map categories to triples")
        for category, triple in categories.items():
            entries[(str(kind), str(category))] = _triple(
                triple, "factors.yaml", f"{kind}.{category}"
            )
    return FactorTable(entries=entries)


def _parse_country(entry: Any) -> CountryMix:
    if not isinstance(entry, dict) or "country_code" not in entry:
        raise CatalogError(f"countries.yaml: malformed entry {entry!r}")
    code = str(entry["country_code"])
    return CountryMix(
        country_code=code,
        carbon_intensity_g_per_kwh=_num(entry, "countries.yaml", code, "carbon_intensity_g_per_kwh"),
        source_note=str(entry.get("source_note", "")),
    )


def _parse_lexicon(doc: dict[str, Any]) -> ParserLexicon:
    raw_types = doc.get("request_types")
    if not isinstance(raw_types, dict):
        raise CatalogError("parser.yaml: top-level 'request_types' must be a mapping")
    token_defaults: dict[str, TokenDefault] = {}
    for rtype, spec in raw_types.items():
        if not isinstance(spec, dict):
            raise CatalogError(f"parser.yaml: request_types.{rtype} must be a mapping")
        token_defaults[str(rtype)] = TokenDefault(
            input_tokens=int(_num(spec, "parser.yaml", f"request_types.{rtype}", "input_tokens")),
            output_tokens=int(_num(spec, "parser.yaml", f"request_types.{rtype}", "output_tokens")),
            fitted=bool(spec.get("fitted", False)),
        )
    raw_keywords = doc.get("keywords")
    if not isinstance(raw_keywords, dict):
        raise CatalogError("parser.yaml: top-level 'keywords' must be a mapping")
    keywords: dict[str, str] = {}
    for rtype, words in raw_keywords.items():
        if not isinstance(words, list):
            raise CatalogError(f"parser.yaml: keywords.{rtype} must be a list")
        for word in words:
            keyword = str(word).lower()
            if keyword in keywords:
                raise CatalogError(f"parser.yaml: keyword {keyword!r} listed twice")
            keywords[keyword] = str(rtype)
    raw_periods = doc.get("periods")
    if not isinstance(raw_periods, list):
        raise CatalogError("parser.yaml: top-level 'periods' must be a list")
    periods: dict[str, int] = {}
    for entry in raw_periods:
        if not isinstance(entry, dict) or "phrase" not in entry:
            raise CatalogError(f"parser.yaml: malformed period entry {entry!r}")
        periods[str(entry["phrase"]).lower()] = int(
            _num(entry, "parser.yaml", str(entry["phrase"]), "monthly_factor")
        )
    raw_countries = doc.get("countries")
    if not isinstance(raw_countries, list):
        raise CatalogError("parser.yaml: top-level 'countries' must be a list")
    names: dict[str, str] = {}
    for entry in raw_countries:
        if not isinstance(entry, dict) or "name" not in entry or "code" not in entry:
            raise CatalogError(f"parser.yaml: malformed country entry {entry!r}")
        names[str(entry["name"]).lower()] = str(entry["code"])
    return ParserLexicon(
        request_type_keywords=keywords,
        period_phrases=periods,
        country_names=names,
        token_defaults=token_defaults,
    )


# ── Serialisation (round-trip support) ────────────────────────────────────


def save_catalog(catalog: Catalog, path: str | Path) -> None:
    """Write a bundle directory equivalent to ``catalog`` (comments are not preserved)."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)

    def dump(name: str, doc: dict[str, Any]) -> None:
        (root / name).write_text(
            yaml.safe_dump(doc, sort_keys=False, allow_unicode=True), encoding="utf-8"
        )

    dump("bundle.yaml", {"format_version": catalog.format_version, "description": catalog.description})
    a, t = catalog.anchors, catalog.training_anchor
    dump(
        "anchors.yaml",
        {
            "inference": {
                "anchor_energy_wh": a.anchor_energy_wh,
                "anchor_active_params_b": a.anchor_active_params_b,
                "output_token_weight": a.output_token_weight,
                "ref_input_tokens": a.ref_input_tokens,
                "ref_output_tokens": a.ref_output_tokens,
                "ref_volume": a.ref_volume,
                "params_exponents": list(a.params_exponents),
                "volume_exponents": list(a.volume_exponents),
            },
            "training": {
                "fitted": t.fitted,
                "anchor_energy_gwh": t.anchor_energy_gwh,
                "anchor_params_b": t.anchor_params_b,
                "anchor_tokens_b": t.anchor_tokens_b,
                "params_exponents": list(t.params_exponents),
                "tokens_exponents": list(t.tokens_exponents),
            },
        },
    )
    model_entries = []
    for m in catalog.models:
        entry: dict[str, Any] = {
            "id": m.id,
            "display_name": m.display_name,
            "raw_active_params_b": m.raw_active_params_b,
            "params_assumed": m.params_assumed,
            "context_class": m.context_class,
            "serving_mode": m.serving_mode,
            "modality": m.modality,
            "arch_note": m.arch_note,
            "provider_country": m.provider_country,
            "training_regime": m.training_regime,
            "hardware_class": m.hardware_class,
        }
        if m.training_tokens_b is not None:
            entry["training_tokens_b"] = m.training_tokens_b
        if m.factor_overrides is not None:
            ov: dict[str, Any] = {"fitted": m.factor_overrides.fitted}
            if m.factor_overrides.inference is not None:
                ov["inference"] = list(m.factor_overrides.inference)
            if m.factor_overrides.training is not None:
                ov["training"] = list(m.factor_overrides.training)
            entry["factor_overrides"] = ov
        if m.source_note:
            entry["source_note"] = m.source_note
        model_entries.append(entry)
    dump("models.yaml", {"models": model_entries})
    factor_doc: dict[str, dict[str, list[float]]] = {}
    for (kind, category), triple in catalog.factors.entries.items():
        factor_doc.setdefault(kind, {})[category] = list(triple)
    dump("factors.yaml", {"factors": factor_doc})
    dump(
        "countries.yaml",
        {
            "countries": [
                {
                    "country_code": c.country_code,
                    "carbon_intensity_g_per_kwh": c.carbon_intensity_g_per_kwh,
                    "source_note": c.source_note,
                }
                for c in catalog.countries
            ]
        },
    )
    lex = catalog.lexicon
    keyword_doc: dict[str, list[str]] = {}
    for keyword, rtype in lex.request_type_keywords.items():
        keyword_doc.setdefault(rtype, []).append(keyword)
    dump(
        "parser.yaml",
        {
            "request_types": {
                rtype: (
                    {"input_tokens": d.input_tokens, "output_tokens": d.output_tokens, "fitted": True}
                    if d.fitted
                    else {"input_tokens": d.input_tokens, "output_tokens": d.output_tokens}
                )
                for rtype, d in lex.token_defaults.items()
            },
            "keywords": keyword_doc,
            "periods": [
                {"phrase": phrase, "monthly_factor": factor}
                for phrase, factor in lex.period_phrases.items()
            ],
            "countries": [{"name": name, "code": code} for name, code in lex.country_names.items()],
        },
    )


# ── Model lookup ──────────────────────────────────────────────────────────


def _normalize(text: str) -> str:
    return re.sub(r"[^a-z0-9]", "", text.lower())


def lookup_model(catalog: Catalog, query: str) -> ModelProfile:
    """Resolve a user-supplied model string to a profile.

    Tiers, tried in order: exact id, case-insensitive display name,
    normalized equality (case/punctuation-insensitive), then normalized
    prefix.  A prefix that several profiles share is reported as ambiguous
    rather than silently picking one.
    """
    q = query.strip()
    if not q:
        raise ModelNotFoundError(query, _nearest_ids(query, catalog.models))
    for profile in catalog.models:
        if profile.id == q:
            return profile
    lowered = q.lower()
    for profile in catalog.models:
        if profile.display_name.lower() == lowered:
            return profile
    norm = _normalize(q)
    if norm:
        exact = [
            p for p in catalog.models
            if _normalize(p.id) == norm or _normalize(p.display_name) == norm
        ]
        if len(exact) == 1:
            return exact[0]
        if len(exact) > 1:
            raise AmbiguousModelError(query, tuple(sorted(p.id for p in exact)))
        prefixed = [
            p for p in catalog.models
            if _normalize(p.id).startswith(norm) or _normalize(p.display_name).startswith(norm)
        ]
        if len(prefixed) == 1:
            return prefixed[0]
        if len(prefixed) > 1:
            raise AmbiguousModelError(query, tuple(sorted(p.id for p in prefixed)))
    raise ModelNotFoundError(query, _nearest_ids(query, catalog.models))


def levenshtein(a: str, b: str) -> int:
    # Classic two-row dynamic programme; inputs here are short slugs.
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (ca != cb),
                )
            )
        previous = current
    return previous[-1]


def _nearest_ids(query: str, profiles: tuple[ModelProfile, ...], count: int = 3) -> tuple[str, ...]:
    norm = _normalize(query)
    ranked = sorted(
        profiles,
        key=lambda p: (levenshtein(norm, _normalize(p.id)), p.id),
    )
    return tuple(p.id for p in ranked[:count])
