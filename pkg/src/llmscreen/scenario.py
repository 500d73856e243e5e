"""Rule-based extraction of estimation scenarios from English descriptions.

Turns a sentence like "We use GPT-4o-mini for customer support, around
4,000 uses per month." into a Scenario: model, request type, token load,
monthly volume, country.  The pipeline is deliberately a deterministic
lexicon/pattern pass, not a language model: every rule is auditable, the
lexicons live in the catalog bundle, and identical text always yields an
identical Scenario.  Every field is tagged explicit / inferred / default
so downstream reports can surface what was assumed.

Extraction order matters: the model mention and explicit token counts
are consumed before volume binding, so "750 input tokens" is never
mistaken for a usage volume and the "2.5" in "Gemini 2.5 Pro" is never
read as a request count.  Remaining quantities become volumes only when
a period phrase ("per month", "a day", "monthly", ...) sits within four
tokens; day-based periods are normalized at 30 days/month.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .catalog import Catalog, ModelProfile, levenshtein

SCENARIO_FIELDS = ("model", "request_type", "token_load", "requests_per_month", "country")
FIELD_PROVENANCES = ("explicit", "inferred", "default")


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    suggestions: tuple[str, ...]


class ScenarioParseError(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = tuple(diagnostics)
        super().__init__("; ".join(d.message for d in diagnostics))


@dataclass(frozen=True)
class Scenario:
    model_id: str
    request_type: str
    input_tokens: int
    output_tokens: int
    requests_per_month: int | None
    country_code: str | None
    field_provenance: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.requests_per_month is not None and self.requests_per_month < 1:
            raise ValueError("requests_per_month must be >= 1 when present")
        if set(self.field_provenance) != set(SCENARIO_FIELDS):
            raise ValueError("every scenario field needs exactly one provenance tag")
        for tag in self.field_provenance.values():
            if tag not in FIELD_PROVENANCES:
                raise ValueError(f"unknown field provenance {tag!r}")


# ── Tokenization and numbers ─────────────────────────────────────────────

_STRIP = ".,;:!?()[]{}\"'“”‘’"

_AMBIGUOUS_NUM = re.compile(r"^\d{1,3}(?:\.\d{3})+$")  # "4.000": dot separator?
_GROUPED_INT = re.compile(r"^\d{1,3}(?:,\d{3})+$")
_PLAIN_INT = re.compile(r"^\d+$")
_K_SUFFIX = re.compile(r"^(\d+(?:\.\d+)?)k$")
_DECIMAL = re.compile(r"^\d+\.\d+$")

_UNIT_WORDS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
    "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11,
    "twelve": 12, "thirteen": 13, "fourteen": 14, "fifteen": 15,
    "sixteen": 16, "seventeen": 17, "eighteen": 18, "nineteen": 19,
    "twenty": 20, "thirty": 30, "forty": 40, "fifty": 50, "sixty": 60,
    "seventy": 70, "eighty": 80, "ninety": 90,
}
_SCALE_WORDS = {"hundred": 100, "thousand": 1000, "million": 1000000}


def _tokenize(text: str) -> list[str]:
    # "/" separates a count from its period ("20000/month"); make it a word
    # break so the period phrase pass sees "20000 per month".
    pieces = text.replace("/", " per ").split()
    return [p.strip(_STRIP) for p in pieces if p.strip(_STRIP)]


@dataclass(frozen=True)
class _Quantity:
    value: float
    start: int  # token index range [start, end] inclusive
    end: int
    raw: str
    ambiguous_separator: bool = False


def _numeric_token(token: str) -> tuple[float, bool] | None:
    """(value, dot-separator-ambiguity) for a digit-bearing token, else None."""
    if _AMBIGUOUS_NUM.match(token):
        return float(token.replace(".", "")), True
    if _GROUPED_INT.match(token):
        return float(token.replace(",", "")), False
    if _PLAIN_INT.match(token):
        return float(token), False
    m = _K_SUFFIX.match(token)
    if m:
        return float(m.group(1)) * 1000.0, False
    if _DECIMAL.match(token):
        return float(token), False
    return None


def _word_number_run(tokens: list[str], start: int) -> tuple[float, int] | None:
    """Parse a word-number run beginning at ``start``; returns (value, end)."""
    i = start
    total = 0.0
    current = 0.0
    seen = False
    while i < len(tokens):
        word = tokens[i].lower()
        parts = word.split("-")  # "twenty-five"
        if word == "a" and i + 1 < len(tokens) and tokens[i + 1].lower() in _SCALE_WORDS:
            current += 1
        elif all(p in _UNIT_WORDS for p in parts) and parts[0]:
            current += sum(_UNIT_WORDS[p] for p in parts)
        elif word in _SCALE_WORDS:
            scale = _SCALE_WORDS[word]
            if scale == 100:
                current = (current or 1) * 100
            else:
                total += (current or 1) * scale
                current = 0
        else:
            break
        seen = True
        i += 1
    if not seen:
        return None
    return total + current, i - 1


def _scan_quantities(tokens: list[str]) -> list[_Quantity]:
    quantities: list[_Quantity] = []
    i = 0
    while i < len(tokens):
        numeric = _numeric_token(tokens[i].lower())
        if numeric is not None:
            value, ambiguous = numeric
            quantities.append(_Quantity(value, i, i, tokens[i], ambiguous))
            i += 1
            continue
        run = _word_number_run(tokens, i)
        if run is not None:
            value, end = run
            quantities.append(_Quantity(value, i, end, " ".join(tokens[i : end + 1])))
            i = end + 1
            continue
        i += 1
    return quantities


# ── Field extractors ─────────────────────────────────────────────────────

_INPUT_MARKERS = {"input", "prompt"}
_OUTPUT_MARKERS = {"output", "completion", "response"}


def _extract_token_counts(
    tokens: list[str], quantities: list[_Quantity]
) -> tuple[int | None, int | None, set[int]]:
    """Explicit "N input tokens" / "N output tokens" mentions."""
    input_count: int | None = None
    output_count: int | None = None
    consumed: set[int] = set()
    for q in quantities:
        if q.end + 2 >= len(tokens) or q.value != int(q.value):
            continue
        marker = tokens[q.end + 1].lower()
        unit = tokens[q.end + 2].lower()
        if not unit.startswith("token"):
            continue
        if marker in _INPUT_MARKERS and input_count is None:
            input_count = int(q.value)
            consumed.add(q.start)
        elif marker in _OUTPUT_MARKERS and output_count is None:
            output_count = int(q.value)
            consumed.add(q.start)
    return input_count, output_count, consumed


def _period_spans(tokens: list[str], phrases: dict[str, int]) -> list[tuple[int, int, int]]:
    """(start, end, monthly_factor) for every period phrase occurrence."""
    lowered = [t.lower() for t in tokens]
    spans: list[tuple[int, int, int]] = []
    for phrase, factor in phrases.items():
        words = phrase.split()
        for i in range(len(lowered) - len(words) + 1):
            if lowered[i : i + len(words)] == words:
                spans.append((i, i + len(words) - 1, factor))
    spans.sort()
    return spans


_BIND_WINDOW = 4  # max token distance between a quantity and its period


def _bind_volumes(
    quantities: list[_Quantity],
    consumed: set[int],
    periods: list[tuple[int, int, int]],
    diagnostics: list[Diagnostic],
) -> int | None:
    bound: list[tuple[_Quantity, int]] = []
    for q in quantities:
        if q.start in consumed:
            continue
        forward = [p for p in periods if 1 <= p[0] - q.end <= _BIND_WINDOW]
        backward = [p for p in periods if 1 <= q.start - p[1] <= _BIND_WINDOW]
        chosen = None
        if forward:
            chosen = min(forward, key=lambda p: p[0] - q.end)
        elif backward:
            chosen = min(backward, key=lambda p: q.start - p[1])
        if chosen is None:
            continue
        if q.ambiguous_separator:
            thousands = int(q.value)
            try:
                decimal_reading = float(q.raw)
            except ValueError:
                decimal_reading = None
            suggestions = [f"write {thousands:,} (or {thousands}) if you mean {thousands} requests"]
            if decimal_reading is not None:
                suggestions.append(
                    f"{q.raw} read as a decimal is {decimal_reading:g}, "
                    "which is not a whole request count"
                )
            diagnostics.append(
                Diagnostic(
                    code="ambiguous_number",
                    message=(
                        f"{q.raw!r} is ambiguous: '.' could be a thousands "
                        "separator or a decimal point"
                    ),
                    suggestions=tuple(suggestions),
                )
            )
            continue
        monthly = q.value * chosen[2]
        if monthly < 1 or monthly != int(monthly):
            diagnostics.append(
                Diagnostic(
                    code="invalid_volume",
                    message=f"volume {q.raw!r} must be a whole count of at least 1",
                    suggestions=("state usage as a positive whole number, e.g. '4,000 per month'",),
                )
            )
            continue
        bound.append((q, int(monthly)))
    if not bound:
        return None
    readings = {monthly: q for q, monthly in bound}
    if len(readings) > 1:
        listed = ", ".join(
            f"{q.raw!r} -> {monthly}/month" for monthly, q in sorted(readings.items())
        )
        diagnostics.append(
            Diagnostic(
                code="volume_conflict",
                message=f"conflicting usage volumes: {listed}",
                suggestions=tuple(
                    f"keep only {q.raw!r} if you mean {monthly} requests/month"
                    for monthly, q in sorted(readings.items())
                ),
            )
        )
        return None
    return bound[0][1]


def _normalize(text: str) -> str:
    return re.sub(r"[^a-z0-9]", "", text.lower())


def _find_model(
    tokens: list[str], catalog: Catalog, diagnostics: list[Diagnostic]
) -> tuple[ModelProfile | None, set[int]]:
    """The mentioned profile plus the token indices the mention occupies.

    The span is handed to volume binding as consumed: version fragments
    like the "2.5" in "Gemini 2.5 Pro" must never become request counts.
    """
    profiles = catalog.models
    norms = [(p, _normalize(p.id), _normalize(p.display_name)) for p in profiles]
    # Exact pass, leftmost-longest: a full normalized id or display name.
    for start in range(len(tokens)):
        for n in range(min(4, len(tokens) - start), 0, -1):
            gram = _normalize("".join(tokens[start : start + n]))
            if not gram:
                continue
            hits = [p for p, nid, nname in norms if gram in (nid, nname)]
            if hits:
                return hits[0], set(range(start, start + n))
    # Prefix pass: an unambiguous leading fragment ("gemini", "claude opus").
    for start in range(len(tokens)):
        for n in range(min(4, len(tokens) - start), 0, -1):
            gram = _normalize("".join(tokens[start : start + n]))
            if len(gram) < 3 or gram.isdigit():
                continue
            hits = {p.id: p for p, nid, nname in norms if nid.startswith(gram) or nname.startswith(gram)}
            if len(hits) == 1:
                return next(iter(hits.values())), set(range(start, start + n))
            if len(hits) > 1:
                diagnostics.append(
                    Diagnostic(
                        code="model_ambiguous",
                        message=f"model mention {gram!r} matches several catalog entries",
                        suggestions=tuple(sorted(hits)),
                    )
                )
                return None, set()
    diagnostics.append(
        Diagnostic(
            code="model_not_found",
            message="no catalog model mentioned in the description",
            suggestions=_nearest_to_tokens(tokens, catalog),
        )
    )
    return None, set()


def _nearest_to_tokens(tokens: list[str], catalog: Catalog, count: int = 3) -> tuple[str, ...]:
    """Catalog ids closest (by edit distance) to any token of the text."""
    candidates = [_normalize(t) for t in tokens if len(_normalize(t)) >= 2]
    if not candidates:
        candidates = [""]
    scored = sorted(
        catalog.models,
        key=lambda p: (min(levenshtein(c, _normalize(p.id)) for c in candidates), p.id),
    )
    return tuple(p.id for p in scored[:count])


def _find_request_type(text_lower: str, catalog: Catalog) -> str | None:
    best: tuple[int, int, str] | None = None  # (position, -length, type)
    for keyword, rtype in catalog.lexicon.request_type_keywords.items():
        pattern = rf"(?<![a-z0-9]){re.escape(keyword)}(?![a-z0-9])"
        m = re.search(pattern, text_lower)
        if m is None:
            continue
        key = (m.start(), -len(keyword), rtype)
        if best is None or key < best:
            best = key
    return best[2] if best else None


def _find_country(text: str, tokens_raw: list[str], catalog: Catalog) -> str | None:
    lowered = text.lower()
    best: tuple[int, str] | None = None
    for name, code in catalog.lexicon.country_names.items():
        pattern = rf"(?<![a-z0-9]){re.escape(name)}(?![a-z0-9])"
        m = re.search(pattern, lowered)
        if m is not None and (best is None or m.start() < best[0]):
            best = (m.start(), code)
    if best is not None:
        return best[1]
    # Bare ISO codes only count when uppercase, so the pronoun "us" is safe.
    for token in tokens_raw:
        if re.fullmatch(r"[A-Z]{2}", token) and catalog.has_country(token):
            return token
    return None


# ── Entry points ─────────────────────────────────────────────────────────


def parse_scenario(description: str, catalog: Catalog) -> Scenario:
    """Parse a natural-language description; raises ScenarioParseError with
    a diagnostics list (every diagnostic carries suggestions) on failure."""
    diagnostics: list[Diagnostic] = []
    if not description or not description.strip():
        raise ScenarioParseError(
            [
                Diagnostic(
                    code="empty_description",
                    message="description is empty",
                    suggestions=(
                        'describe the feature, e.g. "We use GPT-4o mini for '
                        'customer support, around 4,000 uses per month."',
                    ),
                )
            ]
        )

    tokens = _tokenize(description)
    tokens_raw_case = tokens  # _tokenize preserves case; lower where needed
    quantities = _scan_quantities(tokens)

    profile, model_span = _find_model(tokens, catalog, diagnostics)

    explicit_in, explicit_out, consumed = _extract_token_counts(tokens, quantities)
    periods = _period_spans(tokens, dict(catalog.lexicon.period_phrases))
    volume = _bind_volumes(quantities, consumed | model_span, periods, diagnostics)

    text_lower = description.lower()
    request_type = _find_request_type(text_lower, catalog)
    country = _find_country(description, tokens_raw_case, catalog)

    if explicit_in == 0 and explicit_out == 0:
        diagnostics.append(
            Diagnostic(
                code="invalid_tokens",
                message="explicit token counts cannot both be zero",
                suggestions=("give at least one non-zero token count",),
            )
        )

    if diagnostics:
        raise ScenarioParseError(diagnostics)
    assert profile is not None  # a missing model always left a diagnostic

    resolved_type = request_type if request_type is not None else "generic"
    defaults = catalog.lexicon.token_defaults[resolved_type]
    input_tokens = explicit_in if explicit_in is not None else defaults.input_tokens
    output_tokens = explicit_out if explicit_out is not None else defaults.output_tokens

    provenance = {
        "model": "explicit",
        "request_type": "inferred" if request_type is not None else "default",
        "token_load": "explicit" if (explicit_in is not None or explicit_out is not None) else "default",
        "requests_per_month": "explicit" if volume is not None else "default",
        "country": "explicit" if country is not None else "default",
    }
    return Scenario(
        model_id=profile.id,
        request_type=resolved_type,
        input_tokens=input_tokens,
        output_tokens=output_tokens,
        requests_per_month=volume,
        country_code=country,
        field_provenance=provenance,
    )


def render_scenario(scenario: Scenario) -> str:
    """One-line audit summary containing every extracted value and its tag."""
    p = scenario.field_provenance
    volume = (
        f"{scenario.requests_per_month}/month"
        if scenario.requests_per_month is not None
        else "unspecified"
    )
    country = scenario.country_code if scenario.country_code is not None else "provider default"
    return (
        f"model={scenario.model_id} [{p['model']}] | "
        f"type={scenario.request_type} [{p['request_type']}] | "
        f"tokens={scenario.input_tokens}in/{scenario.output_tokens}out [{p['token_load']}] | "
        f"volume={volume} [{p['requests_per_month']}] | "
        f"country={country} [{p['country']}]"
    )
