"""Command-line interface.

Subcommands: estimate, parse, observatory, validate, serve.  Results go
to stdout, diagnostics to stderr, and exit codes follow a fixed contract:
0 success, 1 runtime error, 2 usage error (argparse's own convention),
3 catalog validation failure.  --json output uses exactly the payload
shapes of the HTTP API (shared serializer), so scripts can switch between
the two surfaces without reformatting.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import serialize
from .catalog import (
    AmbiguousModelError,
    Catalog,
    CatalogError,
    ModelNotFoundError,
    load_catalog,
    lookup_model,
    methodology_version,
)
from .api import BIND_ADDR_ENV, CATALOG_DIR_ENV, DEFAULT_BIND_ADDR, resolve_catalog_dir
from .bands import (
    ScreeningBand,
    format_annual_carbon,
    format_annual_kwh,
    format_inference_g,
    format_inference_wh,
)
from .reporter import EstimateResult, build_observatory, export_table, run_scenario
from .scenario import Scenario, ScenarioParseError, parse_scenario, render_scenario

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3


def _bind_addr(value: str) -> tuple[str, int]:
    host, sep, port = value.rpartition(":")
    if not sep or not host or not port.isdigit() or not 0 < int(port) < 65536:
        raise argparse.ArgumentTypeError(f"expected HOST:PORT, got {value!r}")
    return host, int(port)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="llmscreen",
        description=(
            "Bounded screening estimates of LLM inference energy/carbon and "
            "training orders of magnitude. Estimates, not measurements."
        ),
    )
    parser.add_argument(
        "--catalog",
        metavar="DIR",
        default=None,
        help=f"catalog bundle directory (default: ${CATALOG_DIR_ENV} or the shipped bundle)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="estimate a usage scenario")
    p_est.add_argument("--model", help="model id or free-text name")
    p_est.add_argument("--describe", metavar="TEXT", help="natural-language scenario description")
    p_est.add_argument("--in", dest="input_tokens", type=int, metavar="N", help="input tokens per request")
    p_est.add_argument("--out", dest="output_tokens", type=int, metavar="N", help="output tokens per request")
    p_est.add_argument("--per-month", dest="per_month", type=int, metavar="N", help="requests per month")
    p_est.add_argument("--country", metavar="CC", help="ISO country code for the grid mix")
    p_est.add_argument("--json", action="store_true", help="emit the API response shape")

    p_parse = sub.add_parser("parse", help="parse a description without estimating")
    p_parse.add_argument("description", help="natural-language scenario description")
    p_parse.add_argument("--json", action="store_true", help="emit the API response shape")

    p_obs = sub.add_parser("observatory", help="standardized comparison table")
    p_obs.add_argument("--format", choices=("csv", "json"), default=None, help="machine format (default: text table)")
    p_obs.add_argument("--output", metavar="PATH", help="write to a file instead of stdout")

    p_val = sub.add_parser("validate", help="validate a catalog bundle")
    p_val.add_argument("--catalog", metavar="DIR", default=None, help="bundle directory to validate")

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    p_serve.add_argument(
        "--bind",
        type=_bind_addr,
        default=None,
        metavar="HOST:PORT",
        help=f"bind address (default: ${BIND_ADDR_ENV} or {DEFAULT_BIND_ADDR})",
    )
    return parser


def _load(args: argparse.Namespace) -> Catalog:
    return load_catalog(resolve_catalog_dir(args.catalog))


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _band_lines(label: str, band: ScreeningBand, fmt) -> str:
    return (
        f"  {label:<7} low {fmt(band.low)}   central {fmt(band.central)}   "
        f"high {fmt(band.high)}   [{band.unit}]"
    )


def _print_report(catalog: Catalog, result: EstimateResult) -> None:
    print("This is a screening estimate, not an audited measurement.")
    print(f"methodology: {methodology_version(catalog)}")
    print(f"model: {result.profile.display_name} ({result.profile.id})")
    if result.scenario is not None:
        print(f"scenario: {render_scenario(result.scenario)}")
    print()
    inf = result.inference
    print("Per request")
    print(_band_lines("energy", inf.energy_wh, format_inference_wh))
    print(_band_lines("carbon", inf.carbon_g, format_inference_g))
    print(
        f"  weighted volume: {inf.volume:g} tokens; grid: {inf.country_code}; "
        f"effective size central: {inf.effective_params_b.central:.1f} B"
    )
    if result.annualized is not None:
        ann = result.annualized
        print()
        print(f"Annualized ({ann.requests_per_year} requests/year)")
        print(_band_lines("energy", ann.annual_energy_kwh, format_annual_kwh))
        unit = ann.carbon_display_unit
        scale = unit.removesuffix("/year")
        print(
            f"  carbon  low {format_annual_carbon(ann.annual_carbon_g.low, scale)}   "
            f"central {format_annual_carbon(ann.annual_carbon_g.central, scale)}   "
            f"high {format_annual_carbon(ann.annual_carbon_g.high, scale)}   [{unit}]"
        )
    print()
    print("Assumptions")
    for a in inf.assumptions:
        note = f"  -- {a.note}" if a.note else ""
        print(f"  - {a.name} = {a.value} [{a.provenance}]{note}")


def _print_diagnostics(exc: ScenarioParseError) -> None:
    for d in exc.diagnostics:
        print(f"error ({d.code}): {d.message}", file=sys.stderr)
        for s in d.suggestions:
            print(f"  suggestion: {s}", file=sys.stderr)


def cmd_estimate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if not args.model and not args.describe:
        parser.error("estimate needs --model and/or --describe")
    catalog = _load(args)

    if args.describe:
        try:
            scenario = parse_scenario(args.describe, catalog)
        except ScenarioParseError as exc:
            _print_diagnostics(exc)
            return EXIT_RUNTIME
    else:
        scenario = Scenario(
            model_id="",  # filled below from --model
            request_type="generic",
            input_tokens=catalog.lexicon.token_defaults["generic"].input_tokens,
            output_tokens=catalog.lexicon.token_defaults["generic"].output_tokens,
            requests_per_month=None,
            country_code=None,
            field_provenance={
                "model": "explicit",
                "request_type": "default",
                "token_load": "default",
                "requests_per_month": "default",
                "country": "default",
            },
        )

    # Explicit flags override whatever the description produced.
    provenance = dict(scenario.field_provenance)
    updates: dict = {}
    if args.model:
        try:
            updates["model_id"] = lookup_model(catalog, args.model).id
        except ModelNotFoundError as exc:
            print(f"error (model_not_found): {exc}", file=sys.stderr)
            for s in exc.suggestions:
                print(f"  suggestion: {s}", file=sys.stderr)
            return EXIT_RUNTIME
        except AmbiguousModelError as exc:
            print(f"error (model_ambiguous): {exc}", file=sys.stderr)
            for c in exc.candidates:
                print(f"  suggestion: {c}", file=sys.stderr)
            return EXIT_RUNTIME
        provenance["model"] = "explicit"
    if args.input_tokens is not None:
        updates["input_tokens"] = args.input_tokens
        provenance["token_load"] = "explicit"
    if args.output_tokens is not None:
        updates["output_tokens"] = args.output_tokens
        provenance["token_load"] = "explicit"
    if args.per_month is not None:
        if args.per_month < 1:
            print("error (invalid_volume): --per-month must be >= 1", file=sys.stderr)
            return EXIT_RUNTIME
        updates["requests_per_month"] = args.per_month
        provenance["requests_per_month"] = "explicit"
    if args.country is not None:
        if not catalog.has_country(args.country):
            known = ", ".join(c.country_code for c in catalog.countries)
            print(
                f"error (invalid_country): {args.country!r} not in catalog; known: {known}",
                file=sys.stderr,
            )
            return EXIT_RUNTIME
        updates["country_code"] = args.country
        provenance["country"] = "explicit"

    try:
        scenario = dataclasses.replace(scenario, field_provenance=provenance, **updates)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME

    try:
        result = run_scenario(catalog, scenario)
    except (ValueError, CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME

    if args.json:
        _print_json(serialize.estimate_payload(catalog, result))
    else:
        _print_report(catalog, result)
    return EXIT_OK


def cmd_parse(args: argparse.Namespace) -> int:
    catalog = _load(args)
    try:
        scenario = parse_scenario(args.description, catalog)
    except ScenarioParseError as exc:
        _print_diagnostics(exc)
        return EXIT_RUNTIME
    if args.json:
        _print_json(serialize.parse_payload(catalog, scenario))
    else:
        print(render_scenario(scenario))
    return EXIT_OK


def cmd_observatory(args: argparse.Namespace) -> int:
    catalog = _load(args)
    rows = build_observatory(catalog)
    if args.format == "csv":
        data = export_table(rows, "csv")
    elif args.format == "json":
        data = (json.dumps(serialize.observatory_payload(catalog, rows), indent=2) + "\n").encode(
            "utf-8"
        )
    else:
        data = export_table(rows, "structured_text")
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    target = resolve_catalog_dir(args.catalog)
    if not target.is_dir():
        print(f"error: catalog directory {str(target)!r} does not exist", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        catalog = load_catalog(target)
    except CatalogError as exc:
        print(f"invalid catalog: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(
        f"catalog OK: format_version {catalog.format_version}, "
        f"{len(catalog.models)} models, {len(catalog.countries)} countries, "
        f"methodology {methodology_version(catalog)}"
    )
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    if args.bind is not None:
        host, port = args.bind
    else:
        env = os.environ.get(BIND_ADDR_ENV, DEFAULT_BIND_ADDR)
        try:
            host, port = _bind_addr(env)
        except argparse.ArgumentTypeError as exc:
            print(f"error: ${BIND_ADDR_ENV}: {exc}", file=sys.stderr)
            return EXIT_RUNTIME
    try:
        catalog = load_catalog(resolve_catalog_dir(args.catalog))
        app = create_app(catalog)
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except CatalogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: cannot bind {host}:{port}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except SystemExit as exc:  # uvicorn exits itself on startup failure
        return EXIT_RUNTIME if exc.code else EXIT_OK
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "estimate":
            return cmd_estimate(args, parser)
        if args.command == "parse":
            return cmd_parse(args)
        if args.command == "observatory":
            return cmd_observatory(args)
        if args.command == "validate":
            return cmd_validate(args)
        if args.command == "serve":
            return cmd_serve(args)
    except CatalogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    raise AssertionError("unreachable: argparse enforces the subcommand set")


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
