"""CLI contract: subcommands, exit codes, stdout/stderr split, --json parity."""

import json
import socket
import subprocess
import sys
import time
import urllib.request

import pytest
from fastapi.testclient import TestClient

from corpus import REFERENCE_SENTENCE
from helpers import anchor_model, write_bundle
from llmscreen.api import create_app
from llmscreen.cli import main
from llmscreen.reporter import build_observatory, export_table


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("IMPACT_CATALOG_DIR", raising=False)
    monkeypatch.delenv("IMPACT_BIND_ADDR", raising=False)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ── estimate ───────────────────────────────────────────────────────────────


def test_estimate_by_model_id(capsys):
    code, out, err = run_cli(capsys, "estimate", "--model", "gpt-5-mini")
    assert code == 0
    assert err == ""
    assert "screening estimate" in out
    assert "0.1706" in out
    assert "low" in out and "central" in out and "high" in out
    assert "Assumptions" in out
    assert "- model = gpt-5-mini [catalog]" in out


def test_estimate_from_description(capsys):
    code, out, err = run_cli(capsys, "estimate", "--describe", REFERENCE_SENTENCE)
    assert code == 0
    assert "model=gpt-4o-mini [explicit]" in out
    assert "volume=4000/month [explicit]" in out
    assert "Annualized (48000 requests/year)" in out


def test_estimate_flags_override_description(capsys):
    code, out, _ = run_cli(
        capsys,
        "estimate",
        "--describe",
        REFERENCE_SENTENCE,
        "--in",
        "750",
        "--out",
        "250",
        "--country",
        "FR",
        "--per-month",
        "100",
    )
    assert code == 0
    assert "- token_load = 750 in / 250 out [user]" in out
    assert "- country = FR [user]" in out
    assert "Annualized (1200 requests/year)" in out


def test_estimate_requires_model_or_description(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["estimate"])
    assert exc.value.code == 2
    assert "--model and/or --describe" in capsys.readouterr().err


def test_estimate_unknown_model(capsys):
    code, out, err = run_cli(capsys, "estimate", "--model", "grok-9")
    assert code == 1
    assert out == ""
    assert "model_not_found" in err
    assert err.count("suggestion:") == 3


def test_estimate_ambiguous_model(capsys):
    code, _, err = run_cli(capsys, "estimate", "--model", "ministral")
    assert code == 1
    assert "model_ambiguous" in err
    assert "ministral-3b" in err and "ministral-8b" in err


def test_estimate_invalid_volume_and_country(capsys):
    code, _, err = run_cli(capsys, "estimate", "--model", "gpt-5-mini", "--per-month", "0")
    assert code == 1 and "invalid_volume" in err
    code, _, err = run_cli(capsys, "estimate", "--model", "gpt-5-mini", "--country", "DE")
    assert code == 1 and "invalid_country" in err and "US" in err


def test_estimate_unparseable_description(capsys):
    code, out, err = run_cli(
        capsys, "estimate", "--describe", "Our chatbot answers 2,000 questions per month."
    )
    assert code == 1
    assert out == ""
    assert "model_not_found" in err
    assert "suggestion:" in err


def test_estimate_json_matches_api_response(capsys, catalog):
    code, out, _ = run_cli(capsys, "estimate", "--json", "--model", "gpt-5-mini")
    assert code == 0
    api_body = (
        TestClient(create_app(catalog=catalog))
        .post("/v1/estimate", json={"model": "gpt-5-mini"})
        .json()
    )
    assert json.loads(out) == api_body


# ── parse ──────────────────────────────────────────────────────────────────


def test_parse_renders_one_liner(capsys):
    code, out, err = run_cli(capsys, "parse", REFERENCE_SENTENCE)
    assert code == 0 and err == ""
    assert out.startswith("model=gpt-4o-mini [explicit]")
    assert "country=provider default [default]" in out


def test_parse_json_matches_api_response(capsys, catalog):
    code, out, _ = run_cli(capsys, "parse", "--json", REFERENCE_SENTENCE)
    assert code == 0
    api_body = (
        TestClient(create_app(catalog=catalog))
        .post("/v1/parse", json={"description": REFERENCE_SENTENCE})
        .json()
    )
    assert json.loads(out) == api_body


def test_parse_failure_diagnostics_on_stderr(capsys):
    code, out, err = run_cli(capsys, "parse", "GPT does everything, 4.000 per month.")
    assert code == 1
    assert out == ""
    assert "model_ambiguous" in err and "ambiguous_number" in err
    assert "suggestion:" in err


# ── observatory ────────────────────────────────────────────────────────────


def test_observatory_text_table(capsys, catalog):
    code, out, err = run_cli(capsys, "observatory")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0].startswith("model_id")
    assert len(lines) == 2 + len(catalog.models)
    assert lines[2].startswith("claude-opus-4-1")


def test_observatory_csv_to_file_matches_export(tmp_path, capsys, catalog):
    target = tmp_path / "table.csv"
    code, out, _ = run_cli(capsys, "observatory", "--format", "csv", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_bytes() == export_table(build_observatory(catalog), "csv")


def test_observatory_csv_stdout_is_byte_stable(capsys):
    code1, out1, _ = run_cli(capsys, "observatory", "--format", "csv")
    code2, out2, _ = run_cli(capsys, "observatory", "--format", "csv")
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.splitlines()[0].startswith("model_id,display_name,")


def test_observatory_json(capsys, catalog):
    code, out, _ = run_cli(capsys, "observatory", "--format", "json")
    assert code == 0
    body = json.loads(out)
    assert len(body["rows"]) == len(catalog.models)


def test_observatory_rejects_unknown_format(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["observatory", "--format", "xml"])
    assert exc.value.code == 2


def test_global_catalog_flag(tmp_path, capsys):
    bundle = write_bundle(tmp_path / "bundle", models=[anchor_model()])
    code, out, _ = run_cli(capsys, "--catalog", str(bundle), "observatory")
    assert code == 0
    assert "anchor-model" in out
    assert "claude" not in out


# ── validate ───────────────────────────────────────────────────────────────


def test_validate_shipped_catalog(capsys):
    code, out, err = run_cli(capsys, "validate")
    assert code == 0 and err == ""
    assert out.startswith("catalog OK:")
    assert "8 models" in out


def test_validate_missing_directory(tmp_path, capsys):
    code, out, err = run_cli(capsys, "validate", "--catalog", str(tmp_path / "nope"))
    assert code == 1
    assert "does not exist" in err


def test_validate_broken_bundle(tmp_path, capsys):
    bundle = write_bundle(
        tmp_path / "bundle", models=[anchor_model("twin"), anchor_model("twin")]
    )
    code, out, err = run_cli(capsys, "validate", "--catalog", str(bundle))
    assert code == 3
    assert err.startswith("invalid catalog:")
    assert "twin" in err


def test_catalog_dir_env_variable(tmp_path, capsys, monkeypatch):
    bundle = write_bundle(tmp_path / "bundle", models=[anchor_model()])
    monkeypatch.setenv("IMPACT_CATALOG_DIR", str(bundle))
    code, out, _ = run_cli(capsys, "validate")
    assert code == 0
    assert "1 models" in out


# ── serve ──────────────────────────────────────────────────────────────────


def test_serve_rejects_malformed_bind(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["serve", "--bind", "garbage"])
    assert exc.value.code == 2
    assert "HOST:PORT" in capsys.readouterr().err


def test_serve_rejects_malformed_bind_env(capsys, monkeypatch):
    monkeypatch.setenv("IMPACT_BIND_ADDR", "nonsense")
    code, _, err = run_cli(capsys, "serve")
    assert code == 1
    assert "IMPACT_BIND_ADDR" in err


def test_serve_occupied_port(capsys):
    blocker = socket.socket()
    blocker.bind(("127.0.0.1", 0))
    port = blocker.getsockname()[1]
    try:
        code, _, _ = run_cli(capsys, "serve", "--bind", f"127.0.0.1:{port}")
    finally:
        blocker.close()
    assert code == 1


def test_serve_end_to_end():
    probe = socket.socket()
    probe.bind(("127.0.0.1", 0))
    port = probe.getsockname()[1]
    probe.close()
    process = subprocess.Popen(
        [sys.executable, "-m", "llmscreen.cli", "serve", "--bind", f"127.0.0.1:{port}"],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    try:
        body = None
        for _ in range(100):
            try:
                with urllib.request.urlopen(f"http://127.0.0.1:{port}/v1/models", timeout=1) as r:
                    body = json.loads(r.read())
                break
            except OSError:
                time.sleep(0.1)
        assert body is not None, "server never came up"
        assert len(body["models"]) == 8
    finally:
        process.terminate()
        process.wait(timeout=10)


# ── console entry point ────────────────────────────────────────────────────


def test_installed_console_script():
    result = subprocess.run(
        ["llmscreen", "validate"], capture_output=True, text=True, timeout=60
    )
    assert result.returncode == 0
    assert result.stdout.startswith("catalog OK:")
