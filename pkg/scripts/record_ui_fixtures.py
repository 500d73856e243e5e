"""Record real /v1 responses into frontend/fixtures for the UI contract tests.

Rerun after any catalog or serializer change, then rerun the frontend
suite: the UI promises to display these payloads verbatim, so the fixtures
must be actual server output, never hand-edited.
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from llmscreen.api import create_app

FIXTURES = Path(__file__).resolve().parent.parent / "frontend" / "fixtures"

REFERENCE_SENTENCE = "We use GPT-4o-mini for customer support, around 4,000 uses per month."

# Same scenario on two grids: the pair exercises the country what-if, where
# only carbon may move.
RETRIEVAL_BODY = {
    "model": "gpt-5-mini",
    "request_type": "retrieval",
    "requests_per_month": 4000,
}


def dump(name: str, payload: dict) -> None:
    path = FIXTURES / name
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())

    response = client.post("/v1/parse", json={"description": REFERENCE_SENTENCE})
    assert response.status_code == 200, response.text
    dump("parse_reference.json", response.json())

    response = client.post(
        "/v1/parse", json={"description": "About 4,000 uses per month."}
    )
    assert response.status_code == 422, response.text
    dump("parse_failure.json", response.json())

    for country, name in (("US", "estimate_retrieval_us.json"), ("FR", "estimate_retrieval_fr.json")):
        response = client.post("/v1/estimate", json={**RETRIEVAL_BODY, "country": country})
        assert response.status_code == 200, response.text
        dump(name, response.json())

    response = client.get("/v1/observatory")
    assert response.status_code == 200, response.text
    dump("observatory.json", response.json())

    response = client.get("/v1/observatory", params={"format": "csv"})
    assert response.status_code == 200, response.text
    (FIXTURES / "observatory.csv").write_bytes(response.content)
    print(f"wrote {FIXTURES / 'observatory.csv'}")


if __name__ == "__main__":
    main()
