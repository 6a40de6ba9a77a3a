"""Pluggable completion backend: live HTTP or deterministic mock replay.

Mock mode answers from a JSON fixture map keyed by a SHA-256 of the canonical
prompt serialization, so runs replay byte-identically on any machine and no
network access ever happens. Live mode posts JSON to the configured endpoint
with retries and exponential backoff. The API key is read from the named
environment variable and never written to logs, reports, or fixtures.
"""

from __future__ import annotations

import base64
import hashlib
import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

import requests

from .prompts import Prompt


class BackendError(RuntimeError):
    pass


class AuthError(BackendError):
    """API key environment variable is unset or the server rejected it."""


class NetworkError(BackendError):
    pass


class Timeout(BackendError):
    pass


class FixtureMiss(BackendError):
    """Mock mode has no fixture entry for this prompt."""


@dataclass
class BackendConfig:
    endpoint: str = ""
    model_name: str = "mock-model"
    api_key_env: str = "EDITEVAL_API_KEY"
    timeout: float = 60.0
    max_retries: int = 3
    mode: str = "mock"  # "live" or "mock"
    fixtures_path: str | None = None
    concurrency: int = 4


def _image_digest(prompt: Prompt) -> str | None:
    if prompt.image is None:
        return None
    px = prompt.image.pixels
    head = f"{px.shape[1]}x{px.shape[0]}:".encode()
    return hashlib.sha256(head + px.tobytes()).hexdigest()


def fixture_key(prompt: Prompt) -> str:
    """Stable key of a prompt: SHA-256 of its canonical JSON serialization."""
    canonical = json.dumps(
        {
            "text": prompt.text,
            "temperature": prompt.params.temperature,
            "max_tokens": prompt.params.max_tokens,
            "image_sha256": _image_digest(prompt),
        },
        sort_keys=True,
        ensure_ascii=True,
    )
    return hashlib.sha256(canonical.encode()).hexdigest()


class MockFixtures:
    """A JSON map file of fixture_key -> response text."""

    def __init__(self, entries: dict[str, str] | None = None) -> None:
        self.entries = dict(entries or {})

    @classmethod
    def load(cls, path: str | Path) -> "MockFixtures":
        return cls(json.loads(Path(path).read_text(encoding="utf-8")))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.entries, sort_keys=True, indent=2, ensure_ascii=True),
            encoding="utf-8",
        )

    def add(self, prompt: Prompt, response: str) -> str:
        key = fixture_key(prompt)
        self.entries[key] = response
        return key

    def get(self, prompt: Prompt) -> str:
        key = fixture_key(prompt)
        try:
            return self.entries[key]
        except KeyError:
            raise FixtureMiss(f"no fixture for prompt key {key}") from None


_fixture_cache: dict[tuple[str, float], MockFixtures] = {}


def _load_fixtures(config: BackendConfig) -> MockFixtures:
    if not config.fixtures_path:
        raise FixtureMiss("mock mode needs fixtures_path in the backend config")
    path = Path(config.fixtures_path)
    mtime = path.stat().st_mtime
    cache_key = (str(path), mtime)
    fixtures = _fixture_cache.get(cache_key)
    if fixtures is None:
        fixtures = MockFixtures.load(path)
        _fixture_cache.clear()
        _fixture_cache[cache_key] = fixtures
    return fixtures


def _live_request(config: BackendConfig, prompt: Prompt) -> str:
    api_key = os.environ.get(config.api_key_env)
    if not api_key:
        raise AuthError(f"environment variable {config.api_key_env} is not set")
    payload: dict = {
        "model": config.model_name,
        "text": prompt.text,
        "temperature": prompt.params.temperature,
        "max_tokens": prompt.params.max_tokens,
    }
    if prompt.image is not None:
        payload["image"] = base64.b64encode(prompt.image.to_png_bytes()).decode()
    headers = {"Authorization": f"Bearer {api_key}"}

    last_error: Exception | None = None
    delay = 1.0
    for attempt in range(config.max_retries):
        if attempt:
            time.sleep(delay)
            delay *= 2
        try:
            resp = requests.post(
                config.endpoint, json=payload, headers=headers, timeout=config.timeout
            )
        except requests.Timeout as exc:
            last_error = Timeout(f"request timed out after {config.timeout}s")
            last_error.__cause__ = exc
            continue
        except requests.RequestException as exc:
            last_error = NetworkError(str(exc))
            last_error.__cause__ = exc
            continue
        if resp.status_code in (401, 403):
            raise AuthError(f"endpoint rejected credentials ({resp.status_code})")
        if resp.status_code >= 500:
            last_error = NetworkError(f"server error {resp.status_code}")
            continue
        if resp.status_code >= 400:
            raise NetworkError(f"request rejected ({resp.status_code}): {resp.text[:200]}")
        body = resp.json()
        if "text" not in body:
            raise NetworkError("response JSON has no 'text' field")
        return body["text"]
    assert last_error is not None
    raise last_error


def complete(config: BackendConfig, prompt: Prompt) -> str:
    """Return the model's text for a prompt, per the configured mode."""
    if config.mode == "mock":
        return _load_fixtures(config).get(prompt)
    if config.mode == "live":
        return _live_request(config, prompt)
    raise ValueError(f"unknown backend mode {config.mode!r}")
