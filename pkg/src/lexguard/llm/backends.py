"""Uniform client for pluggable LLM backends.

Two kinds are supported: a generic HTTP chat-completion backend (one
user message in, text out) and a deterministic scripted mock for offline
tests.  API keys are only ever read from an environment variable named
in the config, never stored in config files.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass

import httpx

from ..errors import (
    AuthMissing,
    BackendEmpty,
    BackendTimeout,
    BackendUnavailable,
    ScriptInvalid,
)

DEFAULT_TIMEOUT_MS = 30_000
DEFAULT_MAX_RETRIES = 2


@dataclass(frozen=True)
class BackendConfig:
    kind: str  # "mock" or "http"
    model_name: str = "default"
    base_url: str | None = None
    api_key_env: str | None = None
    temperature: float = 0.0
    timeout_ms: int = DEFAULT_TIMEOUT_MS
    max_retries: int = DEFAULT_MAX_RETRIES
    script_path: str | None = None

    def __post_init__(self):
        if self.kind not in ("mock", "http"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind == "http" and (not self.base_url or not self.api_key_env):
            raise ValueError("http backend requires base_url and api_key_env")
        if self.kind == "mock" and not self.script_path:
            raise ValueError("mock backend requires script_path")
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError(f"temperature {self.temperature} outside [0, 2]")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")


@dataclass(frozen=True)
class ChatRequest:
    prompt: str
    system: str | None = None
    temperature: float | None = None


@dataclass(frozen=True)
class ChatResponse:
    text: str
    latency_ms: float
    backend_id: str


@dataclass(frozen=True)
class ScriptedExchange:
    match: str  # "exact" or "substring"
    pattern: str
    reply: str

    def __post_init__(self):
        if self.match not in ("exact", "substring"):
            raise ScriptInvalid(f"unknown match kind {self.match!r}")

    def matches(self, prompt: str) -> bool:
        if self.match == "exact":
            return prompt == self.pattern
        return self.pattern in prompt

    @property
    def is_catch_all(self) -> bool:
        return self.match == "substring" and self.pattern == ""


def load_script(path) -> list[ScriptedExchange]:
    """Load a mock script: a JSON array of {match, pattern, reply}.

    The last entry must be a catch-all (substring match on "") so every
    prompt gets an answer.
    """
    with open(path, "r", encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ScriptInvalid(f"{path}: invalid JSON: {exc.msg}") from None
    if not isinstance(raw, list) or not raw:
        raise ScriptInvalid(f"{path}: script must be a non-empty JSON array")
    entries = []
    for index, entry in enumerate(raw):
        if not isinstance(entry, dict) or not {"match", "pattern", "reply"} <= entry.keys():
            raise ScriptInvalid(f"{path}: entry {index} must have match/pattern/reply")
        entries.append(
            ScriptedExchange(str(entry["match"]), str(entry["pattern"]), str(entry["reply"]))
        )
    if not entries[-1].is_catch_all:
        raise ScriptInvalid(f"{path}: script must end with a catch-all entry")
    return entries


class MockBackend:
    """Deterministic scripted backend; zero network, pure lookup per call."""

    def __init__(self, script: list[ScriptedExchange], backend_id: str = "mock"):
        if not script or not script[-1].is_catch_all:
            raise ScriptInvalid("script must end with a catch-all entry")
        self._script = tuple(script)
        self._backend_id = backend_id

    @classmethod
    def from_config(cls, config: BackendConfig) -> "MockBackend":
        return cls(load_script(config.script_path), backend_id=f"mock:{config.model_name}")

    def complete(self, request: ChatRequest) -> ChatResponse:
        for exchange in self._script:
            if exchange.matches(request.prompt):
                if not exchange.reply:
                    raise BackendEmpty("scripted reply is empty")
                return ChatResponse(exchange.reply, latency_ms=0.0, backend_id=self._backend_id)
        raise BackendEmpty("no scripted entry matched")  # unreachable given catch-all


class HttpBackend:
    """Minimal chat-completion client with bounded retries.

    Wire shape: POST {base_url}/chat/completions with a single user
    message; the reply text is choices[0].message.content.
    """

    def __init__(self, config: BackendConfig, transport: httpx.BaseTransport | None = None,
                 sleeper=time.sleep):
        self._config = config
        self._transport = transport
        self._sleep = sleeper

    def complete(self, request: ChatRequest) -> ChatResponse:
        config = self._config
        api_key = os.environ.get(config.api_key_env or "")
        if not api_key:
            raise AuthMissing(f"environment variable {config.api_key_env!r} is not set")

        messages = []
        if request.system:
            messages.append({"role": "system", "content": request.system})
        messages.append({"role": "user", "content": request.prompt})
        payload = {
            "model": config.model_name,
            "messages": messages,
            "temperature": (
                request.temperature if request.temperature is not None else config.temperature
            ),
        }

        timeout = config.timeout_ms / 1000.0
        attempts = 1 + config.max_retries
        started = time.monotonic()
        last_error: Exception | None = None
        for attempt in range(attempts):
            if attempt:
                self._sleep(min(0.1 * (2 ** (attempt - 1)), 2.0))
            try:
                with httpx.Client(
                    base_url=config.base_url, timeout=timeout, transport=self._transport
                ) as client:
                    response = client.post(
                        "/chat/completions",
                        json=payload,
                        headers={"Authorization": f"Bearer {api_key}"},
                    )
            except httpx.TimeoutException:
                last_error = BackendTimeout(f"no answer within {config.timeout_ms} ms")
                continue
            except httpx.HTTPError as exc:
                last_error = BackendUnavailable(str(exc))
                continue
            if response.status_code >= 500:
                last_error = BackendUnavailable(f"server error {response.status_code}")
                continue
            if response.status_code >= 400:
                raise BackendUnavailable(
                    f"backend rejected the request: {response.status_code} {response.text[:200]}"
                )
            try:
                text = response.json()["choices"][0]["message"]["content"]
            except (KeyError, IndexError, ValueError):
                raise BackendUnavailable("malformed chat-completion response") from None
            if not text:
                raise BackendEmpty("backend returned empty text")
            latency = (time.monotonic() - started) * 1000.0
            return ChatResponse(text, latency_ms=latency, backend_id=config.model_name)
        raise last_error if last_error is not None else BackendUnavailable("no attempts made")


def create_backend(config: BackendConfig):
    if config.kind == "mock":
        return MockBackend.from_config(config)
    return HttpBackend(config)


def complete(request: ChatRequest, config: BackendConfig) -> ChatResponse:
    """One-shot convenience wrapper around create_backend."""
    return create_backend(config).complete(request)
