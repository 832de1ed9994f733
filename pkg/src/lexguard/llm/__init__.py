"""Pluggable LLM backends: generic HTTP chat completion and a scripted mock."""

from .backends import (
    BackendConfig,
    ChatRequest,
    ChatResponse,
    HttpBackend,
    MockBackend,
    ScriptedExchange,
    complete,
    create_backend,
    load_script,
)

__all__ = [
    "BackendConfig",
    "ChatRequest",
    "ChatResponse",
    "HttpBackend",
    "MockBackend",
    "ScriptedExchange",
    "complete",
    "create_backend",
    "load_script",
]
