"""Guardrail service: pipeline orchestration and the HTTP API."""

from .app import ServiceStartupError, create_app, serve
from .config import ConfigError, ServiceConfig, load_config
from .pipeline import (
    ALERTS_MESSAGE,
    NO_CITATION_NOTE,
    NO_ISSUES_MESSAGE,
    EnrichedAnswer,
    GuardrailPipeline,
    PipelineTrace,
    StageTrace,
    UnresolvedIssue,
)

__all__ = [
    "ALERTS_MESSAGE",
    "ConfigError",
    "EnrichedAnswer",
    "GuardrailPipeline",
    "NO_CITATION_NOTE",
    "NO_ISSUES_MESSAGE",
    "PipelineTrace",
    "ServiceConfig",
    "ServiceStartupError",
    "StageTrace",
    "UnresolvedIssue",
    "create_app",
    "load_config",
    "serve",
]
