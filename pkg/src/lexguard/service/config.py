"""Service configuration: JSON or key=value files, one loader.

Recognized keys: port, kg_path, template_path, backend.* (kind,
model_name, base_url, api_key_env, temperature, timeout_ms, max_retries,
script_path), stopwords_path, modality_path, refusal_lexicon_path,
warning_lexicon_path.  Relative paths are resolved against the config
file's directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from ..errors import LexguardError
from ..kg.store import KGStore
from ..llm.backends import BackendConfig, create_backend
from ..prompting.classifier import PatternClassifier, load_lexicon_file
from ..prompting.template import build_template
from ..search.text import Lexicon, load_word_file
from .pipeline import GuardrailPipeline

DEFAULT_PORT = 8470


class ConfigError(LexguardError):
    pass


@dataclass
class ServiceConfig:
    port: int = DEFAULT_PORT
    kg_path: str | None = None
    template_path: str = "builtin"
    backend: BackendConfig = field(
        default_factory=lambda: BackendConfig(kind="mock", script_path="mock-script.json")
    )
    stopwords_path: str | None = None
    modality_path: str | None = None
    refusal_lexicon_path: str | None = None
    warning_lexicon_path: str | None = None

    def build_pipeline(self) -> GuardrailPipeline:
        store = KGStore()
        if self.kg_path and os.path.exists(self.kg_path):
            store = KGStore.load(self.kg_path)
        template = build_template(self.template_path)
        lexicon = Lexicon(
            stopwords=load_word_file(self.stopwords_path) if self.stopwords_path else None,
            modality=load_word_file(self.modality_path) if self.modality_path else None,
        )
        classifier = PatternClassifier(
            refusal_phrases=(
                load_lexicon_file(self.refusal_lexicon_path)
                if self.refusal_lexicon_path
                else None
            ),
            warning_phrases=(
                load_lexicon_file(self.warning_lexicon_path)
                if self.warning_lexicon_path
                else None
            ),
        )
        backend = create_backend(self.backend)
        return GuardrailPipeline(
            store=store,
            template=template,
            backend=backend,
            lexicon=lexicon,
            classifier=classifier,
        )


_PATH_KEYS = (
    "kg_path",
    "stopwords_path",
    "modality_path",
    "refusal_lexicon_path",
    "warning_lexicon_path",
)


def _parse_key_values(text: str) -> dict:
    flat: dict[str, str] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {number}: expected key=value")
        key, _, value = stripped.partition("=")
        flat[key.strip()] = value.strip()
    nested: dict = {}
    for key, value in flat.items():
        if key.startswith("backend."):
            nested.setdefault("backend", {})[key[len("backend."):]] = value
        else:
            nested[key] = value
    return nested


def load_config(path: str) -> ServiceConfig:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc.msg}") from None
    else:
        raw = _parse_key_values(text)
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be an object")

    base_dir = os.path.dirname(os.path.abspath(path))

    def resolve(value: str | None) -> str | None:
        if value is None:
            return None
        return value if os.path.isabs(value) else os.path.join(base_dir, value)

    backend_raw = dict(raw.get("backend") or {})
    if "temperature" in backend_raw:
        backend_raw["temperature"] = float(backend_raw["temperature"])
    for int_key in ("timeout_ms", "max_retries"):
        if int_key in backend_raw:
            backend_raw[int_key] = int(backend_raw[int_key])
    if backend_raw.get("script_path"):
        backend_raw["script_path"] = resolve(str(backend_raw["script_path"]))
    try:
        backend = BackendConfig(**backend_raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: bad backend config: {exc}") from None

    config = ServiceConfig(backend=backend)
    if "port" in raw:
        config.port = int(raw["port"])
    template = raw.get("template_path")
    if template:
        config.template_path = template if template == "builtin" else resolve(str(template))
    for key in _PATH_KEYS:
        if raw.get(key):
            setattr(config, key, resolve(str(raw[key])))
    return config
