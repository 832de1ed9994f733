"""Batch classification of canned LLM responses into the three patterns.

The corpus is a JSON file of (prompt, source model, response text)
entries, optionally carrying the expected pattern.  Classification runs
over the canned text only; no live model is ever called, so a corpus
evaluates to the same matrix every time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import SchemaViolation
from .prompting.classifier import PatternClassifier, ResponsePattern
from .prompting.parser import parse_response

PATTERN_ABBREVIATIONS = {
    ResponsePattern.NO_WARNING: "NW",
    ResponsePattern.WARNING: "W",
    ResponsePattern.NO_ANSWER: "NA",
}

_PATTERN_ALIASES = {
    "no_warning": ResponsePattern.NO_WARNING,
    "warning": ResponsePattern.WARNING,
    "no_answer": ResponsePattern.NO_ANSWER,
    "nw": ResponsePattern.NO_WARNING,
    "w": ResponsePattern.WARNING,
    "na": ResponsePattern.NO_ANSWER,
}


@dataclass(frozen=True)
class EvalEntry:
    prompt: str
    source_model: str
    response_text: str
    expected_pattern: ResponsePattern | None = None


@dataclass(frozen=True)
class EvalCorpus:
    entries: tuple[EvalEntry, ...]


@dataclass(frozen=True)
class EvalCell:
    prompt: str
    source_model: str
    pattern: ResponsePattern
    expected: ResponsePattern | None


@dataclass
class EvalMatrix:
    cells: list[EvalCell] = field(default_factory=list)

    @property
    def counts(self) -> dict[ResponsePattern, int]:
        counts = {pattern: 0 for pattern in ResponsePattern}
        for cell in self.cells:
            counts[cell.pattern] += 1
        return counts

    @property
    def mismatches(self) -> list[EvalCell]:
        return [
            c for c in self.cells if c.expected is not None and c.expected != c.pattern
        ]


def load_corpus(path) -> EvalCorpus:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"{path}: invalid JSON: {exc.msg}") from None
    if not isinstance(raw, dict) or not isinstance(raw.get("entries"), list):
        raise SchemaViolation(f"{path}: corpus must be an object with an entries array")
    entries = []
    for index, entry in enumerate(raw["entries"]):
        context = f"{path}: entries[{index}]"
        if not isinstance(entry, dict):
            raise SchemaViolation(f"{context}: must be an object")
        for key in ("prompt", "source_model", "response_text"):
            if not entry.get(key):
                raise SchemaViolation(f"{context}: missing or empty {key!r}")
        expected = None
        if entry.get("expected_pattern") is not None:
            alias = str(entry["expected_pattern"]).strip().lower()
            if alias not in _PATTERN_ALIASES:
                raise SchemaViolation(
                    f"{context}: unknown expected_pattern {entry['expected_pattern']!r}"
                )
            expected = _PATTERN_ALIASES[alias]
        entries.append(
            EvalEntry(
                prompt=str(entry["prompt"]),
                source_model=str(entry["source_model"]),
                response_text=str(entry["response_text"]),
                expected_pattern=expected,
            )
        )
    return EvalCorpus(entries=tuple(entries))


def run_eval(corpus: EvalCorpus, classifier: PatternClassifier | None = None) -> EvalMatrix:
    classifier = classifier or PatternClassifier()
    matrix = EvalMatrix()
    for entry in corpus.entries:
        pattern = classifier.classify(entry.response_text, parse_response(entry.response_text))
        matrix.cells.append(
            EvalCell(entry.prompt, entry.source_model, pattern, entry.expected_pattern)
        )
    return matrix


def render_matrix(matrix: EvalMatrix, prompt_width: int = 48) -> str:
    """Fixed-width table: one row per prompt, one column per source model."""
    prompts: list[str] = []
    models: list[str] = []
    cell_map: dict[tuple[str, str], str] = {}
    for cell in matrix.cells:
        if cell.prompt not in prompts:
            prompts.append(cell.prompt)
        if cell.source_model not in models:
            models.append(cell.source_model)
        cell_map[(cell.prompt, cell.source_model)] = PATTERN_ABBREVIATIONS[cell.pattern]

    def clip(text: str) -> str:
        return text if len(text) <= prompt_width else text[: prompt_width - 3] + "..."

    widths = [max((len(m) for m in models), default=2)] * len(models)
    header = "prompt".ljust(prompt_width) + "".join(
        f"  {m.rjust(w)}" for m, w in zip(models, widths)
    )
    lines = [header, "-" * len(header)]
    for prompt in prompts:
        row = clip(prompt).ljust(prompt_width)
        for model, width in zip(models, widths):
            row += f"  {cell_map.get((prompt, model), '-').rjust(width)}"
        lines.append(row)
    counts = matrix.counts
    lines.append("")
    lines.append(
        "totals: "
        + "  ".join(
            f"{PATTERN_ABBREVIATIONS[p]}={counts[p]}" for p in ResponsePattern
        )
        + f"  cells={len(matrix.cells)}"
    )
    return "\n".join(lines)


def matrix_to_dict(matrix: EvalMatrix) -> dict:
    return {
        "cells": [
            {
                "prompt": c.prompt,
                "source_model": c.source_model,
                "pattern": c.pattern.value,
                "expected_pattern": c.expected.value if c.expected else None,
            }
            for c in matrix.cells
        ],
        "counts": {p.value: n for p, n in matrix.counts.items()},
        "mismatches": [
            {
                "prompt": c.prompt,
                "source_model": c.source_model,
                "pattern": c.pattern.value,
                "expected_pattern": c.expected.value,
            }
            for c in matrix.mismatches
        ],
    }
