"""Total parser for LLM replies shaped by the output template.

Replies come in three shapes in the wild: a "Potential Legal Issues:"
heading followed by a numbered/bulleted list, literal inline "[LIn]"
placeholders kept by the model, or no issue structure at all.  This
parser accepts all three and never raises.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class IssueSource(str, Enum):
    TEMPLATED = "templated"
    HEURISTIC = "heuristic"


@dataclass(frozen=True)
class LegalIssue:
    text: str
    source: IssueSource = IssueSource.TEMPLATED


@dataclass(frozen=True)
class ParsedResponse:
    recommendation: str
    issues: tuple[LegalIssue, ...]
    raw: str


_MARKUP_RE = re.compile(r"[*_`]+")
_HEADING_RE = re.compile(r"^potential legal issues:?$")
_LIST_ITEM_RE = re.compile(r"^\s*(?:\d+\s*[.)]\s*|[-*•]\s+|\[li\d+\]\s*)(.*)$", re.I)
_INLINE_ISSUE_RE = re.compile(r"\[li\d+\]\s*", re.I)


def _is_heading(line: str) -> bool:
    cleaned = _MARKUP_RE.sub("", line).strip().lower()
    return bool(_HEADING_RE.match(cleaned))


def _clean_issue(text: str) -> str:
    cleaned = text.strip().strip(",;").strip()
    if not any(ch.isalnum() for ch in cleaned):
        return ""
    return cleaned


def parse_response(raw: str) -> ParsedResponse:
    """Split a reply into recommendation text and extracted legal issues.

    Total: any UTF-8 input yields a ParsedResponse.  Without a heading
    and without inline markers the whole reply is the recommendation.
    """
    lines = raw.splitlines()
    heading_index = next((i for i, line in enumerate(lines) if _is_heading(line)), None)

    found: list[tuple[int, int, str]] = []  # (line, column, text)

    if heading_index is not None:
        recommendation = "\n".join(lines[:heading_index]).strip()
        for offset, line in enumerate(lines[heading_index + 1:], start=heading_index + 1):
            if not line.strip():
                continue
            item = _LIST_ITEM_RE.match(line)
            if item is None:
                break
            cleaned = _clean_issue(_INLINE_ISSUE_RE.sub("", item.group(1)))
            if cleaned:
                found.append((offset, 0, cleaned))
    else:
        recommendation = raw.strip()

    # Inline "[LIn] sentence" placeholders, wherever they occur.
    for index, line in enumerate(lines):
        matches = list(_INLINE_ISSUE_RE.finditer(line))
        for i, match in enumerate(matches):
            end = matches[i + 1].start() if i + 1 < len(matches) else len(line)
            cleaned = _clean_issue(line[match.end():end])
            if cleaned:
                found.append((index, match.start(), cleaned))

    # The same line can be captured by both the list scan and the inline
    # scan; collapse those, but keep repeats on distinct lines.
    found.sort(key=lambda entry: (entry[0], entry[1]))
    issues: list[str] = []
    seen: set[tuple[int, str]] = set()
    for line_index, _, text in found:
        if (line_index, text) not in seen:
            seen.add((line_index, text))
            issues.append(text)

    return ParsedResponse(
        recommendation=recommendation,
        issues=tuple(LegalIssue(text) for text in issues),
        raw=raw,
    )


def instantiate_response(recommendation: str, issues: list[str]) -> str:
    """Render a reply the way a template-following model would.

    Inverse of parse_response for well-formed issue sentences; used by
    round-trip tests and script authoring.
    """
    if not issues:
        return recommendation
    numbered = "\n".join(f"{i}. {text}" for i, text in enumerate(issues, start=1))
    return f"{recommendation}\n\nPotential Legal Issues:\n{numbered}"
