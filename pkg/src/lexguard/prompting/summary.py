"""Prompt construction for lay summaries of exact citations."""

from __future__ import annotations

from typing import Sequence

from ..kg.documents import LegalFragment

LAY_SUMMARY_INSTRUCTION = (
    "Below are exact citations of legislation. For each citation, write a short "
    "lay summary in plain language that a person without legal training can "
    "understand. Number each summary to match its citation."
)


def build_lay_summary_prompt(citations: Sequence[LegalFragment]) -> str:
    """Deterministic prompt quoting each citation's id and verbatim text."""
    if not citations:
        raise ValueError("lay summary prompt needs at least one citation")
    blocks = [LAY_SUMMARY_INSTRUCTION]
    for number, fragment in enumerate(citations, start=1):
        blocks.append(f"Citation {number}: {fragment.id.text}\n{fragment.text}")
    return "\n\n".join(blocks)
