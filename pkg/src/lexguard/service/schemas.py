"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field

from ..kg.documents import LegalFragment
from ..kg.store import IngestReport
from ..search.engine import ScoredFragment
from .pipeline import ALERTS_MESSAGE, NO_ISSUES_MESSAGE, EnrichedAnswer, PipelineTrace


class ChatRequestBody(BaseModel):
    prompt: str = ""
    jurisdiction: str | None = None


class AlertCitation(BaseModel):
    fragment_id: str
    citation_text: str
    lay_summary: str | None = None


class AlertItem(BaseModel):
    issue: str
    citations: list[AlertCitation]


class AlertPayload(BaseModel):
    has_alerts: bool
    message: str
    items: list[AlertItem] = Field(default_factory=list)


class UnresolvedIssueBody(BaseModel):
    text: str
    source: str
    note: str


class ChatAnswerBody(BaseModel):
    recommendation: str
    pattern: str
    alert: AlertPayload
    unresolved_issues: list[UnresolvedIssueBody]
    trace: dict


class QueryRequestBody(BaseModel):
    q: str | None = None
    terms: list[str] | None = None
    modality: list[str] = Field(default_factory=list)
    jurisdiction: str | None = None
    limit: int | None = None


class QueryHit(BaseModel):
    id: str
    score: float
    matched_terms: list[str]


class QueryResponseBody(BaseModel):
    hits: list[QueryHit]


class FragmentBody(BaseModel):
    id: str
    text: str
    title: str | None = None
    jurisdiction: str
    parent: str | None = None
    cites: list[str] = Field(default_factory=list)
    topics: list[str] = Field(default_factory=list)
    in_force_from: str
    in_force_to: str | None = None


class IngestResponseBody(BaseModel):
    fragments_added: int
    triples_added: int
    warnings: list[str] = Field(default_factory=list)


class ReindexResponseBody(BaseModel):
    status: str
    built_at: str
    fragments: int


class HealthBody(BaseModel):
    status: str
    snapshot_built_at: str
    fragments: int


class ErrorDetail(BaseModel):
    code: str
    message: str


class ErrorBody(BaseModel):
    error: ErrorDetail


# --- converters ---------------------------------------------------------------

def trace_to_dict(trace: PipelineTrace) -> dict[str, Any]:
    return {
        "stages": [
            {
                "stage": entry.stage,
                "millis": round(entry.millis, 3),
                "detail": entry.detail,
                "error": entry.error,
            }
            for entry in trace.stages
        ]
    }


def alert_payload_for(answer: EnrichedAnswer) -> AlertPayload:
    if not answer.alerts:
        return AlertPayload(has_alerts=False, message=NO_ISSUES_MESSAGE, items=[])
    items = []
    for bundle in answer.alerts:
        items.append(
            AlertItem(
                issue=bundle.issue,
                citations=[
                    AlertCitation(
                        fragment_id=c.id.text,
                        citation_text=c.text,
                        lay_summary=bundle.lay_summary,
                    )
                    for c in bundle.citations
                ],
            )
        )
    return AlertPayload(has_alerts=True, message=ALERTS_MESSAGE, items=items)


def answer_to_body(answer: EnrichedAnswer) -> ChatAnswerBody:
    return ChatAnswerBody(
        recommendation=answer.recommendation,
        pattern=answer.pattern.value,
        alert=alert_payload_for(answer),
        unresolved_issues=[
            UnresolvedIssueBody(
                text=u.issue.text, source=u.issue.source.value, note=u.note
            )
            for u in answer.unresolved_issues
        ],
        trace=trace_to_dict(answer.trace),
    )


def hits_to_body(hits: list[ScoredFragment]) -> QueryResponseBody:
    return QueryResponseBody(
        hits=[
            QueryHit(id=h.id.text, score=h.score, matched_terms=list(h.matched_terms))
            for h in hits
        ]
    )


def fragment_to_body(fragment: LegalFragment) -> FragmentBody:
    return FragmentBody(
        id=fragment.id.text,
        text=fragment.text,
        title=fragment.title,
        jurisdiction=fragment.jurisdiction,
        parent=fragment.parent.text if fragment.parent else None,
        cites=[c.text for c in fragment.cites],
        topics=list(fragment.topics),
        in_force_from=fragment.in_force_from.isoformat(),
        in_force_to=fragment.in_force_to.isoformat() if fragment.in_force_to else None,
    )


def report_to_body(report: IngestReport) -> IngestResponseBody:
    return IngestResponseBody(
        fragments_added=report.fragments_added,
        triples_added=report.triples_added,
        warnings=list(report.warnings),
    )
