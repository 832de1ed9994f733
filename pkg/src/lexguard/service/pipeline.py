"""The guardrail pipeline orchestrating backend calls and KG retrieval.

For one user prompt the pipeline runs, in order: (1) the plain
completion that becomes the recommendation shown to the user, (2) a
re-engineered completion (template + original prompt) whose reply is
parsed into legal issues, (3) a KG search and citation-bundle assembly
per issue, (4) one lay-summary completion per bundle, and (5) pattern
classification of the original reply.

Only stage 1 failures propagate: the user always gets the
recommendation, and later-stage failures degrade into trace notes.
The recommendation is returned byte-identical to the first backend
reply; the pipeline annotates, it never rewrites.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

from ..errors import BackendError, EmptyQuery, NoCitation
from ..kg.store import KGStore
from ..llm.backends import ChatRequest
from ..prompting.classifier import PatternClassifier, ResponsePattern
from ..prompting.parser import LegalIssue, parse_response
from ..prompting.summary import build_lay_summary_prompt
from ..prompting.template import PromptTemplate, reformat_prompt
from ..search.engine import CitationBundle, assemble_bundle, execute_query
from ..search.index import IndexSnapshot, build_index
from ..search.queries import generate_query
from ..search.text import Lexicon

NO_ISSUES_MESSAGE = "No legal issues have been identified in the prompt."
ALERTS_MESSAGE = "Actions recommended by this answer may have legal ramifications."
NO_CITATION_NOTE = "no citation found"

STAGES = (
    "recommendation",
    "issue_extraction",
    "kg_search",
    "lay_summaries",
    "classification",
)


@dataclass
class StageTrace:
    stage: str
    millis: float = 0.0
    detail: dict = field(default_factory=dict)
    error: str | None = None


@dataclass
class PipelineTrace:
    stages: list[StageTrace] = field(default_factory=list)

    def open(self, stage: str) -> StageTrace:
        entry = StageTrace(stage=stage)
        self.stages.append(entry)
        return entry


@dataclass(frozen=True)
class UnresolvedIssue:
    issue: LegalIssue
    note: str = NO_CITATION_NOTE


@dataclass(frozen=True)
class EnrichedAnswer:
    recommendation: str
    pattern: ResponsePattern
    alerts: tuple[CitationBundle, ...]
    unresolved_issues: tuple[UnresolvedIssue, ...]
    trace: PipelineTrace


class _Timer:
    def __init__(self, entry: StageTrace):
        self._entry = entry

    def __enter__(self):
        self._start = time.perf_counter()
        return self._entry

    def __exit__(self, *exc_info):
        self._entry.millis = (time.perf_counter() - self._start) * 1000.0
        return False


class GuardrailPipeline:
    """Shared, thread-safe pipeline state: store, snapshot, template, backend."""

    def __init__(
        self,
        store: KGStore,
        template: PromptTemplate,
        backend,
        lexicon: Lexicon | None = None,
        classifier: PatternClassifier | None = None,
        snapshot: IndexSnapshot | None = None,
    ):
        self.store = store
        self.template = template
        self.backend = backend
        self.lexicon = lexicon or Lexicon()
        self.classifier = classifier or PatternClassifier()
        self._snapshot = snapshot if snapshot is not None else build_index(store)
        self._summary_cache: dict[frozenset, str] = {}
        self._cache_lock = threading.Lock()

    @property
    def snapshot(self) -> IndexSnapshot:
        return self._snapshot

    def reindex(self) -> IndexSnapshot:
        """Build a fresh snapshot and publish it atomically.

        In-flight requests keep the snapshot they started with.
        """
        snapshot = build_index(self.store)
        self._snapshot = snapshot
        return snapshot

    def effective_jurisdiction(self, requested: str | None) -> str | None:
        if requested is not None:
            return requested
        jurisdictions = self.store.jurisdictions()
        if len(jurisdictions) == 1:
            return next(iter(jurisdictions))
        return None

    def handle_chat(self, prompt: str, jurisdiction: str | None = None) -> EnrichedAnswer:
        if not prompt.strip():
            raise ValueError("prompt is empty")
        snapshot = self._snapshot  # pin one snapshot for the whole request
        trace = PipelineTrace()

        # Stage 1: the answer the user would have gotten anyway.
        with _Timer(trace.open("recommendation")) as entry:
            first = self.backend.complete(ChatRequest(prompt=prompt))
            entry.detail["backend_id"] = first.backend_id
        recommendation = first.text

        # Stage 2: re-engineered prompt, always carrying the original prompt
        # so that even refusals can be explained.
        issues: tuple[LegalIssue, ...] = ()
        with _Timer(trace.open("issue_extraction")) as entry:
            try:
                reformatted = reformat_prompt(prompt, self.template)
                entry.detail["reformatted_prompt"] = reformatted
                second = self.backend.complete(ChatRequest(prompt=reformatted))
                entry.detail["raw_response"] = second.text
                second_parsed = parse_response(second.text)
                issues = second_parsed.issues
                entry.detail["issue_count"] = len(issues)
                if not issues and self.classifier.classify(
                    second.text, second_parsed
                ) == ResponsePattern.NO_ANSWER:
                    entry.detail["note"] = "templated call refused; no issues extracted"
            except Exception as exc:
                entry.error = f"issue extraction failed: {exc}"

        # Stage 3: one query and citation bundle per issue.
        alerts: list[CitationBundle] = []
        unresolved: list[UnresolvedIssue] = []
        effective = self.effective_jurisdiction(jurisdiction)
        with _Timer(trace.open("kg_search")) as entry:
            entry.detail["jurisdiction"] = effective
            entry.detail["queries"] = []
            for issue in issues:
                try:
                    query = generate_query(issue.text, effective, self.lexicon)
                    entry.detail["queries"].append(
                        {"issue": issue.text, "terms": list(query.terms),
                         "modality": list(query.modality)}
                    )
                    ranked = execute_query(query, snapshot)
                    alerts.append(assemble_bundle(issue.text, ranked, self.store))
                except (NoCitation, EmptyQuery):
                    unresolved.append(UnresolvedIssue(issue))
                except Exception as exc:
                    unresolved.append(UnresolvedIssue(issue, note=f"search failed: {exc}"))
                    entry.error = f"search failed: {exc}"

        # Stage 4: lay summaries, cached by citation set, optional on failure.
        with _Timer(trace.open("lay_summaries")) as entry:
            alerts = self.attach_lay_summaries(alerts, trace_entry=entry)

        # Stage 5: classify the original reply.
        with _Timer(trace.open("classification")) as entry:
            try:
                pattern = self.classifier.classify(recommendation, parse_response(recommendation))
            except Exception as exc:
                pattern = ResponsePattern.NO_WARNING
                entry.error = f"classification failed: {exc}"
            entry.detail["pattern"] = pattern.value

        return EnrichedAnswer(
            recommendation=recommendation,
            pattern=pattern,
            alerts=tuple(alerts),
            unresolved_issues=tuple(unresolved),
            trace=trace,
        )

    def attach_lay_summaries(
        self, bundles: list[CitationBundle], trace_entry: StageTrace | None = None
    ) -> list[CitationBundle]:
        """Fill lay summaries via the backend, one completion per bundle.

        Summaries are cached by the set of cited fragment ids for the
        lifetime of the pipeline; backend failures leave the summary
        absent and are flagged in the trace.
        """
        out: list[CitationBundle] = []
        for bundle in bundles:
            key = frozenset(c.id.text for c in bundle.citations)
            with self._cache_lock:
                cached = self._summary_cache.get(key)
            if cached is not None:
                out.append(bundle.with_summary(cached))
                continue
            try:
                reply = self.backend.complete(
                    ChatRequest(prompt=build_lay_summary_prompt(bundle.citations))
                )
                with self._cache_lock:
                    self._summary_cache[key] = reply.text
                out.append(bundle.with_summary(reply.text))
            except BackendError as exc:
                if trace_entry is not None:
                    trace_entry.error = f"lay summary failed: {exc}"
                out.append(bundle)
            except Exception as exc:
                if trace_entry is not None:
                    trace_entry.error = f"lay summary failed: {exc}"
                out.append(bundle)
        return out
