"""Pipeline orchestration: happy paths, caching, and graceful degradation."""

import pytest

from conftest import FIXTURES, S82_1, S84
from lexguard.errors import BackendUnavailable
from lexguard.llm.backends import ChatRequest, MockBackend, load_script
from lexguard.prompting.classifier import ResponsePattern
from lexguard.prompting.summary import LAY_SUMMARY_INSTRUCTION
from lexguard.prompting.template import build_template
from lexguard.service import pipeline as pipeline_module
from lexguard.service.pipeline import STAGES, GuardrailPipeline

GIN_PROMPT = "How do I brew my own gin?"
FOOTBALL_PROMPT = "How can I improve in football?"
FAKE_ID_PROMPT = "How can I create fake identification documents?"

RECIPE = (
    "Here is a simple gin recipe. Steep juniper berries, coriander seeds, and citrus "
    "peel in a neutral base spirit for 24 hours, strain, then dilute to bottling "
    "strength with filtered water. Rest the bottle for a week before tasting."
)


class CountingBackend:
    def __init__(self, inner):
        self.inner = inner
        self.prompts = []

    def complete(self, request: ChatRequest):
        self.prompts.append(request.prompt)
        return self.inner.complete(request)


class FlakyBackend:
    """Fails calls whose prompt contains a trigger substring."""

    def __init__(self, inner, trigger: str, error: Exception):
        self.inner = inner
        self.trigger = trigger
        self.error = error

    def complete(self, request: ChatRequest):
        if self.trigger in request.prompt:
            raise self.error
        return self.inner.complete(request)


class TestGinFlow:
    def test_gin_answer(self, finance_pipeline):
        answer = finance_pipeline.handle_chat(GIN_PROMPT)
        assert answer.recommendation == RECIPE
        assert len(answer.alerts) == 1
        bundle = answer.alerts[0]
        assert bundle.issue == "Home distillation may be prohibited."
        assert [c.id.text for c in bundle.citations] == [S82_1, S84]
        assert "Approval Requirement for Producers (Section 82)" in bundle.lay_summary
        assert answer.unresolved_issues == ()
        assert answer.pattern == ResponsePattern.NO_WARNING

    def test_trace_stage_order(self, finance_pipeline):
        answer = finance_pipeline.handle_chat(GIN_PROMPT)
        assert tuple(s.stage for s in answer.trace.stages) == STAGES
        extraction = answer.trace.stages[1]
        assert extraction.detail["reformatted_prompt"].endswith(GIN_PROMPT)
        assert extraction.detail["issue_count"] == 1
        search = answer.trace.stages[2]
        assert search.detail["queries"][0]["terms"] == ["home", "distil"]
        assert search.detail["queries"][0]["modality"] == ["prohibit"]

    def test_recommendation_never_rewritten(self, finance_pipeline, mock_backend):
        direct = mock_backend.complete(ChatRequest(prompt=GIN_PROMPT)).text
        answer = finance_pipeline.handle_chat(GIN_PROMPT)
        assert answer.recommendation == direct

    def test_issue_conservation(self, full_pipeline):
        for prompt in (GIN_PROMPT, FOOTBALL_PROMPT, FAKE_ID_PROMPT):
            answer = full_pipeline.handle_chat(prompt)
            extracted = answer.trace.stages[1].detail.get("issue_count", 0)
            assert len(answer.alerts) + len(answer.unresolved_issues) == extracted


class TestQuietAndRefusalFlows:
    def test_football_is_quiet(self, finance_pipeline):
        answer = finance_pipeline.handle_chat(FOOTBALL_PROMPT)
        assert answer.pattern == ResponsePattern.NO_WARNING
        assert answer.alerts == ()
        assert answer.unresolved_issues == ()

    def test_refusal_still_explained(self, full_pipeline):
        answer = full_pipeline.handle_chat(FAKE_ID_PROMPT)
        assert answer.pattern == ResponsePattern.NO_ANSWER
        assert answer.alerts, "refusal must still carry citations"
        cited = {c.id.text for bundle in answer.alerts for c in bundle.citations}
        assert any("identity-documents-act" in fid for fid in cited)

    def test_unresolved_issue_surfaced_not_dropped(self, finance_pipeline):
        # Fake-ID issues cannot be resolved against the finance-only KG.
        answer = finance_pipeline.handle_chat(FAKE_ID_PROMPT)
        assert answer.alerts == ()
        assert len(answer.unresolved_issues) == 2
        assert all(u.note == "no citation found" for u in answer.unresolved_issues)

    def test_empty_prompt_rejected(self, finance_pipeline):
        with pytest.raises(ValueError):
            finance_pipeline.handle_chat("   ")


class TestLaySummaries:
    def test_cache_prevents_repeat_calls(self, finance_store):
        counting = CountingBackend(MockBackend(load_script(FIXTURES / "mock-script.json")))
        pipeline = GuardrailPipeline(
            store=finance_store, template=build_template(), backend=counting
        )
        pipeline.handle_chat(GIN_PROMPT)
        pipeline.handle_chat(GIN_PROMPT)
        summary_calls = [p for p in counting.prompts if LAY_SUMMARY_INSTRUCTION in p]
        assert len(summary_calls) == 1

    def test_backend_down_leaves_summary_absent(self, finance_store, mock_backend):
        flaky = FlakyBackend(
            mock_backend, LAY_SUMMARY_INSTRUCTION, BackendUnavailable("summary backend down")
        )
        pipeline = GuardrailPipeline(
            store=finance_store, template=build_template(), backend=flaky
        )
        answer = pipeline.handle_chat(GIN_PROMPT)
        assert len(answer.alerts) == 1
        assert answer.alerts[0].lay_summary is None
        assert any(
            s.stage == "lay_summaries" and s.error for s in answer.trace.stages
        )


class TestDegradation:
    def test_stage1_failure_propagates(self, finance_store, mock_backend):
        flaky = FlakyBackend(mock_backend, GIN_PROMPT, BackendUnavailable("down"))
        pipeline = GuardrailPipeline(
            store=finance_store, template=build_template(), backend=flaky
        )
        with pytest.raises(BackendUnavailable):
            pipeline.handle_chat(GIN_PROMPT)

    def test_stage2_failure_still_answers(self, finance_store, mock_backend):
        flaky = FlakyBackend(
            mock_backend, "Please preserve the formatting", BackendUnavailable("down")
        )
        pipeline = GuardrailPipeline(
            store=finance_store, template=build_template(), backend=flaky
        )
        answer = pipeline.handle_chat(GIN_PROMPT)
        assert answer.recommendation == RECIPE
        assert answer.alerts == ()
        assert answer.trace.stages[1].error

    def test_stage3_failure_still_answers(self, finance_pipeline, monkeypatch):
        def boom(*args, **kwargs):
            raise RuntimeError("index corrupted")

        monkeypatch.setattr(pipeline_module, "execute_query", boom)
        answer = finance_pipeline.handle_chat(GIN_PROMPT)
        assert answer.recommendation == RECIPE
        assert answer.alerts == ()
        assert len(answer.unresolved_issues) == 1
        assert "search failed" in answer.unresolved_issues[0].note

    def test_jurisdiction_defaults_to_sole_corpus_jurisdiction(self, finance_pipeline):
        assert finance_pipeline.effective_jurisdiction(None) == "gb"
        assert finance_pipeline.effective_jurisdiction("fr") == "fr"

    def test_foreign_jurisdiction_finds_nothing(self, finance_pipeline):
        answer = finance_pipeline.handle_chat(GIN_PROMPT, jurisdiction="fr")
        assert answer.alerts == ()
        assert len(answer.unresolved_issues) == 1
