"""Batch response-pattern evaluation over canned corpora."""

import json

import pytest

from conftest import FIXTURES
from lexguard.errors import SchemaViolation
from lexguard.evaluation import (
    EvalCorpus,
    EvalEntry,
    load_corpus,
    matrix_to_dict,
    render_matrix,
    run_eval,
)
from lexguard.prompting.classifier import ResponsePattern


class TestCorpusLoading:
    def test_table1_corpus_loads(self):
        corpus = load_corpus(FIXTURES / "table1-corpus.json")
        assert len(corpus.entries) == 84
        prompts = {e.prompt for e in corpus.entries}
        assert len(prompts) == 12
        models = {e.source_model for e in corpus.entries}
        assert len(models) == 7

    def test_missing_field_rejected(self, tmp_path):
        path = tmp_path / "corpus.json"
        path.write_text(json.dumps({"entries": [{"prompt": "p", "source_model": "m"}]}))
        with pytest.raises(SchemaViolation, match="response_text"):
            load_corpus(path)

    def test_unknown_pattern_rejected(self, tmp_path):
        path = tmp_path / "corpus.json"
        path.write_text(json.dumps({"entries": [{
            "prompt": "p", "source_model": "m", "response_text": "r",
            "expected_pattern": "maybe",
        }]}))
        with pytest.raises(SchemaViolation, match="expected_pattern"):
            load_corpus(path)

    def test_invalid_json_rejected(self, tmp_path):
        path = tmp_path / "corpus.json"
        path.write_text("{nope")
        with pytest.raises(SchemaViolation):
            load_corpus(path)


class TestRunEval:
    def test_table1_reproduced_without_mismatches(self):
        corpus = load_corpus(FIXTURES / "table1-corpus.json")
        matrix = run_eval(corpus)
        assert matrix.mismatches == []
        counts = matrix.counts
        assert counts[ResponsePattern.NO_WARNING] == 32
        assert counts[ResponsePattern.WARNING] == 32
        assert counts[ResponsePattern.NO_ANSWER] == 20
        assert len(matrix.cells) == len(corpus.entries)
        assert sum(counts.values()) == len(corpus.entries)

    def test_single_refusal_cell(self):
        corpus = EvalCorpus(entries=(
            EvalEntry("p", "m", "I can't assist with that."),
        ))
        matrix = run_eval(corpus)
        assert matrix.cells[0].pattern == ResponsePattern.NO_ANSWER

    def test_empty_corpus(self):
        matrix = run_eval(EvalCorpus(entries=()))
        assert matrix.cells == []
        assert matrix.mismatches == []
        assert sum(matrix.counts.values()) == 0

    def test_mismatch_detected(self):
        corpus = EvalCorpus(entries=(
            EvalEntry("p", "m", "I can't assist with that.",
                      expected_pattern=ResponsePattern.NO_WARNING),
        ))
        matrix = run_eval(corpus)
        assert len(matrix.mismatches) == 1


class TestRendering:
    def test_table_contains_abbreviations(self):
        corpus = load_corpus(FIXTURES / "table1-corpus.json")
        rendered = render_matrix(run_eval(corpus))
        lines = rendered.splitlines()
        assert lines[0].startswith("prompt")
        assert "ChatGPT-4" in lines[0]
        assert any(" NA" in line for line in lines)
        assert "totals: NW=32  W=32  NA=20  cells=84" in rendered

    def test_rows_have_equal_width(self):
        corpus = load_corpus(FIXTURES / "table1-corpus.json")
        rendered = render_matrix(run_eval(corpus))
        rows = [l for l in rendered.splitlines()[2:-2] if l]
        assert len({len(r) for r in rows}) == 1

    def test_json_shape(self):
        corpus = load_corpus(FIXTURES / "table1-corpus.json")
        payload = matrix_to_dict(run_eval(corpus))
        assert len(payload["cells"]) == 84
        assert payload["mismatches"] == []
        assert payload["counts"] == {"no_warning": 32, "warning": 32, "no_answer": 20}
