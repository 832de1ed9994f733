"""Operator command line: ingest, query, chat, eval, serve.

Thin wrappers around the core package; all logic lives in the library.
Exit codes: 0 success, 1 eval mismatches, 2 input or validation error,
3 backend failure, 4 service startup failure.
"""

from __future__ import annotations

import json
import sys
import traceback

import click

from .errors import BackendError, LexguardError
from .evaluation import load_corpus, matrix_to_dict, render_matrix, run_eval
from .kg.documents import parse_legislation
from .kg.store import KGStore
from .prompting.classifier import PatternClassifier, load_lexicon_file
from .search.engine import execute_query
from .search.index import build_index
from .search.queries import SearchQuery, parse_query_text
from .service.app import ServiceStartupError, serve
from .service.config import ConfigError, load_config
from .service.pipeline import EnrichedAnswer
from .service.schemas import answer_to_body

EXIT_INPUT = 2
EXIT_BACKEND = 3
EXIT_STARTUP = 4


def _fail(message: str, code: int):
    context = click.get_current_context(silent=True)
    if context is not None and (context.obj or {}).get("verbose"):
        traceback.print_exc()
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
@click.option("--verbose", is_flag=True, help="Print stack traces on errors.")
@click.pass_context
def main(ctx, verbose):
    """Legal-citation guardrails for LLM answers."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose


def _load_store(kg_path: str) -> KGStore:
    import os

    if os.path.exists(kg_path):
        return KGStore.load(kg_path)
    return KGStore()


@main.command("ingest")
@click.argument("file", type=click.Path())
@click.option("--kg", "kg_path", required=True, help="Triple-store file to update.")
def cmd_ingest(file, kg_path):
    """Parse a legislation document and add it to the knowledge graph."""
    try:
        with open(file, "rb") as handle:
            document = parse_legislation(handle.read())
        store = _load_store(kg_path)
        report = store.ingest(document)
        store.save(kg_path)
    except OSError as exc:
        _fail(f"cannot read {file}: {exc}", EXIT_INPUT)
    except LexguardError as exc:
        _fail(str(exc), EXIT_INPUT)
    click.echo(f"{report.fragments_added} fragments added, {len(report.warnings)} warnings")
    for warning in report.warnings:
        click.echo(f"  warning: {warning}")


@main.command("query")
@click.argument("query_text")
@click.option("--kg", "kg_path", required=True, help="Triple-store file to search.")
@click.option("--limit", type=int, default=None, help="Override the result limit.")
@click.option("--jurisdiction", default=None, help="Filter hits to one jurisdiction.")
@click.option("--json", "as_json", is_flag=True, help="Emit the structured hit list.")
def cmd_query(query_text, kg_path, limit, jurisdiction, as_json):
    """Run a FIND query against the knowledge graph."""
    try:
        store = _load_store(kg_path)
        snapshot = build_index(store)
        parsed = parse_query_text(query_text)
        if limit is not None or jurisdiction is not None:
            parsed = SearchQuery(
                parsed.terms,
                parsed.modality,
                jurisdiction if jurisdiction is not None else parsed.jurisdiction,
                limit if limit is not None else parsed.limit,
            )
        hits = execute_query(parsed, snapshot)
    except OSError as exc:
        _fail(f"cannot read {kg_path}: {exc}", EXIT_INPUT)
    except LexguardError as exc:
        _fail(str(exc), EXIT_INPUT)
    if as_json:
        click.echo(json.dumps({
            "hits": [
                {"id": h.id.text, "score": h.score, "matched_terms": list(h.matched_terms)}
                for h in hits
            ]
        }, indent=2))
        return
    if not hits:
        click.echo("no hits")
        return
    for rank, hit in enumerate(hits, start=1):
        matched = ",".join(hit.matched_terms)
        click.echo(f"{rank}. {hit.id.text}  score={hit.score:.4f}  matched={matched}")


def _render_answer(answer: EnrichedAnswer) -> str:
    lines = [answer.recommendation, ""]
    if answer.alerts:
        lines.append("Potential Legal Issues")
        lines.append("======================")
        for number, bundle in enumerate(answer.alerts, start=1):
            lines.append(f"{number}. {bundle.issue}")
            for i, citation in enumerate(bundle.citations, start=1):
                lines.append(f"   [{i}] {citation.id.text}")
                lines.append(f"       {citation.text}")
            if bundle.lay_summary:
                lines.append(f"   Lay summary: {bundle.lay_summary}")
            lines.append("")
    if answer.unresolved_issues:
        lines.append("Unresolved issues:")
        for item in answer.unresolved_issues:
            lines.append(f"- {item.issue.text} ({item.note})")
        lines.append("")
    if not answer.alerts and not answer.unresolved_issues:
        lines.append("No legal issues identified.")
        lines.append("")
    lines.append(f"(pattern: {answer.pattern.value})")
    return "\n".join(lines)


@main.command("chat")
@click.argument("prompt")
@click.option("--config", "config_path", required=True, help="Service config file.")
@click.option("--jurisdiction", default=None)
@click.option("--json", "as_json", is_flag=True, help="Emit the EnrichedAnswer JSON.")
def cmd_chat(prompt, config_path, jurisdiction, as_json):
    """Run one prompt through the full guardrail pipeline."""
    try:
        config = load_config(config_path)
        pipeline = config.build_pipeline()
    except (OSError, LexguardError, ValueError) as exc:
        _fail(str(exc), EXIT_INPUT)
    try:
        answer = pipeline.handle_chat(prompt, jurisdiction)
    except BackendError as exc:
        _fail(f"backend failure: {exc}", EXIT_BACKEND)
    except ValueError as exc:
        _fail(str(exc), EXIT_INPUT)
    if as_json:
        click.echo(answer_to_body(answer).model_dump_json(indent=2))
    else:
        click.echo(_render_answer(answer))


@main.command("eval")
@click.argument("corpus_file", type=click.Path())
@click.option("--out", "out_path", default=None, help="Write the matrix as JSON.")
@click.option("--refusal-lexicon", default=None, help="Override the refusal phrase file.")
@click.option("--warning-lexicon", default=None, help="Override the warning phrase file.")
def cmd_eval(corpus_file, out_path, refusal_lexicon, warning_lexicon):
    """Classify a corpus of canned responses and print the pattern matrix."""
    try:
        corpus = load_corpus(corpus_file)
        classifier = PatternClassifier(
            refusal_phrases=load_lexicon_file(refusal_lexicon) if refusal_lexicon else None,
            warning_phrases=load_lexicon_file(warning_lexicon) if warning_lexicon else None,
        )
    except OSError as exc:
        _fail(f"cannot read corpus: {exc}", EXIT_INPUT)
    except LexguardError as exc:
        _fail(str(exc), EXIT_INPUT)
    matrix = run_eval(corpus, classifier)
    click.echo(render_matrix(matrix))
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            json.dump(matrix_to_dict(matrix), handle, indent=2)
        click.echo(f"matrix written to {out_path}")
    if matrix.mismatches:
        click.echo(f"{len(matrix.mismatches)} mismatches:", err=True)
        for cell in matrix.mismatches:
            click.echo(
                f"  {cell.source_model} / {cell.prompt!r}: "
                f"expected {cell.expected.value}, got {cell.pattern.value}",
                err=True,
            )
        sys.exit(1)


@main.command("serve")
@click.option("--config", "config_path", required=True, help="Service config file.")
@click.option("--port", type=int, default=None, help="Override the configured port.")
def cmd_serve(config_path, port):
    """Run the guardrail HTTP service."""
    try:
        config = load_config(config_path)
    except (OSError, ConfigError, ValueError) as exc:
        _fail(str(exc), EXIT_INPUT)
    try:
        serve(config, port=port)
    except ServiceStartupError as exc:
        _fail(str(exc), EXIT_STARTUP)


if __name__ == "__main__":
    main()
