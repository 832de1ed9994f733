"""Query execution and citation-bundle assembly.

Scoring is BM25 (k1=1.2, b=0.75, idf = ln(1 + (N - df + 0.5)/(df + 0.5)))
over the query's terms and modality tokens, plus two additive boosts:
+0.5 per modality token matched and +0.5 per query token found among the
fragment's topic keywords.  Corpus statistics (N, avgdl, df) always come
from the whole snapshot; a jurisdiction filter only narrows the
candidates.  Ties break on canonical id text, ascending, so rankings are
total and reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..errors import NoCitation
from ..kg.documents import LegalFragment
from ..kg.ids import FragmentId
from ..kg.store import KGStore
from .index import IndexSnapshot
from .queries import SearchQuery
from .text import stem, tokenize

BM25_K1 = 1.2
BM25_B = 0.75
MODALITY_BOOST = 0.5
TOPIC_BOOST = 0.5

# Conditional-reference markers that trigger one-hop citation expansion.
MARKER_TOKENS = frozenset({"unless", "except", "exempt"})
MARKER_PHRASE = ("subject", "to")

MAX_BUNDLE_CITATIONS = 4


@dataclass(frozen=True)
class ScoredFragment:
    id: FragmentId
    score: float
    matched_terms: tuple[str, ...]


@dataclass(frozen=True)
class CitationBundle:
    """A legal issue paired with the legislation fragments explaining it."""

    issue: str
    citations: tuple[LegalFragment, ...]
    lay_summary: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "citations", tuple(self.citations))
        if not self.citations:
            raise NoCitation(f"bundle for {self.issue!r} has no citations")
        ids = [c.id for c in self.citations]
        if len(set(ids)) != len(ids):
            raise NoCitation(f"bundle for {self.issue!r} repeats a citation")

    def with_summary(self, summary: str | None) -> "CitationBundle":
        return replace(self, lay_summary=summary)


def _query_keys(query: SearchQuery) -> list[tuple[str, str, bool]]:
    """(display token, postings key, is_modality) triples in query order."""
    keys = [(t, t, False) for t in query.terms]
    keys.extend((m, stem(m), True) for m in query.modality)
    return keys


def execute_query(query: SearchQuery, snapshot: IndexSnapshot) -> list[ScoredFragment]:
    """Rank fragments for a query; pure function of query and snapshot."""
    if snapshot.doc_count == 0:
        return []
    keys = _query_keys(query)

    candidates: set[str] = set()
    for _, key, _ in keys:
        candidates.update(snapshot.postings.get(key, ()))

    results: list[ScoredFragment] = []
    for id_text in candidates:
        entry = snapshot.fragments[id_text]
        if query.jurisdiction is not None and entry.jurisdiction != query.jurisdiction:
            continue
        score = 0.0
        matched: list[str] = []
        modality_hits = 0
        topic_hits = 0
        for display, key, is_modality in keys:
            tf = snapshot.postings.get(key, {}).get(id_text, 0)
            if tf == 0:
                continue
            df = snapshot.document_frequency(key)
            idf = math.log(1.0 + (snapshot.doc_count - df + 0.5) / (df + 0.5))
            norm = tf + BM25_K1 * (1.0 - BM25_B + BM25_B * entry.length / snapshot.avg_length)
            score += idf * (tf * (BM25_K1 + 1.0)) / norm
            if display not in matched:
                matched.append(display)
                if is_modality:
                    modality_hits += 1
                if key in entry.topic_tokens:
                    topic_hits += 1
        if not matched:
            continue
        score += MODALITY_BOOST * modality_hits
        score += TOPIC_BOOST * topic_hits
        results.append(ScoredFragment(entry.id, score, tuple(matched)))

    results.sort(key=lambda r: (-r.score, r.id.text))
    return results[: query.limit]


def _contains_marker(text: str) -> bool:
    tokens = tokenize(text)
    if any(t in MARKER_TOKENS for t in tokens):
        return True
    return any(
        (tokens[i], tokens[i + 1]) == MARKER_PHRASE for i in range(len(tokens) - 1)
    )


def assemble_bundle(
    issue: str, ranked: list[ScoredFragment], store: KGStore
) -> CitationBundle:
    """Build the citation bundle for one legal issue from ranked hits.

    The top hit is always cited.  When its text, or the text of a stored
    ancestor within the same section, carries a conditional-reference
    marker, the fragments cited by the hit and by its descendants in the
    section subtree are appended (one hop, id order, at most
    MAX_BUNDLE_CITATIONS citations in total).
    """
    if not ranked:
        raise NoCitation(f"no legislation found for issue: {issue!r}")
    hit = store.get_fragment(ranked[0].id)

    marker_texts = [hit.text]
    section = hit.id.section_prefix()
    if section is not None:
        depth = len(section.path)
        for ancestor in _stored_ancestors(hit.id, store):
            if len(ancestor.id.path) >= depth:
                marker_texts.append(ancestor.text)

    expansion: dict[FragmentId, LegalFragment] = {}
    if any(_contains_marker(text) for text in marker_texts):
        sources = [hit]
        if section is not None:
            sources.extend(store.descendants(hit.id))
        for source in sources:
            for cited in store.resolve_references(source.id):
                if cited.id != hit.id:
                    expansion[cited.id] = cited

    citations = [hit] + sorted(expansion.values(), key=lambda f: f.id.text)
    return CitationBundle(issue=issue, citations=tuple(citations[:MAX_BUNDLE_CITATIONS]))


def _stored_ancestors(fragment_id: FragmentId, store: KGStore) -> list[LegalFragment]:
    ancestors = []
    parent = fragment_id.parent
    while parent is not None:
        if parent in store:
            ancestors.append(store.get_fragment(parent))
        parent = parent.parent
    return ancestors
