"""Immutable inverted index over fragment text, titles, and topics."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone

from ..kg.ids import FragmentId
from ..kg.store import KGStore
from .text import stem, tokenize


@dataclass(frozen=True)
class IndexedFragment:
    id: FragmentId
    id_text: str
    jurisdiction: str
    length: int
    topic_tokens: frozenset[str]


@dataclass(frozen=True)
class IndexSnapshot:
    """Frozen view of the corpus at build time.

    Queries run against the snapshot alone, so a snapshot keeps
    answering identically after the store changes; reindexing builds a
    new snapshot off to the side.
    """

    postings: dict[str, dict[str, int]]  # stemmed token -> {fragment id text: tf}
    fragments: dict[str, IndexedFragment]  # fragment id text -> entry
    doc_count: int
    avg_length: float
    built_at: datetime

    def document_frequency(self, token: str) -> int:
        return len(self.postings.get(token, ()))


def fragment_tokens(text: str, title: str | None, topics) -> list[str]:
    """Stemmed tokens of one fragment's indexed fields, in order."""
    tokens = tokenize(text)
    if title:
        tokens.extend(tokenize(title))
    for topic in topics:
        tokens.extend(tokenize(topic))
    return [stem(t) for t in tokens]


def build_index(store: KGStore) -> IndexSnapshot:
    """Index every fragment currently in the store."""
    postings: dict[str, dict[str, int]] = {}
    entries: dict[str, IndexedFragment] = {}
    total_length = 0
    for fragment in store.fragments():
        id_text = fragment.id.text
        tokens = fragment_tokens(fragment.text, fragment.title, fragment.topics)
        for token in tokens:
            postings.setdefault(token, {})
            postings[token][id_text] = postings[token].get(id_text, 0) + 1
        topic_tokens = frozenset(
            stem(t) for topic in fragment.topics for t in tokenize(topic)
        )
        entries[id_text] = IndexedFragment(
            id=fragment.id,
            id_text=id_text,
            jurisdiction=fragment.jurisdiction,
            length=len(tokens),
            topic_tokens=topic_tokens,
        )
        total_length += len(tokens)
    count = len(entries)
    return IndexSnapshot(
        postings=postings,
        fragments=entries,
        doc_count=count,
        avg_length=(total_length / count) if count else 0.0,
        built_at=datetime.now(timezone.utc),
    )
