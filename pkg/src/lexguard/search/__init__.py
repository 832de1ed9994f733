"""Text index and retrieval over the legal knowledge graph."""

from .engine import (
    BM25_B,
    BM25_K1,
    MAX_BUNDLE_CITATIONS,
    MODALITY_BOOST,
    TOPIC_BOOST,
    CitationBundle,
    ScoredFragment,
    assemble_bundle,
    execute_query,
)
from .index import IndexSnapshot, build_index, fragment_tokens
from .queries import DEFAULT_LIMIT, SearchQuery, generate_query, parse_query_text
from .text import Lexicon, load_word_file, stem, tokenize

__all__ = [
    "BM25_B",
    "BM25_K1",
    "CitationBundle",
    "DEFAULT_LIMIT",
    "IndexSnapshot",
    "Lexicon",
    "MAX_BUNDLE_CITATIONS",
    "MODALITY_BOOST",
    "ScoredFragment",
    "SearchQuery",
    "TOPIC_BOOST",
    "assemble_bundle",
    "build_index",
    "execute_query",
    "fragment_tokens",
    "generate_query",
    "load_word_file",
    "parse_query_text",
    "stem",
    "tokenize",
]
