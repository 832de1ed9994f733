"""Turning legal-issue sentences and mini-language text into structured queries.

Grammar of the mini language::

    FIND <term>... [MODALITY <tok>...] [IN <cc>] [LIMIT <n>]

Keywords are case-insensitive; terms are normalized exactly as
generate_query normalizes an issue sentence (lowercase, stopwords
dropped, stemmed, modality words folded into the modality list).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import EmptyQuery, QuerySyntaxError
from .text import Lexicon, stem, tokenize

DEFAULT_LIMIT = 5


@dataclass(frozen=True)
class SearchQuery:
    """Conjunctive term + modality query over the fragment index."""

    terms: tuple[str, ...]
    modality: tuple[str, ...] = ()
    jurisdiction: str | None = None
    limit: int = DEFAULT_LIMIT

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "modality", tuple(self.modality))
        if not self.terms and not self.modality:
            raise EmptyQuery("query has no terms and no modality tokens")
        if self.limit < 1:
            raise EmptyQuery(f"limit must be positive, got {self.limit}")


def generate_query(
    issue: str,
    jurisdiction: str | None = None,
    lexicon: Lexicon | None = None,
    limit: int = DEFAULT_LIMIT,
) -> SearchQuery:
    """Deterministically derive a SearchQuery from a legal-issue sentence.

    Tokens whose stem is in the modality lexicon become modality tokens
    (canonical spelling); stopwords are dropped; everything else is
    stemmed into a term.  Raises EmptyQuery when nothing survives.
    """
    lexicon = lexicon or Lexicon()
    terms: list[str] = []
    modality: list[str] = []
    for token in tokenize(issue):
        canonical = lexicon.canonical_modality(token)
        if canonical is not None:
            if canonical not in modality:
                modality.append(canonical)
        elif token not in lexicon.stopwords:
            stemmed = stem(token)
            if stemmed not in terms:
                terms.append(stemmed)
    if not terms and not modality:
        raise EmptyQuery(f"nothing searchable in issue: {issue!r}")
    return SearchQuery(tuple(terms), tuple(modality), jurisdiction, limit)


_KEYWORDS = ("find", "modality", "in", "limit")


def parse_query_text(text: str, lexicon: Lexicon | None = None) -> SearchQuery:
    """Parse the mini query language into a normalized SearchQuery."""
    lexicon = lexicon or Lexicon()
    words = text.split()
    positions: list[int] = []
    cursor = 0
    for word in words:
        positions.append(text.index(word, cursor))
        cursor = text.index(word, cursor) + len(word)

    if not words:
        raise QuerySyntaxError("empty query", 0)
    if words[0].lower() != "find":
        raise QuerySyntaxError(f"expected FIND, got {words[0]!r}", positions[0])

    sections: dict[str, list[str]] = {"find": []}
    section_order = ["find"]
    current = "find"
    for word, pos in zip(words[1:], positions[1:]):
        lowered = word.lower()
        if lowered in _KEYWORDS:
            if lowered == "find":
                raise QuerySyntaxError("FIND may appear only once", pos)
            if lowered in sections:
                raise QuerySyntaxError(f"duplicate keyword {word!r}", pos)
            if _KEYWORDS.index(lowered) < _KEYWORDS.index(current):
                raise QuerySyntaxError(f"keyword {word!r} out of order", pos)
            sections[lowered] = []
            section_order.append(lowered)
            current = lowered
        else:
            sections[current].append(word)

    if not sections["find"]:
        raise QuerySyntaxError("FIND requires at least one term", len(text))

    terms: list[str] = []
    modality: list[str] = []
    for raw in sections["find"]:
        token = raw.lower()
        canonical = lexicon.canonical_modality(token)
        if canonical is not None:
            if canonical not in modality:
                modality.append(canonical)
        elif token not in lexicon.stopwords:
            stemmed = stem(token)
            if stemmed not in terms:
                terms.append(stemmed)

    for raw in sections.get("modality", []):
        canonical = lexicon.canonical_modality(raw.lower())
        if canonical is None:
            raise QuerySyntaxError(
                f"unknown modality token {raw!r}", text.lower().index(raw.lower())
            )
        if canonical not in modality:
            modality.append(canonical)
    if "modality" in sections and not sections["modality"]:
        raise QuerySyntaxError("MODALITY requires at least one token", len(text))

    jurisdiction = None
    if "in" in sections:
        codes = sections["in"]
        if len(codes) != 1 or len(codes[0]) != 2 or not codes[0].isalpha():
            raise QuerySyntaxError("IN requires one two-letter country code", len(text))
        jurisdiction = codes[0].lower()

    limit = DEFAULT_LIMIT
    if "limit" in sections:
        values = sections["limit"]
        if len(values) != 1 or not values[0].isdigit() or int(values[0]) < 1:
            raise QuerySyntaxError("LIMIT requires one positive integer", len(text))
        limit = int(values[0])

    if not terms and not modality:
        raise EmptyQuery(f"nothing searchable in query: {text!r}")
    return SearchQuery(tuple(terms), tuple(modality), jurisdiction, limit)
