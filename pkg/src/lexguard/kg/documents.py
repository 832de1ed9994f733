"""Legislation documents and the native JSON ingestion format.

The native format is a single JSON object::

    {
      "act": {"title": ..., "jurisdiction": ..., "year": ..., "enacted": ...},
      "fragments": [
        {"id": ..., "text": ..., "title"?, "parent"?, "cites": [],
         "topics": [], "in_force_from": ..., "in_force_to"?},
        ...
      ]
    }

Dates are ISO-8601 (YYYY-MM-DD).  Fragment order in the file is document
order and is preserved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from datetime import date

from ..errors import MalformedDocument, SchemaViolation
from .ids import FragmentId


@dataclass(frozen=True)
class LegalFragment:
    """One granular unit of legislation, verbatim."""

    id: FragmentId
    text: str
    jurisdiction: str
    in_force_from: date
    title: str | None = None
    in_force_to: date | None = None
    parent: FragmentId | None = None
    cites: tuple[FragmentId, ...] = ()
    topics: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cites", tuple(self.cites))
        object.__setattr__(self, "topics", tuple(self.topics))
        if not self.text:
            raise SchemaViolation(f"fragment {self.id} has empty text")
        if self.jurisdiction != self.id.jurisdiction:
            raise SchemaViolation(
                f"fragment {self.id} jurisdiction field {self.jurisdiction!r} "
                f"does not match its id"
            )
        if self.parent is not None and not self.parent.is_ancestor_of(self.id):
            raise SchemaViolation(
                f"fragment {self.id} parent {self.parent} is not a strict prefix of its id"
            )
        for cited in self.cites:
            if cited.jurisdiction != self.jurisdiction:
                raise SchemaViolation(
                    f"fragment {self.id} cites {cited} in another jurisdiction"
                )
        if self.in_force_to is not None and self.in_force_to < self.in_force_from:
            raise SchemaViolation(
                f"fragment {self.id} in_force_to precedes in_force_from"
            )
        for topic in self.topics:
            if topic != topic.lower() or not topic.strip():
                raise SchemaViolation(
                    f"fragment {self.id} topic {topic!r} must be a lowercase keyword"
                )


@dataclass(frozen=True)
class ActMetadata:
    title: str
    jurisdiction: str
    year: int
    enacted: date


@dataclass(frozen=True)
class LegislationDocument:
    """A parsed act: metadata plus fragments in document order."""

    act: ActMetadata
    fragments: tuple[LegalFragment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "fragments", tuple(self.fragments))
        if not self.fragments:
            raise SchemaViolation("empty act")
        ids = [f.id for f in self.fragments]
        seen: set[FragmentId] = set()
        for fid in ids:
            if fid in seen:
                raise SchemaViolation(f"duplicate fragment id {fid}")
            seen.add(fid)
        slugs = {f.id.act_slug for f in self.fragments}
        if len(slugs) > 1:
            raise SchemaViolation(f"document mixes acts: {sorted(slugs)}")
        for fragment in self.fragments:
            if fragment.parent is not None and fragment.parent not in seen:
                raise SchemaViolation(
                    f"fragment {fragment.id} declares dangling parent {fragment.parent}"
                )
            fid = fragment.id
            if (fid.jurisdiction, fid.year) != (self.act.jurisdiction, self.act.year):
                raise SchemaViolation(
                    f"fragment {fid} does not belong to act "
                    f"{self.act.jurisdiction}/{self.act.year}"
                )


def _parse_date(raw, context: str) -> date:
    if not isinstance(raw, str):
        raise SchemaViolation(f"{context}: date must be an ISO-8601 string")
    try:
        return date.fromisoformat(raw)
    except ValueError:
        raise SchemaViolation(f"{context}: invalid date {raw!r}") from None


def _require(obj: dict, key: str, context: str):
    if key not in obj:
        raise SchemaViolation(f"{context}: missing required field {key!r}")
    return obj[key]


def parse_legislation(data: bytes, format: str = "native-json") -> LegislationDocument:
    """Parse raw document bytes into a validated LegislationDocument.

    Raises MalformedDocument for undecodable or syntactically broken
    input (naming the byte offset), SchemaViolation for structurally
    invalid documents (naming the offending fragment).
    """
    if format != "native-json":
        raise MalformedDocument(f"unsupported format {format!r}")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedDocument(f"document is not UTF-8 at byte {exc.start}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON at offset {exc.pos}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise MalformedDocument("top-level value must be an object")

    act_raw = _require(raw, "act", "document")
    if not isinstance(act_raw, dict):
        raise SchemaViolation("act: must be an object")
    act = ActMetadata(
        title=str(_require(act_raw, "title", "act")),
        jurisdiction=str(_require(act_raw, "jurisdiction", "act")),
        year=int(_require(act_raw, "year", "act")),
        enacted=_parse_date(_require(act_raw, "enacted", "act"), "act.enacted"),
    )

    fragments_raw = _require(raw, "fragments", "document")
    if not isinstance(fragments_raw, list):
        raise SchemaViolation("fragments: must be an array")
    fragments = []
    for index, entry in enumerate(fragments_raw):
        context = f"fragments[{index}]"
        if not isinstance(entry, dict):
            raise SchemaViolation(f"{context}: must be an object")
        fid = FragmentId.parse(str(_require(entry, "id", context)))
        context = str(fid)
        parent = None
        if entry.get("parent") is not None:
            parent = FragmentId.parse(str(entry["parent"]))
        cites = tuple(FragmentId.parse(str(c)) for c in entry.get("cites", []))
        in_force_to = None
        if entry.get("in_force_to") is not None:
            in_force_to = _parse_date(entry["in_force_to"], f"{context}.in_force_to")
        fragments.append(
            LegalFragment(
                id=fid,
                text=str(_require(entry, "text", context)),
                jurisdiction=fid.jurisdiction,
                title=str(entry["title"]) if entry.get("title") is not None else None,
                in_force_from=_parse_date(
                    _require(entry, "in_force_from", context), f"{context}.in_force_from"
                ),
                in_force_to=in_force_to,
                parent=parent,
                cites=cites,
                topics=tuple(str(t) for t in entry.get("topics", [])),
            )
        )
    return LegislationDocument(act=act, fragments=tuple(fragments))


def serialize_document(doc: LegislationDocument) -> bytes:
    """Inverse of parse_legislation for validated documents."""
    fragments = []
    for f in doc.fragments:
        entry: dict = {"id": f.id.text, "text": f.text}
        if f.title is not None:
            entry["title"] = f.title
        if f.parent is not None:
            entry["parent"] = f.parent.text
        entry["cites"] = [c.text for c in f.cites]
        entry["topics"] = list(f.topics)
        entry["in_force_from"] = f.in_force_from.isoformat()
        if f.in_force_to is not None:
            entry["in_force_to"] = f.in_force_to.isoformat()
        fragments.append(entry)
    payload = {
        "act": {
            "title": doc.act.title,
            "jurisdiction": doc.act.jurisdiction,
            "year": doc.act.year,
            "enacted": doc.act.enacted.isoformat(),
        },
        "fragments": fragments,
    }
    return json.dumps(payload, indent=2, ensure_ascii=False).encode("utf-8")


def with_derived_parent(fragment: LegalFragment) -> LegalFragment:
    """Fill in the structural parent when the file did not declare one."""
    if fragment.parent is not None or fragment.id.parent is None:
        return fragment
    return replace(fragment, parent=fragment.id.parent)
