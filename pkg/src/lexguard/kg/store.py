"""In-memory fragment store with triple export, the graph behind the service.

The store maps fragment ids to fragments and derives a fixed triple
vocabulary from them: hasText, hasTitle, partOf, cites, inJurisdiction,
inForceFrom, inForceTo, hasTopic.  The tab-separated triple export is
the persistence format; exporting a store and re-ingesting the export
reproduces the store exactly.

Concurrency: readers take a reference to the current fragment map and
never see partial state; ingest rebuilds the map under a writer lock and
publishes it with a single atomic assignment.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, replace
from datetime import date
from typing import Iterable, Iterator

from ..errors import ConflictingFragment, FragmentNotFound, MalformedDocument
from .documents import LegalFragment, LegislationDocument, with_derived_parent
from .ids import FragmentId

PREDICATES = (
    "hasText",
    "hasTitle",
    "partOf",
    "cites",
    "inJurisdiction",
    "inForceFrom",
    "inForceTo",
    "hasTopic",
)


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: str
    object: str
    object_is_literal: bool

    def line(self) -> str:
        obj = json.dumps(self.object, ensure_ascii=False) if self.object_is_literal else self.object
        return f"{self.subject}\t{self.predicate}\t{obj}"


@dataclass(frozen=True)
class IngestReport:
    fragments_added: int
    triples_added: int
    warnings: tuple[str, ...] = ()


def _normalize(fragment: LegalFragment) -> LegalFragment:
    """Canonical stored form: derived parent, sorted unique cites and topics."""
    fragment = with_derived_parent(fragment)
    cites = tuple(sorted(set(fragment.cites), key=lambda c: c.text))
    topics = tuple(sorted(set(fragment.topics)))
    return replace(fragment, cites=cites, topics=topics)


def fragment_triples(fragment: LegalFragment) -> list[Triple]:
    subject = fragment.id.text
    triples = [
        Triple(subject, "hasText", fragment.text, True),
        Triple(subject, "inJurisdiction", fragment.jurisdiction, True),
        Triple(subject, "inForceFrom", fragment.in_force_from.isoformat(), True),
    ]
    if fragment.title is not None:
        triples.append(Triple(subject, "hasTitle", fragment.title, True))
    if fragment.in_force_to is not None:
        triples.append(Triple(subject, "inForceTo", fragment.in_force_to.isoformat(), True))
    if fragment.parent is not None:
        triples.append(Triple(subject, "partOf", fragment.parent.text, False))
    for cited in fragment.cites:
        triples.append(Triple(subject, "cites", cited.text, False))
    for topic in fragment.topics:
        triples.append(Triple(subject, "hasTopic", topic, True))
    return triples


class KGStore:
    """Queryable collection of legal fragments."""

    def __init__(self):
        self._fragments: dict[FragmentId, LegalFragment] = {}
        self._write_lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._fragments)

    def fragments(self) -> list[LegalFragment]:
        """Snapshot of all fragments, sorted by id."""
        current = self._fragments
        return [current[k] for k in sorted(current, key=lambda i: i.text)]

    def jurisdictions(self) -> set[str]:
        return {f.jurisdiction for f in self._fragments.values()}

    def ingest(self, doc: LegislationDocument) -> IngestReport:
        """Insert a validated document.  Idempotent per fragment.

        Raises ConflictingFragment when an id is already stored with
        different content.  Cross-references to fragments that are not
        (yet) in the store are reported as warnings, not errors.
        """
        with self._write_lock:
            current = dict(self._fragments)
            added = 0
            triples_added = 0
            for fragment in doc.fragments:
                fragment = _normalize(fragment)
                existing = current.get(fragment.id)
                if existing is not None:
                    if existing != fragment:
                        raise ConflictingFragment(
                            f"fragment {fragment.id} already stored with different content"
                        )
                    continue
                current[fragment.id] = fragment
                added += 1
                triples_added += len(fragment_triples(fragment))
            warnings = []
            for fragment in doc.fragments:
                for cited in _normalize(fragment).cites:
                    if cited not in current:
                        warnings.append(f"pending reference {cited.text}")
            self._fragments = current
        return IngestReport(added, triples_added, tuple(warnings))

    def get_fragment(self, fragment_id: FragmentId) -> LegalFragment:
        try:
            return self._fragments[fragment_id]
        except KeyError:
            raise FragmentNotFound(fragment_id) from None

    def __contains__(self, fragment_id: FragmentId) -> bool:
        return fragment_id in self._fragments

    def resolve_references(self, fragment_id: FragmentId) -> list[LegalFragment]:
        """Fragments one cites-edge away, in id order; pending ones skipped."""
        current = self._fragments
        try:
            fragment = current[fragment_id]
        except KeyError:
            raise FragmentNotFound(fragment_id) from None
        return [current[c] for c in fragment.cites if c in current]

    def descendants(self, fragment_id: FragmentId) -> list[LegalFragment]:
        """Stored fragments strictly below the given id, in id order."""
        current = self._fragments
        found = [f for i, f in current.items() if fragment_id.is_ancestor_of(i)]
        return sorted(found, key=lambda f: f.id.text)

    # --- triple export / import ----------------------------------------------

    def export_triples(self) -> Iterator[str]:
        """All triples as text lines, deterministically ordered."""
        triples: list[Triple] = []
        for fragment in self._fragments.values():
            triples.extend(fragment_triples(fragment))
        triples.sort(key=lambda t: (t.subject, t.predicate, t.object))
        for triple in triples:
            yield triple.line()

    def export_text(self) -> str:
        lines = list(self.export_triples())
        return "\n".join(lines) + ("\n" if lines else "")

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(self.export_text())

    @classmethod
    def from_triples(cls, lines: Iterable[str]) -> "KGStore":
        """Rebuild a store from an export; inverse of export_triples."""
        by_subject: dict[str, dict[str, list[str]]] = {}
        for number, raw in enumerate(lines, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise MalformedDocument(f"triple line {number}: expected 3 columns")
            subject, predicate, obj = parts
            if predicate not in PREDICATES:
                raise MalformedDocument(f"triple line {number}: unknown predicate {predicate!r}")
            if obj.startswith('"'):
                try:
                    obj = json.loads(obj)
                except json.JSONDecodeError:
                    raise MalformedDocument(f"triple line {number}: bad literal") from None
            by_subject.setdefault(subject, {}).setdefault(predicate, []).append(obj)

        store = cls()
        fragments: dict[FragmentId, LegalFragment] = {}
        for subject, props in by_subject.items():
            fid = FragmentId.parse(subject)
            try:
                text = props["hasText"][0]
                in_force_from = date.fromisoformat(props["inForceFrom"][0])
                jurisdiction = props["inJurisdiction"][0]
            except KeyError as exc:
                raise MalformedDocument(f"subject {subject}: missing {exc}") from None
            fragments[fid] = LegalFragment(
                id=fid,
                text=text,
                jurisdiction=jurisdiction,
                in_force_from=in_force_from,
                title=props.get("hasTitle", [None])[0],
                in_force_to=(
                    date.fromisoformat(props["inForceTo"][0]) if "inForceTo" in props else None
                ),
                parent=(
                    FragmentId.parse(props["partOf"][0]) if "partOf" in props else None
                ),
                cites=tuple(
                    sorted((FragmentId.parse(c) for c in props.get("cites", [])),
                           key=lambda c: c.text)
                ),
                topics=tuple(sorted(props.get("hasTopic", []))),
            )
        store._fragments = fragments
        return store

    @classmethod
    def load(cls, path) -> "KGStore":
        with open(path, "r", encoding="utf-8") as handle:
            return cls.from_triples(handle)
