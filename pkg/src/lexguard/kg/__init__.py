"""Legal knowledge graph: fragment model, ingestion, and triple store."""

from .documents import (
    ActMetadata,
    LegalFragment,
    LegislationDocument,
    parse_legislation,
    serialize_document,
)
from .ids import LEVELS, FragmentId
from .store import PREDICATES, IngestReport, KGStore, Triple

__all__ = [
    "ActMetadata",
    "FragmentId",
    "IngestReport",
    "KGStore",
    "LEVELS",
    "LegalFragment",
    "LegislationDocument",
    "PREDICATES",
    "Triple",
    "parse_legislation",
    "serialize_document",
]
