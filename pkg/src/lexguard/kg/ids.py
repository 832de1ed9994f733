"""Hierarchical identifiers for legislation fragments.

An id pins down one granular unit of legislation: jurisdiction, act,
year, and a path of (level, label) steps below the act.  The canonical
text form joins everything with "/", naming the level for part, chapter
and section, and writing the levels below section as bare labels:

    gb/finance-no2-act/2023/part/2/chapter/5/section/82/1

Bare labels after "section" are read positionally as subsection,
paragraph, point (a point may nest one further bare label).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import SchemaViolation

# Hierarchy order; "act" is implied by the jurisdiction/slug/year prefix
# and never appears in a path.
LEVELS = ("act", "part", "chapter", "section", "subsection", "paragraph", "point")

_NAMED_LEVELS = {"part", "chapter", "section"}
_BARE_AFTER = {
    "section": "subsection",
    "subsection": "paragraph",
    "paragraph": "point",
    "point": "point",
}

_JURISDICTION_RE = re.compile(r"^[a-z]{2}$")
_SLUG_RE = re.compile(r"^[a-z0-9][a-z0-9-]*$")
_LABEL_RE = re.compile(r"^[a-z0-9][a-z0-9.-]*$")


@dataclass(frozen=True, order=True)
class FragmentId:
    """Identifier of one legislation fragment.

    Instances sort by canonical text, which also makes result ordering
    across the package deterministic.
    """

    sort_key: str = field(init=False, repr=False)
    jurisdiction: str
    act_slug: str
    year: int
    path: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if not _JURISDICTION_RE.match(self.jurisdiction):
            raise SchemaViolation(
                f"jurisdiction must be a two-letter lowercase code, got {self.jurisdiction!r}"
            )
        if not _SLUG_RE.match(self.act_slug):
            raise SchemaViolation(f"invalid act slug {self.act_slug!r}")
        if self.year < 1000 or self.year > 9999:
            raise SchemaViolation(f"invalid year {self.year!r}")
        object.__setattr__(self, "path", tuple((lv, lb) for lv, lb in self.path))
        self._check_path()
        object.__setattr__(self, "sort_key", self.text)

    def _check_path(self):
        last_index = 0  # "act"
        seen_counts: dict[str, int] = {}
        for level, label in self.path:
            if level not in LEVELS or level == "act":
                raise SchemaViolation(f"unknown path level {level!r}")
            if not _LABEL_RE.match(label) or label in LEVELS:
                raise SchemaViolation(f"invalid path label {label!r}")
            index = LEVELS.index(level)
            seen_counts[level] = seen_counts.get(level, 0) + 1
            allowed_twice = level in ("paragraph", "point")
            if index < last_index or (index == last_index and not allowed_twice):
                raise SchemaViolation(
                    f"path level {level!r} out of hierarchical order in {self.path!r}"
                )
            if seen_counts[level] > (2 if allowed_twice else 1):
                raise SchemaViolation(f"path level {level!r} repeated in {self.path!r}")
            last_index = index

    @property
    def text(self) -> str:
        """Canonical "/"-joined form."""
        parts = [self.jurisdiction, self.act_slug, str(self.year)]
        for level, label in self.path:
            if level in _NAMED_LEVELS:
                parts.append(level)
            parts.append(label)
        return "/".join(parts)

    @classmethod
    def parse(cls, text: str) -> "FragmentId":
        segments = text.strip().split("/")
        if len(segments) < 3:
            raise SchemaViolation(f"fragment id too short: {text!r}")
        jurisdiction, act_slug, year_text = segments[0], segments[1], segments[2]
        try:
            year = int(year_text)
        except ValueError:
            raise SchemaViolation(f"fragment id year is not a number: {text!r}") from None
        path: list[tuple[str, str]] = []
        rest = segments[3:]
        i = 0
        while i < len(rest):
            segment = rest[i]
            if segment in LEVELS:
                if i + 1 >= len(rest):
                    raise SchemaViolation(f"level {segment!r} without a label in {text!r}")
                path.append((segment, rest[i + 1]))
                i += 2
            else:
                if not path or path[-1][0] not in _BARE_AFTER:
                    raise SchemaViolation(
                        f"bare label {segment!r} is ambiguous in {text!r}"
                    )
                path.append((_BARE_AFTER[path[-1][0]], segment))
                i += 1
        return cls(jurisdiction=jurisdiction, act_slug=act_slug, year=year, path=tuple(path))

    @property
    def parent(self) -> "FragmentId | None":
        """The immediate container, derived by dropping the last path step."""
        if not self.path:
            return None
        return FragmentId(self.jurisdiction, self.act_slug, self.year, self.path[:-1])

    def is_ancestor_of(self, other: "FragmentId") -> bool:
        """True when this id is a strict path prefix of ``other`` in the same act."""
        return (
            (self.jurisdiction, self.act_slug, self.year)
            == (other.jurisdiction, other.act_slug, other.year)
            and len(self.path) < len(other.path)
            and other.path[: len(self.path)] == self.path
        )

    def section_prefix(self) -> "FragmentId | None":
        """The id truncated at its section step, or None if above section level."""
        for i, (level, _) in enumerate(self.path):
            if level == "section":
                return FragmentId(self.jurisdiction, self.act_slug, self.year, self.path[: i + 1])
        return None

    def __str__(self) -> str:
        return self.text
