"""Knowledge-graph layer: ids, document parsing, store, triples."""

import json
import threading
from datetime import date

import pytest

from conftest import S82_1, S82_1A, S82_1B, S84, S85
from lexguard.errors import (
    ConflictingFragment,
    FragmentNotFound,
    MalformedDocument,
    SchemaViolation,
)
from lexguard.kg.documents import LegalFragment, parse_legislation, serialize_document
from lexguard.kg.ids import FragmentId
from lexguard.kg.store import KGStore


class TestFragmentId:
    def test_parse_canonical(self):
        fid = FragmentId.parse(S82_1)
        assert fid.jurisdiction == "gb"
        assert fid.act_slug == "finance-no2-act"
        assert fid.year == 2023
        assert fid.path == (
            ("part", "2"), ("chapter", "5"), ("section", "82"), ("subsection", "1")
        )

    def test_round_trip(self):
        for text in (S82_1, S82_1A, S82_1B, S84, "gb/finance-no2-act/2023"):
            fid = FragmentId.parse(text)
            assert fid.text == text
            assert FragmentId.parse(fid.text) == fid

    def test_bare_labels_are_positional(self):
        fid = FragmentId.parse(S82_1B)
        assert fid.path[-2:] == (("subsection", "1"), ("paragraph", "b"))

    def test_named_levels_accepted_and_normalized(self):
        named = "gb/finance-no2-act/2023/part/2/chapter/5/section/82/subsection/1"
        assert FragmentId.parse(named).text == S82_1

    def test_parent_is_derived_prefix(self):
        fid = FragmentId.parse(S82_1)
        assert fid.parent.text == "gb/finance-no2-act/2023/part/2/chapter/5/section/82"
        assert FragmentId.parse("gb/finance-no2-act/2023").parent is None

    def test_section_prefix(self):
        assert FragmentId.parse(S82_1B).section_prefix().text.endswith("/section/82")
        assert FragmentId.parse("gb/finance-no2-act/2023/part/2").section_prefix() is None

    def test_ordering_is_lexicographic_on_text(self):
        ids = [FragmentId.parse(t) for t in (S84, S82_1, S82_1B, S82_1A)]
        assert [i.text for i in sorted(ids)] == sorted(t for t in (S84, S82_1, S82_1B, S82_1A))

    @pytest.mark.parametrize(
        "bad",
        [
            "gb/finance-no2-act",  # too short
            "gbr/finance-no2-act/2023",  # bad jurisdiction
            "gb/finance-no2-act/20x3",  # bad year
            "gb/finance-no2-act/2023/section/82/part/2",  # out of order
            "gb/finance-no2-act/2023/part/2/part/3",  # repeated level
            "gb/finance-no2-act/2023/2",  # bare label without context
            "gb/finance-no2-act/2023/section",  # level without label
        ],
    )
    def test_invalid_ids_rejected(self, bad):
        with pytest.raises(SchemaViolation):
            FragmentId.parse(bad)

    def test_paragraph_may_nest_once_more(self):
        fid = FragmentId.parse(S82_1B + "/i/a")
        levels = [level for level, _ in fid.path]
        assert levels.count("point") == 2


class TestParseLegislation:
    def test_fixture_holds_verbatim_statute_text(self, finance_doc):
        fragment = next(f for f in finance_doc.fragments if f.id.text == S82_1)
        assert fragment.text == (
            "A person may not produce alcoholic products on any premises unless—"
        )

    def test_document_order_preserved(self, finance_doc):
        assert [f.id.text for f in finance_doc.fragments] == [S82_1, S82_1A, S82_1B, S84]

    def test_empty_act_rejected(self):
        doc = {"act": {"title": "t", "jurisdiction": "gb", "year": 2020,
                       "enacted": "2020-01-01"}, "fragments": []}
        with pytest.raises(SchemaViolation, match="empty act"):
            parse_legislation(json.dumps(doc).encode())

    def test_declared_dangling_parent_rejected(self):
        doc = {
            "act": {"title": "t", "jurisdiction": "gb", "year": 2020, "enacted": "2020-01-01"},
            "fragments": [{
                "id": "gb/test-act/2020/section/1",
                "text": "x",
                "parent": "gb/test-act/2020",
                "in_force_from": "2020-01-01",
            }],
        }
        with pytest.raises(SchemaViolation, match="gb/test-act/2020"):
            parse_legislation(json.dumps(doc).encode())

    def test_duplicate_id_rejected(self):
        fragment = {"id": "gb/test-act/2020/section/1", "text": "x",
                    "in_force_from": "2020-01-01"}
        doc = {"act": {"title": "t", "jurisdiction": "gb", "year": 2020,
                       "enacted": "2020-01-01"}, "fragments": [fragment, dict(fragment)]}
        with pytest.raises(SchemaViolation, match="duplicate"):
            parse_legislation(json.dumps(doc).encode())

    def test_syntax_error_names_offset(self):
        with pytest.raises(MalformedDocument, match="offset"):
            parse_legislation(b'{"act": ')

    def test_non_utf8_rejected(self):
        with pytest.raises(MalformedDocument, match="UTF-8"):
            parse_legislation(b"\xff\xfe{}")

    def test_cross_jurisdiction_cite_rejected(self):
        doc = {
            "act": {"title": "t", "jurisdiction": "gb", "year": 2020, "enacted": "2020-01-01"},
            "fragments": [{
                "id": "gb/test-act/2020/section/1",
                "text": "x",
                "cites": ["fr/other-act/2019/section/2"],
                "in_force_from": "2020-01-01",
            }],
        }
        with pytest.raises(SchemaViolation, match="jurisdiction"):
            parse_legislation(json.dumps(doc).encode())

    def test_in_force_interval_checked(self):
        doc = {
            "act": {"title": "t", "jurisdiction": "gb", "year": 2020, "enacted": "2020-01-01"},
            "fragments": [{
                "id": "gb/test-act/2020/section/1",
                "text": "x",
                "in_force_from": "2020-06-01",
                "in_force_to": "2020-01-01",
            }],
        }
        with pytest.raises(SchemaViolation, match="in_force_to"):
            parse_legislation(json.dumps(doc).encode())

    def test_serialize_round_trip(self, finance_doc, finance_doc_citing_s85):
        for doc in (finance_doc, finance_doc_citing_s85):
            assert parse_legislation(serialize_document(doc)) == doc


class TestIngest:
    def test_fixture_counts(self, finance_doc):
        store = KGStore()
        report = store.ingest(finance_doc)
        assert report.fragments_added == len(finance_doc.fragments) == 4
        assert report.warnings == ()
        assert report.triples_added == len(list(store.export_triples()))

    def test_idempotent(self, finance_doc):
        store = KGStore()
        store.ingest(finance_doc)
        before = store.export_text()
        report = store.ingest(finance_doc)
        assert report.fragments_added == 0
        assert report.triples_added == 0
        assert store.export_text() == before

    def test_pending_reference_warning(self, finance_doc_citing_s85):
        store = KGStore()
        report = store.ingest(finance_doc_citing_s85)
        assert report.fragments_added == 4
        assert report.warnings == (f"pending reference {S85}",)

    def test_conflicting_text_rejected(self, finance_doc):
        store = KGStore()
        store.ingest(finance_doc)
        raw = json.loads(serialize_document(finance_doc))
        raw["fragments"][0]["text"] = "something else entirely"
        with pytest.raises(ConflictingFragment):
            store.ingest(parse_legislation(json.dumps(raw).encode()))

    def test_readers_never_see_partial_document(self, finance_doc):
        store = KGStore()
        observed = set()
        stop = threading.Event()

        def reader():
            while not stop.is_set():
                observed.add(len(store.fragments()))

        thread = threading.Thread(target=reader)
        thread.start()
        try:
            for _ in range(50):
                store.ingest(finance_doc)
        finally:
            stop.set()
            thread.join()
        assert observed <= {0, 4}


class TestGetAndResolve:
    def test_get_fragment_verbatim(self, finance_store):
        fragment = finance_store.get_fragment(FragmentId.parse(S84))
        assert "only for the person's own domestic use" in fragment.text

    def test_unknown_id_not_found(self, finance_store):
        with pytest.raises(FragmentNotFound):
            finance_store.get_fragment(FragmentId.parse("gb/finance-no2-act/2023/part/9"))

    def test_parent_comes_from_hierarchy(self, finance_store):
        fragment = finance_store.get_fragment(FragmentId.parse(S82_1))
        assert fragment.parent.text == "gb/finance-no2-act/2023/part/2/chapter/5/section/82"

    def test_resolve_skips_pending(self, finance_doc_citing_s85):
        store = KGStore()
        store.ingest(finance_doc_citing_s85)
        resolved = store.resolve_references(FragmentId.parse(S82_1B))
        assert [f.id.text for f in resolved] == [S84]

    def test_resolve_empty_cites(self, finance_store):
        assert finance_store.resolve_references(FragmentId.parse(S82_1)) == []

    def test_resolve_after_extension_ingest(self, finance_doc_citing_s85, s85_doc):
        store = KGStore()
        store.ingest(finance_doc_citing_s85)
        store.ingest(s85_doc)
        resolved = store.resolve_references(FragmentId.parse(S82_1B))
        assert [f.id.text for f in resolved] == [S84, S85]

    def test_resolve_unknown_id(self, finance_store):
        with pytest.raises(FragmentNotFound):
            finance_store.resolve_references(FragmentId.parse("gb/finance-no2-act/2023/part/9"))

    def test_resolve_bounded_by_cites(self, finance_store):
        for fragment in finance_store.fragments():
            resolved = finance_store.resolve_references(fragment.id)
            assert len(resolved) <= len(fragment.cites)
            assert all(r.id in fragment.cites for r in resolved)


class TestTriples:
    def test_empty_store_exports_nothing(self):
        assert KGStore().export_text() == ""

    def test_part_of_triple_present(self, finance_store):
        section = "gb/finance-no2-act/2023/part/2/chapter/5/section/82"
        assert f"{S82_1}\tpartOf\t{section}" in finance_store.export_text().splitlines()

    def test_cites_triple_present(self, finance_store):
        assert f"{S82_1B}\tcites\t{S84}" in finance_store.export_text().splitlines()

    def test_export_deterministic(self, finance_store):
        assert finance_store.export_text() == finance_store.export_text()

    def test_export_reingest_fixpoint(self, finance_store, identity_doc):
        finance_store.ingest(identity_doc)
        exported = finance_store.export_text()
        rebuilt = KGStore.from_triples(exported.splitlines())
        assert rebuilt.export_text() == exported
        for fragment in finance_store.fragments():
            assert rebuilt.get_fragment(fragment.id) == fragment

    def test_literals_with_tabs_and_newlines_survive(self):
        fid = FragmentId.parse("gb/test-act/2020/section/1")
        store = KGStore()
        fragment = LegalFragment(
            id=fid, text="line one\n\tline two \"quoted\"", jurisdiction="gb",
            in_force_from=date(2020, 1, 1),
        )
        doc_json = {
            "act": {"title": "t", "jurisdiction": "gb", "year": 2020, "enacted": "2020-01-01"},
            "fragments": [{"id": fid.text, "text": fragment.text,
                           "in_force_from": "2020-01-01"}],
        }
        store.ingest(parse_legislation(json.dumps(doc_json).encode()))
        rebuilt = KGStore.from_triples(store.export_text().splitlines())
        assert rebuilt.get_fragment(fid).text == fragment.text

    def test_hierarchy_is_a_forest(self, full_store):
        for fragment in full_store.fragments():
            seen = set()
            node = fragment.parent
            while node is not None:
                assert node not in seen
                seen.add(node)
                node = node.parent
