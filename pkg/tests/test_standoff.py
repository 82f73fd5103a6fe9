"""
Tests for the standoff (.txt/.ann) reader and writer.
"""

import numpy as np
import pytest

from protocol_ner.core.errors import OffsetError, OverlapError, StandoffParseError
from protocol_ner.corpus.models import EntityMention, ProtocolDocument
from protocol_ner.corpus.standoff import (
    parse_standoff,
    read_standoff_pair,
    write_standoff,
    write_standoff_pair,
)
from protocol_ner.corpus.synthetic import generate_protocol


class TestParseStandoff:
    def test_offset_example(self):
        document, mentions = parse_standoff("Put 3.68 g of NaCl", "T1\tAction 0 3\tPut\n", "p1")
        assert document.id == "p1"
        assert mentions == [EntityMention("Action", 0, 3, "Put")]

    def test_empty_ann(self):
        document, mentions = parse_standoff("Put 3.68 g of NaCl", "", "p1")
        assert document.text == "Put 3.68 g of NaCl"
        assert mentions == []

    def test_surface_mismatch(self):
        with pytest.raises(StandoffParseError) as info:
            parse_standoff("Put 3.68 g of NaCl", "T1\tAction 0 3\tPit\n", "p1")
        assert info.value.annotation_id == "T1"

    def test_offsets_out_of_range(self):
        with pytest.raises(StandoffParseError):
            parse_standoff("Put", "T1\tAction 0 9\tPut\n", "p1")

    def test_malformed_line_reports_line_number(self):
        with pytest.raises(StandoffParseError) as info:
            parse_standoff("Put", "T1\tAction 0 3\tPut\nT2 Action 0 3 Put\n", "p1")
        assert info.value.line_number == 2

    def test_discontinuous_span_rejected(self):
        with pytest.raises(StandoffParseError):
            parse_standoff("Put it in", "T1\tAction 0 3;7 9\tPut in\n", "p1")

    def test_non_entity_lines_skipped(self):
        ann = "T1\tAction 0 3\tPut\nR1\tActs-on Arg1:T1 Arg2:T2\n#1\tAnnotatorNotes T1\tnote\nA1\tNegated T1\n"
        _, mentions = parse_standoff("Put 3.68 g", ann, "p1")
        assert [m.label for m in mentions] == ["Action"]

    def test_offsets_count_code_points(self):
        text = "Incubate at 37°C for 5 min"
        _, mentions = parse_standoff(text, "T1\tTemperature 12 16\t37°C\n", "p1")
        assert mentions[0].surface == "37°C"
        assert len(text.encode("utf-8")) > len(text)

    def test_steps_follow_lines(self):
        document, _ = parse_standoff("Title\nAdd water.\nMix.\n", "", "p1")
        assert document.title == "Title"
        assert [document.step_text(i) for i in range(len(document.steps))] == ["Title", "Add water.", "Mix."]


class TestWriteStandoff:
    def test_no_mentions(self):
        document = ProtocolDocument.from_text("p1", "Put 3.68 g of NaCl")
        assert write_standoff(document, []) == ("Put 3.68 g of NaCl", "")

    def test_ids_follow_mention_order(self):
        document = ProtocolDocument.from_text("p1", "Put 3.68 g of NaCl")
        mentions = [EntityMention("Action", 0, 3, "Put"), EntityMention("Reagent", 14, 18, "NaCl")]
        _, ann = write_standoff(document, mentions)
        assert ann == "T1\tAction 0 3\tPut\nT2\tReagent 14 18\tNaCl\n"

    def test_overlap_rejected_unless_allowed(self):
        document = ProtocolDocument.from_text("p1", "lysis buffer")
        mentions = [EntityMention("Reagent", 0, 12, "lysis buffer"), EntityMention("Method", 0, 5, "lysis")]
        with pytest.raises(OverlapError):
            write_standoff(document, mentions)
        _, ann = write_standoff(document, mentions, allow_overlap=True)
        assert ann.count("\n") == 2

    def test_mention_across_line_break_rejected(self):
        document = ProtocolDocument.from_text("p1", "ab\ncd")
        with pytest.raises(OffsetError):
            write_standoff(document, [EntityMention("Action", 0, 5, "ab\ncd")])

    def test_random_documents_round_trip(self):
        rng = np.random.default_rng(5)
        for i in range(100):
            document, mentions = generate_protocol(f"doc_{i}", rng)
            text, ann = write_standoff(document, mentions)
            assert parse_standoff(text, ann, document.id) == (document, mentions)


def test_pair_files_round_trip(tmp_path):
    document = ProtocolDocument.from_text("p1", "Wash the pellet with 70% ethanol.\n")
    mentions = [
        EntityMention.from_text(document.text, "Action", 0, 4),
        EntityMention.from_text(document.text, "Reagent", 21, 32),
    ]
    txt_path, ann_path = write_standoff_pair(tmp_path, document, mentions)
    assert ann_path.name == "p1.ann"
    assert read_standoff_pair(txt_path) == (document, mentions)


def test_missing_ann_means_no_mentions(tmp_path):
    (tmp_path / "p1.txt").write_text("Add water.\n", encoding="utf-8")
    document, mentions = read_standoff_pair(tmp_path / "p1.txt")
    assert document.text == "Add water.\n"
    assert mentions == []


def test_sample_pair(sample_dir):
    document, mentions = read_standoff_pair(sample_dir / "protocol_001.txt")
    assert document.title == "DNA extraction from yeast"
    assert len(mentions) == 13
    assert mentions[0] == EntityMention("Action", 26, 29, "Add")
    assert mentions[5] == EntityMention("Temperature", 80, 84, "37°C")


def test_annotation_file_not_utf8(tmp_path):
    (tmp_path / "p1.txt").write_text("Add water\nMix\n", encoding="utf-8")
    (tmp_path / "p1.ann").write_bytes(b"T1\tAction 0 3\tAdd\nT2\tAction 10 13\tM\xe9x\n")
    with pytest.raises(StandoffParseError) as info:
        read_standoff_pair(tmp_path / "p1.txt")
    assert info.value.line_number == 2
    assert "p1.ann" in str(info.value)
