"""DOI normalization, reference extraction, and table parsing."""

import random

import pytest

from citemap.errors import EmptyFile, MissingHeader, NotADoi
from citemap.ingest import (
    extract_reference_dois,
    normalize_doi,
    parse_corpus_csv,
    parse_seed_table,
)


class TestNormalizeDoi:
    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("10.1000/abc", "10.1000/abc"),
            ("10.1000/ABC", "10.1000/abc"),
            ("  10.1000/abc  ", "10.1000/abc"),
            ("https://doi.org/10.1000/abc", "10.1000/abc"),
            ("http://doi.org/10.1000/abc", "10.1000/abc"),
            ("https://dx.doi.org/10.1000/abc", "10.1000/abc"),
            ("http://dx.doi.org/10.1000/abc", "10.1000/abc"),
            ("doi:10.1000/abc", "10.1000/abc"),
            ("DOI:10.1000/abc", "10.1000/abc"),
            ("HTTPS://DOI.ORG/10.1000/abc", "10.1000/abc"),
            ("https://doi.org/10.1000/ABC%2F1", "10.1000/abc/1"),
            ("10.1000/abc.", "10.1000/abc"),
            ("10.1000/abc,", "10.1000/abc"),
            ("10.1000/abc;", "10.1000/abc"),
            ("10.1000/abc)", "10.1000/abc"),
            ("10.1000/abc.,;)", "10.1000/abc"),
            ("10.1000/v1.2", "10.1000/v1.2"),  # inner dots survive
        ],
    )
    def test_normalizes(self, raw, expected):
        assert normalize_doi(raw) == expected

    @pytest.mark.parametrize(
        "raw",
        [
            "",
            "   ",
            "not a doi",
            "10.1/abc",  # registrant too short
            "10.1000/",
            "10.1000",
            "https://example.com/10.1000/abc",
            "10.1000/a b",
        ],
    )
    def test_rejects(self, raw):
        with pytest.raises(NotADoi):
            normalize_doi(raw)

    def test_idempotent_on_messy_inputs(self):
        rng = random.Random(7)
        prefixes = ["", "doi:", "https://doi.org/", "http://dx.doi.org/", "DOI:"]
        for _ in range(200):
            suffix = "".join(
                rng.choice("abcXYZ0189.-_%2F") for _ in range(rng.randint(1, 12))
            )
            raw = (
                rng.choice(["", " ", "  "])
                + rng.choice(prefixes)
                + f"10.{rng.randint(1000, 99999)}/{suffix}"
                + rng.choice(["", ".", ",", ";", ")", " "])
            )
            try:
                once = normalize_doi(raw)
            except NotADoi:
                continue
            assert normalize_doi(once) == once

    def test_percent_decoding_applies_once_behind_prefix(self):
        # %252f is a percent-encoded %2f; one decoding round must not cascade
        assert normalize_doi("https://doi.org/10.1000/a%252fb") == "10.1000/a%2fb"
        assert normalize_doi("10.1000/a%2fb") == "10.1000/a%2fb"


class TestExtractReferenceDois:
    def test_bracketed_quoted_list(self):
        cell = "['10.1000/a', \"https://doi.org/10.1000/B\"]"
        assert extract_reference_dois(cell) == ["10.1000/a", "10.1000/b"]

    def test_delimited_fragments(self):
        cell = "10.1000/a; junk | doi:10.1000/b;10.1000/a"
        assert extract_reference_dois(cell) == ["10.1000/a", "10.1000/b"]

    def test_regex_scan_fallback(self):
        cell = "see 10.1000/a and also 10.2000/b/v2 among others"
        assert extract_reference_dois(cell) == ["10.1000/a", "10.2000/b/v2"]

    def test_first_successful_strategy_wins(self):
        # Valid bracketed list: the scan would also find 10.9999/zz, but the
        # list strategy already yielded a DOI so later strategies never run.
        cell = "['10.1000/a', 'not a doi 10.9999/zz']"
        assert extract_reference_dois(cell) == ["10.1000/a"]

    def test_deduplicates_preserving_first_seen_order(self):
        cell = "10.1000/b;10.1000/a;10.1000/b"
        assert extract_reference_dois(cell) == ["10.1000/b", "10.1000/a"]

    @pytest.mark.parametrize("cell", ["", "   ", "no identifiers here", "[]"])
    def test_no_dois_yields_empty_list(self, cell):
        assert extract_reference_dois(cell) == []


SEED_HEADER = "title,source,url,doi,query,retrieved_on\n"


class TestParseSeedTable:
    def test_parses_rows_and_reports_errors(self, tmp_path):
        table = tmp_path / "seeds.csv"
        table.write_text(
            SEED_HEADER
            + "Paper A,scholar,https://x.org/a,10.1000/a,projection,2024-01-02\n"
            + ",scholar,,10.1000/b,projection,\n"  # no title
            + "Paper C,,,,projection,\n"  # fine: DOI-less row is still a seed
        )
        entries, errors = parse_seed_table(table)
        assert [e.title for e in entries] == ["Paper A", "Paper C"]
        assert entries[0].raw_doi == "10.1000/a"
        assert entries[1].raw_doi is None
        assert len(errors) == 1
        assert errors[0].row_number == 2
        assert "title" in errors[0].reason

    def test_default_query_fills_missing_query(self, tmp_path):
        table = tmp_path / "seeds.csv"
        table.write_text("title,doi\nPaper A,10.1000/a\n")
        entries, errors = parse_seed_table(table, default_query="projection mapping")
        assert not errors
        assert entries[0].query == "projection mapping"

    def test_missing_query_without_default_is_row_error(self, tmp_path):
        table = tmp_path / "seeds.csv"
        table.write_text("title,doi\nPaper A,10.1000/a\n")
        entries, errors = parse_seed_table(table)
        assert not entries
        assert errors[0].reason == "missing query"

    def test_column_map_renames_columns(self, tmp_path):
        table = tmp_path / "seeds.csv"
        table.write_text(
            "Item Title,Link,Search\nPaper A,https://doi.org/10.1000/a,projection\n"
        )
        entries, _ = parse_seed_table(
            table,
            column_map={"title": "Item Title", "doi": "Link", "query": "Search"},
        )
        assert entries[0].title == "Paper A"
        assert entries[0].raw_doi == "https://doi.org/10.1000/a"

    def test_mapped_column_missing_from_header_raises(self, tmp_path):
        table = tmp_path / "seeds.csv"
        table.write_text("title,doi\nPaper A,10.1000/a\n")
        with pytest.raises(MissingHeader):
            parse_seed_table(table, column_map={"doi": "DOI Number"})

    def test_empty_file_raises(self, tmp_path):
        table = tmp_path / "seeds.csv"
        table.write_text("")
        with pytest.raises(EmptyFile):
            parse_seed_table(table)

    def test_header_only_yields_nothing(self, tmp_path):
        table = tmp_path / "seeds.csv"
        table.write_text(SEED_HEADER)
        entries, errors = parse_seed_table(table)
        assert entries == [] and errors == []

    def test_alternate_delimiter(self, tmp_path):
        table = tmp_path / "seeds.tsv"
        table.write_text("title\tdoi\tquery\nPaper A\t10.1000/a\tprojection\n")
        entries, _ = parse_seed_table(table, delimiter="\t")
        assert entries[0].raw_doi == "10.1000/a"


class TestParseCorpusCsv:
    def test_reads_back_written_corpus(self, tmp_path):
        from citemap.exporters import write_corpus_csv
        from citemap.model import ArticleRecord, Corpus

        corpus = Corpus(max_depth=1)
        corpus.insert(
            ArticleRecord(
                doi="10.1000/a",
                title="A, with commas",
                authors=("X Y", "Z W"),
                year=2001,
                subjects=("graphics",),
                references=("10.1000/b",),
                resolved=True,
            )
        )
        corpus.insert(ArticleRecord.stub("10.1000/b", depth=1))
        path = tmp_path / "corpus.csv"
        path.write_text(write_corpus_csv(corpus), encoding="utf-8")
        loaded = parse_corpus_csv(path)
        assert loaded.articles == corpus.articles

    def test_missing_column_raises(self, tmp_path):
        path = tmp_path / "corpus.csv"
        path.write_text("doi,title\n10.1000/a,T\n")
        with pytest.raises(MissingHeader):
            parse_corpus_csv(path)
