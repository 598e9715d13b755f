import io
import json

import jsonschema
import pytest
from hypothesis import given, strategies as st

from conftest import AUTHORS
from credit_index.indices import e_index, h_index_per_author, rank_authors
from credit_index.ingestion import (
    SCORES_SCHEMA,
    ErrorKind,
    ParseError,
    dataset_to_csv,
    dataset_to_json,
    load_dataset,
    parse_csv,
    parse_json,
    render_number,
    write_scores_json,
)
from credit_index.model import Dataset, PaperRecord, induce_credit_function

HEADER = "paper_id,authors,worth\n"


def csv_bytes(*rows):
    return (HEADER + "".join(r + "\n" for r in rows)).encode()


class TestCsv:
    def test_nominal_row(self):
        d = parse_csv(csv_bytes("p1,alice;bob,10"))
        assert d == Dataset([PaperRecord("p1", ["alice", "bob"], 10)])

    def test_author_whitespace_trimmed(self):
        d = parse_csv(csv_bytes("p1, alice ; bob ,10"))
        assert d.papers[0].authors == {"alice", "bob"}

    def test_fractional_worth(self):
        assert parse_csv(csv_bytes("p2,carol,0.8")).papers[0].worth == 0.8

    def test_header_only(self):
        assert len(parse_csv(HEADER.encode())) == 0

    def test_blank_lines_skipped(self):
        assert len(parse_csv(csv_bytes("p1,a,1", "", "p2,b,2"))) == 2

    def test_accepts_text_and_streams(self):
        text = HEADER + "p1,a,1\n"
        assert parse_csv(text) == parse_csv(io.BytesIO(text.encode())) == parse_csv(io.StringIO(text))

    def test_byte_order_mark(self):
        assert len(parse_csv(b"\xef\xbb\xbf" + csv_bytes("p1,a,1"))) == 1

    @pytest.mark.parametrize(
        "rows, kind, line",
        [
            (["p1,alice,5", "p1,bob,3"], ErrorKind.DUPLICATE_PAPER_ID, 3),
            (["p1,a,1,2"], ErrorKind.MALFORMED_ROW, 2),
            (["p1,a"], ErrorKind.MALFORMED_ROW, 2),
            (["p1,,3"], ErrorKind.EMPTY_AUTHOR_LIST, 2),
            (["p1,a;;b,3"], ErrorKind.MALFORMED_ROW, 2),
            (["p0,x,1", "p1,a;b;a,3"], ErrorKind.DUPLICATE_AUTHOR_IN_PAPER, 3),
            (["p1,a,ten"], ErrorKind.BAD_NUMBER, 2),
            (["p1,a,1e3"], ErrorKind.BAD_NUMBER, 2),
            (["p1,a,1,000"], ErrorKind.MALFORMED_ROW, 2),
            (["p1,a,"], ErrorKind.BAD_NUMBER, 2),
            (["p1,a,-2"], ErrorKind.NEGATIVE_WORTH, 2),
            ([",a,2"], ErrorKind.MALFORMED_ROW, 2),
        ],
    )
    def test_errors(self, rows, kind, line):
        with pytest.raises(ParseError) as info:
            parse_csv(csv_bytes(*rows), name="data.csv")
        err = info.value
        assert err.kind == kind
        assert err.location.line == line
        assert f"data.csv:{line}" in str(err)
        # Everything before the offending line parses cleanly.
        prefix = b"".join(csv_bytes(*rows).splitlines(keepends=True)[: line - 1])
        parse_csv(prefix)

    @pytest.mark.parametrize("text", [b"", b"id,authors,worth\n", b"paper_id,authors\n"])
    def test_bad_header(self, text):
        with pytest.raises(ParseError) as info:
            parse_csv(text)
        assert info.value.kind == ErrorKind.BAD_HEADER
        assert info.value.location.line == 1

    def test_invalid_utf8(self):
        with pytest.raises(ParseError) as info:
            parse_csv(csv_bytes("p1,a,1") + b"p2,\xff,1\n")
        assert info.value.kind == ErrorKind.IO
        assert info.value.location.line == 3

    def test_unreadable_stream(self):
        class Broken(io.RawIOBase):
            def read(self, *args):
                raise OSError("disk on fire")

        with pytest.raises(ParseError) as info:
            parse_csv(Broken())
        assert info.value.kind == ErrorKind.IO

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError) as info:
            load_dataset(tmp_path / "nope.csv")
        assert info.value.kind == ErrorKind.IO


class TestJson:
    def test_nominal(self):
        d = parse_json(b'[{"paper_id":"p1","authors":["a","b"],"worth":3}]')
        assert d == Dataset([PaperRecord("p1", ["a", "b"], 3)])

    def test_empty_array(self):
        assert len(parse_json(b"[]")) == 0

    @pytest.mark.parametrize(
        "records, kind, index",
        [
            ([{"paper_id": "p1", "authors": [], "worth": 3}], ErrorKind.EMPTY_AUTHOR_LIST, 1),
            ([{"paper_id": "p1", "authors": ["a"], "worth": -2}], ErrorKind.NEGATIVE_WORTH, 1),
            ([{"paper_id": "p1", "authors": ["a"], "worth": "3"}], ErrorKind.BAD_NUMBER, 1),
            ([{"paper_id": "p1", "authors": ["a"], "worth": True}], ErrorKind.BAD_NUMBER, 1),
            ([{"paper_id": "p1", "authors": ["a"], "worth": float("nan")}], ErrorKind.BAD_NUMBER, 1),
            ([{"paper_id": "p1", "authors": ["a"]}], ErrorKind.MALFORMED_ROW, 1),
            ([{"paper_id": "p1", "authors": ["a"], "worth": 1, "year": 2017}], ErrorKind.MALFORMED_ROW, 1),
            ([{"paper_id": 1, "authors": ["a"], "worth": 1}], ErrorKind.MALFORMED_ROW, 1),
            ([{"paper_id": "p1", "authors": "a", "worth": 1}], ErrorKind.MALFORMED_ROW, 1),
            ([{"paper_id": "p1", "authors": ["a"], "worth": 1}, [1]], ErrorKind.MALFORMED_ROW, 2),
            (
                [{"paper_id": "p1", "authors": ["a"], "worth": 1}, {"paper_id": "p1", "authors": ["b"], "worth": 1}],
                ErrorKind.DUPLICATE_PAPER_ID,
                2,
            ),
            ([{"paper_id": "p1", "authors": ["a", "a"], "worth": 1}], ErrorKind.DUPLICATE_AUTHOR_IN_PAPER, 1),
        ],
    )
    def test_errors(self, records, kind, index):
        with pytest.raises(ParseError) as info:
            parse_json(json.dumps(records).encode(), name="data.json")
        assert info.value.kind == kind
        assert info.value.location.record == index
        parse_json(json.dumps(records[: index - 1]).encode())

    def test_not_an_array(self):
        with pytest.raises(ParseError) as info:
            parse_json(b'{"paper_id": "p1"}')
        assert info.value.kind == ErrorKind.MALFORMED_ROW

    def test_syntax_error_has_line(self):
        with pytest.raises(ParseError) as info:
            parse_json(b'[\n{"paper_id": "p1",\n oops}]')
        assert info.value.kind == ErrorKind.MALFORMED_ROW
        assert info.value.location.line == 3


records = st.lists(
    st.tuples(
        st.lists(st.sampled_from(AUTHORS), min_size=1, max_size=4, unique=True),
        st.one_of(st.integers(0, 10**6).map(float), st.floats(0, 1e6, allow_nan=False)),
    ),
    max_size=10,
)


def build(recs):
    return Dataset(PaperRecord(f"p{k}", authors, worth) for k, (authors, worth) in enumerate(recs))


class TestRoundTrip:
    @given(records)
    def test_json(self, recs):
        d = build(recs)
        assert parse_json(dataset_to_json(d).encode()) == d

    @given(records)
    def test_csv_and_json_agree(self, recs):
        d = build(recs)
        assert parse_csv(dataset_to_csv(d).encode()) == parse_json(dataset_to_json(d).encode()) == d


class TestWriteScores:
    def test_single_table(self):
        d = Dataset([PaperRecord("p1", ["a", "b"], 3), PaperRecord("p2", ["a"], 1)])
        e = e_index(induce_credit_function(d))
        doc = json.loads(write_scores_json(e, rank_authors(e), d.total_worth()))
        jsonschema.validate(doc, SCORES_SCHEMA)
        assert [a["author"] for a in doc["authors"]] == ["a", "b"]
        assert doc["score_sums"] == {"e": 4} and doc["total_worth"] == 4
        assert doc["authors"][0]["score"] == {"e": 2.5}

    def test_side_by_side(self, intro_dataset):
        e = e_index(induce_credit_function(intro_dataset))
        h = h_index_per_author(intro_dataset)
        buf = io.StringIO()
        text = write_scores_json([e, h], rank_authors(e), intro_dataset.total_worth(), destination=buf)
        assert buf.getvalue() == text
        doc = json.loads(text)
        jsonschema.validate(doc, SCORES_SCHEMA)
        assert doc["indices"] == ["e", "h"]
        first = doc["authors"][0]
        assert first == {"author": "A", "rank": {"e": 1, "h": 3}, "score": {"e": 250, "h": 5}}

    def test_empty(self):
        e = e_index(induce_credit_function(Dataset()))
        doc = json.loads(write_scores_json(e, rank_authors(e), 0.0))
        jsonschema.validate(doc, SCORES_SCHEMA)
        assert doc["authors"] == [] and doc["total_worth"] == 0

    def test_deterministic(self, intro_dataset):
        e = e_index(induce_credit_function(intro_dataset))
        args = (e, rank_authors(e, "average"), intro_dataset.total_worth())
        assert write_scores_json(*args) == write_scores_json(*args)

    @pytest.mark.parametrize(
        "value, rendered",
        [(1 / 3, 0.333333333333), (2.0, 2), (5, 5), (1234567890123.4, 1234567890120), (0.1 + 0.2, 0.3)],
    )
    def test_twelve_significant_digits(self, value, rendered):
        assert render_number(value) == rendered
