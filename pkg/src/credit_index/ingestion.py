"""Reading publication datasets from CSV/JSON and writing score reports.

CSV layout::

    paper_id,authors,worth
    p1,alice;bob,10
    p2,carol,0.8

JSON layout: a top-level array of ``{"paper_id": str, "authors": [str, ...],
"worth": number}`` objects.  The first problem aborts parsing with a
:class:`ParseError` that names its line (CSV) or 1-based record (JSON).
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import re
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path
from typing import IO, Any, Iterable, Sequence

from .indices import Ranking, ScoreTable, rank_authors
from .model import RESERVED_CHARS, Dataset, PaperRecord

CSV_HEADER = ("paper_id", "authors", "worth")
AUTHOR_SEPARATOR = ";"
SIGNIFICANT_DIGITS = 12

_DECIMAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)")


class ErrorKind(str, enum.Enum):
    IO = "io"
    MALFORMED_ROW = "malformed_row"
    DUPLICATE_PAPER_ID = "duplicate_paper_id"
    EMPTY_AUTHOR_LIST = "empty_author_list"
    DUPLICATE_AUTHOR_IN_PAPER = "duplicate_author_in_paper"
    NEGATIVE_WORTH = "negative_worth"
    BAD_NUMBER = "bad_number"
    BAD_HEADER = "bad_header"


@dataclass(frozen=True)
class Location:
    source: str
    line: int | None = None
    record: int | None = None

    def __str__(self) -> str:
        if self.line is not None:
            return f"{self.source}:{self.line}"
        if self.record is not None:
            return f"{self.source}: record {self.record}"
        return self.source


class ParseError(Exception):
    def __init__(self, kind: ErrorKind, location: Location, detail: str):
        super().__init__(f"{location}: {kind.value}: {detail}")
        self.kind = kind
        self.location = location
        self.detail = detail


Source = bytes | str | IO[bytes] | IO[str]


def _read_text(source: Source, name: str) -> str:
    if isinstance(source, str):
        return source
    try:
        data = source if isinstance(source, bytes) else source.read()
    except OSError as exc:
        raise ParseError(ErrorKind.IO, Location(name), str(exc)) from exc
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        line = data[: exc.start].count(b"\n") + 1
        raise ParseError(ErrorKind.IO, Location(name, line=line), f"invalid UTF-8: {exc.reason}") from exc


def _parse_worth(text: str, where: Location) -> float:
    text = text.strip()
    if not _DECIMAL.fullmatch(text):
        raise ParseError(ErrorKind.BAD_NUMBER, where, f"worth {text!r} is not a decimal number")
    value = float(text)
    if value < 0:
        raise ParseError(ErrorKind.NEGATIVE_WORTH, where, f"worth {text} is negative")
    return value + 0.0


def _check_authors(authors: Sequence[str], where: Location) -> None:
    if not authors:
        raise ParseError(ErrorKind.EMPTY_AUTHOR_LIST, where, "paper has no authors")
    for author in authors:
        if not author:
            raise ParseError(ErrorKind.MALFORMED_ROW, where, "empty author id")
        bad = RESERVED_CHARS.intersection(author)
        if bad:
            raise ParseError(ErrorKind.MALFORMED_ROW, where, f"author id {author!r} contains {sorted(bad)!r}")
    seen = set()
    for author in authors:
        if author in seen:
            raise ParseError(ErrorKind.DUPLICATE_AUTHOR_IN_PAPER, where, f"author {author!r} listed twice")
        seen.add(author)


def _check_paper_id(paper_id: str, seen: dict[str, Location], where: Location) -> None:
    if not paper_id:
        raise ParseError(ErrorKind.MALFORMED_ROW, where, "empty paper id")
    if paper_id in seen:
        raise ParseError(
            ErrorKind.DUPLICATE_PAPER_ID, where, f"paper id {paper_id!r} already used at {seen[paper_id]}"
        )
    seen[paper_id] = where


def parse_csv(source: Source, name: str = "<csv>") -> Dataset:
    text = _read_text(source, name)
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
            found = ",".join(header) if header else "nothing"
            raise ParseError(
                ErrorKind.BAD_HEADER, Location(name, line=1), f"expected {','.join(CSV_HEADER)!r}, found {found!r}"
            )
        papers = []
        seen: dict[str, Location] = {}
        for row in reader:
            where = Location(name, line=reader.line_num)
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(CSV_HEADER):
                raise ParseError(ErrorKind.MALFORMED_ROW, where, f"expected 3 fields, found {len(row)}")
            paper_id, author_field, worth_field = (field.strip() for field in row)
            if not paper_id:
                raise ParseError(ErrorKind.MALFORMED_ROW, where, "empty paper id")
            authors = [a.strip() for a in author_field.split(AUTHOR_SEPARATOR)] if author_field else []
            _check_authors(authors, where)
            worth = _parse_worth(worth_field, where)
            _check_paper_id(paper_id, seen, where)
            papers.append(PaperRecord(paper_id, authors, worth))
    except csv.Error as exc:
        raise ParseError(ErrorKind.MALFORMED_ROW, Location(name, line=reader.line_num), str(exc)) from exc
    return Dataset(papers)


def parse_json(source: Source, name: str = "<json>") -> Dataset:
    text = _read_text(source, name)
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(ErrorKind.MALFORMED_ROW, Location(name, line=exc.lineno), exc.msg) from exc
    if not isinstance(document, list):
        raise ParseError(ErrorKind.MALFORMED_ROW, Location(name, record=0), "top level must be an array")

    papers = []
    seen: dict[str, Location] = {}
    for index, item in enumerate(document, start=1):
        where = Location(name, record=index)
        if not isinstance(item, dict):
            raise ParseError(ErrorKind.MALFORMED_ROW, where, "record must be an object")
        keys = set(item)
        if keys != set(CSV_HEADER):
            missing = sorted(set(CSV_HEADER) - keys)
            extra = sorted(keys - set(CSV_HEADER))
            raise ParseError(ErrorKind.MALFORMED_ROW, where, f"missing fields {missing}, unexpected fields {extra}")
        paper_id, authors, worth = item["paper_id"], item["authors"], item["worth"]
        if not isinstance(paper_id, str):
            raise ParseError(ErrorKind.MALFORMED_ROW, where, "paper_id must be a string")
        if not isinstance(authors, list) or not all(isinstance(a, str) for a in authors):
            raise ParseError(ErrorKind.MALFORMED_ROW, where, "authors must be an array of strings")
        authors = [a.strip() for a in authors]
        _check_authors(authors, where)
        if isinstance(worth, bool) or not isinstance(worth, (int, float)):
            raise ParseError(ErrorKind.BAD_NUMBER, where, f"worth {worth!r} is not a number")
        if not math.isfinite(worth):
            raise ParseError(ErrorKind.BAD_NUMBER, where, f"worth {worth!r} is not finite")
        if worth < 0:
            raise ParseError(ErrorKind.NEGATIVE_WORTH, where, f"worth {worth} is negative")
        paper_id = paper_id.strip()
        _check_paper_id(paper_id, seen, where)
        papers.append(PaperRecord(paper_id, authors, float(worth)))
    return Dataset(papers)


def detect_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".json":
        return "json"
    if suffix == ".csv":
        return "csv"
    raise ValueError(f"cannot infer format from {str(path)!r}; pass --format")


def load_dataset(path: str | Path, fmt: str = "auto") -> Dataset:
    """Parse a dataset file; ``fmt`` is ``csv``, ``json`` or ``auto`` (by extension)."""
    if fmt == "auto":
        fmt = detect_format(path)
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(ErrorKind.IO, Location(str(path)), exc.strerror or str(exc)) from exc
    parser = parse_json if fmt == "json" else parse_csv
    return parser(data, name=str(path))


def format_decimal(value: float) -> str:
    """Shortest round-tripping representation, without exponent notation."""
    return format(Decimal(repr(value)), "f")


def dataset_to_csv(dataset: Dataset) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for p in dataset.papers:
        writer.writerow([p.paper_id, AUTHOR_SEPARATOR.join(sorted(p.authors)), format_decimal(p.worth)])
    return out.getvalue()


def dataset_to_json(dataset: Dataset) -> str:
    records = [{"paper_id": p.paper_id, "authors": sorted(p.authors), "worth": p.worth} for p in dataset.papers]
    return json.dumps(records, indent=2) + "\n"


def render_number(value: float) -> int | float:
    """Round to 12 significant digits; integral values are rendered as integers."""
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    rounded = float(f"{value:.{SIGNIFICANT_DIGITS}g}")
    return int(rounded) if rounded.is_integer() and abs(rounded) < 2**53 else rounded


def scores_document(
    tables: ScoreTable | Sequence[ScoreTable],
    ranking: Ranking,
    total_worth: float,
    extra: dict[str, Any] | None = None,
) -> dict[str, Any]:
    """Build the score report as plain data.

    Authors appear in the order of ``ranking`` (rank, then id).  Each table
    contributes a score column and its own rank column, ranked with the same
    tie policy.
    """
    if isinstance(tables, ScoreTable):
        tables = [tables]
    tables = list(tables)
    names = [t.index_name for t in tables]
    per_index_ranks = {t.index_name: rank_authors(t, ranking.tie_policy).ranks() for t in tables}
    per_index_ranks[ranking.index_name] = ranking.ranks()
    authors = []
    for entry in ranking.entries:
        authors.append(
            {
                "author": entry.author,
                "rank": {n: render_number(per_index_ranks[n][entry.author]) for n in names},
                "score": {t.index_name: render_number(t[entry.author]) for t in tables},
            }
        )
    doc: dict[str, Any] = {
        "indices": names,
        "ranked_by": ranking.index_name,
        "tie_policy": ranking.tie_policy,
        "total_worth": render_number(total_worth),
        "score_sums": {t.index_name: render_number(t.total()) for t in tables},
        "authors": authors,
    }
    if extra:
        doc.update(extra)
    return doc


def write_scores_json(
    tables: ScoreTable | Iterable[ScoreTable],
    ranking: Ranking,
    total_worth: float,
    destination: IO[str] | None = None,
    extra: dict[str, Any] | None = None,
) -> str:
    """Serialise :func:`scores_document` deterministically; also write it to ``destination``."""
    if not isinstance(tables, ScoreTable):
        tables = list(tables)
    text = json.dumps(scores_document(tables, ranking, total_worth, extra), indent=2) + "\n"
    if destination is not None:
        destination.write(text)
    return text


# JSON Schema for documents produced by write_scores_json.
SCORES_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["indices", "ranked_by", "tie_policy", "total_worth", "score_sums", "authors"],
    "properties": {
        "indices": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "ranked_by": {"type": "string"},
        "tie_policy": {"enum": ["competition", "average"]},
        "total_worth": {"type": "number", "minimum": 0},
        "score_sums": {"type": "object", "additionalProperties": {"type": "number"}},
        "authors": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["author", "rank", "score"],
                "properties": {
                    "author": {"type": "string", "minLength": 1},
                    "rank": {"type": "object", "additionalProperties": {"type": "number", "minimum": 1}},
                    "score": {"type": "object", "additionalProperties": {"type": "number"}},
                },
            },
        },
    },
}
