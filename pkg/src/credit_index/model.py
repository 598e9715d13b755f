"""Publication datasets and the credit functions they induce.

A dataset is a list of papers, each with a set of authors and a non-negative
worth.  The credit function maps every coalition of authors to the total worth
of the papers written by exactly that coalition.  Coalitions are stored as
sorted tuples of author ids so that sparse maps compare and hash sensibly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

AuthorId = str
Coalition = tuple[AuthorId, ...]

# Characters reserved by the CSV format.
RESERVED_CHARS = frozenset(",;\n\r")


class ModelError(ValueError):
    """Raised when a record, dataset or credit function violates its invariants."""


def validate_author_id(author: object) -> AuthorId:
    if not isinstance(author, str):
        raise ModelError(f"author id must be a string, got {type(author).__name__}")
    if not author.strip():
        raise ModelError("author id is empty")
    if author != author.strip():
        raise ModelError(f"author id {author!r} has surrounding whitespace")
    bad = RESERVED_CHARS.intersection(author)
    if bad:
        raise ModelError(f"author id {author!r} contains reserved character(s) {sorted(bad)!r}")
    return author


def canonical_coalition(members: Iterable[AuthorId]) -> Coalition:
    """Return the sorted tuple form of a coalition, rejecting repeats and the empty set."""
    members = list(members)
    key = tuple(sorted(set(members)))
    if not key:
        raise ModelError("coalition must be non-empty")
    if len(key) != len(members):
        raise ModelError(f"coalition {members!r} lists an author more than once")
    return key


def _check_worth(value: object, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ModelError(f"{what} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ModelError(f"{what} must be finite, got {value!r}")
    if value < 0:
        raise ModelError(f"{what} must be non-negative, got {value!r}")
    # Normalises -0.0.
    return value + 0.0


@dataclass(frozen=True)
class PaperRecord:
    """One paper: an id, its author set and its worth (citations, impact factor, ...)."""

    paper_id: str
    authors: frozenset[AuthorId]
    worth: float

    def __init__(self, paper_id: str, authors: Iterable[AuthorId], worth: float):
        if not isinstance(paper_id, str) or not paper_id.strip():
            raise ModelError(f"paper id must be a non-empty string, got {paper_id!r}")
        authors = [validate_author_id(a) for a in authors]
        if not authors:
            raise ModelError(f"paper {paper_id!r} has no authors")
        if len(set(authors)) != len(authors):
            raise ModelError(f"paper {paper_id!r} lists an author more than once")
        object.__setattr__(self, "paper_id", paper_id)
        object.__setattr__(self, "authors", frozenset(authors))
        object.__setattr__(self, "worth", _check_worth(worth, f"worth of paper {paper_id!r}"))

    @property
    def coalition(self) -> Coalition:
        return tuple(sorted(self.authors))


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of papers with unique ids.

    ``author_universe`` is derived: it is the union of all author sets.
    """

    papers: tuple[PaperRecord, ...]
    author_universe: frozenset[AuthorId] = field(init=False)

    def __init__(self, papers: Iterable[PaperRecord] = ()):
        papers = tuple(papers)
        seen: set[str] = set()
        for paper in papers:
            if not isinstance(paper, PaperRecord):
                raise ModelError(f"expected PaperRecord, got {type(paper).__name__}")
            if paper.paper_id in seen:
                raise ModelError(f"duplicate paper id {paper.paper_id!r}")
            seen.add(paper.paper_id)
        universe = frozenset().union(*(p.authors for p in papers))
        object.__setattr__(self, "papers", papers)
        object.__setattr__(self, "author_universe", universe)

    def __len__(self) -> int:
        return len(self.papers)

    def __iter__(self) -> Iterator[PaperRecord]:
        return iter(self.papers)

    @property
    def authors(self) -> list[AuthorId]:
        """Author universe in sorted order."""
        return sorted(self.author_universe)

    def total_worth(self) -> float:
        return math.fsum(p.worth for p in self.papers)

    def __add__(self, other: Dataset) -> Dataset:
        return Dataset(self.papers + other.papers)


class CreditFunction:
    """Sparse map from non-empty coalitions to non-negative worth.

    Absent coalitions have value 0, and explicit zeros are dropped on
    construction, so two credit functions are equal exactly when they agree on
    every coalition.  Instances are immutable.
    """

    __slots__ = ("_universe", "_entries", "_hash")

    def __init__(
        self,
        author_universe: Iterable[AuthorId],
        entries: Mapping[Iterable[AuthorId], float] | Iterable[tuple[Iterable[AuthorId], float]] = (),
    ):
        universe = frozenset(validate_author_id(a) for a in author_universe)
        items = entries.items() if isinstance(entries, Mapping) else entries
        stored: dict[Coalition, float] = {}
        for members, value in items:
            key = canonical_coalition(members)
            if not universe.issuperset(key):
                missing = sorted(set(key) - universe)
                raise ModelError(f"coalition {key!r} has authors outside the universe: {missing!r}")
            if key in stored:
                raise ModelError(f"duplicate coalition {key!r}")
            value = _check_worth(value, f"value of coalition {key!r}")
            if value > 0:
                stored[key] = value
        self._universe = universe
        self._entries = dict(sorted(stored.items()))
        self._hash: int | None = None

    @property
    def author_universe(self) -> frozenset[AuthorId]:
        return self._universe

    @property
    def authors(self) -> list[AuthorId]:
        return sorted(self._universe)

    def __call__(self, coalition: Iterable[AuthorId]) -> float:
        return self._entries.get(tuple(sorted(set(coalition))), 0.0)

    value = __call__

    def items(self) -> Iterator[tuple[Coalition, float]]:
        """Positive-valued coalitions in canonical sorted order."""
        return iter(self._entries.items())

    def support(self) -> list[Coalition]:
        return list(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CreditFunction):
            return NotImplemented
        return self._universe == other._universe and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._universe, tuple(self._entries.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{{{','.join(k)}}}: {v:g}" for k, v in self._entries.items())
        return f"CreditFunction(authors={self.authors!r}, {{{body}}})"

    def __add__(self, other: CreditFunction) -> CreditFunction:
        universe = self._universe | other._universe
        merged = dict(self._entries)
        for key, value in other._entries.items():
            merged[key] = merged.get(key, 0.0) + value
        return CreditFunction(universe, merged)

    def scaled(self, factor: float) -> CreditFunction:
        factor = _check_worth(factor, "scale factor")
        return CreditFunction(self._universe, {k: v * factor for k, v in self._entries.items()})

    def replace(self, updates: Mapping[Iterable[AuthorId], float]) -> CreditFunction:
        """Copy with some coalition values overwritten (0 removes a coalition)."""
        merged = dict(self._entries)
        for members, value in updates.items():
            merged[canonical_coalition(members)] = value
        return CreditFunction(self._universe, merged)


def induce_credit_function(dataset: Dataset) -> CreditFunction:
    """Sum paper worths by exact author set."""
    grouped: dict[Coalition, list[float]] = {}
    for paper in dataset.papers:
        grouped.setdefault(paper.coalition, []).append(paper.worth)
    return CreditFunction(
        dataset.author_universe,
        {key: math.fsum(worths) for key, worths in grouped.items()},
    )


def total_worth(c: CreditFunction) -> float:
    return math.fsum(value for _, value in c.items())


def permute_credit_function(c: CreditFunction, pi: Mapping[AuthorId, AuthorId]) -> CreditFunction:
    """Relabel authors: the result ``d`` satisfies ``d(pi(S)) == c(S)`` for every S.

    ``pi`` must be a bijection on exactly the author universe of ``c``.
    """
    check_bijection(pi, c.author_universe)
    return CreditFunction(
        c.author_universe,
        {tuple(pi[a] for a in key): value for key, value in c.items()},
    )


def check_bijection(pi: Mapping[AuthorId, AuthorId], universe: frozenset[AuthorId]) -> None:
    domain = set(pi)
    if domain != universe:
        missing = sorted(universe - domain)
        extra = sorted(domain - universe)
        raise ModelError(f"bijection domain mismatch: missing {missing!r}, unexpected {extra!r}")
    images = list(pi.values())
    if set(images) != universe or len(images) != len(universe):
        raise ModelError("mapping is not a bijection on the author universe")


def swap(a: AuthorId, b: AuthorId, universe: Iterable[AuthorId]) -> dict[AuthorId, AuthorId]:
    """Transposition of ``a`` and ``b`` over ``universe``."""
    pi = {x: x for x in universe}
    pi[a], pi[b] = b, a
    return pi
