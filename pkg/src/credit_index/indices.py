"""The e-index, the h-index, rankings and Spearman rank correlation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Mapping

from .model import AuthorId, CreditFunction, Dataset, ModelError

TiePolicy = Literal["competition", "average"]
TIE_POLICIES: tuple[str, ...] = ("competition", "average")


@dataclass(frozen=True)
class ScoreTable:
    """Score per author for one index."""

    index_name: str
    scores: Mapping[AuthorId, float]

    def __post_init__(self):
        object.__setattr__(self, "scores", dict(sorted(self.scores.items())))

    def __getitem__(self, author: AuthorId) -> float:
        return self.scores[author]

    def __len__(self) -> int:
        return len(self.scores)

    def __iter__(self) -> Iterator[AuthorId]:
        return iter(self.scores)

    @property
    def authors(self) -> list[AuthorId]:
        return list(self.scores)

    def total(self) -> float:
        return math.fsum(self.scores.values())


@dataclass(frozen=True)
class RankEntry:
    rank: float
    author: AuthorId
    score: float


@dataclass(frozen=True)
class Ranking:
    entries: tuple[RankEntry, ...]
    tie_policy: TiePolicy
    index_name: str = ""

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[RankEntry]:
        return iter(self.entries)

    def ranks(self) -> dict[AuthorId, float]:
        return {e.author: e.rank for e in self.entries}

    def rank_vector(self, authors: Iterable[AuthorId]) -> list[float]:
        ranks = self.ranks()
        return [ranks[a] for a in authors]

    @property
    def authors(self) -> list[AuthorId]:
        return [e.author for e in self.entries]


def e_index(c: CreditFunction) -> ScoreTable:
    """Split every coalition's worth equally among its members and sum per author."""
    shares: dict[AuthorId, list[float]] = {a: [] for a in c.author_universe}
    for coalition, value in c.items():
        share = value / len(coalition)
        for author in coalition:
            shares[author].append(share)
    return ScoreTable("e", {a: math.fsum(parts) for a, parts in shares.items()})


def e_index_per_paper(dataset: Dataset, authors: Iterable[AuthorId] = ()) -> ScoreTable:
    """Fractional counting computed paper by paper, without building a credit function.

    ``authors`` may declare extra authors (scoring 0) beyond those on the papers.
    """
    shares: dict[AuthorId, list[float]] = {a: [] for a in dataset.author_universe}
    for a in authors:
        shares.setdefault(a, [])
    for paper in dataset.papers:
        share = paper.worth / len(paper.authors)
        for author in paper.authors:
            shares[author].append(share)
    return ScoreTable("e", {a: math.fsum(parts) for a, parts in shares.items()})


def h_index(worths: Iterable[float]) -> int:
    """Largest integer x such that at least x of the worths are >= x.

    Real-valued worths are compared literally, so a list of values below 1
    gets an h-index of 0 however long it is.
    """
    ordered = sorted(worths, reverse=True)
    if ordered and ordered[-1] < 0:
        raise ValueError("worths must be non-negative")
    h = 0
    for position, worth in enumerate(ordered, start=1):
        if worth >= position:
            h = position
        else:
            break
    return h


def h_index_per_author(dataset: Dataset) -> ScoreTable:
    """h-index of every author, counting joint papers at full worth."""
    worths: dict[AuthorId, list[float]] = {a: [] for a in dataset.author_universe}
    for paper in dataset.papers:
        for author in paper.authors:
            worths[author].append(paper.worth)
    return ScoreTable("h", {a: h_index(w) for a, w in worths.items()})


def rank_authors(scores: ScoreTable, tie_policy: TiePolicy = "competition") -> Ranking:
    """Sort by descending score (ties listed by ascending author id) and assign ranks.

    ``competition`` gives tied authors the best position of their group
    ("1224"); ``average`` gives them the mean of the positions they span.
    """
    if tie_policy not in TIE_POLICIES:
        raise ValueError(f"unknown tie policy {tie_policy!r}")
    ordered = sorted(scores.scores.items(), key=lambda kv: (-kv[1], kv[0]))
    entries: list[RankEntry] = []
    start = 0
    while start < len(ordered):
        stop = start + 1
        while stop < len(ordered) and ordered[stop][1] == ordered[start][1]:
            stop += 1
        # Positions start+1 .. stop are tied.
        if tie_policy == "competition":
            rank: float = start + 1
        else:
            rank = (start + 1 + stop) / 2
        entries.extend(RankEntry(rank, author, score) for author, score in ordered[start:stop])
        start = stop
    return Ranking(tuple(entries), tie_policy, scores.index_name)


def _average_ranks(ranking: Ranking) -> dict[AuthorId, float]:
    if ranking.tie_policy == "average":
        return ranking.ranks()
    table = ScoreTable(ranking.index_name, {e.author: e.score for e in ranking.entries})
    return rank_authors(table, "average").ranks()


def spearman_rho(ranking_a: Ranking, ranking_b: Ranking) -> float:
    """Spearman's rank correlation between two rankings of the same authors.

    Average ranks are always used; competition rankings are re-ranked from
    their scores first.  Without ties this is ``1 - 6*sum(d^2)/(n(n^2-1))``;
    with ties it is the Pearson correlation of the average-rank vectors.
    """
    ranks_a = _average_ranks(ranking_a)
    ranks_b = _average_ranks(ranking_b)
    if set(ranks_a) != set(ranks_b):
        raise ModelError("rankings cover different author sets")
    n = len(ranks_a)
    if n < 2:
        raise ModelError("rank correlation needs at least two authors")

    authors = sorted(ranks_a)
    xs = [ranks_a[a] for a in authors]
    ys = [ranks_b[a] for a in authors]
    has_ties = len(set(xs)) < n or len(set(ys)) < n
    if not has_ties:
        d2 = math.fsum((x - y) ** 2 for x, y in zip(xs, ys))
        return 1 - 6 * d2 / (n * (n * n - 1))

    mean_x = math.fsum(xs) / n
    mean_y = math.fsum(ys) / n
    cov = math.fsum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    var_x = math.fsum((x - mean_x) ** 2 for x in xs)
    var_y = math.fsum((y - mean_y) ** 2 for y in ys)
    if var_x == 0 or var_y == 0:
        # Every author tied in at least one ranking: identical rankings
        # correlate perfectly, otherwise there is no variation to correlate.
        return 1.0 if xs == ys else 0.0
    rho = cov / math.sqrt(var_x * var_y)
    return max(-1.0, min(1.0, rho))
