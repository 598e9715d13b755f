"""Anonymity, monotonicity and efficiency as executable checks.

Each ``check_*`` function tests a single instance and returns ``None`` or a
witness describing the violation.  :func:`audit` runs the checks over an
exhaustive sweep of tiny credit functions plus seeded random instances, and
:func:`counterexample_catalog` bundles the e-index with rival indices that
each break at least one axiom.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Sequence

from .indices import ScoreTable, e_index
from .model import (
    AuthorId,
    CreditFunction,
    ModelError,
    permute_credit_function,
    total_worth,
)

AXIOMS = ("anonymity", "monotonicity", "efficiency")

REL_TOL = 1e-9
ABS_TOL = 1e-12

SWEEP_AUTHORS = ("a", "b")
SWEEP_VALUES = (0.0, 1.0, 2.0)
MAX_RANDOM_COALITION = 3
MAX_RANDOM_VALUE = 100.0


class InvalidTestCase(ModelError):
    """The pair (c, d) does not satisfy the dominance hypothesis for the author."""


def tolerance(*values: float) -> float:
    return max(REL_TOL * max((abs(v) for v in values), default=0.0), ABS_TOL)


def close(a: float, b: float) -> bool:
    return abs(a - b) <= tolerance(a, b)


@dataclass(frozen=True)
class IndexFunction:
    """A named rule mapping (credit function, author) to a score.

    ``table`` optionally computes every author's score at once; catalog
    entries provide it for speed.  ``expected`` documents the audit verdict
    per axiom (``None`` when it depends on the universe sizes audited).
    """

    name: str
    evaluate: Callable[[CreditFunction, AuthorId], float]
    table: Callable[[CreditFunction], Mapping[AuthorId, float]] | None = None
    expected: Mapping[str, bool | None] = field(default_factory=dict)
    description: str = ""

    def __call__(self, c: CreditFunction, author: AuthorId) -> float:
        return self.evaluate(c, author)

    def scores(self, c: CreditFunction) -> dict[AuthorId, float]:
        if self.table is not None:
            return dict(self.table(c))
        return {a: self.evaluate(c, a) for a in c.authors}

    def score_table(self, c: CreditFunction) -> ScoreTable:
        return ScoreTable(self.name, self.scores(c))

    @classmethod
    def from_table(
        cls,
        name: str,
        table: Callable[[CreditFunction], Mapping[AuthorId, float]],
        expected: Mapping[str, bool | None] | None = None,
        description: str = "",
    ) -> IndexFunction:
        return cls(
            name=name,
            evaluate=lambda c, author: table(c)[author],
            table=table,
            expected=dict(expected or {}),
            description=description,
        )


# -- witnesses -----------------------------------------------------------


@dataclass(frozen=True)
class AnonymityWitness:
    credit: CreditFunction
    bijection: Mapping[AuthorId, AuthorId]
    author: AuthorId
    original: float  # phi_i(c)
    permuted: float  # phi_{pi(i)}(pi c)

    def replay(self, phi: IndexFunction) -> AnonymityWitness | None:
        return check_anonymity(phi, self.credit, self.bijection)

    def describe(self) -> str:
        image = self.bijection[self.author]
        return (
            f"c={self.credit!r}, pi={dict(sorted(self.bijection.items()))!r}: "
            f"phi_{self.author}(c)={self.original:.12g} but "
            f"phi_{image}(pi c)={self.permuted:.12g}"
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "credit": credit_to_dict(self.credit),
            "bijection": dict(sorted(self.bijection.items())),
            "author": self.author,
            "original": self.original,
            "permuted": self.permuted,
        }


@dataclass(frozen=True)
class MonotonicityWitness:
    credit: CreditFunction  # dominating
    dominated: CreditFunction
    author: AuthorId
    score: float  # phi_i(c)
    dominated_score: float  # phi_i(d)

    def replay(self, phi: IndexFunction) -> MonotonicityWitness | None:
        return check_monotonicity(phi, self.credit, self.dominated, self.author)

    def describe(self) -> str:
        return (
            f"c={self.credit!r} dominates d={self.dominated!r} for {self.author}, "
            f"yet phi(c)={self.score:.12g} < phi(d)={self.dominated_score:.12g}"
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "credit": credit_to_dict(self.credit),
            "dominated": credit_to_dict(self.dominated),
            "author": self.author,
            "score": self.score,
            "dominated_score": self.dominated_score,
        }


@dataclass(frozen=True)
class EfficiencyWitness:
    credit: CreditFunction
    score_sum: float
    total: float

    def replay(self, phi: IndexFunction) -> EfficiencyWitness | None:
        return check_efficiency(phi, self.credit)

    def describe(self) -> str:
        return f"c={self.credit!r}: scores sum to {self.score_sum:.12g}, total worth is {self.total:.12g}"

    def to_dict(self) -> dict[str, Any]:
        return {"credit": credit_to_dict(self.credit), "score_sum": self.score_sum, "total": self.total}


Witness = AnonymityWitness | MonotonicityWitness | EfficiencyWitness


def credit_to_dict(c: CreditFunction) -> dict[str, Any]:
    return {
        "authors": c.authors,
        "entries": [{"coalition": list(k), "value": v} for k, v in c.items()],
    }


# -- single-instance checks ---------------------------------------------


def check_anonymity(
    phi: IndexFunction, c: CreditFunction, pi: Mapping[AuthorId, AuthorId]
) -> AnonymityWitness | None:
    permuted = permute_credit_function(c, pi)
    before = phi.scores(c)
    after = phi.scores(permuted)
    for author in c.authors:
        original, relabelled = before[author], after[pi[author]]
        if not close(original, relabelled):
            return AnonymityWitness(c, dict(pi), author, original, relabelled)
    return None


def dominates(c: CreditFunction, d: CreditFunction, author: AuthorId) -> bool:
    """True if c(S) >= d(S) for every coalition S containing ``author``."""
    keys = set(c.support()) | set(d.support())
    return all(c(S) >= d(S) for S in keys if author in S)


def check_monotonicity(
    phi: IndexFunction, c: CreditFunction, d: CreditFunction, author: AuthorId
) -> MonotonicityWitness | None:
    """Check phi_i(c) >= phi_i(d) given that c dominates d on i's coalitions.

    Coalitions without ``author`` are unconstrained.  Raises
    :class:`InvalidTestCase` if the dominance hypothesis fails, since the
    axiom says nothing about such a pair.
    """
    if c.author_universe != d.author_universe:
        raise InvalidTestCase("credit functions have different author universes")
    if author not in c.author_universe:
        raise InvalidTestCase(f"author {author!r} is not in the universe")
    if not dominates(c, d, author):
        raise InvalidTestCase(f"c does not dominate d on coalitions containing {author!r}")
    score, dominated_score = phi(c, author), phi(d, author)
    if score < dominated_score - tolerance(score, dominated_score):
        return MonotonicityWitness(c, d, author, score, dominated_score)
    return None


def check_efficiency(phi: IndexFunction, c: CreditFunction) -> EfficiencyWitness | None:
    score_sum = math.fsum(phi.scores(c).values())
    total = total_worth(c)
    if not close(score_sum, total):
        return EfficiencyWitness(c, score_sum, total)
    return None


# -- audit ---------------------------------------------------------------


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    passed: bool
    trials: int
    failures: int = 0
    witness: Witness | None = None
    exhaustive_trials: int = 0
    random_trials: int = 0
    extra_trials: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "axiom": self.axiom,
            "passed": self.passed,
            "trials": self.trials,
            "failures": self.failures,
            "exhaustive_trials": self.exhaustive_trials,
            "random_trials": self.random_trials,
            "extra_trials": self.extra_trials,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


@dataclass(frozen=True)
class AuditReport:
    index_name: str
    verdicts: tuple[AxiomVerdict, AxiomVerdict, AxiomVerdict]
    seed: int
    trials: int
    universe_sizes: tuple[int, ...]

    def verdict(self, axiom: str) -> AxiomVerdict:
        for v in self.verdicts:
            if v.axiom == axiom:
                return v
        raise KeyError(axiom)

    def matrix(self) -> dict[str, bool]:
        return {v.axiom: v.passed for v in self.verdicts}

    @property
    def passed_all(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index_name,
            "seed": self.seed,
            "trials": self.trials,
            "universe_sizes": list(self.universe_sizes),
            "verdicts": [v.to_dict() for v in self.verdicts],
        }


class _Tally:
    def __init__(self, axiom: str):
        self.axiom = axiom
        self.counts = {"exhaustive": 0, "random": 0, "extra": 0}
        self.failures = 0
        self.witness: Witness | None = None

    def record(self, phase: str, witness: Witness | None) -> None:
        self.counts[phase] += 1
        if witness is not None:
            self.failures += 1
            if self.witness is None:
                self.witness = witness

    def verdict(self) -> AxiomVerdict:
        return AxiomVerdict(
            axiom=self.axiom,
            passed=self.failures == 0,
            trials=sum(self.counts.values()),
            failures=self.failures,
            witness=self.witness,
            exhaustive_trials=self.counts["exhaustive"],
            random_trials=self.counts["random"],
            extra_trials=self.counts["extra"],
        )


def sweep_credit_functions() -> list[CreditFunction]:
    """All 27 credit functions over two authors with values in {0, 1, 2}."""
    a, b = SWEEP_AUTHORS
    coalitions = [(a,), (b,), (a, b)]
    return [
        CreditFunction(SWEEP_AUTHORS, dict(zip(coalitions, values)))
        for values in itertools.product(SWEEP_VALUES, repeat=len(coalitions))
    ]


def _run_sweep(phi: IndexFunction, tallies: Mapping[str, _Tally]) -> None:
    functions = sweep_credit_functions()
    a, b = SWEEP_AUTHORS
    transposition = {a: b, b: a}
    for c in functions:
        tallies["anonymity"].record("exhaustive", check_anonymity(phi, c, transposition))
        tallies["efficiency"].record("exhaustive", check_efficiency(phi, c))
    # Every dominance-respecting (c, d, i); coalitions without i vary freely.
    for c, d in itertools.product(functions, repeat=2):
        for author in SWEEP_AUTHORS:
            if dominates(c, d, author):
                tallies["monotonicity"].record("exhaustive", check_monotonicity(phi, c, d, author))


def exhaustive_sweep(phi: IndexFunction) -> dict[str, AxiomVerdict]:
    """Verdicts from the two-author sweep alone; involves no randomness."""
    tallies = {axiom: _Tally(axiom) for axiom in AXIOMS}
    _run_sweep(phi, tallies)
    return {axiom: t.verdict() for axiom, t in tallies.items()}


def author_labels(n: int) -> list[AuthorId]:
    if n <= 26:
        return [chr(ord("a") + k) for k in range(n)]
    width = len(str(n - 1))
    return [f"a{k:0{width}d}" for k in range(n)]


def trial_rng(seed: int, *path: object) -> random.Random:
    """Independent generator for one trial, derived from the master seed."""
    # String seeds are hashed with SHA-512, so this is stable across processes.
    return random.Random(":".join(str(p) for p in (seed, *path)))


def random_credit_function(rng: random.Random, authors: Sequence[AuthorId]) -> CreditFunction:
    """Sparse credit function supported on coalitions of at most three authors."""
    candidates = [
        combo
        for size in range(1, min(MAX_RANDOM_COALITION, len(authors)) + 1)
        for combo in itertools.combinations(authors, size)
    ]
    support = rng.sample(candidates, rng.randint(1, len(candidates)))
    return CreditFunction(authors, {S: rng.uniform(0.0, MAX_RANDOM_VALUE) for S in support})


def random_bijection(rng: random.Random, authors: Sequence[AuthorId]) -> dict[AuthorId, AuthorId]:
    images = list(authors)
    rng.shuffle(images)
    return dict(zip(authors, images))


def reduce_for_author(rng: random.Random, c: CreditFunction, author: AuthorId) -> CreditFunction:
    """A d dominated by c for ``author``: lower i's coalitions, keep the rest fixed."""
    updates = {}
    for S, value in c.items():
        if author in S:
            updates[S] = 0.0 if rng.random() < 0.25 else value * rng.random()
    return c.replace(updates)


def audit(
    phi: IndexFunction,
    seed: int = 42,
    trials: int = 1000,
    universe_sizes: Iterable[int] = (2, 3, 4, 5, 6),
    extra_cases: Sequence[CreditFunction] = (),
) -> AuditReport:
    """Test ``phi`` against all three axioms.

    Runs the exhaustive two-author sweep, then ``trials`` seeded random
    instances per universe size (one credit function, bijection and dominance
    pair each), then checks on any ``extra_cases``.  The report depends only on
    the arguments: trial ``t`` at size ``n`` draws from its own generator.
    """
    sizes = tuple(universe_sizes)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not sizes or any(n < 2 for n in sizes):
        raise ValueError("universe sizes must all be at least 2")

    tallies = {axiom: _Tally(axiom) for axiom in AXIOMS}
    _run_sweep(phi, tallies)

    for n in sizes:
        authors = author_labels(n)
        for t in range(trials):
            rng = trial_rng(seed, n, t)
            c = random_credit_function(rng, authors)
            pi = random_bijection(rng, authors)
            author = rng.choice(authors)
            d = reduce_for_author(rng, c, author)
            tallies["anonymity"].record("random", check_anonymity(phi, c, pi))
            tallies["monotonicity"].record("random", check_monotonicity(phi, c, d, author))
            tallies["efficiency"].record("random", check_efficiency(phi, c))

    for k, c in enumerate(extra_cases):
        authors = c.authors
        if len(authors) < 2:
            tallies["efficiency"].record("extra", check_efficiency(phi, c))
            continue
        rng = trial_rng(seed, "extra", k)
        shift = dict(zip(authors, authors[1:] + authors[:1]))
        tallies["anonymity"].record("extra", check_anonymity(phi, c, shift))
        tallies["anonymity"].record("extra", check_anonymity(phi, c, random_bijection(rng, authors)))
        for author in authors:
            d = reduce_for_author(rng, c, author)
            tallies["monotonicity"].record("extra", check_monotonicity(phi, c, d, author))
        tallies["efficiency"].record("extra", check_efficiency(phi, c))

    verdicts = tuple(tallies[axiom].verdict() for axiom in AXIOMS)
    return AuditReport(phi.name, verdicts, seed, trials, sizes)  # type: ignore[arg-type]


# -- catalog -------------------------------------------------------------


def _equal_split(c: CreditFunction) -> dict[AuthorId, float]:
    return dict(e_index(c).scores)


def _accumulate(c: CreditFunction, shares: Callable[[tuple[AuthorId, ...], float], Iterable[tuple[AuthorId, float]]]):
    parts: dict[AuthorId, list[float]] = {a: [] for a in c.author_universe}
    for S, value in c.items():
        for author, share in shares(S, value):
            parts[author].append(share)
    return {a: math.fsum(p) for a, p in parts.items()}


def _full_counting(c: CreditFunction) -> dict[AuthorId, float]:
    return _accumulate(c, lambda S, v: ((a, v) for a in S))


def _lexicographic_first(c: CreditFunction) -> dict[AuthorId, float]:
    return _accumulate(c, lambda S, v: [(S[0], v)])


def _zero_index(c: CreditFunction) -> dict[AuthorId, float]:
    return {a: 0.0 for a in c.author_universe}


def _solo_only(c: CreditFunction) -> dict[AuthorId, float]:
    return _accumulate(c, lambda S, v: [(S[0], v)] if len(S) == 1 else [])


def _penalize_prolific(c: CreditFunction) -> dict[AuthorId, float]:
    total = total_worth(c)
    return {a: total - score for a, score in e_index(c).scores.items()}


def weighted_split(weights: Sequence[float], name: str | None = None) -> IndexFunction:
    """Split each coalition by positional weights over its sorted member list.

    Coalitions longer than ``weights`` reuse the last weight.  Uniform
    weights reproduce the equal split; anything else favours authors by
    where their id sorts, which breaks anonymity.
    """
    weights = [float(w) for w in weights]
    if not weights or any(w <= 0 or not math.isfinite(w) for w in weights):
        raise ValueError("weights must be positive and finite")

    def shares(S, value):
        w = [weights[min(j, len(weights) - 1)] for j in range(len(S))]
        norm = math.fsum(w)
        return [(author, value * wj / norm) for author, wj in zip(S, w)]

    uniform = len(set(weights)) == 1
    label = name or "weighted_split(" + ",".join(f"{w:g}" for w in weights) + ")"
    return IndexFunction.from_table(
        label,
        lambda c: _accumulate(c, shares),
        expected={"anonymity": uniform, "monotonicity": True, "efficiency": True},
        description="positional weights over the sorted coalition",
    )


EQUAL_SPLIT = IndexFunction.from_table(
    "equal_split",
    _equal_split,
    expected={"anonymity": True, "monotonicity": True, "efficiency": True},
    description="the e-index: each coalition's worth split equally",
)


def counterexample_catalog() -> list[IndexFunction]:
    """The e-index and rival indices with their documented audit verdicts."""
    return [
        EQUAL_SPLIT,
        IndexFunction.from_table(
            "full_counting",
            _full_counting,
            expected={"anonymity": True, "monotonicity": True, "efficiency": False},
            description="every member gets the full coalition value",
        ),
        IndexFunction.from_table(
            "lexicographic_first",
            _lexicographic_first,
            expected={"anonymity": False, "monotonicity": True, "efficiency": True},
            description="alphabetically first member takes the whole coalition value",
        ),
        IndexFunction.from_table(
            "zero_index",
            _zero_index,
            expected={"anonymity": True, "monotonicity": True, "efficiency": False},
            description="always 0",
        ),
        IndexFunction.from_table(
            "solo_only",
            _solo_only,
            expected={"anonymity": True, "monotonicity": True, "efficiency": False},
            description="counts singleton coalitions only",
        ),
        weighted_split((2.0, 1.0)),
        IndexFunction.from_table(
            "penalize_prolific",
            _penalize_prolific,
            # Scores sum to (n-1) times the total, so efficiency holds only for n = 2.
            expected={"anonymity": True, "monotonicity": False, "efficiency": None},
            description="total worth minus the author's e-index",
        ),
    ]


def check_expectations(phi: IndexFunction, report: AuditReport) -> list[str]:
    """Axioms where the report contradicts ``phi.expected``."""
    mismatches = []
    for axiom in AXIOMS:
        expected = phi.expected.get(axiom)
        if expected is not None and report.verdict(axiom).passed != expected:
            mismatches.append(axiom)
    return mismatches


# -- proof base-case fixtures ------------------------------------------


def star_author_fixture(n: int, w: float) -> tuple[CreditFunction, ScoreTable]:
    """Only the grand coalition has positive worth; everyone should get w/n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if w < 0:
        raise ValueError("w must be non-negative")
    authors = author_labels(n)
    c = CreditFunction(authors, {tuple(authors): w})
    return c, ScoreTable("e", {a: w / n for a in authors})


def zero_credit_fixture(n: int) -> tuple[CreditFunction, ScoreTable]:
    """The all-zero credit function, on which every author must score 0."""
    if n < 2:
        raise ValueError("n must be at least 2")
    authors = author_labels(n)
    return CreditFunction(authors), ScoreTable("e", {a: 0.0 for a in authors})

