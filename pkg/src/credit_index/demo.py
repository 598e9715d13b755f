"""Built-in worked examples: the A-vs-B scenario, fractional impact factors,
the all-star base case, and the four-physicist ranking comparison."""

from __future__ import annotations

from typing import Any

from .axioms import star_author_fixture
from .indices import ScoreTable, e_index, h_index_per_author, rank_authors, spearman_rho
from .model import Dataset, PaperRecord, induce_credit_function

# Published e- and h-values for four condensed matter physicists (April 2017
# Google Scholar snapshot).  The underlying citation data is not available.
PHYSICISTS_E = {"DasSarma": 8211.0, "Fabian": 3628.0, "Nayak": 2379.0, "Greene": 1630.0}
PHYSICISTS_H = {"DasSarma": 105, "Fabian": 41, "Nayak": 52, "Greene": 90}
PHYSICISTS_ORDER = ("DasSarma", "Fabian", "Nayak", "Greene")


def solo_vs_joint_dataset() -> Dataset:
    """A: 5 solo papers with 50 citations each.  B: 6 papers with coauthor X, 6 citations each."""
    papers = [PaperRecord(f"A{k}", ["A"], 50) for k in range(1, 6)]
    papers += [PaperRecord(f"B{k}", ["B", "X"], 6) for k in range(1, 7)]
    return Dataset(papers)


def fractional_dataset(papers: int = 10, worth: float = 0.8) -> Dataset:
    """One author whose papers all carry a fractional impact factor."""
    return Dataset(PaperRecord(f"F{k}", ["F"], worth) for k in range(1, papers + 1))


def solo_vs_joint() -> dict[str, Any]:
    dataset = solo_vs_joint_dataset()
    e = e_index(induce_credit_function(dataset))
    h = h_index_per_author(dataset)
    return {
        "e": dict(e.scores),
        "h": dict(h.scores),
        "e_ranking": rank_authors(e).authors,
        "h_ranking": rank_authors(h).authors,
    }


def fractional() -> dict[str, Any]:
    dataset = fractional_dataset()
    e = e_index(induce_credit_function(dataset))
    h = h_index_per_author(dataset)
    return {"papers": len(dataset), "worth_each": 0.8, "e": e["F"], "h": h["F"], "total_worth": dataset.total_worth()}


def star_authors(n: int = 3, w: float = 9.0) -> dict[str, Any]:
    c, expected = star_author_fixture(n, w)
    return {"n": n, "w": w, "e": dict(e_index(c).scores), "expected": dict(expected.scores)}


def physicists() -> dict[str, Any]:
    e_rank = rank_authors(ScoreTable("e", PHYSICISTS_E), "average")
    h_rank = rank_authors(ScoreTable("h", PHYSICISTS_H), "average")
    return {
        "e": PHYSICISTS_E,
        "h": PHYSICISTS_H,
        "e_ranks": e_rank.rank_vector(PHYSICISTS_ORDER),
        "h_ranks": h_rank.rank_vector(PHYSICISTS_ORDER),
        "spearman_rho": spearman_rho(e_rank, h_rank),
    }


def run_all() -> dict[str, Any]:
    return {
        "solo_vs_joint": solo_vs_joint(),
        "fractional": fractional(),
        "star_authors": star_authors(),
        "physicists": physicists(),
    }


def render(results: dict[str, Any]) -> list[str]:
    a = results["solo_vs_joint"]
    lines = [
        "(a) 5 solo papers x 50 citations (A) vs 6 two-author papers x 6 citations (B, with X)",
        f"    h: A={a['h']['A']}  B={a['h']['B']}  X={a['h']['X']}",
        f"    e: A={a['e']['A']:.2f}  B={a['e']['B']:.2f}  X={a['e']['X']:.2f}",
        f"    e ranks {a['e_ranking'][0]} first, h ranks {a['h_ranking'][0]} first",
        "",
    ]
    f = results["fractional"]
    lines += [
        f"(b) {f['papers']} solo papers with impact factor {f['worth_each']:g}",
        f"    h = {f['h']}  e = {f['e']:.2f}  (total worth {f['total_worth']:.2f})",
        "",
    ]
    s = results["star_authors"]
    shares = "  ".join(f"{k}={v:.2f}" for k, v in s["e"].items())
    lines += [
        f"(c) only the grand coalition of {s['n']} authors has worth {s['w']:g}",
        f"    e: {shares}",
        "",
    ]
    p = results["physicists"]
    lines.append("(d) four physicists, published e- and h-values")
    lines.append(f"    {'author':<10}{'e':>8}{'e-rank':>8}{'h':>6}{'h-rank':>8}")
    for name, er, hr in zip(PHYSICISTS_ORDER, p["e_ranks"], p["h_ranks"]):
        lines.append(f"    {name:<10}{p['e'][name]:>8g}{er:>8g}{p['h'][name]:>6}{hr:>8g}")
    lines.append(f"    spearman rho = {p['spearman_rho']:.4f}")
    return lines
