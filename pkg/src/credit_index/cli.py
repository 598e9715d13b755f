"""``credit-index`` command line tool.

Exit codes: 0 success, 1 input or data error, 2 usage error, 3 audit
self-test failure (a catalog index did not get its documented verdict).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from . import demo
from .axioms import AXIOMS, audit, check_expectations, counterexample_catalog
from .indices import (
    TIE_POLICIES,
    Ranking,
    ScoreTable,
    e_index,
    h_index_per_author,
    rank_authors,
    spearman_rho,
)
from .ingestion import ParseError, detect_format, parse_csv, parse_json, write_scores_json
from .model import Dataset, induce_credit_function

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_USAGE = 2
EXIT_AUDIT = 3

DEFAULT_SEED = 42
DEFAULT_TRIALS = 1000
DEFAULT_SIZES = (2, 3, 4, 5, 6)


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


@dataclass
class CliConfig:
    subcommand: str
    input: str | None = None
    format: str = "auto"
    index: str = "e"
    ties: str = "competition"
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    sizes: tuple[int, ...] = DEFAULT_SIZES
    output: str = "table"
    out: str | None = None


def _unsigned(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text: str) -> int:
    value = _unsigned(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(n < 2 for n in sizes):
        raise argparse.ArgumentTypeError("universe sizes must be at least 2")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="credit-index",
        description="Rank authors by the egalitarian e-index, compare with the h-index, audit credit indices.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="{rank,correlate,audit,demo}")

    def add_input(p, required):
        p.add_argument("--input", required=required, metavar="PATH", help="dataset file, or - for standard input")
        p.add_argument("--format", choices=("csv", "json", "auto"), default="auto")

    def add_output(p):
        p.add_argument("--output", choices=("table", "json"), default="table")
        p.add_argument("--out", metavar="PATH", help="write here instead of standard output")

    rank = sub.add_parser("rank", help="rank authors by the e-index and/or h-index")
    add_input(rank, True)
    rank.add_argument("--index", choices=("e", "h", "both"), default="e")
    rank.add_argument("--ties", choices=TIE_POLICIES, default="competition")
    add_output(rank)

    correlate = sub.add_parser("correlate", help="Spearman correlation between e- and h-rankings")
    add_input(correlate, True)
    add_output(correlate)

    aud = sub.add_parser("audit", help="audit the index catalog against the three axioms")
    add_input(aud, False)
    aud.add_argument("--seed", type=_unsigned, default=DEFAULT_SEED)
    aud.add_argument("--trials", type=_positive, default=DEFAULT_TRIALS)
    aud.add_argument("--sizes", type=_sizes, default=DEFAULT_SIZES, metavar="2,3,4")
    add_output(aud)

    dem = sub.add_parser("demo", help="print the built-in worked examples")
    add_output(dem)
    return parser


def parse_config(argv: Sequence[str] | None) -> CliConfig:
    args = build_parser().parse_args(argv)
    return CliConfig(**vars(args))


# -- helpers ---------------------------------------------------------------


def read_dataset(config: CliConfig) -> Dataset:
    path = config.input
    if path is None:
        raise UsageError("--input is required")
    if path == "-":
        data = sys.stdin.buffer.read()
        fmt = "csv" if config.format == "auto" else config.format
        name = "<stdin>"
    else:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"{path}: io: {exc.strerror or exc}") from exc
        fmt = config.format
        if fmt == "auto":
            try:
                fmt = detect_format(path)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        name = path
    parser = parse_json if fmt == "json" else parse_csv
    try:
        dataset = parser(data, name=name)
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    if len(dataset.author_universe) == 1:
        print(
            "warning: dataset has a single author; the e-index comparison assumes at least two",
            file=sys.stderr,
        )
    return dataset


def _fmt_rank(rank: float) -> str:
    return f"{rank:g}"


def _render_table(headers: list[str], rows: list[list[str]]) -> list[str]:
    widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h) for k, h in enumerate(headers)]
    out = ["  ".join(h.ljust(w) if k == 0 else h.rjust(w) for k, (h, w) in enumerate(zip(headers, widths)))]
    for row in rows:
        out.append("  ".join(c.ljust(w) if k == 0 else c.rjust(w) for k, (c, w) in enumerate(zip(row, widths))))
    return out


def _score_tables(dataset: Dataset, which: str) -> list[ScoreTable]:
    tables = []
    if which in ("e", "both"):
        tables.append(e_index(induce_credit_function(dataset)))
    if which in ("h", "both"):
        tables.append(h_index_per_author(dataset))
    return tables


def _ranking_rows(tables: list[ScoreTable], ranking: Ranking, tie_policy: str) -> list[list[str]]:
    ranks = {t.index_name: rank_authors(t, tie_policy).ranks() for t in tables}
    rows = []
    for entry in ranking.entries:
        row = [entry.author]
        for t in tables:
            score = t[entry.author]
            row += [_fmt_rank(ranks[t.index_name][entry.author]), f"{score:.2f}" if t.index_name == "e" else f"{score:g}"]
        rows.append(row)
    return rows


def _ranking_headers(tables: list[ScoreTable]) -> list[str]:
    headers = ["author"]
    for t in tables:
        headers += [f"{t.index_name}-rank", t.index_name]
    return headers


# -- subcommands -----------------------------------------------------------


def cmd_rank(config: CliConfig) -> tuple[int, list[str]]:
    lines: list[str] = []
    dataset = read_dataset(config)
    tables = _score_tables(dataset, config.index)
    ranking = rank_authors(tables[0], config.ties)
    worth = dataset.total_worth()
    if config.output == "json":
        lines.append(write_scores_json(tables, ranking, worth).rstrip("\n"))
        return EXIT_OK, lines
    lines += _render_table(_ranking_headers(tables), _ranking_rows(tables, ranking, config.ties))
    lines.append("")
    lines.append(f"papers: {len(dataset)}  authors: {len(dataset.author_universe)}  total worth: {worth:.2f}")
    if tables[0].index_name == "e":
        lines.append(f"sum of e-index: {tables[0].total():.2f}")
    return EXIT_OK, lines


def cmd_correlate(config: CliConfig) -> tuple[int, list[str]]:
    lines: list[str] = []
    dataset = read_dataset(config)
    if len(dataset.author_universe) < 2:
        raise InputError(
            f"rank correlation needs at least two authors; dataset has {len(dataset.author_universe)}"
        )
    e_table, h_table = _score_tables(dataset, "both")
    e_rank = rank_authors(e_table, "average")
    h_rank = rank_authors(h_table, "average")
    rho = spearman_rho(e_rank, h_rank)
    if config.output == "json":
        text = write_scores_json([e_table, h_table], e_rank, dataset.total_worth(), extra={"spearman_rho": rho})
        lines.append(text.rstrip("\n"))
        return EXIT_OK, lines
    lines += _render_table(_ranking_headers([e_table, h_table]), _ranking_rows([e_table, h_table], e_rank, "average"))
    lines.append("")
    lines.append(f"spearman rho (e vs h): {rho:.4f}")
    return EXIT_OK, lines


def cmd_audit(config: CliConfig) -> tuple[int, list[str]]:
    lines: list[str] = []
    extra = []
    if config.input is not None:
        extra.append(induce_credit_function(read_dataset(config)))
    results = []
    for phi in counterexample_catalog():
        report = audit(phi, seed=config.seed, trials=config.trials, universe_sizes=config.sizes, extra_cases=extra)
        results.append((phi, report, check_expectations(phi, report)))
    all_met = not any(mismatch for _, _, mismatch in results)

    if config.output == "json":
        doc: dict[str, Any] = {
            "seed": config.seed,
            "trials": config.trials,
            "universe_sizes": list(config.sizes),
            "extra_cases": len(extra),
            "expectations_met": all_met,
            "reports": [
                {**report.to_dict(), "expected": dict(phi.expected), "mismatches": mismatch}
                for phi, report, mismatch in results
            ],
        }
        lines.append(json.dumps(doc, indent=2))
    else:
        sizes = ",".join(str(n) for n in config.sizes)
        lines.append(f"axiom audit  seed={config.seed}  trials={config.trials}  sizes={sizes}  extra cases={len(extra)}")
        lines.append("")
        headers = ["index", *AXIOMS, "expected"]
        rows = []
        for phi, report, mismatch in results:
            cells = [f"{'pass' if v.passed else 'FAIL'} ({v.trials - v.failures}/{v.trials})" for v in report.verdicts]
            rows.append([phi.name, *cells, "ok" if not mismatch else "MISMATCH: " + ",".join(mismatch)])
        lines += _render_table(headers, rows)
        lines.append("")
        lines.append("witnesses:")
        for phi, report, _ in results:
            for v in report.verdicts:
                if v.witness is not None:
                    lines.append(f"  {phi.name} / {v.axiom}: {v.witness.describe()}")
        lines.append("")
        lines.append("all expectations met" if all_met else "SELF-TEST FAILURE: verdicts differ from the catalog")
    return (EXIT_OK if all_met else EXIT_AUDIT), lines


def cmd_demo(config: CliConfig) -> tuple[int, list[str]]:
    lines: list[str] = []
    results = demo.run_all()
    if config.output == "json":
        lines.append(json.dumps(results, indent=2))
    else:
        lines += demo.render(results)
    return EXIT_OK, lines


COMMANDS = {"rank": cmd_rank, "correlate": cmd_correlate, "audit": cmd_audit, "demo": cmd_demo}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        code, lines = COMMANDS[config.subcommand](config)
    except UsageError as exc:
        print(f"credit-index: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"credit-index: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = "\n".join(lines) + "\n"
    if config.out:
        try:
            Path(config.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"credit-index: error: {config.out}: io: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
