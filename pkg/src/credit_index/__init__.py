"""Author credit indices: the egalitarian e-index, the h-index, and axiom audits."""

from .axioms import (
    AXIOMS,
    AuditReport,
    AxiomVerdict,
    IndexFunction,
    InvalidTestCase,
    audit,
    check_anonymity,
    check_efficiency,
    check_monotonicity,
    counterexample_catalog,
    exhaustive_sweep,
    star_author_fixture,
    weighted_split,
)
from .indices import (
    Ranking,
    ScoreTable,
    e_index,
    e_index_per_paper,
    h_index,
    h_index_per_author,
    rank_authors,
    spearman_rho,
)
from .ingestion import ErrorKind, ParseError, parse_csv, parse_json, write_scores_json
from .model import (
    CreditFunction,
    Dataset,
    ModelError,
    PaperRecord,
    induce_credit_function,
    permute_credit_function,
    total_worth,
)

__version__ = "0.1.0"

__all__ = [
    "audit",
    "AuditReport",
    "AXIOMS",
    "AxiomVerdict",
    "check_anonymity",
    "check_efficiency",
    "check_monotonicity",
    "counterexample_catalog",
    "CreditFunction",
    "Dataset",
    "e_index",
    "e_index_per_paper",
    "ErrorKind",
    "exhaustive_sweep",
    "h_index",
    "h_index_per_author",
    "IndexFunction",
    "induce_credit_function",
    "InvalidTestCase",
    "ModelError",
    "parse_csv",
    "parse_json",
    "ParseError",
    "PaperRecord",
    "permute_credit_function",
    "rank_authors",
    "Ranking",
    "ScoreTable",
    "spearman_rho",
    "star_author_fixture",
    "total_worth",
    "weighted_split",
    "write_scores_json",
]
