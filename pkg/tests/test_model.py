import math

import pytest
from hypothesis import given, strategies as st

from conftest import bijections, credit_functions, datasets, dyadic_worths, rel_close
from credit_index.model import (
    CreditFunction,
    Dataset,
    ModelError,
    PaperRecord,
    induce_credit_function,
    permute_credit_function,
    swap,
    total_worth,
)


class TestRecords:
    def test_paper_record_normalises_authors(self):
        p = PaperRecord("p1", ["bob", "alice"], 3)
        assert p.authors == frozenset({"alice", "bob"})
        assert p.coalition == ("alice", "bob")
        assert p.worth == 3.0

    @pytest.mark.parametrize(
        "authors, worth",
        [
            ([], 1),
            (["a", "a"], 1),
            (["a"], -1),
            (["a"], float("nan")),
            ([""], 1),
            ([" a"], 1),
            (["a;b"], 1),
            (["a,b"], 1),
        ],
    )
    def test_paper_record_rejects(self, authors, worth):
        with pytest.raises(ModelError):
            PaperRecord("p1", authors, worth)

    def test_author_ids_are_case_sensitive(self):
        d = Dataset([PaperRecord("p1", ["Alice", "alice"], 1)])
        assert d.author_universe == {"Alice", "alice"}

    def test_dataset_rejects_duplicate_ids(self):
        with pytest.raises(ModelError, match="duplicate paper id"):
            Dataset([PaperRecord("p1", ["a"], 5), PaperRecord("p1", ["b"], 3)])

    def test_author_universe_is_union(self):
        d = Dataset([PaperRecord("p1", ["a", "b"], 1), PaperRecord("p2", ["c"], 0)])
        assert d.author_universe == {"a", "b", "c"}

    def test_empty_dataset(self):
        d = Dataset()
        assert len(d) == 0 and d.author_universe == frozenset()


class TestCreditFunction:
    def test_absent_and_zero_compare_equal(self):
        explicit = CreditFunction(["a", "b"], {("a",): 0.0, ("a", "b"): 2})
        sparse = CreditFunction(["a", "b"], {("b", "a"): 2})
        assert explicit == sparse
        assert hash(explicit) == hash(sparse)
        assert explicit(["a"]) == 0.0

    def test_rejects_coalition_outside_universe(self):
        with pytest.raises(ModelError, match="outside the universe"):
            CreditFunction(["a"], {("a", "b"): 1})

    def test_rejects_duplicate_keys_after_canonicalisation(self):
        with pytest.raises(ModelError, match="duplicate coalition"):
            CreditFunction(["a", "b"], [(("a", "b"), 1), (("b", "a"), 2)])

    def test_rejects_negative_value(self):
        with pytest.raises(ModelError):
            CreditFunction(["a"], {("a",): -1})

    def test_rejects_empty_coalition(self):
        with pytest.raises(ModelError):
            CreditFunction(["a"], {(): 1})

    def test_universe_mismatch_is_unequal(self):
        assert CreditFunction(["a"]) != CreditFunction(["a", "b"])


class TestInduce:
    def test_identical_author_sets_add(self):
        d = Dataset([PaperRecord("p1", ["a", "b"], 3), PaperRecord("p2", ["b", "a"], 4)])
        c = induce_credit_function(d)
        assert c(["a", "b"]) == 7
        assert c(["a"]) == 0 and c(["b"]) == 0
        assert c.support() == [("a", "b")]

    def test_distinct_author_sets(self):
        d = Dataset([PaperRecord("p1", ["a"], 5), PaperRecord("p2", ["a", "b"], 2)])
        c = induce_credit_function(d)
        assert c(["a"]) == 5 and c(["a", "b"]) == 2

    def test_zero_worth_contributes_nothing(self):
        c = induce_credit_function(Dataset([PaperRecord("p1", ["a", "b"], 0)]))
        assert c == CreditFunction(["a", "b"])
        assert c.author_universe == {"a", "b"}

    @given(datasets(), datasets())
    def test_additive_over_concatenation(self, d1, d2):
        d2 = Dataset(PaperRecord("q" + p.paper_id, p.authors, p.worth) for p in d2)
        joint = induce_credit_function(d1 + d2)
        summed = induce_credit_function(d1) + induce_credit_function(d2)
        assert joint.author_universe == summed.author_universe
        assert set(joint.support()) == set(summed.support())
        for S, value in joint.items():
            assert rel_close(value, summed(S))

    @given(datasets(worths=dyadic_worths))
    def test_total_worth_matches_exactly(self, d):
        assert total_worth(induce_credit_function(d)) == math.fsum(p.worth for p in d)

    @given(datasets())
    def test_total_worth_matches_within_rounding(self, d):
        assert rel_close(total_worth(induce_credit_function(d)), d.total_worth())


class TestTotalWorth:
    def test_single_entry(self):
        assert total_worth(CreditFunction(["a", "b"], {("a", "b"): 7})) == 7

    def test_zero(self):
        assert total_worth(CreditFunction(["a", "b"])) == 0

    def test_hand_sum(self):
        assert total_worth(CreditFunction(["a", "b"], {("a",): 5, ("a", "b"): 2})) == 7


class TestPermute:
    def test_identity(self):
        c = CreditFunction(["a", "b"], {("a", "b"): 10})
        assert permute_credit_function(c, {"a": "a", "b": "b"}) == c

    def test_swap_singleton(self):
        c = CreditFunction(["a", "b"], {("a",): 5})
        d = permute_credit_function(c, {"a": "b", "b": "a"})
        assert d(["b"]) == 5 and d(["a"]) == 0

    def test_swap_coalitionwise(self):
        c = CreditFunction(["a", "b"], {("a",): 5, ("a", "b"): 2})
        d = permute_credit_function(c, swap("a", "b", c.author_universe))
        assert d == CreditFunction(["a", "b"], {("b",): 5, ("a", "b"): 2})

    @pytest.mark.parametrize(
        "pi",
        [{"a": "b"}, {"a": "a", "b": "a"}, {"a": "b", "b": "c"}, {"a": "a", "b": "b", "c": "c"}],
    )
    def test_rejects_non_bijection(self, pi):
        c = CreditFunction(["a", "b"], {("a",): 1})
        with pytest.raises(ModelError):
            permute_credit_function(c, pi)

    @given(st.data())
    def test_definition_holds_for_every_coalition(self, data):
        c = data.draw(credit_functions())
        pi = data.draw(bijections(c.author_universe))
        d = permute_credit_function(c, pi)
        for S, value in c.items():
            assert d([pi[a] for a in S]) == value
        assert d.author_universe == c.author_universe

    @given(st.data())
    def test_swap_is_an_involution(self, data):
        c = data.draw(credit_functions(min_authors=2))
        a, b = data.draw(st.permutations(c.authors))[:2]
        pi = swap(a, b, c.author_universe)
        assert permute_credit_function(permute_credit_function(c, pi), pi) == c

    @given(st.data())
    def test_total_worth_invariant(self, data):
        c = data.draw(credit_functions())
        pi = data.draw(bijections(c.author_universe))
        assert total_worth(permute_credit_function(c, pi)) == total_worth(c)
