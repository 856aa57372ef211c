"""Funding-chain eligibility: only the last link reaching an end business
borrower qualifies. Checked against a brute-force reference on every small
graph shape.
"""

import itertools
import random

import pytest

from circuitforge.policy import (
    BadGraph,
    BorrowerTag,
    ChainNode,
    CycleDetected,
    Eligibility,
    LoanGraph,
    classify_chain,
)


def graph(tags: dict[str, str], links) -> LoanGraph:
    return LoanGraph.of(tags, links)


def brute_force(tags: dict[str, str], links) -> dict[str, Eligibility]:
    """Independent reference: a loan is eligible iff it funds no other loan
    and its borrower is an end business borrower."""
    sources = {source for _, source in links}
    verdict = {}
    for loan_id, tag in tags.items():
        if loan_id in sources:
            verdict[loan_id] = Eligibility.INELIGIBLE_CHAINED
        elif tag == "end_business_borrower":
            verdict[loan_id] = Eligibility.ELIGIBLE
        else:
            verdict[loan_id] = Eligibility.INELIGIBLE_NON_BUSINESS
    return verdict


class TestDocumentedShapes:
    def test_straight_chain_only_the_last_link_is_eligible(self):
        tags = {"L1": "intermediary", "L2": "intermediary",
                "L3": "end_business_borrower"}
        links = [("L2", "L1"), ("L3", "L2")]
        got = classify_chain(graph(tags, links))
        assert got["L1"] is Eligibility.INELIGIBLE_CHAINED
        assert got["L2"] is Eligibility.INELIGIBLE_CHAINED
        assert got["L3"] is Eligibility.ELIGIBLE

    def test_single_business_loan_is_eligible(self):
        got = classify_chain(graph({"L": "end_business_borrower"}, []))
        assert got["L"] is Eligibility.ELIGIBLE

    def test_single_non_business_loan_is_not(self):
        got = classify_chain(graph({"L": "intermediary"}, []))
        assert got["L"] is Eligibility.INELIGIBLE_NON_BUSINESS

    def test_diamond_resolves_each_leaf_independently(self):
        tags = {"A": "intermediary", "B": "intermediary",
                "C": "intermediary", "D": "end_business_borrower",
                "E": "end_business_borrower"}
        links = [("B", "A"), ("C", "A"), ("D", "B"), ("E", "C")]
        got = classify_chain(graph(tags, links))
        assert got["A"] is Eligibility.INELIGIBLE_CHAINED
        assert got["D"] is Eligibility.ELIGIBLE
        assert got["E"] is Eligibility.ELIGIBLE

    def test_cycle_is_reported_not_classified(self):
        tags = {"A": "intermediary", "B": "intermediary"}
        links = [("A", "B"), ("B", "A")]
        with pytest.raises(CycleDetected):
            classify_chain(graph(tags, links))

    def test_self_loop_is_a_cycle(self):
        with pytest.raises(CycleDetected):
            classify_chain(graph({"A": "intermediary"}, [("A", "A")]))


class TestGraphValidation:
    def test_duplicate_ids_rejected(self):
        with pytest.raises(BadGraph):
            LoanGraph(nodes=(ChainNode("A", BorrowerTag.INTERMEDIARY),
                             ChainNode("A", BorrowerTag.INTERMEDIARY)),
                      links=())

    def test_unknown_link_endpoint_rejected(self):
        with pytest.raises(BadGraph):
            graph({"A": "intermediary"}, [("A", "ghost")])

    def test_unknown_tag_rejected(self):
        with pytest.raises(BadGraph):
            graph({"A": "shadow_bank"}, [])


def has_cycle(n: int, links) -> bool:
    adjacency = {i: [] for i in range(n)}
    for loan, source in links:
        adjacency[source].append(loan)
    seen = [0] * n
    for root in range(n):
        if seen[root]:
            continue
        stack = [(root, iter(adjacency[root]))]
        seen[root] = 1
        while stack:
            node, children = stack[-1]
            advanced = False
            for child in children:
                if seen[child] == 1:
                    return True
                if seen[child] == 0:
                    seen[child] = 1
                    stack.append((child, iter(adjacency[child])))
                    advanced = True
                    break
            if not advanced:
                seen[node] = 2
                stack.pop()
    return False


class TestBruteForceEquivalence:
    def enumerate_cases(self, n: int, max_links: int):
        """All tag assignments x all link subsets up to ``max_links``."""
        ids = [f"N{i}" for i in range(n)]
        possible_links = [(a, b) for a in range(n) for b in range(n) if a != b]
        tag_choices = itertools.product(
            ("end_business_borrower", "intermediary"), repeat=n)
        for tags_tuple in tag_choices:
            tags = dict(zip(ids, tags_tuple))
            for count in range(max_links + 1):
                for subset in itertools.combinations(possible_links, count):
                    named = [(ids[a], ids[b]) for a, b in subset]
                    yield tags, named, subset

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_exhaustive_small_graphs(self, n):
        checked = 0
        for tags, links, raw in self.enumerate_cases(n, max_links=4):
            if has_cycle(n, raw):
                with pytest.raises(CycleDetected):
                    classify_chain(graph(tags, links))
            else:
                assert classify_chain(graph(tags, links)) == \
                    brute_force(tags, links)
            checked += 1
        assert checked > 0

    @pytest.mark.parametrize("seed", [11, 23, 47])
    def test_sampled_graphs_up_to_six_nodes(self, seed):
        rng = random.Random(seed)
        for _ in range(400):
            n = rng.randint(4, 6)
            ids = [f"N{i}" for i in range(n)]
            tags = {i: rng.choice(("end_business_borrower", "intermediary"))
                    for i in ids}
            possible = [(a, b) for a in range(n) for b in range(n) if a != b]
            raw = rng.sample(possible, k=rng.randint(0, min(len(possible), 7)))
            links = [(ids[a], ids[b]) for a, b in raw]
            if has_cycle(n, raw):
                with pytest.raises(CycleDetected):
                    classify_chain(graph(tags, links))
            else:
                assert classify_chain(graph(tags, links)) == \
                    brute_force(tags, links)
