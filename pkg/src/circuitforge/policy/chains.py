"""Eligibility of loans in funding chains.

When repaid principal is redirected to treasuries instead of being
destroyed, a chain of loans — loan A funding loan B funding the real
borrower — must not multiply the redirected amount. Only the final link,
the loan reaching an end business borrower, qualifies; every loan that
funded another loan is just plumbing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import BadGraph, CycleDetected


class BorrowerTag(enum.Enum):
    END_BUSINESS_BORROWER = "end_business_borrower"
    INTERMEDIARY = "intermediary"

    @classmethod
    def parse(cls, value: "BorrowerTag | str") -> "BorrowerTag":
        if isinstance(value, BorrowerTag):
            return value
        try:
            return cls(value)
        except ValueError:
            raise BadGraph(f"unknown borrower tag {value!r}") from None


class Eligibility(enum.Enum):
    ELIGIBLE = "eligible"
    INELIGIBLE_CHAINED = "ineligible_chained"
    INELIGIBLE_NON_BUSINESS = "ineligible_non_business"


@dataclass(frozen=True)
class ChainNode:
    id: str
    tag: BorrowerTag
    kind: str = "commercial"


@dataclass(frozen=True)
class LoanGraph:
    """Loans plus funded-by links: a link (loan, source) says ``source``
    provided the money that ``loan`` lent onward."""

    nodes: tuple[ChainNode, ...]
    links: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        seen = set()
        for node in self.nodes:
            if node.id in seen:
                raise BadGraph(f"duplicate loan id {node.id!r}")
            seen.add(node.id)
        for loan, source in self.links:
            for endpoint in (loan, source):
                if endpoint not in seen:
                    raise BadGraph(f"link references unknown loan {endpoint!r}")

    @classmethod
    def of(cls, nodes, links=()) -> "LoanGraph":
        """Build from a {loan_id: borrower_tag} mapping and (loan, source) pairs."""
        built = tuple(ChainNode(id=name, tag=BorrowerTag.parse(tag))
                      for name, tag in dict(nodes).items())
        return cls(nodes=built, links=tuple((a, b) for a, b in links))

    def sources_of(self, loan_id: str) -> tuple[str, ...]:
        return tuple(src for loan, src in self.links if loan == loan_id)

    def ids(self) -> tuple[str, ...]:
        return tuple(node.id for node in self.nodes)


def classify_chain(graph: LoanGraph) -> dict[str, Eligibility]:
    """Label every loan Eligible, IneligibleChained, or IneligibleNonBusiness.

    A loan is Eligible exactly when its borrower is an end business
    borrower and no other loan was funded by it (it is the final link).
    Loans that funded other loans are IneligibleChained regardless of tag.
    """
    sources: dict[str, list[str]] = {node.id: [] for node in graph.nodes}
    fed_another: set[str] = set()
    for loan, source in graph.links:
        sources[loan].append(source)
        fed_another.add(source)

    WHITE, GREY, BLACK = 0, 1, 2
    color = {node.id: WHITE for node in graph.nodes}
    for start in graph.ids():
        if color[start] != WHITE:
            continue
        stack: list[tuple[str, int]] = [(start, 0)]
        color[start] = GREY
        while stack:
            node, idx = stack[-1]
            if idx < len(sources[node]):
                stack[-1] = (node, idx + 1)
                nxt = sources[node][idx]
                if color[nxt] == GREY:
                    raise CycleDetected(
                        f"funding links loop through {nxt!r}")
                if color[nxt] == WHITE:
                    color[nxt] = GREY
                    stack.append((nxt, 0))
            else:
                color[node] = BLACK
                stack.pop()

    labels: dict[str, Eligibility] = {}
    for node in graph.nodes:
        if node.id in fed_another:
            labels[node.id] = Eligibility.INELIGIBLE_CHAINED
        elif node.tag is BorrowerTag.END_BUSINESS_BORROWER:
            labels[node.id] = Eligibility.ELIGIBLE
        else:
            labels[node.id] = Eligibility.INELIGIBLE_NON_BUSINESS
    return labels
