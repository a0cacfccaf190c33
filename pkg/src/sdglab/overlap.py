"""Pairwise DOI overlap and the method/coverage surplus decomposition."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .rounding import percent

# Segment order used in the stacked-bar figures, left to right.
SEGMENT_ORDER = ("surplus_a_coverage", "surplus_a_method", "overlap",
                 "surplus_b_method", "surplus_b_coverage")

_SEGMENT_COLORS = {
    "surplus_a_coverage": "#08306b",
    "surplus_a_method": "#4292c6",
    "overlap": "#969696",
    "surplus_b_method": "#ef6548",
    "surplus_b_coverage": "#7f0000",
}


@dataclass(frozen=True)
class PairwiseComparison:
    name_a: str
    name_b: str
    overlap: frozenset[str]
    surplus_a_method: frozenset[str]
    surplus_a_coverage: frozenset[str]
    surplus_b_method: frozenset[str]
    surplus_b_coverage: frozenset[str]
    denominator: int

    def segment_sets(self) -> dict[str, frozenset[str]]:
        return {name: getattr(self, name) for name in SEGMENT_ORDER}

    @property
    def counts(self) -> dict[str, int]:
        return {name: len(s) for name, s in self.segment_sets().items()}

    @property
    def shares(self) -> dict[str, float]:
        return shares_from_counts(self.counts, self.denominator)


def shares_from_counts(counts: dict[str, int], denominator: int,
                       ndigits: int = 1) -> dict[str, float]:
    """Per-segment shares in percent of the union, rounded half-up."""
    return {name: percent(counts[name], denominator, ndigits)
            for name in SEGMENT_ORDER}


def match_by_doi(result_a, result_b) -> tuple[set[str], set[str], set[str]]:
    """Intersect and difference two result sets on their normalized DOIs.

    Members without a DOI are ignored entirely.
    """
    a, b = set(result_a.doi_members), set(result_b.doi_members)
    return a & b, a - b, b - a


def decompose_surplus(only_a: set[str], coverage_b: set[str],
                      ) -> tuple[set[str], set[str]]:
    """Split one side's surplus into method- and coverage-attributable parts.

    A DOI the other database indexes but its method missed is surplus
    (method); a DOI the other database does not index at all is surplus
    (coverage). The two parts partition the input.
    """
    coverage_b = set(coverage_b)
    surplus_method = {d for d in only_a if d in coverage_b}
    return surplus_method, set(only_a) - surplus_method


def pairwise_compare(result_a, coverage_b, result_b, coverage_a,
                     ) -> PairwiseComparison:
    overlap, only_a, only_b = match_by_doi(result_a, result_b)
    a_method, a_coverage = decompose_surplus(only_a, coverage_b)
    b_method, b_coverage = decompose_surplus(only_b, coverage_a)
    denominator = len(result_a.doi_members | result_b.doi_members)
    return PairwiseComparison(
        name_a=getattr(result_a, "strategy_name", "A"),
        name_b=getattr(result_b, "strategy_name", "B"),
        overlap=frozenset(overlap),
        surplus_a_method=frozenset(a_method),
        surplus_a_coverage=frozenset(a_coverage),
        surplus_b_method=frozenset(b_method),
        surplus_b_coverage=frozenset(b_coverage),
        denominator=denominator,
    )


def render_overlap_bar(comparison: PairwiseComparison,
                       width: int = 800, height: int = 60,
                       sample_size: int | None = 10) -> tuple[str, str]:
    """Five-segment stacked horizontal bar as SVG, plus a JSON data sidecar.

    Zero-width segments are omitted from the SVG but kept in the JSON with
    count 0. Output is deterministic.
    """
    counts = comparison.counts
    shares = comparison.shares
    total = comparison.denominator or 1
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'width="{width}" height="{height + 40}" '
             f'viewBox="0 0 {width} {height + 40}">',
             f'<text x="4" y="16" font-size="14" font-family="sans-serif">'
             f'{comparison.name_a} vs {comparison.name_b}</text>']
    x = 0.0
    for name in SEGMENT_ORDER:
        w = width * counts[name] / total
        if counts[name] > 0:
            parts.append(
                f'<rect x="{x:.2f}" y="24" width="{w:.2f}" height="{height}" '
                f'fill="{_SEGMENT_COLORS[name]}"><title>{name}: {counts[name]} '
                f'({shares[name]}%)</title></rect>')
        x += w
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"

    data = {
        "a": comparison.name_a,
        "b": comparison.name_b,
        "denominator": comparison.denominator,
        "segments": [
            {
                "name": name,
                "count": counts[name],
                "share_pct": shares[name],
                "sample_dois": sorted(comparison.segment_sets()[name])[:sample_size]
                if sample_size is not None
                else sorted(comparison.segment_sets()[name]),
            }
            for name in SEGMENT_ORDER
        ],
    }
    return svg, json.dumps(data, indent=2, sort_keys=True) + "\n"
