"""Search strategies: classified seed terms, exclusions, execution, term tallies."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO

from .corpus import Corpus, YearWindow
from .index import FIELDS, PositionalIndex
from .query import ParseError, QueryAst, evaluate, parse_query
from .rounding import percent

TERM_CLASSES = ("general", "policy", "technical")


class StrategyLoadError(ValueError):
    pass


@dataclass(frozen=True)
class ClassifiedTerm:
    query_text: str
    term_class: str

    def __post_init__(self):
        if self.term_class not in TERM_CLASSES:
            raise ValueError(f"unknown term_class: {self.term_class!r}")


@dataclass(frozen=True)
class EnhancementSpec:
    kind: str = "cluster_threshold"
    threshold: float = 0.15
    assignment_source: str = "computed"  # or a path to an assignment file
    resolution: float = 1.0
    seed: int = 0
    whole_corpus_shares: bool = False

    def __post_init__(self):
        if self.kind != "cluster_threshold":
            raise ValueError(f"unknown enhancement kind: {self.kind!r}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1]: {self.threshold}")


@dataclass(frozen=True)
class SearchStrategy:
    name: str
    seed_terms: tuple[ClassifiedTerm, ...]
    exclusion_terms: tuple[str, ...] = ()
    fields: tuple[str, ...] = FIELDS
    window: YearWindow = field(default_factory=lambda: YearWindow(2015, 2019))
    enhancement: EnhancementSpec | None = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("strategy name must be non-empty")
        if not self.seed_terms:
            raise ValueError("strategy needs at least one seed term")


class ResultSet:
    """Set of retrieved publications; DOI view derived from corpus records."""

    def __init__(self, strategy_name: str, corpus: Corpus, members):
        self.strategy_name = strategy_name
        self.corpus_name = corpus.name
        self.members: frozenset[str] = frozenset(members)
        unknown = self.members - corpus.records.keys()
        if unknown:
            raise ValueError(f"members not in corpus: {sorted(unknown)[:5]}")
        dois = [corpus.doi_of(m) for m in self.members]
        self.doi_members: frozenset[str] = frozenset(d for d in dois if d)
        self.doi_record_count: int = sum(1 for d in dois if d)

    def __len__(self) -> int:
        return len(self.members)


def _parse_strategy_query(text: str, label: str) -> QueryAst:
    try:
        return parse_query(text)
    except ParseError as exc:
        raise StrategyLoadError(f"query {label!r} does not parse: {exc}") from exc


def load_strategy(source: IO[str] | dict) -> SearchStrategy:
    """Load a strategy file (JSON object, see README for the schema).

    All queries are parsed eagerly so a bad query fails at load time.
    """
    doc = source if isinstance(source, dict) else json.load(source)
    try:
        name = doc["name"]
        seeds_raw = doc["seeds"]
    except KeyError as exc:
        raise StrategyLoadError(f"missing key: {exc}") from exc
    seeds = []
    for entry in seeds_raw:
        term_class = entry.get("class", "general")
        if term_class not in TERM_CLASSES:
            raise StrategyLoadError(f"unknown term_class: {term_class!r}")
        _parse_strategy_query(entry["query"], entry["query"])
        seeds.append(ClassifiedTerm(entry["query"], term_class))
    exclusions = tuple(doc.get("exclusions", ()))
    for q in exclusions:
        _parse_strategy_query(q, q)
    window_doc = doc.get("window", {"start": 2015, "end": 2019})
    enhancement = None
    if doc.get("enhancement"):
        e = doc["enhancement"]
        try:
            enhancement = EnhancementSpec(
                kind=e.get("kind", "cluster_threshold"),
                threshold=e.get("threshold", 0.15),
                assignment_source=e.get("assignment_source", "computed"),
                resolution=e.get("resolution", 1.0),
                seed=e.get("seed", 0),
                whole_corpus_shares=e.get("whole_corpus_shares", False),
            )
        except ValueError as exc:
            raise StrategyLoadError(str(exc)) from exc
    try:
        return SearchStrategy(
            name=name,
            seed_terms=tuple(seeds),
            exclusion_terms=exclusions,
            fields=tuple(doc.get("fields", FIELDS)),
            window=YearWindow(window_doc["start"], window_doc["end"]),
            enhancement=enhancement,
        )
    except ValueError as exc:
        raise StrategyLoadError(str(exc)) from exc


def load_strategy_file(path) -> SearchStrategy:
    with open(path, encoding="utf-8") as fh:
        return load_strategy(fh)


def run_strategy(strategy: SearchStrategy, index: PositionalIndex,
                 corpus: Corpus) -> ResultSet:
    """Execute seeds minus exclusions, then apply the analysis year window.

    Cluster enhancement is a separate step (see the clustering module).
    """
    matched: set[str] = set()
    for term in strategy.seed_terms:
        matched |= evaluate(parse_query(term.query_text), index, strategy.fields)
    for text in strategy.exclusion_terms:
        matched -= evaluate(parse_query(text), index, strategy.fields)
    members = {m for m in matched if strategy.window.contains(corpus[m].year)}
    return ResultSet(strategy.name, corpus, members)


def term_class_summary(strategy: SearchStrategy) -> dict:
    """Tally seed terms by class; shares are whole percents of the total."""
    counts = {cls: 0 for cls in TERM_CLASSES}
    for term in strategy.seed_terms:
        counts[term.term_class] += 1
    total = len(strategy.seed_terms)
    shares = {cls: int(percent(counts[cls], total, 0))
              for cls in TERM_CLASSES}
    return {"strategy": strategy.name, "counts": counts, "total": total,
            "shares": shares}
