"""Citation graph construction, modularity clustering, cluster-threshold enhancement."""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable

import networkx as nx

from .corpus import Corpus
from .strategy import ResultSet


class AssignmentLoadError(ValueError):
    pass


@dataclass
class CitationGraph:
    graph: nx.Graph
    dangling_count: int

    @property
    def nodes(self):
        return set(self.graph.nodes)

    @property
    def edges(self):
        return {frozenset(e) for e in self.graph.edges}


@dataclass(frozen=True)
class ClusterAssignment:
    mapping: dict[str, str]

    @property
    def cluster_count(self) -> int:
        return len(set(self.mapping.values()))

    def clusters(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {}
        for node, cid in self.mapping.items():
            out.setdefault(cid, set()).add(node)
        return out


def build_citation_graph(corpus: Corpus) -> CitationGraph:
    """Undirected edge for every reference whose target exists in the corpus.

    Reciprocal citations collapse to one edge; references to ids outside the
    corpus are dropped and counted.
    """
    g = nx.Graph()
    g.add_nodes_from(corpus.records)
    dangling = 0
    for rec in corpus:
        for ref in rec.references:
            if ref == rec.internal_id:
                continue
            if ref in corpus:
                g.add_edge(rec.internal_id, ref, weight=1.0)
            else:
                dangling += 1
    return CitationGraph(graph=g, dangling_count=dangling)


def cluster_citation_graph(graph: CitationGraph, resolution: float = 1.0,
                           seed: int = 0) -> ClusterAssignment:
    """Partition the citation graph with seeded modularity-based local moving.

    Deterministic for fixed (graph, resolution, seed); isolated nodes become
    singleton clusters.
    """
    g = graph.graph
    if g.number_of_nodes() == 0:
        raise ValueError("empty graph")
    communities = nx.community.louvain_communities(
        g, resolution=resolution, seed=seed)
    # Canonical labels: clusters ordered by their smallest member id.
    mapping: dict[str, str] = {}
    for i, members in enumerate(sorted(communities, key=lambda c: min(c))):
        for node in members:
            mapping[node] = f"c{i}"
    return ClusterAssignment(mapping=mapping)


def load_cluster_assignment(source: IO[str], corpus: Corpus) -> ClusterAssignment:
    """Read `internal_id<TAB>cluster_id` lines; every id must exist in the corpus."""
    mapping: dict[str, str] = {}
    for lineno, line in enumerate(source, start=1):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise AssignmentLoadError(f"line {lineno}: expected id<TAB>cluster_id")
        node, cid = parts
        if node not in corpus:
            raise AssignmentLoadError(f"line {lineno}: unknown internal_id {node!r}")
        mapping[node] = cid
    return ClusterAssignment(mapping=mapping)


def save_cluster_assignment(assignment: ClusterAssignment, sink: IO[str]) -> None:
    for node in sorted(assignment.mapping):
        sink.write(f"{node}\t{assignment.mapping[node]}\n")


@dataclass
class EnhancementReport:
    included_clusters: dict[str, float]
    excluded_clusters: dict[str, float]
    seed_members_lost: int
    singleton_members: int


def enhance_by_cluster_threshold(seed_result: ResultSet,
                                 assignment: ClusterAssignment,
                                 threshold: float,
                                 corpus: Corpus,
                                 eligible: Iterable[str] | None = None,
                                 ) -> tuple[ResultSet, EnhancementReport]:
    """Cluster-threshold enhancement: include whole clusters whose share of
    seed publications reaches the threshold, drop everything else.

    share(c) = |seed members in c| / |c|, computed over `eligible` members
    (defaults to all assigned nodes). share == threshold qualifies.
    Seed members missing from the assignment are treated as singleton
    clusters so they are not silently dropped.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1]: {threshold}")
    eligible_set = set(eligible) if eligible is not None else None

    clusters = assignment.clusters()
    if eligible_set is not None:
        clusters = {cid: members & eligible_set
                    for cid, members in clusters.items()}
        clusters = {cid: members for cid, members in clusters.items() if members}

    seeds = set(seed_result.members)
    singleton_members = 0
    assigned = set(assignment.mapping)
    for node in sorted(seeds - assigned):
        clusters[f"__singleton__{node}"] = {node}
        singleton_members += 1

    included: dict[str, float] = {}
    excluded: dict[str, float] = {}
    out: set[str] = set()
    lost = 0
    for cid in sorted(clusters):
        members = clusters[cid]
        share = len(members & seeds) / len(members)
        if share >= threshold:
            included[cid] = share
            out |= members
        else:
            excluded[cid] = share
            lost += len(members & seeds)
    report = EnhancementReport(included_clusters=included,
                               excluded_clusters=excluded,
                               seed_members_lost=lost,
                               singleton_members=singleton_members)
    enhanced = ResultSet(seed_result.strategy_name, corpus, out)
    return enhanced, report
