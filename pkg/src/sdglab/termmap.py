"""Contrast term maps: n-gram extraction, co-occurrence graph, layout, exports."""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from .index import tokenize

DEFAULT_STOPLIST = frozenset("""
a an and are as at be but by for from has have in is it its of on or that the
their this to was were which with we our not no
""".split())

_BLUE = (0x21, 0x66, 0xAC)
_MID = (0xF7, 0xF7, 0xF7)
_RED = (0xB2, 0x18, 0x2B)


@dataclass(frozen=True)
class TermMapConfig:
    min_occurrences: int = 70
    max_ngram: int = 3
    stoplist: frozenset[str] = DEFAULT_STOPLIST
    layout_seed: int = 0
    layout_iterations: int = 150

    def __post_init__(self):
        if self.min_occurrences < 1:
            raise ValueError("min_occurrences must be >= 1")


@dataclass(frozen=True)
class TermStats:
    term: str
    occ_a: int
    occ_b: int

    @property
    def score(self) -> float:
        return contrast_score(self.occ_a, self.occ_b)

    @property
    def total(self) -> int:
        return self.occ_a + self.occ_b


@dataclass
class TermMap:
    name_a: str
    name_b: str
    terms: list[TermStats]
    edges: list[tuple[str, str, int]]
    coordinates: dict[str, tuple[float, float]]
    config: TermMapConfig


def contrast_score(occ_a: int, occ_b: int) -> float:
    """Frequency contrast in [-1, +1]: negative leans to the first set,
    positive to the second, 0 balanced."""
    if occ_a == 0 and occ_b == 0:
        raise ValueError("term unobserved")
    return (occ_b - occ_a) / (occ_a + occ_b)


def _doc_ngrams(record, config: TermMapConfig) -> set[str]:
    """All retained-candidate n-grams of a record's title and abstract."""
    grams: set[str] = set()
    for text in (record.title, record.abstract):
        tokens = [tok for tok, _ in tokenize(text)]
        for n in range(1, config.max_ngram + 1):
            for i in range(len(tokens) - n + 1):
                gram = tokens[i:i + n]
                if gram[0] in config.stoplist or gram[-1] in config.stoplist:
                    continue
                grams.add(" ".join(gram))
    return grams


def extract_terms(docs_a: Iterable, docs_b: Iterable,
                  config: TermMapConfig) -> list[TermStats]:
    """Document-frequency tally of 1..max_ngram grams over titles+abstracts,
    retaining terms whose combined count reaches min_occurrences."""
    occ_a: dict[str, int] = {}
    occ_b: dict[str, int] = {}
    for doc in docs_a:
        for gram in _doc_ngrams(doc, config):
            occ_a[gram] = occ_a.get(gram, 0) + 1
    for doc in docs_b:
        for gram in _doc_ngrams(doc, config):
            occ_b[gram] = occ_b.get(gram, 0) + 1
    stats = []
    for term in sorted(set(occ_a) | set(occ_b)):
        a, b = occ_a.get(term, 0), occ_b.get(term, 0)
        if a + b >= config.min_occurrences:
            stats.append(TermStats(term=term, occ_a=a, occ_b=b))
    return stats


def cooccurrence_edges(terms: list[TermStats], docs: Iterable,
                       config: TermMapConfig) -> list[tuple[str, str, int]]:
    """Edges weighted by the number of documents containing both terms."""
    retained = {t.term for t in terms}
    weights: dict[tuple[str, str], int] = {}
    for doc in docs:
        present = sorted(_doc_ngrams(doc, config) & retained)
        for u, v in combinations(present, 2):
            weights[(u, v)] = weights.get((u, v), 0) + 1
    return [(u, v, w) for (u, v), w in sorted(weights.items())]


def layout_map(edges: list[tuple[str, str, int]], terms: list[TermStats],
               config: TermMapConfig) -> dict[str, tuple[float, float]]:
    """Seeded force-directed layout normalized to the unit square.

    Attraction along weighted edges, repulsion between all pairs, fixed
    iteration count; deterministic for a fixed layout_seed.
    """
    names = [t.term for t in terms]
    n = len(names)
    if n == 0:
        raise ValueError("layout needs at least one term")
    if n == 1:
        return {names[0]: (0.5, 0.5)}
    idx = {name: i for i, name in enumerate(names)}
    rng = np.random.default_rng(config.layout_seed)
    pos = rng.random((n, 2))

    adj = np.zeros((n, n))
    max_w = max((w for _, _, w in edges), default=1)
    for u, v, w in edges:
        if u in idx and v in idx:
            adj[idx[u], idx[v]] = adj[idx[v], idx[u]] = w / max_w

    k = 1.0 / np.sqrt(n)
    temp = 0.1
    cooling = temp / (config.layout_iterations + 1)
    for _ in range(config.layout_iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(delta, axis=-1)
        np.fill_diagonal(dist, 1.0)
        dist = np.maximum(dist, 1e-9)
        unit = delta / dist[..., None]
        repulse = (k * k / dist)[..., None] * unit
        attract = (adj * dist / k)[..., None] * unit
        disp = repulse.sum(axis=1) - attract.sum(axis=1)
        length = np.maximum(np.linalg.norm(disp, axis=-1, keepdims=True), 1e-9)
        pos += disp / length * np.minimum(length, temp)
        temp = max(temp - cooling, 1e-4)

    lo, hi = pos.min(axis=0), pos.max(axis=0)
    span = np.where(hi - lo > 1e-12, hi - lo, 1.0)
    pos = (pos - lo) / span
    pos = np.where((hi - lo) > 1e-12, pos, 0.5)
    return {name: (float(x), float(y)) for name, (x, y) in zip(names, pos)}


def build_term_map(name_a: str, docs_a, name_b: str, docs_b,
                   config: TermMapConfig | None = None) -> TermMap:
    config = config or TermMapConfig()
    terms = extract_terms(docs_a, docs_b, config)
    combined = {d.internal_id: d for d in list(docs_a) + list(docs_b)}
    edges = cooccurrence_edges(terms, combined.values(), config)
    coords = layout_map(edges, terms, config) if terms else {}
    return TermMap(name_a=name_a, name_b=name_b, terms=terms, edges=edges,
                   coordinates=coords, config=config)


def score_color(score: float) -> str:
    """Blue (-1) through neutral (0) to red (+1)."""
    if score < 0:
        lo, hi, t = _BLUE, _MID, score + 1.0
    else:
        lo, hi, t = _MID, _RED, score
    rgb = tuple(round(a + (b - a) * t) for a, b in zip(lo, hi))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


# ---------------------------------------------------------------------------
# Exports


def export_term_map(term_map: TermMap, fmt: str) -> str:
    if fmt == "json":
        return _export_json(term_map)
    if fmt == "graphml":
        return _export_graphml(term_map)
    if fmt == "html":
        return _export_html(term_map)
    raise ValueError(f"unknown format: {fmt!r}")


def _export_json(term_map: TermMap) -> str:
    doc = {
        "name_a": term_map.name_a,
        "name_b": term_map.name_b,
        "config": {
            "min_occurrences": term_map.config.min_occurrences,
            "max_ngram": term_map.config.max_ngram,
            "stoplist": sorted(term_map.config.stoplist),
            "layout_seed": term_map.config.layout_seed,
            "layout_iterations": term_map.config.layout_iterations,
        },
        "terms": [
            {"term": t.term, "occ_a": t.occ_a, "occ_b": t.occ_b,
             "score": t.score,
             "x": term_map.coordinates[t.term][0],
             "y": term_map.coordinates[t.term][1]}
            for t in term_map.terms
        ],
        "edges": [{"source": u, "target": v, "weight": w}
                  for u, v, w in term_map.edges],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_term_map(text: str) -> TermMap:
    doc = json.loads(text)
    cfg = doc["config"]
    config = TermMapConfig(
        min_occurrences=cfg["min_occurrences"],
        max_ngram=cfg["max_ngram"],
        stoplist=frozenset(cfg["stoplist"]),
        layout_seed=cfg["layout_seed"],
        layout_iterations=cfg["layout_iterations"],
    )
    terms = [TermStats(term=t["term"], occ_a=t["occ_a"], occ_b=t["occ_b"])
             for t in doc["terms"]]
    coords = {t["term"]: (t["x"], t["y"]) for t in doc["terms"]}
    edges = [(e["source"], e["target"], e["weight"]) for e in doc["edges"]]
    return TermMap(name_a=doc["name_a"], name_b=doc["name_b"], terms=terms,
                   edges=edges, coordinates=coords, config=config)


def _export_graphml(term_map: TermMap) -> str:
    root = ET.Element("graphml", xmlns="http://graphml.graphdrawing.org/xmlns")
    for key_id, attr, target, kind in (
            ("occ_a", "occ_a", "node", "int"),
            ("occ_b", "occ_b", "node", "int"),
            ("score", "score", "node", "double"),
            ("x", "x", "node", "double"),
            ("y", "y", "node", "double"),
            ("weight", "weight", "edge", "int")):
        ET.SubElement(root, "key", id=key_id, attrib={
            "attr.name": attr, "attr.type": kind, "for": target})
    graph = ET.SubElement(root, "graph", id="termmap", edgedefault="undirected")
    for t in term_map.terms:
        node = ET.SubElement(graph, "node", id=t.term)
        x, y = term_map.coordinates[t.term]
        for key, value in (("occ_a", t.occ_a), ("occ_b", t.occ_b),
                           ("score", t.score), ("x", x), ("y", y)):
            data = ET.SubElement(node, "data", key=key)
            data.text = repr(value) if isinstance(value, float) else str(value)
    for i, (u, v, w) in enumerate(term_map.edges):
        edge = ET.SubElement(graph, "edge", id=f"e{i}", source=u, target=v)
        data = ET.SubElement(edge, "data", key="weight")
        data.text = str(w)
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


def _export_html(term_map: TermMap) -> str:
    """Single self-contained HTML page: bubbles sized by combined count,
    colored blue (first set) to red (second set)."""
    width, height = 900, 640
    max_total = max((t.total for t in term_map.terms), default=1)
    bubbles = []
    for t in sorted(term_map.terms, key=lambda t: -t.total):
        x, y = term_map.coordinates[t.term]
        cx = 40 + x * (width - 80)
        cy = 40 + y * (height - 80)
        r = 6 + 24 * (t.total / max_total) ** 0.5
        color = score_color(t.score)
        bubbles.append(
            f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r:.1f}" fill="{color}" '
            f'fill-opacity="0.85"><title>{t.term}: {t.occ_a} vs {t.occ_b} '
            f'(score {t.score:+.2f})</title></circle>\n'
            f'<text x="{cx:.1f}" y="{cy:.1f}" text-anchor="middle" '
            f'font-size="10" font-family="sans-serif">{t.term}</text>')
    return f"""<!DOCTYPE html>
<html>
<head>
<meta charset="utf-8">
<title>Term map: {term_map.name_a} vs {term_map.name_b}</title>
<style>body {{ font-family: sans-serif; margin: 1em; }}</style>
</head>
<body>
<h1>{term_map.name_a} (blue) vs {term_map.name_b} (red)</h1>
<svg width="{width}" height="{height}" viewBox="0 0 {width} {height}">
{chr(10).join(bubbles)}
</svg>
</body>
</html>
"""
