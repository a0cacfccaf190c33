#!/usr/bin/env python3
"""Regenerate the shipped strategy files.

The term lists are desk-scale excerpts: the documented terms of each method
are kept verbatim and the remainder of each class is filled with generated
climate-domain phrases so the per-class totals match the published tallies
(Elsevier 458 = 210/62/186, STRINGS 98 = 70/24/4, SIRIS 228 = 119/55/54,
Dimensions 45 = 34/9/2).
"""

from __future__ import annotations

import json
import sys
from itertools import product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sdglab.query import parse_query  # noqa: E402

OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "sdglab" / "data" / "strategies"

GENERAL_BASES = [
    "climate", "global warming", "carbon", "greenhouse gas", "sea level",
    "extreme weather", "drought", "flood", "heatwave", "glacier", "permafrost",
    "ocean warming", "temperature rise", "warming", "emission", "deforestation",
    "wildfire", "monsoon", "storm surge", "polar ice",
]
GENERAL_SUFFIXES = [
    "change", "crisis", "risk", "impact", "action", "adaptation", "trend",
    "variability", "threat", "hazard", "event", "pattern", "projection",
    "scenario", "awareness", "vulnerability", "resilience", "effect",
    "consequence", "response",
]
POLICY_BASES = [
    "carbon", "emission", "climate", "energy", "mitigation", "adaptation",
    "greenhouse gas", "renewable energy", "fossil fuel", "net zero",
]
POLICY_SUFFIXES = [
    "tax", "trading", "levy", "pricing", "policy", "regulation", "subsidy",
    "agreement", "pledge", "target", "quota", "standard", "scheme",
    "framework", "accord", "legislation", "directive", "governance",
    "treaty", "incentive",
]
TECHNICAL_BASES = [
    "solar", "wind", "geothermal", "tidal", "biomass", "hydrogen", "battery",
    "photovoltaic", "biofuel", "carbon capture", "thermal", "electrolytic",
    "anaerobic", "pyrolysis", "catalytic",
]
TECHNICAL_SUFFIXES = [
    "cell efficiency", "turbine design", "energy storage", "electrolysis",
    "gasification", "sequestration", "conversion yield", "grid integration",
    "heat exchanger", "membrane separation", "digestion reactor",
    "inverter topology", "capacity factor", "degradation model",
]


def fill(seed_phrases, bases, suffixes, count):
    phrases = list(dict.fromkeys(seed_phrases))
    for base, suffix in product(bases, suffixes):
        if len(phrases) >= count:
            break
        candidate = f"{base} {suffix}"
        if candidate not in phrases:
            phrases.append(candidate)
    assert len(phrases) >= count, f"pool exhausted: {len(phrases)} < {count}"
    return phrases[:count]


def quoted(phrases):
    return [f'"{p}"' for p in phrases]


def proximity(phrases, window=3):
    out = []
    for p in phrases:
        out.append(f'"{p}"~{window}' if " " in p else f'"{p}"')
    return out


def make_strategy(name, general, policy, technical, exclusions=(),
                  enhancement=None):
    seeds = ([{"query": q, "class": "general"} for q in general]
             + [{"query": q, "class": "policy"} for q in policy]
             + [{"query": q, "class": "technical"} for q in technical])
    texts = [s["query"] for s in seeds]
    assert len(set(texts)) == len(texts), f"{name}: duplicate seed queries"
    for q in texts + list(exclusions):
        parse_query(q)
    doc = {
        "name": name,
        "fields": ["title", "abstract", "keywords"],
        "window": {"start": 2015, "end": 2019},
        "seeds": seeds,
        "exclusions": list(exclusions),
    }
    if enhancement:
        doc["enhancement"] = enhancement
    return doc


def main() -> None:
    elsevier = make_strategy(
        "elsevier",
        general=quoted(fill(
            ["climate change", "global warming", "greenhouse gas emission",
             "sea level rise", "climate action", "extreme weather"],
            GENERAL_BASES, GENERAL_SUFFIXES, 210)),
        policy=quoted(fill(
            ["emissions trading", "carbon tax", "climate policy",
             "paris agreement", "kyoto protocol"],
            POLICY_BASES, POLICY_SUFFIXES, 62)),
        technical=quoted(fill(
            ["thermal energy storage", "radiative forcing",
             "carbon sequestration"],
            TECHNICAL_BASES, TECHNICAL_SUFFIXES, 184))
        + ['"legum* breed*" AND ("climate" OR "drought" OR "flood")',
           '"co2" AND ("global warming" OR "climate")'],
        exclusions=['"prehistoric climate"', '"blood"', '"drug"',
                    '"geomorphology"', '"paleoclimate"', '"ice age"'],
    )

    strings = make_strategy(
        "strings",
        general=quoted(fill(
            ["climate change", "global warming", "carbon economy",
             "temperature rise", "climate crisis"],
            GENERAL_BASES, GENERAL_SUFFIXES, 69))
        + ['"greenhouse gas" AND ("emission" OR "reduction" OR "changing climate")'],
        policy=quoted(fill(
            ["emissions trading", "climate policy", "carbon neutrality pledge"],
            POLICY_BASES, POLICY_SUFFIXES, 24)),
        technical=quoted(["ocean acidification", "radiative forcing",
                          "carbon capture", "blue carbon"]),
        enhancement={"kind": "cluster_threshold", "threshold": 0.15,
                     "assignment_source": "computed", "seed": 0},
    )

    siris = make_strategy(
        "siris",
        general=quoted(fill(
            ["global warming", "greenhouse gas", "temperature rise",
             "sea level rise", "climate emergency"],
            GENERAL_BASES, GENERAL_SUFFIXES, 118))
        + ['"climate change" AND ("policies" OR "education" OR "impact" OR '
           '"reduction" OR "warning" OR "planning" OR "strategy" OR "mitigation")'],
        policy=quoted(fill(
            ["carbon accounting", "carbon audit", "carbon credit",
             "carbon dividend", "carbon fee", "carbon finance",
             "emissions trading"],
            POLICY_BASES, POLICY_SUFFIXES, 55)),
        technical=quoted(fill(
            ["ocean acidification", "radiative forcing", "carbon capture",
             "thermal energy storage", "enhanced weathering"],
            TECHNICAL_BASES, TECHNICAL_SUFFIXES, 54)),
    )

    dimensions = make_strategy(
        "dimensions",
        general=proximity(fill(
            ["climate related hazards", "climate impact", "climate change",
             "global warming", "sea level rise"],
            GENERAL_BASES, GENERAL_SUFFIXES, 34)),
        policy=proximity(fill(
            ["climate policy", "emission reduction target"],
            POLICY_BASES, POLICY_SUFFIXES, 9), window=2),
        technical=proximity(["ocean acidification", "radiative forcing"]),
    )

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for doc in (elsevier, strings, siris, dimensions):
        path = OUT_DIR / f"{doc['name']}.json"
        path.write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n",
                        encoding="utf-8")
        counts = {}
        for s in doc["seeds"]:
            counts[s["class"]] = counts.get(s["class"], 0) + 1
        print(path.name, counts, "total", len(doc["seeds"]))


if __name__ == "__main__":
    main()
