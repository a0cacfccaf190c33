"""Bibliographic corpus model: records, DOI normalization, coverage, time windows."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable

_DOI_PREFIXES = ("https://doi.org/", "http://doi.org/", "doi:")


class IngestError(ValueError):
    """Raised when a corpus file cannot be ingested."""


def normalize_doi(raw: str | None) -> str | None:
    """Normalize a DOI string: lowercase, strip URL/scheme prefixes and whitespace.

    Returns None for empty input or anything that does not look like a DOI
    (must start with "10." after stripping).
    """
    if raw is None:
        return None
    doi = raw.strip().lower()
    changed = True
    while changed:
        changed = False
        for prefix in _DOI_PREFIXES:
            if doi.startswith(prefix):
                doi = doi[len(prefix):].strip()
                changed = True
    if not doi or not doi.startswith("10."):
        return None
    return doi


@dataclass(frozen=True)
class PublicationRecord:
    internal_id: str
    title: str
    year: int
    doi: str | None = None
    abstract: str = ""
    keywords: tuple[str, ...] = ()
    document_type: str = ""
    references: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.internal_id:
            raise ValueError("internal_id must be non-empty")
        if not (1000 <= self.year <= 9999):
            raise ValueError(f"year must be a 4-digit positive integer, got {self.year}")


@dataclass(frozen=True)
class YearWindow:
    start_year: int
    end_year: int

    def __post_init__(self):
        if self.start_year > self.end_year:
            raise ValueError(f"start_year {self.start_year} > end_year {self.end_year}")

    def contains(self, year: int) -> bool:
        return self.start_year <= year <= self.end_year


class Corpus:
    """Immutable collection of publication records plus a DOI coverage set.

    Coverage defaults to the DOIs of the loaded records but may be a strict
    superset, modelling records the source database indexes without them
    being loaded here.
    """

    def __init__(self, name: str, records: Iterable[PublicationRecord],
                 coverage: Iterable[str] | None = None):
        self.name = name
        self.records: dict[str, PublicationRecord] = {}
        for rec in records:
            if rec.internal_id in self.records:
                raise IngestError(f"duplicate internal_id: {rec.internal_id}")
            self.records[rec.internal_id] = rec
        record_dois = {r.doi for r in self.records.values() if r.doi}
        self.coverage: frozenset[str] = frozenset(record_dois | set(coverage or ()))

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, internal_id: str) -> PublicationRecord:
        return self.records[internal_id]

    def __contains__(self, internal_id: str) -> bool:
        return internal_id in self.records

    def __iter__(self):
        return iter(self.records.values())

    def doi_of(self, internal_id: str) -> str | None:
        return self.records[internal_id].doi


def _parse_record(obj: dict, lineno: int) -> PublicationRecord:
    for key in ("id", "title", "year"):
        if key not in obj or obj[key] is None:
            raise IngestError(f"line {lineno}: missing required key '{key}'")
    try:
        return PublicationRecord(
            internal_id=str(obj["id"]),
            doi=normalize_doi(obj.get("doi")),
            title=obj["title"],
            abstract=obj.get("abstract", "") or "",
            keywords=tuple(obj.get("keywords", ()) or ()),
            year=int(obj["year"]),
            document_type=obj.get("doc_type", "") or "",
            references=tuple(obj.get("refs", ()) or ()),
        )
    except (TypeError, ValueError) as exc:
        raise IngestError(f"line {lineno}: {exc}") from exc


def ingest_corpus(source: IO[str], name: str = "corpus",
                  coverage: Iterable[str] | None = None) -> Corpus:
    """Read a JSON-lines corpus file: one record object per line."""
    records = []
    seen: set[str] = set()
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise IngestError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
        rec = _parse_record(obj, lineno)
        if rec.internal_id in seen:
            raise IngestError(f"line {lineno}: duplicate internal_id: {rec.internal_id}")
        seen.add(rec.internal_id)
        records.append(rec)
    return Corpus(name=name, records=records, coverage=coverage)


def load_corpus_file(path, name: str | None = None,
                     coverage_path=None) -> Corpus:
    coverage = load_coverage_file(coverage_path) if coverage_path else None
    with open(path, encoding="utf-8") as fh:
        return ingest_corpus(fh, name=name or str(path), coverage=coverage)


def load_coverage_file(path) -> set[str]:
    """Read a coverage file: one DOI per line, normalized on load."""
    dois = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            doi = normalize_doi(line)
            if doi:
                dois.add(doi)
    return dois


def serialize_corpus(corpus: Corpus, sink: IO[str]) -> None:
    """Write a corpus back to the one-record-per-line JSON format."""
    for rec in corpus:
        obj = {
            "id": rec.internal_id,
            "doi": rec.doi,
            "title": rec.title,
            "abstract": rec.abstract,
            "keywords": list(rec.keywords),
            "year": rec.year,
            "doc_type": rec.document_type,
            "refs": list(rec.references),
        }
        sink.write(json.dumps(obj, ensure_ascii=False) + "\n")


def filter_window(records: Iterable[PublicationRecord],
                  window: YearWindow) -> set[PublicationRecord]:
    return {r for r in records if window.contains(r.year)}


def doi_share(result) -> float:
    """Fraction of result-set members that carry a DOI.

    Counts records, not distinct DOIs, mirroring per-database totals.
    """
    if not result.members:
        raise ValueError("empty result set")
    return result.doi_record_count / len(result.members)
