import io
import random

import pytest

from conftest import random_corpus
from sdglab.corpus import Corpus, PublicationRecord
from sdglab.index import (FIELDS, build_index, field_token_stream, load_index,
                          save_index, tokenize, tokenize_keywords,
                          wildcard_expand)


def run_count_oracle(text: str) -> int:
    # character scan counting alphanumeric runs (underscore separates)
    count, in_run = 0, False
    for ch in text:
        alnum = ch.isalnum() and ch != "_"
        if alnum and not in_run:
            count += 1
        in_run = alnum
    return count


class TestTokenize:
    def test_hyphen_splits(self):
        assert tokenize("Climate-related hazards!") == \
            [("climate", 0), ("related", 1), ("hazards", 2)]

    def test_empty(self):
        assert tokenize("") == []

    def test_digits_retained_and_slash_splits(self):
        assert tokenize("CO2 uptake/loss") == \
            [("co2", 0), ("uptake", 1), ("loss", 2)]

    def test_underscore_splits(self):
        assert [t for t, _ in tokenize("a_b")] == ["a", "b"]

    def test_counts_match_character_run_oracle(self):
        rng = random.Random(11)
        alphabet = "abc XY12-_/.,!é ö"
        for _ in range(200):
            text = "".join(rng.choices(alphabet, k=rng.randint(0, 60)))
            assert len(tokenize(text)) == run_count_oracle(text)

    def test_positions_strictly_increasing(self):
        toks = tokenize("one two three four")
        assert [p for _, p in toks] == sorted({p for _, p in toks})

    def test_keyword_gap(self):
        stream = tokenize_keywords(["climate change", "policy"])
        positions = dict((tok, pos) for tok, pos in stream)
        assert positions["change"] - positions["climate"] == 1
        assert positions["policy"] - positions["change"] > 50


def two_doc_corpus():
    return Corpus("c", [
        PublicationRecord("a", "Climate change adaptation", 2016,
                          abstract="the climate is warming",
                          keywords=("climate policy",)),
        PublicationRecord("b", "Solar energy", 2017,
                          abstract="renewable energy growth"),
    ])


class TestBuildIndex:
    def test_postings_by_hand(self):
        index = build_index(two_doc_corpus())
        assert index.postings["climate"] == [
            ("a", "title", (0,)),
            ("a", "abstract", (1,)),
            ("a", "keywords", (0,)),
        ]
        assert index.docs_with_token("energy", FIELDS) == {"b"}

    def test_rebuild_is_byte_identical(self):
        corpus = two_doc_corpus()
        sink1, sink2 = io.StringIO(), io.StringIO()
        save_index(build_index(corpus), sink1)
        save_index(build_index(corpus), sink2)
        assert sink1.getvalue() == sink2.getvalue()

    def test_order_insensitive(self):
        corpus = two_doc_corpus()
        reversed_corpus = Corpus("c", list(reversed(list(corpus))))
        sink1, sink2 = io.StringIO(), io.StringIO()
        save_index(build_index(corpus), sink1)
        save_index(build_index(reversed_corpus), sink2)
        assert sink1.getvalue() == sink2.getvalue()

    def test_total_positions_equal_token_count(self):
        corpus = random_corpus(42, 1000)
        index = build_index(corpus)
        stored = sum(len(positions) for entries in index.postings.values()
                     for _, _, positions in entries)
        expected = sum(len(field_token_stream(rec, fld))
                       for rec in corpus for fld in FIELDS)
        assert stored == expected

    def test_postings_reproducible_from_fields(self):
        corpus = random_corpus(43, 200)
        index = build_index(corpus)
        # exhaustive check: token in postings for (doc, field) iff it is in
        # the re-tokenized field
        streams = {(rec.internal_id, fld):
                   {tok for tok, _ in field_token_stream(rec, fld)}
                   for rec in corpus for fld in FIELDS}
        for tok, entries in index.postings.items():
            for doc, fld, _ in entries:
                assert tok in streams[(doc, fld)]
        for (doc, fld), toks in streams.items():
            for tok in toks:
                assert any(d == doc and f == fld
                           for d, f, _ in index.postings[tok])

    def test_round_trip_serialization(self):
        index = build_index(two_doc_corpus())
        sink = io.StringIO()
        save_index(index, sink)
        again = load_index(io.StringIO(sink.getvalue()))
        assert again.postings == index.postings
        assert again.doc_count == index.doc_count

    def test_load_rejects_wrong_magic(self):
        with pytest.raises(ValueError, match="not an index file"):
            load_index(io.StringIO('{"magic": "nope"}'))


class TestWildcardExpand:
    def make_index(self, vocab):
        corpus = Corpus("c", [PublicationRecord("a", " ".join(vocab), 2016)])
        return build_index(corpus)

    def test_prefix_semantics(self):
        index = self.make_index(["legume", "legumes", "lemma"])
        assert wildcard_expand("legum*", index) == {"legume", "legumes"}

    def test_breed_stem(self):
        index = self.make_index(["breed", "breeding", "bread"])
        assert wildcard_expand("breed*", index) == {"breed", "breeding"}

    def test_no_match_is_empty(self):
        index = self.make_index(["alpha", "beta"])
        assert wildcard_expand("z*", index) == set()

    def test_bare_star_rejected(self):
        index = self.make_index(["alpha"])
        with pytest.raises(ValueError, match="unbounded wildcard"):
            wildcard_expand("*", index)

    def test_result_within_vocabulary(self):
        index = self.make_index(["climate", "climatic", "clay", "sun"])
        expanded = wildcard_expand("cl*", index)
        assert expanded <= index.vocabulary
        assert all(tok.startswith("cl") for tok in expanded)
