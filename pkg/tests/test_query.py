import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import VOCAB, random_corpus
from oracle import evaluate_by_scan, match_doc
from sdglab.corpus import Corpus, PublicationRecord
from sdglab.index import FIELDS, build_index, tokenize
from sdglab.query import (And, AndNot, EvaluationError, FieldScope, Or,
                          ParseError, Phrase, Proximity, Term, Wildcard,
                          evaluate, parse_query, print_query, proximity_match)


class TestParse:
    def test_and_with_or_group(self):
        ast = parse_query('"climate change" AND ("policies" OR "education")')
        assert ast == And((Phrase(("climate", "change")),
                           Or((Term("policies"), Term("education")))))

    def test_proximity(self):
        assert parse_query('"climate impact"~3') == \
            Proximity(("climate", "impact"), 3)

    def test_and_not(self):
        assert parse_query('"climate" AND NOT "prehistoric climate"') == \
            AndNot(Term("climate"), Phrase(("prehistoric", "climate")))

    def test_precedence_and_not_binds_tightest(self):
        ast = parse_query('"a" OR "b" AND "c" AND NOT "d"')
        assert ast == Or((Term("a"), And((Term("b"),
                                          AndNot(Term("c"), Term("d"))))))

    def test_case_insensitive_operators(self):
        assert parse_query('"a" and "b"') == parse_query('"a" AND "b"')

    def test_wildcard_forms(self):
        assert parse_query("climat*") == Wildcard("climat")
        assert parse_query('"climat*"') == Wildcard("climat")
        assert parse_query('"legum* breed*"') == Phrase(("legum*", "breed*"))

    def test_unbalanced_quote_errors_with_offset(self):
        with pytest.raises(ParseError) as exc:
            parse_query('"climate AND "b')
        assert "offset" in str(exc.value)

    def test_unbalanced_paren(self):
        with pytest.raises(ParseError):
            parse_query('("a" OR "b"')

    def test_zero_window_rejected(self):
        with pytest.raises(ParseError):
            parse_query('"climate impact"~0')

    def test_empty_query_rejected(self):
        with pytest.raises(ParseError):
            parse_query("")
        with pytest.raises(ParseError):
            parse_query("   ")

    def test_field_scope(self):
        ast = parse_query('[title]("climate")')
        assert ast == FieldScope(frozenset({"title"}), Term("climate"))


# --- canonical printer round-trip -------------------------------------------

tokens_st = st.sampled_from(["climate", "change", "impact", "carbon", "risk"])
pattern_st = st.one_of(tokens_st, tokens_st.map(lambda t: t + "*"))


def ast_strategy():
    leaves = st.one_of(
        tokens_st.map(Term),
        tokens_st.map(lambda t: Wildcard(t)),
        st.tuples(pattern_st, pattern_st, pattern_st).map(Phrase),
        st.builds(Proximity,
                  st.tuples(pattern_st, pattern_st),
                  st.integers(min_value=1, max_value=5)),
    )

    def compound(children):
        return st.one_of(
            st.tuples(children, children).map(And),
            st.tuples(children, children).map(Or),
            st.builds(AndNot, children, children),
            st.builds(FieldScope,
                      st.sets(st.sampled_from(FIELDS), min_size=1).map(frozenset),
                      children),
        )

    return st.recursive(leaves, compound, max_leaves=6)


class TestPrinterRoundTrip:
    @given(ast_strategy())
    @settings(max_examples=200, deadline=None)
    def test_round_trip(self, ast):
        assert parse_query(print_query(ast)) == ast


# --- proximity semantics ----------------------------------------------------

class TestProximityMatch:
    def test_unordered_window_paper_example(self):
        stream = tokenize("hazards related to climate change")
        assert proximity_match(("climate", "related", "hazards"), 3, stream)

    def test_changing_climate_example(self):
        stream = tokenize("changing climate and its impact on health")
        assert proximity_match(("climate", "impact"), 3, stream)

    def test_reversed_order_within_window(self):
        assert proximity_match(("climate", "impact"), 3,
                               tokenize("impact of climate"))

    def test_exact_phrase_also_matches(self):
        assert proximity_match(("climate", "impact"), 3,
                               tokenize("climate change impact"))

    def test_outside_window(self):
        stream = tokenize("climate one two three four five impact")
        # span 6 > 1 + 3
        assert not proximity_match(("climate", "impact"), 3, stream)

    def test_distinct_positions_required(self):
        # one occurrence cannot serve both tokens
        assert not proximity_match(("climate", "climate"), 3,
                                   tokenize("climate policy"))
        assert proximity_match(("climate", "climate"), 3,
                               tokenize("climate climate"))

    def test_monotone_in_window(self):
        stream = tokenize("climate a b impact")
        matched = [n for n in range(1, 8)
                   if proximity_match(("climate", "impact"), n, stream)]
        # once it matches it keeps matching for larger windows
        assert matched == list(range(matched[0], 8))


# --- evaluation -------------------------------------------------------------

def small_corpus():
    return Corpus("c", [
        PublicationRecord("a", "Climate change adaptation", 2016),
        PublicationRecord("b", "Warming trends", 2017,
                          abstract="evidence of prehistoric climate shifts"),
        PublicationRecord("c", "Hazards related to climate change", 2018),
        PublicationRecord("d", "Legumes breeding for drought", 2018,
                          abstract="legume breeding under climate stress"),
    ])


@pytest.fixture(scope="module")
def index():
    return build_index(small_corpus())


class TestEvaluate:

    def test_phrase_contiguous(self, index):
        assert evaluate(Phrase(("climate", "change")), index) == {"a", "c"}

    def test_and_not_excludes(self, index):
        result = evaluate(AndNot(Term("climate"),
                                 Phrase(("prehistoric", "climate"))), index)
        assert "b" not in result
        assert "a" in result

    def test_wildcard_phrase(self, index):
        assert evaluate(parse_query('"legum* breed*"'), index) == {"d"}

    def test_proximity_query(self, index):
        result = evaluate(parse_query('"climate related hazards"~3'), index)
        assert result == {"c"}

    def test_field_scope_restricts(self, index):
        everywhere = evaluate(Term("prehistoric"), index)
        title_only = evaluate(FieldScope(frozenset({"title"}),
                                         Term("prehistoric")), index)
        assert everywhere == {"b"}
        assert title_only == set()

    def test_short_wildcard_stem_rejected(self, index):
        with pytest.raises(EvaluationError):
            evaluate(Wildcard("c"), index)

    def test_phrase_implies_proximity_one(self, index):
        phrase_docs = evaluate(Phrase(("climate", "change")), index)
        prox_docs = evaluate(Proximity(("climate", "change"), 1), index)
        assert phrase_docs <= prox_docs


# --- random-query oracle equivalence ----------------------------------------

def random_ast(rng: random.Random, depth: int = 0):
    vocab = VOCAB + ["zebra", "quark"]  # include terms absent from corpora

    def leaf():
        kind = rng.randrange(4)
        if kind == 0:
            return Term(rng.choice(vocab))
        if kind == 1:
            word = rng.choice(vocab)
            return Wildcard(word[:rng.randint(2, max(2, len(word) - 1))])
        if kind == 2:
            n = rng.randint(2, 3)
            return Phrase(tuple(rng.choice(vocab) for _ in range(n)))
        return Proximity(tuple(rng.choice(vocab) for _ in range(2)),
                         rng.randint(1, 4))

    if depth >= 2 or rng.random() < 0.35:
        return leaf()
    kind = rng.randrange(4)
    if kind == 0:
        return And(tuple(random_ast(rng, depth + 1) for _ in range(2)))
    if kind == 1:
        return Or(tuple(random_ast(rng, depth + 1) for _ in range(2)))
    if kind == 2:
        return AndNot(random_ast(rng, depth + 1), random_ast(rng, depth + 1))
    fields = frozenset(rng.sample(FIELDS, rng.randint(1, 3)))
    return FieldScope(fields, random_ast(rng, depth + 1))


class TestOracleEquivalence:
    def test_200_random_queries_over_500_docs(self, corpus_500):
        index = build_index(corpus_500)
        rng = random.Random(2024)
        mismatches = 0
        for _ in range(200):
            ast = random_ast(rng)
            if evaluate(ast, index) != evaluate_by_scan(ast, corpus_500):
                mismatches += 1
        assert mismatches == 0

    def test_boolean_set_laws(self, corpus_500):
        index = build_index(corpus_500)
        rng = random.Random(5)
        for _ in range(40):
            a, b = random_ast(rng, depth=1), random_ast(rng, depth=1)
            ea, eb = evaluate(a, index), evaluate(b, index)
            assert evaluate(Or((a, b)), index) == ea | eb
            assert evaluate(And((a, b)), index) == ea & eb
            assert evaluate(AndNot(a, b), index) == ea - eb

    def test_match_doc_agrees_with_parse(self, corpus_500):
        ast = parse_query('"climate change" AND NOT "sea level"')
        index = build_index(corpus_500)
        assert evaluate(ast, index) == \
            {r.internal_id for r in corpus_500 if match_doc(ast, r)}
