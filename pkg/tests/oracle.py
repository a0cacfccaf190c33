"""Brute-force reference implementations used to cross-check the fast paths.

Everything here scans documents directly and stays independent of the
positional index and the set-algebra evaluator.
"""

from __future__ import annotations

from itertools import product

from sdglab.index import FIELDS, field_token_stream
from sdglab.query import (And, AndNot, FieldScope, Or, Phrase, Proximity, Term,
                          Wildcard)


def _matches_pattern(token: str, pattern: str) -> bool:
    if pattern.endswith("*"):
        return token.startswith(pattern[:-1])
    return token == pattern


def _phrase_in_stream(patterns, stream) -> bool:
    by_pos = {pos: tok for tok, pos in stream}
    for tok, pos in stream:
        if _matches_pattern(tok, patterns[0]):
            if all(_matches_pattern(by_pos.get(pos + i, "\0"), patterns[i])
                   for i in range(1, len(patterns))):
                return True
    return False


def _proximity_in_stream(patterns, window, stream) -> bool:
    candidates = [[pos for tok, pos in stream if _matches_pattern(tok, p)]
                  for p in patterns]
    bound = len(patterns) - 1 + window
    for combo in product(*candidates):
        if len(set(combo)) == len(combo) and max(combo) - min(combo) <= bound:
            return True
    return False


def match_doc(ast, record, fields=FIELDS) -> bool:
    """Evaluate a query AST against one record by direct scanning."""
    if isinstance(ast, Term):
        return any(any(tok == ast.token for tok, _ in field_token_stream(record, f))
                   for f in fields)
    if isinstance(ast, Wildcard):
        return any(any(tok.startswith(ast.stem)
                       for tok, _ in field_token_stream(record, f))
                   for f in fields)
    if isinstance(ast, Phrase):
        return any(_phrase_in_stream(ast.tokens, field_token_stream(record, f))
                   for f in fields)
    if isinstance(ast, Proximity):
        return any(_proximity_in_stream(ast.tokens, ast.window,
                                        field_token_stream(record, f))
                   for f in fields)
    if isinstance(ast, And):
        return all(match_doc(c, record, fields) for c in ast.children)
    if isinstance(ast, Or):
        return any(match_doc(c, record, fields) for c in ast.children)
    if isinstance(ast, AndNot):
        return match_doc(ast.left, record, fields) and \
            not match_doc(ast.right, record, fields)
    if isinstance(ast, FieldScope):
        return match_doc(ast.child, record,
                         tuple(f for f in FIELDS if f in ast.fields))
    raise TypeError(f"not a query node: {ast!r}")


def evaluate_by_scan(ast, corpus, fields=FIELDS) -> set[str]:
    return {rec.internal_id for rec in corpus if match_doc(ast, rec, fields)}
