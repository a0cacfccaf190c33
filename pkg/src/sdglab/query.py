"""Boolean/phrase/wildcard/proximity query dialect: parsing, printing, evaluation."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .index import FIELDS, PositionalIndex, wildcard_expand


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EvaluationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Term:
    token: str


@dataclass(frozen=True)
class Phrase:
    tokens: tuple[str, ...]  # a token ending in "*" is a prefix pattern


@dataclass(frozen=True)
class Wildcard:
    stem: str


@dataclass(frozen=True)
class Proximity:
    tokens: tuple[str, ...]
    window: int


@dataclass(frozen=True)
class And:
    children: tuple


@dataclass(frozen=True)
class Or:
    children: tuple


@dataclass(frozen=True)
class AndNot:
    left: object
    right: object


@dataclass(frozen=True)
class FieldScope:
    fields: frozenset
    child: object


QueryAst = Term | Phrase | Wildcard | Proximity | And | Or | AndNot | FieldScope

_PRIMARY = (Term, Phrase, Wildcard, Proximity, FieldScope)


# ---------------------------------------------------------------------------
# Lexer

_LEX_RE = re.compile(
    r"""\s*(?:
        (?P<lparen>\()
      | (?P<rparen>\))
      | (?P<lbracket>\[)
      | (?P<rbracket>\])
      | (?P<comma>,)
      | (?P<quoted>"(?P<qbody>[^"]*)")
      | (?P<tilde>~(?P<n>\d+))
      | (?P<word>[^\W_]+\*?)
    )""",
    re.VERBOSE | re.UNICODE,
)

_PHRASE_TOKEN_RE = re.compile(r"[^\W_]+\*?", re.UNICODE)


def _lex(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _LEX_RE.match(text, pos)
        if m is None:
            rest = text[pos:].strip()
            if not rest:
                break
            if rest.startswith('"'):
                raise ParseError("unbalanced quote", pos)
            raise ParseError(f"unexpected character {rest[0]!r}", pos)
        if m.lastgroup is None and not m.group(0).strip():
            pos = m.end()
            continue
        offset = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group("lparen"):
            tokens.append(("(", None, offset))
        elif m.group("rparen"):
            tokens.append((")", None, offset))
        elif m.group("lbracket"):
            tokens.append(("[", None, offset))
        elif m.group("rbracket"):
            tokens.append(("]", None, offset))
        elif m.group("comma"):
            tokens.append((",", None, offset))
        elif m.group("quoted") is not None:
            tokens.append(("quoted", m.group("qbody"), offset))
        elif m.group("tilde"):
            tokens.append(("~", int(m.group("n")), offset))
        else:
            word = m.group("word")
            upper = word.upper()
            if upper in ("AND", "OR", "NOT"):
                tokens.append((upper, None, offset))
            else:
                tokens.append(("word", word.lower(), offset))
        pos = m.end()
    return tokens


# ---------------------------------------------------------------------------
# Parser: OR is loosest, then AND, then AND NOT; parentheses group.


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self, ahead: int = 0):
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty query", 0)
        ast = self.parse_or()
        if self.pos < len(self.tokens):
            kind, _, off = self.peek()
            raise ParseError(f"unexpected {kind!r}", off)
        return ast

    def parse_or(self):
        children = [self.parse_and()]
        while self.peek()[0] == "OR":
            self.next()
            children.append(self.parse_and())
        return children[0] if len(children) == 1 else Or(tuple(children))

    def parse_and(self):
        children = [self.parse_andnot()]
        while self.peek()[0] == "AND" and self.peek(1)[0] != "NOT":
            self.next()
            children.append(self.parse_andnot())
        return children[0] if len(children) == 1 else And(tuple(children))

    def parse_andnot(self):
        node = self.parse_primary()
        while self.peek()[0] == "AND" and self.peek(1)[0] == "NOT":
            self.next()
            self.next()
            node = AndNot(node, self.parse_primary())
        return node

    def parse_primary(self):
        kind, value, offset = self.peek()
        if kind == "(":
            self.next()
            node = self.parse_or()
            if self.peek()[0] != ")":
                raise ParseError("unbalanced parenthesis", offset)
            self.next()
            return node
        if kind == "[":
            return self.parse_field_scope()
        if kind == "quoted":
            self.next()
            return self.parse_quoted(value, offset)
        if kind == "word":
            self.next()
            if value.endswith("*"):
                stem = value[:-1]
                if not stem:
                    raise ParseError("unbounded wildcard", offset)
                return Wildcard(stem)
            return Term(value)
        if kind is None:
            raise ParseError("unexpected end of query", offset)
        raise ParseError(f"unexpected {kind!r}", offset)

    def parse_field_scope(self):
        _, _, offset = self.expect("[")
        fields = []
        while True:
            tok = self.expect("word")
            if tok[1] not in FIELDS:
                raise ParseError(f"unknown field {tok[1]!r}", tok[2])
            fields.append(tok[1])
            if self.peek()[0] == ",":
                self.next()
                continue
            break
        self.expect("]")
        if self.peek()[0] != "(":
            raise ParseError("field scope requires a parenthesized query", offset)
        self.next()
        child = self.parse_or()
        if self.peek()[0] != ")":
            raise ParseError("unbalanced parenthesis", offset)
        self.next()
        return FieldScope(frozenset(fields), child)

    def parse_quoted(self, body: str, offset: int):
        tokens = tuple(t.lower() for t in _PHRASE_TOKEN_RE.findall(body))
        if not tokens:
            raise ParseError("empty phrase", offset)
        if self.peek()[0] == "~":
            _, n, toff = self.next()
            if n == 0:
                raise ParseError("proximity window must be >= 1", toff)
            if len(tokens) < 2:
                raise ParseError("proximity requires at least 2 tokens", offset)
            return Proximity(tokens, n)
        if len(tokens) == 1:
            tok = tokens[0]
            if tok.endswith("*"):
                stem = tok[:-1]
                if not stem:
                    raise ParseError("unbounded wildcard", offset)
                return Wildcard(stem)
            return Term(tok)
        return Phrase(tokens)


def parse_query(text: str) -> QueryAst:
    """Parse a query string into an AST.

    Grammar: quoted strings are phrases (single-token ones collapse to terms);
    a quoted string followed by ~N is a proximity expression; a trailing "*"
    makes a prefix wildcard; infix AND / OR / AND NOT with precedence
    AND NOT > AND > OR; parentheses group; [field,...](...) scopes fields.
    """
    return _Parser(text).parse()


def print_query(ast: QueryAst) -> str:
    """Canonical printer; parse_query(print_query(ast)) == ast."""
    def wrap(node):
        s = print_query(node)
        return s if isinstance(node, _PRIMARY) else f"({s})"

    if isinstance(ast, Term):
        return f'"{ast.token}"'
    if isinstance(ast, Wildcard):
        return f'"{ast.stem}*"'
    if isinstance(ast, Phrase):
        return '"' + " ".join(ast.tokens) + '"'
    if isinstance(ast, Proximity):
        return '"' + " ".join(ast.tokens) + f'"~{ast.window}'
    if isinstance(ast, And):
        return " AND ".join(wrap(c) for c in ast.children)
    if isinstance(ast, Or):
        return " OR ".join(wrap(c) for c in ast.children)
    if isinstance(ast, AndNot):
        return f"{wrap(ast.left)} AND NOT {wrap(ast.right)}"
    if isinstance(ast, FieldScope):
        fields = ",".join(f for f in FIELDS if f in ast.fields)
        return f"[{fields}]({print_query(ast.child)})"
    raise TypeError(f"not a query node: {ast!r}")


def explain(ast: QueryAst, indent: int = 0) -> str:
    """Render the AST as an indented tree for audit."""
    pad = "  " * indent
    if isinstance(ast, Term):
        return f"{pad}Term {ast.token}"
    if isinstance(ast, Wildcard):
        return f"{pad}Wildcard {ast.stem}*"
    if isinstance(ast, Phrase):
        return f"{pad}Phrase {' '.join(ast.tokens)}"
    if isinstance(ast, Proximity):
        return f"{pad}Proximity ~{ast.window} {' '.join(ast.tokens)}"
    if isinstance(ast, And):
        return f"{pad}And\n" + "\n".join(explain(c, indent + 1) for c in ast.children)
    if isinstance(ast, Or):
        return f"{pad}Or\n" + "\n".join(explain(c, indent + 1) for c in ast.children)
    if isinstance(ast, AndNot):
        return (f"{pad}AndNot\n" + explain(ast.left, indent + 1) + "\n"
                + explain(ast.right, indent + 1))
    if isinstance(ast, FieldScope):
        fields = ",".join(f for f in FIELDS if f in ast.fields)
        return f"{pad}FieldScope [{fields}]\n" + explain(ast.child, indent + 1)
    raise TypeError(f"not a query node: {ast!r}")


# ---------------------------------------------------------------------------
# Positional matching


def _token_position_sets(tokens: Iterable[str],
                         stream: list[tuple[str, int]]) -> list[set[int]]:
    sets = []
    for pattern in tokens:
        if pattern.endswith("*"):
            stem = pattern[:-1]
            sets.append({pos for tok, pos in stream if tok.startswith(stem)})
        else:
            sets.append({pos for tok, pos in stream if tok == pattern})
    return sets


def _distinct_assignment(sets: list[set[int]]) -> bool:
    # Backtracking match over a handful of small sets.
    order = sorted(range(len(sets)), key=lambda i: len(sets[i]))

    def assign(i: int, used: set[int]) -> bool:
        if i == len(order):
            return True
        for p in sets[order[i]]:
            if p not in used:
                if assign(i + 1, used | {p}):
                    return True
        return False

    return assign(0, set())


def _window_match(sets: list[set[int]], span_bound: int) -> bool:
    if any(not s for s in sets):
        return False
    candidates = sorted(set().union(*sets))
    for lo in candidates:
        window = [s & set(range(lo, lo + span_bound + 1)) for s in sets]
        if all(window) and _distinct_assignment(window):
            return True
    return False


def proximity_match(phrase_tokens: tuple[str, ...], window: int,
                    field_stream: list[tuple[str, int]]) -> bool:
    """Unordered positional match: tokens at distinct positions whose span
    (max - min) does not exceed len(tokens) - 1 + window."""
    if len(phrase_tokens) < 2:
        raise ValueError("proximity requires at least 2 tokens")
    if window < 1:
        raise ValueError("window must be >= 1")
    sets = _token_position_sets(phrase_tokens, field_stream)
    bound = len(phrase_tokens) - 1 + window
    return _window_match(sets, bound)


def _phrase_match_positions(sets: list[set[int]]) -> bool:
    if any(not s for s in sets):
        return False
    return any(all(p + i in sets[i] for i in range(len(sets))) for p in sets[0])


# ---------------------------------------------------------------------------
# Evaluation against the index


def _check_stem(stem: str) -> None:
    if len(stem) < 2:
        raise EvaluationError(
            f"wildcard stem {stem!r} shorter than 2 characters")


def _pattern_positions(pattern: str, index: PositionalIndex, doc: str,
                       field: str) -> set[int]:
    if pattern.endswith("*"):
        _check_stem(pattern[:-1])
        out: set[int] = set()
        for tok in wildcard_expand(pattern, index):
            out.update(index.positions(tok, doc, field))
        return out
    return set(index.positions(pattern, doc, field))


def _pattern_docs(pattern: str, index: PositionalIndex, fields) -> set[str]:
    if pattern.endswith("*"):
        _check_stem(pattern[:-1])
        docs: set[str] = set()
        for tok in wildcard_expand(pattern, index):
            docs.update(index.docs_with_token(tok, fields))
        return docs
    return index.docs_with_token(pattern, fields)


def _positional_eval(tokens: tuple[str, ...], index: PositionalIndex,
                     fields, matcher) -> set[str]:
    candidates = None
    for pattern in tokens:
        docs = _pattern_docs(pattern, index, fields)
        candidates = docs if candidates is None else candidates & docs
        if not candidates:
            return set()
    matched = set()
    for doc in candidates:
        for field in fields:
            sets = [_pattern_positions(p, index, doc, field) for p in tokens]
            if matcher(sets):
                matched.add(doc)
                break
    return matched


def evaluate(ast: QueryAst, index: PositionalIndex,
             default_fields=FIELDS) -> set[str]:
    """Evaluate a query AST to the set of matching document ids."""
    fields = tuple(default_fields)
    if isinstance(ast, Term):
        return index.docs_with_token(ast.token, fields)
    if isinstance(ast, Wildcard):
        _check_stem(ast.stem)
        return _pattern_docs(ast.stem + "*", index, fields)
    if isinstance(ast, Phrase):
        return _positional_eval(ast.tokens, index, fields, _phrase_match_positions)
    if isinstance(ast, Proximity):
        bound = len(ast.tokens) - 1 + ast.window
        return _positional_eval(ast.tokens, index, fields,
                                lambda sets: _window_match(sets, bound))
    if isinstance(ast, And):
        result = evaluate(ast.children[0], index, fields)
        for child in ast.children[1:]:
            result &= evaluate(child, index, fields)
        return result
    if isinstance(ast, Or):
        result = set()
        for child in ast.children:
            result |= evaluate(child, index, fields)
        return result
    if isinstance(ast, AndNot):
        return evaluate(ast.left, index, fields) - evaluate(ast.right, index, fields)
    if isinstance(ast, FieldScope):
        return evaluate(ast.child, index, tuple(f for f in FIELDS if f in ast.fields))
    raise TypeError(f"not a query node: {ast!r}")
