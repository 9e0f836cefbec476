"""Relational terms, sentences, theories, the `.rel` parser and direct semantics.

Concrete syntax, loosest to tightest::

    term   := inter
    inter  := comp ('&' comp)*          intersection, left-assoc
    comp   := post (';' post)*          composition, left-assoc
    post   := prim '~'*                 converse
    prim   := IDENT | 'Name' | id | top | bot | '(' term ')'

A theory has one sentence per line, ``t1 = t2`` or ``t1 <= t2``; ``#``
starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import ParseError
from .graph import BOT, ID, RESERVED, TOP, Label, LabelKind, atom, const


@dataclass(frozen=True)
class Sym:
    label: Label

    def __str__(self) -> str:
        return str(self.label)


@dataclass(frozen=True)
class Converse:
    arg: "Term"

    def __str__(self) -> str:
        return f"{_wrap(self.arg, 3)}~"


@dataclass(frozen=True)
class Compose:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"{_wrap(self.left, 2)} ; {_wrap(self.right, 3)}"


@dataclass(frozen=True)
class Intersect:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"{_wrap(self.left, 1)} & {_wrap(self.right, 2)}"


Term = Union[Sym, Converse, Compose, Intersect]

_PREC = {Intersect: 1, Compose: 2, Converse: 3, Sym: 4}


def _wrap(t: Term, min_prec: int) -> str:
    s = str(t)
    return s if _PREC[type(t)] >= min_prec else f"({s})"


def format_term(t: Term) -> str:
    """Fully parenthesized rendering; ``parse_term`` inverts it."""
    if isinstance(t, Sym):
        return str(t.label)
    if isinstance(t, Converse):
        return f"({format_term(t.arg)})~"
    op = ";" if isinstance(t, Compose) else "&"
    return f"({format_term(t.left)} {op} {format_term(t.right)})"


def term_labels(t: Term) -> Iterable[Label]:
    if isinstance(t, Sym):
        yield t.label
    elif isinstance(t, Converse):
        yield from term_labels(t.arg)
    else:
        yield from term_labels(t.left)
        yield from term_labels(t.right)


def term_size(t: Term) -> int:
    """Number of operators in ``t``."""
    if isinstance(t, Sym):
        return 0
    if isinstance(t, Converse):
        return 1 + term_size(t.arg)
    return 1 + term_size(t.left) + term_size(t.right)


def compose_all(terms: Iterable[Term]) -> Term:
    terms = list(terms)
    out = terms[0]
    for t in terms[1:]:
        out = Compose(out, t)
    return out


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Sub:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{self.lhs} <= {self.rhs}"


Sentence = Union[Eq, Sub]


@dataclass
class Theory:
    sentences: list = field(default_factory=list)
    constants: tuple = ()
    atoms: tuple = ()

    @classmethod
    def of(cls, sentences: Iterable[Sentence]) -> "Theory":
        sentences = list(sentences)
        consts, atoms = [], []
        for s in sentences:
            for side in (s.lhs, s.rhs):
                for lab in term_labels(side):
                    if lab.kind is LabelKind.CONST and lab.name not in consts:
                        consts.append(lab.name)
                    elif lab.kind is LabelKind.ATOM and lab not in atoms:
                        atoms.append(lab)
        return cls(sentences, tuple(consts), tuple(atoms))

    def extend(self, sentences: Iterable[Sentence]) -> "Theory":
        return Theory.of(self.sentences + list(sentences))

    def labels(self) -> set:
        return {lab for s in self.sentences for side in (s.lhs, s.rhs) for lab in term_labels(side)}

    def __str__(self) -> str:
        return "".join(f"{s}\n" for s in self.sentences)


# ---------------------------------------------------------------------------
# Parser

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<const>'[^'\n]*')
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=|[=~;&()])
""", re.VERBOSE)

_KEYWORDS = {"id": ID, "top": TOP, "bot": BOT}


class _Parser:
    def __init__(self, text: str, line: int = 1):
        self.tokens = []
        self.line = line
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
            kind = m.lastgroup
            if kind not in ("ws", "comment"):
                self.tokens.append((kind, m.group(), pos + 1))
            pos = m.end()
        self.end_col = len(text) + 1
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.end_col)

    def error(self, message: str):
        raise ParseError(message, self.line, self.peek()[2])

    def expect(self, text: str):
        kind, value, _ = self.peek()
        if value != text or kind != "op":
            self.error(f"expected {text!r}, found {value or 'end of input'!r}")
        self.i += 1

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def term(self) -> Term:
        t = self.comp()
        while self.peek()[1] == "&":
            self.i += 1
            t = Intersect(t, self.comp())
        return t

    def comp(self) -> Term:
        t = self.post()
        while self.peek()[1] == ";":
            self.i += 1
            t = Compose(t, self.post())
        return t

    def post(self) -> Term:
        t = self.prim()
        while self.peek()[1] == "~":
            self.i += 1
            t = Converse(t)
        return t

    def prim(self) -> Term:
        kind, value, col = self.peek()
        if kind == "ident":
            self.i += 1
            if value in _KEYWORDS:
                return Sym(_KEYWORDS[value])
            return Sym(atom(value))
        if kind == "const":
            self.i += 1
            name = value[1:-1]
            if not name:
                raise ParseError("empty constant name", self.line, col)
            return Sym(const(name))
        if value == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        self.error(f"expected a term, found {value or 'end of input'!r}")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if not p.at_end():
        p.error(f"unexpected {p.peek()[1]!r}")
    return t


def parse_sentence(text: str, line: int = 1) -> Sentence:
    p = _Parser(text, line)
    lhs = p.term()
    kind, op, _ = p.peek()
    if op not in ("=", "<="):
        p.error(f"expected '=' or '<=', found {op or 'end of input'!r}")
    p.i += 1
    rhs = p.term()
    if not p.at_end():
        p.error(f"unexpected {p.peek()[1]!r}")
    return Eq(lhs, rhs) if op == "=" else Sub(lhs, rhs)


def parse_theory(text: str) -> Theory:
    sentences = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        probe = _Parser(raw, lineno)
        if probe.at_end():
            continue
        sentences.append(parse_sentence(raw, lineno))
    return Theory.of(sentences)


# ---------------------------------------------------------------------------
# Semantics


def eval_semantics(e: Term, g) -> set:
    """The set of vertex pairs denoted by ``e`` in graph ``g``."""
    if isinstance(e, Sym):
        return {(s, d) for lab, s, d in g.edges if lab == e.label}
    if isinstance(e, Intersect):
        return eval_semantics(e.left, g) & eval_semantics(e.right, g)
    if isinstance(e, Converse):
        return {(y, x) for x, y in eval_semantics(e.arg, g)}
    left = eval_semantics(e.left, g)
    by_src: dict = {}
    for z, y in eval_semantics(e.right, g):
        by_src.setdefault(z, []).append(y)
    return {(x, y) for x, z in left for y in by_src.get(z, ())}


def holds(s: Sentence, g) -> bool:
    lhs = eval_semantics(s.lhs, g)
    rhs = eval_semantics(s.rhs, g)
    return lhs == rhs if isinstance(s, Eq) else lhs <= rhs


def normalize_to_subsumptions(t: Union[Theory, Iterable[Sentence]]) -> list:
    sentences = t.sentences if isinstance(t, Theory) else t
    pairs = []
    for s in sentences:
        pairs.append((s.lhs, s.rhs))
        if isinstance(s, Eq):
            pairs.append((s.rhs, s.lhs))
    return pairs


__all__ = [
    "Sym", "Converse", "Compose", "Intersect", "Term", "Eq", "Sub", "Sentence", "Theory",
    "parse_term", "parse_sentence", "parse_theory", "format_term", "eval_semantics", "holds",
    "normalize_to_subsumptions", "term_labels", "term_size", "compose_all", "RESERVED",
]
