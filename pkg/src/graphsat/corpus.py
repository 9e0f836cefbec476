"""Fixture theories, a seeded random theory generator and the grammar encoding."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import GraphSatError, ParseError
from .graph import BOT, ID, IDENT_RE, RESERVED, TOP, Label, LabelKind, atom
from .terms import Compose, Converse, Eq, Intersect, Sub, Sym, Term, Theory, compose_all, parse_theory

ROOMMATES = "r = i ; i~\ni~ ; i <= id\n"
ROOMMATES_LOOSE = "r = i ; i~\n"
LIZ_JON = ROOMMATES + "'Liz' ; top ; 'Jon' <= r\n"
LIZ_JON_FULL = LIZ_JON + "'Liz' ; top ; 'Batcave' <= i\n'Jon' ; top ; 'Room 11' <= i\n"
GROWTH = "l <= l ; l\n"

FIXTURES = {
    "roommates": ROOMMATES,
    "roommates_loose": ROOMMATES_LOOSE,
    "lizjon": LIZ_JON,
    "lizjon_full": LIZ_JON_FULL,
    "growth": GROWTH,
}


def fixture(name: str) -> Theory:
    return parse_theory(FIXTURES[name])


# ---------------------------------------------------------------------------
# Context-free grammars

EPSILON = "eps"


class GrammarError(GraphSatError):
    pass


@dataclass(frozen=True)
class CFG:
    nonterminals: frozenset
    terminals: frozenset
    productions: tuple  # (head, body) with body a tuple of symbol names
    start: str

    def validate(self) -> None:
        overlap = self.nonterminals & self.terminals
        if overlap:
            raise GrammarError(f"symbol {sorted(overlap)[0]!r} is both a terminal and a nonterminal")
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        for sym in sorted(self.nonterminals | self.terminals):
            if not IDENT_RE.match(sym) or sym in RESERVED:
                raise GrammarError(f"symbol {sym!r} is not usable as a relation name")
        for head, body in self.productions:
            if head not in self.nonterminals:
                raise GrammarError(f"production head {head!r} is not a nonterminal")
            if not body:
                raise GrammarError(f"empty production for {head!r} is not supported")
            for sym in body:
                if sym not in self.nonterminals and sym not in self.terminals:
                    raise GrammarError(f"undeclared symbol {sym!r} in production for {head!r}")


def parse_grammar(text: str) -> CFG:
    """Read ``S -> a S b`` lines (``|`` separates alternatives, ``#`` comments).

    Heads are the nonterminals, every other symbol is a terminal, and the
    start symbol is the first head unless a ``start: X`` line names it.
    """
    productions = []
    start = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("start:"):
            start = line[len("start:"):].strip()
            continue
        if "->" not in line:
            raise ParseError("expected 'HEAD -> SYMBOLS'", lineno, 1)
        head, rhs = (part.strip() for part in line.split("->", 1))
        if not IDENT_RE.match(head):
            raise ParseError(f"bad nonterminal {head!r}", lineno, 1)
        for alt in rhs.split("|"):
            productions.append((head, tuple(alt.split())))
    heads = {h for h, _ in productions}
    if start is None:
        if not productions:
            raise GrammarError("grammar has no productions and no start symbol")
        start = productions[0][0]
    nonterminals = frozenset(heads | {start})
    terminals = frozenset(s for _, body in productions for s in body if s not in nonterminals)
    cfg = CFG(nonterminals, terminals, tuple(productions), start)
    cfg.validate()
    return cfg


def encode_cfg_intersection(g1: CFG, g2: CFG) -> Theory:
    """Theory that is inconsistent exactly when the two languages share a word.

    Each production ``n -> s0 ... sk`` becomes ``s0;...;sk <= n``, each
    terminal ``t`` gets ``id <= t;t~``, and ``'eps';S1;S2~;'eps' <= bot``
    closes it off.
    """
    g1.validate()
    g2.validate()
    clash = (g1.nonterminals & g2.nonterminals) | (g1.nonterminals & g2.terminals) | (g2.nonterminals & g1.terminals)
    if clash:
        raise GrammarError(f"symbol {sorted(clash)[0]!r} is shared between the grammars' nonterminals")
    sentences = []
    for g in (g1, g2):
        for head, body in g.productions:
            sentences.append(Sub(compose_all(Sym(atom(s)) for s in body), Sym(atom(head))))
    for t in sorted(g1.terminals | g2.terminals):
        a = Sym(atom(t))
        sentences.append(Sub(Sym(ID), Compose(a, Converse(a))))
    eps = Sym(Label(LabelKind.CONST, EPSILON))
    closing = compose_all([eps, Sym(atom(g1.start)), Converse(Sym(atom(g2.start))), eps])
    sentences.append(Sub(closing, Sym(BOT)))
    return Theory.of(sentences)


# ---------------------------------------------------------------------------
# Random theories

@dataclass(frozen=True)
class Limits:
    atoms: int = 4
    constants: int = 2
    sentences: int = 5
    depth: int = 3


def _random_term(rng: random.Random, leaves: list, depth: int) -> Term:
    if depth == 0 or rng.random() < 0.4:
        return Sym(rng.choice(leaves))
    op = rng.randrange(3)
    if op == 0:
        return Converse(_random_term(rng, leaves, depth - 1))
    left = _random_term(rng, leaves, depth - 1)
    right = _random_term(rng, leaves, depth - 1)
    return Compose(left, right) if op == 1 else Intersect(left, right)


def generate_random_theory(seed: int, limits: Limits = Limits()) -> Theory:
    """Deterministic pseudo-random theory within ``limits``.

    About half the sentences may use ``bot`` on the right, the rest never do.
    """
    rng = random.Random(seed)
    n_sentences = rng.randint(1, limits.sentences) if limits.sentences > 0 else 0
    if n_sentences == 0:
        return Theory.of([])
    atoms = [atom(f"a{k}") for k in range(rng.randint(1, limits.atoms))] if limits.atoms > 0 else []
    consts = [Label(LabelKind.CONST, f"c{k}") for k in range(rng.randint(0, limits.constants))]
    leaves = atoms + consts + [ID, TOP]
    sentences = []
    for _ in range(n_sentences):
        lhs = _random_term(rng, leaves, limits.depth)
        rhs_leaves = leaves + [BOT] if rng.random() < 0.5 else leaves
        rhs = _random_term(rng, rhs_leaves, limits.depth)
        sentences.append(Eq(lhs, rhs) if rng.random() < 0.3 else Sub(lhs, rhs))
    return Theory.of(sentences)
