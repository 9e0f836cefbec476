"""Brute-force checkers used to cross-examine the engine.

Nothing here shares code with the backtracking matcher in `graph`.  Small
hosts are searched by trying every total vertex map; larger hosts fall back
to a relational hash join over the pattern's edges, which is exact but far
slower than the engine's matcher on big graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

NAIVE_LIMIT = 50_000


@dataclass
class OracleReport:
    verdict: bool
    counterexample: Optional[tuple] = None  # (rule origin, embedding as a dict)

    def __bool__(self) -> bool:
        return self.verdict


def naive_embeddings(pattern, host) -> list:
    """Every total map from pattern to host vertices whose image lands inside host."""
    pv = sorted(pattern.vertices)
    hv = sorted(host.vertices)
    found = []
    for images in itertools.product(hv, repeat=len(pv)):
        f = dict(zip(pv, images))
        if all((lab, f[s], f[d]) in host.edges for lab, s, d in pattern.edges):
            found.append(f)
    return found


def join_embeddings(pattern, host, fixed: Optional[dict] = None) -> list:
    """Same set as `naive_embeddings`, built by joining edge relations.

    ``fixed`` pre-binds some pattern vertices.
    """
    rows = [dict(fixed or {})]
    bound = set(rows[0])
    by_label: dict = {}
    for lab, s, d in host.edges:
        by_label.setdefault(lab, []).append((s, d))
    pending = sorted(pattern.edges)
    while pending:
        # prefer an edge touching bound vertices so intermediate results stay small
        pending.sort(key=lambda e: -((e.src in bound) + (e.dst in bound)))
        lab, s, d = pending.pop(0)
        pairs = by_label.get(lab, [])
        new_rows = []
        for row in rows:
            for x, y in pairs:
                if s in row and row[s] != x:
                    continue
                if d in row and row[d] != y:
                    continue
                if s == d and x != y:
                    continue
                r = dict(row)
                r[s] = x
                r[d] = y
                new_rows.append(r)
        rows = new_rows
        bound |= {s, d}
        if not rows:
            return []
    for v in sorted(pattern.vertices - bound):
        rows = [{**row, v: w} for row in rows for w in sorted(host.vertices)]
    return rows


def embeddings(pattern, host) -> list:
    if len(host.vertices) ** len(pattern.vertices) <= NAIVE_LIMIT:
        return naive_embeddings(pattern, host)
    return join_embeddings(pattern, host)


def _key(f: dict) -> tuple:
    return tuple(sorted(f.items()))


def is_maintained(rule, g) -> OracleReport:
    lhs_vertices = sorted(rule.lhs.vertices)
    extended = {tuple(h[v] for v in lhs_vertices) for h in embeddings(rule.rhs, g)}
    for f in sorted(embeddings(rule.lhs, g), key=_key):
        if tuple(f[v] for v in lhs_vertices) not in extended:
            return OracleReport(False, (rule.origin, f))
    return OracleReport(True)


def is_consequence_graph(g, rules: Iterable) -> OracleReport:
    for rule in rules:
        report = is_maintained(rule, g)
        if not report:
            return report
    return OracleReport(True)
