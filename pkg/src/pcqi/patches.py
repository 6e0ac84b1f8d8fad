"""Finite induced subgraphs ("patches") of the extension graph.

A patch vertex is a conjugate generator v^g with g the canonical coset
representative for the centralizer of v, so two patch vertices are equal
as group elements exactly when their (base, conjugator) pairs coincide.
Edges are never trusted from a construction: every patch recomputes
adjacency through the word algebra, so patches are exact induced
subgraphs of the extension graph by definition.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache

from . import graphs, words
from .graphs import SimplicialGraph
from .words import GroupWord


DEFAULT_VERTEX_BUDGET = 5000


def vertex_budget():
    return int(os.environ.get("PCQI_BUDGET_VERTICES", DEFAULT_VERTEX_BUDGET))


class PatchError(ValueError):
    pass


class BudgetExceeded(PatchError):
    pass


@dataclass(frozen=True, order=True)
class ConjugateGenerator:
    base: str
    conj: tuple   # canonical coset-representative letters

    def name(self):
        if not self.conj:
            return self.base
        return f"{self.base}^" + " ".join(
            g if s == 1 else f"{g}^-1" for g, s in self.conj)

    def conj_word(self, g: SimplicialGraph) -> GroupWord:
        return GroupWord(g, self.conj)

    def as_word(self, g: SimplicialGraph) -> GroupWord:
        c = GroupWord(g, self.conj)
        return c.inverse() * GroupWord(g, ((self.base, 1),)) * c


def conjugate_generator(g: SimplicialGraph, base: str, conj: GroupWord) -> ConjugateGenerator:
    """Canonicalize v^g into its unique (base, coset representative) pair."""
    if base not in g:
        raise PatchError(f"unknown base vertex {base!r}")
    return ConjugateGenerator(base, words.coset_canonical(base, conj).letters)


@lru_cache(maxsize=None)
def _commute_cg(g: SimplicialGraph, a: ConjugateGenerator, b: ConjugateGenerator) -> bool:
    # u^x commutes with w^y  iff  conjugating both by x^-1 reduces to
    # [u, w^(y x^-1)] = 1, i.e. membership of the shifted w in the
    # parabolic centralizer of u, which is generated by the closed star.
    if a == b:
        return True
    z = GroupWord(g, b.conj) * GroupWord(g, a.conj).inverse()
    shifted = words.conjugate(GroupWord(g, ((b.base, 1),)), z)
    return words.supported_in(shifted, graphs.star(g, a.base))


def commute_cg(g, a, b) -> bool:
    """Extension-graph adjacency-or-equality test for two conjugate generators."""
    key = (a, b) if a <= b else (b, a)
    return _commute_cg(g, *key)


@dataclass(frozen=True)
class Patch:
    graph: SimplicialGraph
    cg_vertices: tuple          # ConjugateGenerator, in insertion order
    cg_edges: frozenset         # frozenset pairs of ConjugateGenerator
    provenance: tuple = ()      # ("double", center, exponent) / ("ball", R) steps

    @property
    def n(self):
        return len(self.cg_vertices)

    def has_vertex(self, cg):
        return cg in set(self.cg_vertices)


def _build(g, cgs, provenance, known_edges=None, known_verts=None):
    seen = []
    for cg in cgs:
        if cg not in seen:
            seen.append(cg)
    if len(seen) > vertex_budget():
        raise BudgetExceeded(f"patch would have {len(seen)} vertices")
    edges = set(known_edges or ())
    old = set(known_verts or ())
    for a, b in itertools.combinations(seen, 2):
        if a in old and b in old:
            continue
        if commute_cg(g, a, b):
            edges.add(frozenset((a, b)))
    return Patch(g, tuple(seen), frozenset(edges), tuple(provenance))


def base_patch(g: SimplicialGraph) -> Patch:
    """The identity copy of the defining graph inside its extension graph."""
    if g.n == 0:
        raise PatchError("empty defining graph")
    cgs = [ConjugateGenerator(v, ()) for v in g.vertices]
    return _build(g, cgs, ())


def double_along_star(p: Patch, center: ConjugateGenerator, exponent: int) -> Patch:
    """Adjoin the conjugate of the whole patch by `exponent`-th power of the
    center's group element; vertices in the closed star of the center are
    fixed.  The exponent must not have been used at this center before."""
    if not p.has_vertex(center):
        raise PatchError("center not in patch")
    if exponent == 0:
        raise PatchError("exponent must be nonzero")
    for step in p.provenance:
        if step[0] == "double" and step[1] == center and step[2] == exponent:
            raise PatchError(f"stale exponent {exponent} at {center}")
    g = p.graph
    z = GroupWord(g, ((center.base, 1 if exponent > 0 else -1),) * abs(exponent))
    zc = words.conjugate(z, center.conj_word(g))    # (base^k)^conjugator
    new = [conjugate_generator(g, cg.base, cg.conj_word(g) * zc)
           for cg in p.cg_vertices]
    return _build(
        g, list(p.cg_vertices) + new,
        p.provenance + (("double", center, exponent),),
        known_edges=p.cg_edges, known_verts=p.cg_vertices,
    )


@lru_cache(maxsize=None)
def _ball_conjugators(g: SimplicialGraph, base: str, radius: int):
    """Canonical coset representatives for C(base) of length <= radius,
    grouped by length.  Level l+1 reps all arise from level-l reps extended
    by one letter (minimal coset representatives are prefix-closed)."""
    levels = [{()}]
    alphabet = [(v, s) for v in g.vertices for s in (1, -1)]
    for l in range(radius):
        nxt = set()
        for rep in levels[l]:
            for let in alphabet:
                cand = words.coset_canonical(
                    base, GroupWord(g, rep + (let,))).letters
                if len(cand) == l + 1:
                    nxt.add(cand)
        levels.append(nxt)
    return levels


def ball_patch(g: SimplicialGraph, radius: int) -> Patch:
    """All conjugate generators whose canonical conjugator has length at
    most `radius`, with exact edges."""
    if radius < 0:
        raise PatchError("negative radius")
    cgs = []
    for base in g.vertices:
        for level in _ball_conjugators(g, base, radius):
            for rep in sorted(level):
                cgs.append(ConjugateGenerator(base, rep))
    cgs.sort()
    return _build(g, cgs, (("ball", radius),))


def recompute_edges(p: Patch) -> Patch:
    """Self-check: rebuild every edge from the word algebra."""
    return _build(p.graph, p.cg_vertices, p.provenance)


def to_simplicial(p: Patch) -> SimplicialGraph:
    """The patch as a plain graph on conjugate-generator names."""
    names = {cg: cg.name() for cg in p.cg_vertices}
    return graphs.graph(
        names.values(),
        [(names[a], names[b]) for e in p.cg_edges for a, b in [tuple(e)]],
    )


def named_vertices(p: Patch) -> dict:
    """Name -> conjugate generator, matching `to_simplicial`."""
    return {cg.name(): cg for cg in p.cg_vertices}


# ---------------------------------------------------------------------------
# serialization

def provenance_to_json(provenance) -> list:
    return [
        {"step": s[0], "center": s[1].name(), "exponent": s[2]}
        if s[0] == "double" else {"step": s[0], "radius": s[1]}
        for s in provenance
    ]


def patch_to_json(p: Patch) -> dict:
    idx = {cg: i for i, cg in enumerate(p.cg_vertices)}
    return {
        "vertices": [
            {"base": cg.base,
             "conj": " ".join(g if s == 1 else f"{g}^-1" for g, s in cg.conj)}
            for cg in p.cg_vertices
        ],
        "edges": sorted(sorted((idx[a], idx[b])) for e in p.cg_edges
                        for a, b in [tuple(e)]),
        "provenance": provenance_to_json(p.provenance),
    }
