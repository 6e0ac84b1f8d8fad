"""Search for induced embeddings of a defining graph into the extension
graph of another, reported as verifiable certificates.

Presence of an embedding is semi-decidable: the search explores finite
patches of increasing size and either returns a certificate or gives up
at its budget, which is evidence of absence only at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import graphs, patches
from .graphs import SimplicialGraph
from .patches import ConjugateGenerator, Patch


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 3          # doubling rounds; also the ball-radius ceiling
    max_patches: int = 300      # patches kept per doubling level
    max_vertices: int = 0       # 0 means: use the global patch budget

    def vertex_cap(self):
        return self.max_vertices or patches.vertex_budget()


@dataclass(frozen=True)
class EmbeddingCertificate:
    domain: SimplicialGraph
    codomain: SimplicialGraph   # defining graph of the target group
    mapping: tuple              # ((domain vertex, ConjugateGenerator), ...)
    provenance: tuple = ()      # patch provenance that produced the witness

    def as_dict(self):
        return dict(self.mapping)


def verify_certificate(cert: EmbeddingCertificate) -> bool:
    """Re-derive everything from the word algebra: the images must be
    canonical, pairwise distinct, and commute exactly along domain edges."""
    m = cert.as_dict()
    if set(m) != set(cert.domain.vertices):
        return False
    for v, cg in m.items():
        canon = patches.conjugate_generator(
            cert.codomain, cg.base, cg.conj_word(cert.codomain))
        if canon != cg:
            return False
    cgs = list(m.values())
    if len(set(cgs)) != len(cgs):
        return False
    for u, v in ((a, b) for i, a in enumerate(cert.domain.vertices)
                 for b in cert.domain.vertices[i + 1:]):
        if patches.commute_cg(cert.codomain, m[u], m[v]) != cert.domain.has_edge(u, v):
            return False
    return True


def _fresh_exponent(p: Patch, center):
    return 1 + sum(1 for s in p.provenance
                   if s[0] == "double" and s[1] == center)


@lru_cache(maxsize=None)
def _doubling_level(cod: SimplicialGraph, level: int, cap: int):
    """Patches reachable by exactly `level` doublings, deduplicated by
    vertex set across all shallower levels, smallest parents first, at
    most `cap` per level.  Cached so searches over one codomain share the
    whole family."""
    if level == 0:
        return (patches.base_patch(cod),)
    seen = set()
    for l in range(level):
        for p in _doubling_level(cod, l, cap):
            seen.add(frozenset(p.cg_vertices))
    out = []
    parents = sorted(_doubling_level(cod, level - 1, cap), key=lambda p: p.n)
    for p in parents:
        for center in p.cg_vertices:
            try:
                q = patches.double_along_star(p, center, _fresh_exponent(p, center))
            except patches.BudgetExceeded:
                continue
            key = frozenset(q.cg_vertices)
            if key in seen:
                continue
            seen.add(key)
            out.append(q)
            if len(out) >= cap:
                return tuple(out)
    return tuple(out)


def _search_in_patch(dom: SimplicialGraph, p: Patch):
    plain = patches.to_simplicial(p)
    found = graphs.find_induced_embeddings(dom, plain, limit=1)
    if not found:
        return None
    names = patches.named_vertices(p)
    mapping = tuple(sorted(
        (v, names[img]) for v, img in found[0].as_dict().items()))
    return EmbeddingCertificate(dom, p.graph, mapping, p.provenance)


def search_embedding(dom: SimplicialGraph, cod: SimplicialGraph,
                     budget: SearchBudget = SearchBudget()):
    """A verified certificate for an induced embedding of `dom` into the
    extension graph of `cod`, or None within the budget.

    Strategy: breadth-first iterative deepening over doubling sequences
    (exponents kept fresh per center, small parents expanded first), then
    whole balls of growing radius as a fallback.
    """
    if dom.n == 0 or cod.n == 0:
        raise patches.PatchError("empty graph in embedding search")
    for level in range(budget.max_depth + 1):
        for p in _doubling_level(cod, level, budget.max_patches):
            if p.n < dom.n:
                continue
            cert = _search_in_patch(dom, p)
            if cert is not None and verify_certificate(cert):
                return cert
    for radius in range(1, min(budget.max_depth, 2) + 1):
        try:
            ball = patches.ball_patch(cod, radius)
        except patches.BudgetExceeded:
            break
        cert = _search_in_patch(dom, ball)
        if cert is not None and verify_certificate(cert):
            return cert
    return None


def mutual_embeddability(g1: SimplicialGraph, g2: SimplicialGraph,
                         budget: SearchBudget = SearchBudget()):
    """(certificate g1 -> ext(g2) or None, certificate g2 -> ext(g1) or None)."""
    return (search_embedding(g1, g2, budget),
            search_embedding(g2, g1, budget))
