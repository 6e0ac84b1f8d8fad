"""Atomic-graph rigidity: marked cycles from a minimal maximal subtree,
complexity tuples with the component order, and the desk-scale experiment
checking that every embedding of an atomic graph into its own extension
graph is a conjugation composed with a graph automorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import embeddings, graphs, patches, words
from .graphs import SimplicialGraph
from .words import GroupWord


class RigidityError(ValueError):
    pass


def _require_atomic(g):
    ok, why = graphs.is_atomic(g)
    if not ok:
        raise RigidityError(f"input is not atomic: {why}")


# ---------------------------------------------------------------------------
# marked cycles

def spanning_trees(g: SimplicialGraph):
    """All spanning trees, as frozensets of edges.  Exhaustive; fine for
    the fixture sizes this module targets (|E| <= 18 or so)."""
    edges = sorted(g.edges, key=sorted)
    need = g.n - 1
    out = []
    for combo in itertools.combinations(edges, need):
        t = SimplicialGraph(g.vertices, frozenset(combo))
        if graphs.is_connected(t):
            out.append(frozenset(combo))
    return out


def _tree_path(tree_edges, u, v):
    adj = {}
    for e in tree_edges:
        a, b = tuple(e)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    prev = {u: None}
    queue = [u]
    while queue:
        x = queue.pop(0)
        if x == v:
            break
        for y in adj.get(x, ()):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = [v]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


def fundamental_cycle(tree_edges, edge):
    """The cycle closed by adding `edge` to the tree, as a frozenset of
    edges (its core: the tree path plus the edge)."""
    u, v = sorted(edge)
    path = _tree_path(tree_edges, u, v)
    cyc = {frozenset(p) for p in zip(path, path[1:])}
    cyc.add(frozenset(edge))
    return frozenset(cyc)


@dataclass(frozen=True)
class MarkedCycleSet:
    graph: SimplicialGraph
    tree: frozenset             # edges of the chosen maximal subtree
    excluded: tuple             # edges outside the tree, sorted
    cycles: tuple               # frozensets of edges, aligned with excluded
    lengths: tuple              # sorted ascending; minimal over subtrees


def minimal_marked_cycles(g: SimplicialGraph) -> MarkedCycleSet:
    """Exhaustive minimization of the sorted cycle-length tuple over all
    maximal subtrees; ties broken by the canonical edge-list encoding."""
    _require_atomic(g)
    best = None
    for t in spanning_trees(g):
        excluded = sorted((e for e in g.edges if e not in t), key=sorted)
        cycles = tuple(fundamental_cycle(t, e) for e in excluded)
        lengths = tuple(sorted(len(c) for c in cycles))
        key = (lengths, tuple(sorted(sorted(e) for e in t)))
        if best is None or key < best[0]:
            best = (key, t, tuple(excluded), cycles, lengths)
    _, t, excluded, cycles, lengths = best
    return MarkedCycleSet(g, t, excluded, cycles, lengths)


def cycle_complexity(c: frozenset, s, marked: MarkedCycleSet) -> tuple:
    """(r_5, ..., r_M): per length, how many cycles of the component `s`
    share an edge with c.  The count is inclusive: c shares every edge
    with itself."""
    cycles = set(s)
    if c not in cycles:
        raise RigidityError("cycle does not belong to the component")
    m = max(len(x) for x in marked.cycles)
    counts = {l: 0 for l in range(5, m + 1)}
    for other in cycles:
        if c & other:
            counts[len(other)] += 1
    return tuple(counts[l] for l in range(5, m + 1))


def components(marked: MarkedCycleSet):
    """All sets of marked cycles whose union is connected and free of cut
    vertices."""
    out = []
    for r in range(1, len(marked.cycles) + 1):
        for combo in itertools.combinations(marked.cycles, r):
            union_edges = frozenset().union(*combo)
            vs = {v for e in union_edges for v in e}
            sub = SimplicialGraph(tuple(sorted(vs)), union_edges)
            if not graphs.is_connected(sub):
                continue
            if any(not graphs.is_connected(
                       graphs.induced_subgraph(sub, vs - {v}))
                   for v in vs) and len(vs) > 1:
                continue
            out.append(frozenset(combo))
    return out


def component_signature(s, marked: MarkedCycleSet) -> tuple:
    """Counts of cycles per (length ascending, complexity descending)."""
    keyed = [(len(c), cycle_complexity(c, s, marked)) for c in sorted(s, key=sorted)]
    order = sorted(set(keyed), key=lambda k: (k[0], tuple(-x for x in k[1])))
    return tuple((l, comp, keyed.count((l, comp))) for l, comp in order)


def component_compare(s1, s2, marked: MarkedCycleSet) -> int:
    """-1, 0 or 1 comparing component signatures lexicographically; equal
    signatures do not imply equal subgraphs."""
    a, b = component_signature(s1, marked), component_signature(s2, marked)
    return (a > b) - (a < b)


# ---------------------------------------------------------------------------
# the rigidity experiment

@dataclass(frozen=True)
class Decomposition:
    conjugator: tuple           # canonical letters of g
    automorphism: tuple         # ((v, sigma(v)), ...)


@dataclass(frozen=True)
class RigidityReport:
    graph: SimplicialGraph
    depth: int
    patch_count: int
    embeddings_found: int
    decompositions: tuple       # aligned with embeddings
    failures: tuple             # EmbeddingCertificates with no decomposition

    def to_json(self):
        return {
            "depth": self.depth,
            "patches": self.patch_count,
            "embeddings": self.embeddings_found,
            "failures": len(self.failures),
            "decompositions": [
                {"conjugator": " ".join(
                     x if s == 1 else f"{x}^-1" for x, s in d.conjugator),
                 "automorphism": dict(d.automorphism)}
                for d in self.decompositions
            ],
        }


def _star_ball(g, base, radius):
    """Canonical words of the centralizer of `base` up to given length."""
    alphabet = [(v, s) for v in graphs.star(g, base) for s in (1, -1)]
    seen = {()}
    frontier = [()]
    for _ in range(radius):
        nxt = []
        for letters in frontier:
            for let in alphabet:
                cand = words.normal_form(GroupWord(g, letters + (let,))).letters
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return seen


def decompose_embedding(cert: embeddings.EmbeddingCertificate, radius=3):
    """(g, sigma) with image(sigma(v)) = v^g for all v, or None.

    For an atomic graph the centre is trivial, so g is unique when it
    exists; it is searched as s * conj(v0) with s running over a ball of
    the centralizer of v0.
    """
    g = cert.codomain
    m = cert.as_dict()
    v0 = g.vertices[0]
    for emb in graphs.find_induced_embeddings(cert.domain, cert.domain):
        sigma = emb.as_dict()
        shuffled = {v: m[sigma[v]] for v in g.vertices}
        if any(shuffled[v].base != v for v in g.vertices):
            continue
        c0 = GroupWord(g, shuffled[v0].conj)
        for s in sorted(_star_ball(g, v0, radius)):
            cand = GroupWord(g, s) * c0
            if all(words.coset_canonical(v, cand).letters == shuffled[v].conj
                   for v in g.vertices):
                return Decomposition(
                    words.normal_form(cand).letters,
                    tuple(sorted(sigma.items())))
    return None


def _patch_family(g, depth):
    base = patches.base_patch(g)
    family = [base]
    seen = {frozenset(base.cg_vertices)}
    frontier = [base]
    for _ in range(depth):
        nxt = []
        for p in frontier:
            for center in p.cg_vertices:
                try:
                    q = patches.double_along_star(p, center, 1)
                except patches.PatchError:
                    continue
                key = frozenset(q.cg_vertices)
                if key not in seen:
                    seen.add(key)
                    family.append(q)
                    nxt.append(q)
        frontier = nxt
    return family


def rigidity_experiment(g: SimplicialGraph, depth: int,
                        conjugator_radius=3) -> RigidityReport:
    """Enumerate every induced embedding of g into every patch reachable
    by `depth` doublings and attempt the (conjugator, automorphism)
    decomposition for each; failures are collected, not raised."""
    _require_atomic(g)
    family = _patch_family(g, depth)
    seen_maps = set()
    decs, fails = [], []
    found = 0
    for p in family:
        plain = patches.to_simplicial(p)
        names = patches.named_vertices(p)
        for emb in graphs.find_induced_embeddings(g, plain):
            mapping = tuple(sorted(
                (v, names[img]) for v, img in emb.as_dict().items()))
            if mapping in seen_maps:
                continue
            seen_maps.add(mapping)
            cert = embeddings.EmbeddingCertificate(g, g, mapping, p.provenance)
            if not embeddings.verify_certificate(cert):
                raise RigidityError("patch produced an unverifiable embedding")
            found += 1
            dec = decompose_embedding(cert, radius=conjugator_radius)
            if dec is None:
                fails.append(cert)
            else:
                decs.append(dec)
    return RigidityReport(g, depth, len(family), found, tuple(decs), tuple(fails))
