"""Finite simple graphs with a fixed vertex order, structural predicates,
and induced-subgraph search.

Vertex names are opaque strings; the total order on vertices is
lexicographic and fixed at construction.  All graphs are immutable and
hashable, so derived data (adjacency maps) is memoized per graph.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise GraphError("repeated vertex names")
        if tuple(sorted(self.vertices)) != self.vertices:
            raise GraphError("vertices must be sorted")
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"bad edge {set(e)}")
            if not e <= seen:
                raise GraphError(f"edge endpoint not declared: {set(e)}")

    def __contains__(self, v):
        return v in set(self.vertices)

    @property
    def n(self):
        return len(self.vertices)

    def has_edge(self, u, v):
        return frozenset((u, v)) in self.edges


def graph(vertices, edges=()) -> SimplicialGraph:
    """Build a graph from any iterables of names and vertex pairs."""
    vs = tuple(sorted(set(vertices)))
    es = frozenset(frozenset((str(a), str(b))) for a, b in edges)
    for e in es:
        if len(e) != 2:
            raise GraphError(f"self-loop on {set(e)}")
    return SimplicialGraph(vs, es)


@lru_cache(maxsize=None)
def adjacency(g: SimplicialGraph) -> dict:
    adj = {v: set() for v in g.vertices}
    for e in g.edges:
        a, b = sorted(e)
        adj[a].add(b)
        adj[b].add(a)
    return adj


def link(g, v):
    """Neighbours of v."""
    if v not in g:
        raise GraphError(f"unknown vertex {v!r}")
    return frozenset(adjacency(g)[v])


def star(g, v):
    """v together with its neighbours (the closed star)."""
    return link(g, v) | {v}


def degree(g, v):
    return len(link(g, v))


def induced_subgraph(g, verts) -> SimplicialGraph:
    vs = set(verts)
    if not vs <= set(g.vertices):
        raise GraphError("not a subset of the vertex set")
    return SimplicialGraph(tuple(sorted(vs)), frozenset(e for e in g.edges if e <= vs))


def complement(g) -> SimplicialGraph:
    es = frozenset(
        frozenset(p) for p in itertools.combinations(g.vertices, 2)
        if frozenset(p) not in g.edges
    )
    return SimplicialGraph(g.vertices, es)


def connected_components(g):
    adj = adjacency(g)
    seen, comps = set(), []
    for v in g.vertices:
        if v in seen:
            continue
        comp, queue = {v}, deque([v])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(g):
    return g.n > 0 and len(connected_components(g)) == 1


def _bfs_dist(g, source):
    adj = adjacency(g)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def diameter(g):
    """Exact diameter, or None when g is disconnected or empty."""
    if g.n == 0 or not is_connected(g):
        return None
    best = 0
    for v in g.vertices:
        best = max(best, max(_bfs_dist(g, v).values()))
    return best


def girth(g):
    """Length of a shortest cycle, or None for forests.

    BFS from every vertex; adequate well beyond desk scale.
    """
    adj = adjacency(g)
    best = None
    for root in g.vertices:
        dist, parent = {root: 0}, {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cyc = dist[u] + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


@dataclass(frozen=True)
class ShapeVerdict:
    kind: str           # clique | edgeless | tree | join_of_two_edgeless | other
    params: tuple
    also_edgeless: bool = False

    def to_json(self):
        return {"kind": self.kind, "params": list(self.params),
                "also_edgeless": self.also_edgeless}


def classify_shape(g) -> ShapeVerdict:
    """Recognize the elementary shapes: cliques, edgeless graphs, trees,
    and joins of two edgeless parts (complete bipartite graphs).

    Precedence: clique, edgeless, tree, join, other.  The single-vertex
    graph reports clique(1) flagged as also edgeless.  Stars are reported
    as trees, not joins; K_{m,n} with m, n >= 2 contains a square so the
    two verdicts never compete.
    """
    if g.n == 0:
        raise GraphError("empty graph has no shape")
    full = g.n * (g.n - 1) // 2
    if len(g.edges) == full:
        return ShapeVerdict("clique", (g.n,), also_edgeless=g.n == 1)
    if not g.edges:
        return ShapeVerdict("edgeless", (g.n,))
    if is_connected(g) and len(g.edges) == g.n - 1:
        return ShapeVerdict("tree", (diameter(g),))
    comps = connected_components(complement(g))
    if len(comps) == 2:
        a, b = comps
        if not any(e <= a or e <= b for e in g.edges):
            k, l = sorted((len(a), len(b)))
            return ShapeVerdict("join_of_two_edgeless", (k, l))
    return ShapeVerdict("other", ())


def is_tree(g):
    return is_connected(g) and len(g.edges) == g.n - 1


def is_triangle_built(g):
    """No induced square and no induced path on four vertices.

    The minimal path obstruction is fixed as the 4-vertex induced path
    (both the length-3 and the diameter-3 reading give this graph).
    """
    adj = adjacency(g)
    for quad in itertools.combinations(g.vertices, 4):
        sub = [frozenset(p) for p in itertools.combinations(quad, 2)]
        present = sum(1 for e in sub if e in g.edges)
        if present == 3:
            degs = sorted(sum(1 for u in quad if u != v and u in adj[v]) for v in quad)
            if degs == [1, 1, 2, 2]:   # path on 4 vertices
                return False
        elif present == 4:
            degs = [sum(1 for u in quad if u != v and u in adj[v]) for v in quad]
            if all(d == 2 for d in degs):   # induced square
                return False
    return True


def is_chordal(g):
    """No induced cycle of length >= 4, via maximum cardinality search and
    a perfect elimination ordering check."""
    adj = adjacency(g)
    weight = {v: 0 for v in g.vertices}
    order, numbered = [], set()
    for _ in range(g.n):
        v = max((u for u in g.vertices if u not in numbered),
                key=lambda u: (weight[u], u))
        order.append(v)
        numbered.add(v)
        for w in adj[v]:
            if w not in numbered:
                weight[w] += 1
    order.reverse()   # elimination order
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        pivot = min(later, key=lambda w: pos[w])
        for w in later:
            if w != pivot and w not in adj[pivot]:
                return False
    return True


@dataclass(frozen=True)
class AtomicViolation:
    condition: str      # disconnected | valence1 | girth | separating_star | star_exhausts
    witness: tuple


def is_atomic(g):
    """(True, None) iff g is connected with min degree >= 2, girth >= 5 and
    no separating closed star; otherwise (False, violation)."""
    if not is_connected(g):
        return False, AtomicViolation("disconnected", ())
    for v in g.vertices:
        if degree(g, v) < 2:
            return False, AtomicViolation("valence1", (v,))
    gr = girth(g)
    if gr is not None and gr < 5:
        return False, AtomicViolation("girth", (gr,))
    for v in g.vertices:
        rest = set(g.vertices) - star(g, v)
        if not rest:
            return False, AtomicViolation("star_exhausts", (v,))
        if not is_connected(induced_subgraph(g, rest)):
            return False, AtomicViolation("separating_star", (v,))
    return True, None


@dataclass(frozen=True)
class GraphEmbedding:
    domain: SimplicialGraph
    codomain: SimplicialGraph
    mapping: tuple              # ((domain vertex, codomain vertex), ...)

    def as_dict(self):
        return dict(self.mapping)


def _check_induced(dom, cod, mapping):
    img = list(mapping.values())
    if len(set(img)) != len(img):
        return False
    for u, v in itertools.combinations(mapping, 2):
        if dom.has_edge(u, v) != cod.has_edge(mapping[u], mapping[v]):
            return False
    return True


def find_induced_embeddings(dom, cod, limit=None):
    """Backtracking enumeration of induced-subgraph embeddings dom -> cod.

    Domain vertices are matched in descending-degree order (ties broken
    lexicographically); candidate images follow the codomain vertex
    order, so the enumeration is deterministic.
    """
    order = sorted(dom.vertices, key=lambda v: (-degree(dom, v), v))
    dom_adj = adjacency(dom)
    cod_adj = adjacency(cod)
    out = []

    def extend(i, mapping, used):
        if limit is not None and len(out) >= limit:
            return
        if i == len(order):
            out.append(GraphEmbedding(dom, cod, tuple(sorted(mapping.items()))))
            return
        v = order[i]
        for c in cod.vertices:
            if c in used:
                continue
            ok = True
            for u, cu in mapping.items():
                if (u in dom_adj[v]) != (cu in cod_adj[c]):
                    ok = False
                    break
            if ok:
                mapping[v] = c
                used.add(c)
                extend(i + 1, mapping, used)
                del mapping[v]
                used.discard(c)

    extend(0, {}, set())
    return out


def are_isomorphic(g, h):
    """A witness isomorphism as a dict, or None.  Exact for the desk
    scale this package targets (tens of vertices)."""
    if g.n != h.n or len(g.edges) != len(h.edges):
        return None
    if sorted(degree(g, v) for v in g.vertices) != sorted(degree(h, v) for v in h.vertices):
        return None
    found = find_induced_embeddings(g, h, limit=1)
    return found[0].as_dict() if found else None


def automorphisms(g):
    """All automorphisms of g, as dicts."""
    return [e.as_dict() for e in find_induced_embeddings(g, g)]


# ---------------------------------------------------------------------------
# serialization

def to_json(g) -> str:
    return json.dumps({
        "vertices": list(g.vertices),
        "edges": sorted(sorted(e) for e in g.edges),
    })


def from_json(text: str) -> SimplicialGraph:
    data = json.loads(text)
    return graph(data["vertices"], data.get("edges", []))


def from_dot(text: str) -> SimplicialGraph:
    """A minimal undirected DOT subset: `graph name { a -- b; c; }`."""
    body = text[text.index("{") + 1:text.rindex("}")]
    verts, edges = [], []
    for stmt in body.replace("\n", ";").split(";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        if "--" in stmt:
            chain = [t.strip().strip('"') for t in stmt.split("--")]
            verts.extend(chain)
            edges.extend(zip(chain, chain[1:]))
        else:
            verts.append(stmt.strip('"'))
    return graph(verts, edges)


def load_graph(path) -> SimplicialGraph:
    text = open(path).read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_dot(text)
