"""Colored graphs, weak coverings, and bisimilarity.

A weak covering is a color-preserving surjective graph homomorphism with
the edge-lifting property: every edge at the image of a vertex lifts to
an edge at that vertex.  Two colored graphs are bisimilar when they admit
weak coverings onto a common quotient; for finite graphs this is decided
by comparing minimal quotients, computed by coarsest stable partition
refinement.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from . import graphs
from .graphs import SimplicialGraph


class BisimError(ValueError):
    pass


@dataclass(frozen=True)
class ColoredGraph:
    graph: SimplicialGraph
    color_items: tuple      # ((vertex, color), ...) sorted

    def color(self, v):
        return dict(self.color_items)[v]

    @property
    def colors(self):
        return dict(self.color_items)


def colored_graph(g: SimplicialGraph, colors: dict) -> ColoredGraph:
    if set(colors) != set(g.vertices):
        raise BisimError("colors must cover exactly the vertex set")
    return ColoredGraph(g, tuple(sorted((v, str(c)) for v, c in colors.items())))


def check_weak_covering(f: dict, up: ColoredGraph, down: ColoredGraph):
    """(True, None), or (False, reason) with the first violation found."""
    g1, g2 = up.graph, down.graph
    if set(f) != set(g1.vertices):
        return False, "map is not total on the domain"
    if not set(f.values()) <= set(g2.vertices):
        return False, "map leaves the codomain"
    c1, c2 = up.colors, down.colors
    for v, w in f.items():
        if c1[v] != c2[w]:
            return False, f"color mismatch at {v}"
    adj1 = graphs.adjacency(g1)
    adj2 = graphs.adjacency(g2)
    for e in g1.edges:
        a, b = tuple(e)
        if f[a] == f[b] or not g2.has_edge(f[a], f[b]):
            return False, f"edge {sorted(e)} does not map to an edge"
    for v in g1.vertices:
        have = {f[u] for u in adj1[v]}
        for w in adj2[f[v]]:
            if w not in have:
                return False, f"edge ({f[v]}, {w}) has no lift at {v}"
    if set(f.values()) != set(g2.vertices):
        return False, "map is not surjective"
    return True, None


def properly_colored(cg: ColoredGraph) -> bool:
    """No edge joins two vertices of the same color (always true for the
    bipartite p/f invariant trees)."""
    colors = cg.colors
    return all(colors[a] != colors[b] for e in cg.graph.edges
               for a, b in [tuple(e)])


def _stable_partition(cg: ColoredGraph):
    """Coarsest partition refining colors in which any two vertices of a
    class see the same set of classes across edges."""
    adj = graphs.adjacency(cg.graph)
    colors = cg.colors
    block = {v: colors[v] for v in cg.graph.vertices}
    while True:
        sig = {v: (block[v], frozenset(block[u] for u in adj[v]))
               for v in cg.graph.vertices}
        names = {s: i for i, s in enumerate(sorted(set(sig.values()),
                                                   key=repr))}
        new = {v: names[sig[v]] for v in cg.graph.vertices}
        if len(set(new.values())) == len(set(block.values())):
            return new
        block = new


def minimal_quotient(cg: ColoredGraph):
    """(quotient ColoredGraph, vertex -> quotient-vertex map).

    Quotient vertices are named by the sorted class contents, so equal
    inputs give identical quotients.  Requires a properly colored input:
    with monochrome edges the coarsest stable partition may merge
    adjacent vertices, which no simple-graph quotient can realize.
    """
    if not properly_colored(cg):
        raise BisimError("monochrome edge: minimal quotient undefined")
    block = _stable_partition(cg)
    classes = {}
    for v, b in block.items():
        classes.setdefault(b, []).append(v)
    qname = {b: "|".join(sorted(vs)) for b, vs in classes.items()}
    qmap = {v: qname[block[v]] for v in cg.graph.vertices}
    qedges = {frozenset((qmap[a], qmap[b]))
              for e in cg.graph.edges for a, b in [tuple(e)]
              if qmap[a] != qmap[b]}
    qgraph = graphs.graph(qname.values(), [tuple(e) for e in qedges])
    qcolors = {qname[b]: cg.colors[vs[0]] for b, vs in classes.items()}
    quotient = colored_graph(qgraph, qcolors)
    ok, why = check_weak_covering(qmap, cg, quotient)
    if not ok:
        raise BisimError(f"quotient is not a weak covering: {why}")
    return quotient, qmap


def colored_isomorphic(a: ColoredGraph, b: ColoredGraph):
    """A color-preserving isomorphism as a dict, or None."""
    if a.graph.n != b.graph.n or len(a.graph.edges) != len(b.graph.edges):
        return None
    if sorted(a.colors.values()) != sorted(b.colors.values()):
        return None
    ca, cb = a.colors, b.colors
    for emb in graphs.find_induced_embeddings(a.graph, b.graph):
        m = emb.as_dict()
        if all(ca[v] == cb[m[v]] for v in m):
            return m
    return None


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield [[first]] + part


def all_quotients(cg: ColoredGraph):
    """Every (quotient, map) arising from a partition into independent
    color-homogeneous classes whose quotient map is a weak covering.
    Exponential; the fallback path for small improperly-colored inputs."""
    colors = cg.colors
    out = []
    for part in _set_partitions(list(cg.graph.vertices)):
        if any(len({colors[v] for v in cls}) > 1 for cls in part):
            continue
        if any(cg.graph.has_edge(u, v) for cls in part
               for u, v in itertools.combinations(cls, 2)):
            continue
        qname = {v: "|".join(sorted(cls)) for cls in part for v in cls}
        qedges = {frozenset((qname[x], qname[y]))
                  for e in cg.graph.edges for x, y in [tuple(e)]}
        qgraph = graphs.graph(set(qname.values()), [tuple(e) for e in qedges])
        quotient = colored_graph(qgraph, {qname[v]: colors[v] for v in qname})
        ok, _ = check_weak_covering(qname, cg, quotient)
        if ok:
            out.append((quotient, qname))
    return out


def bisimilar(a: ColoredGraph, b: ColoredGraph):
    """(True, witness) with a common quotient and both covering maps, or
    (False, None).

    Properly colored inputs are decided by comparing coarsest stable
    quotients; inputs with monochrome edges fall back to an exhaustive
    search over quotient pairs, feasible only for small graphs.
    """
    if properly_colored(a) and properly_colored(b):
        qa, ma = minimal_quotient(a)
        qb, mb = minimal_quotient(b)
        iso = colored_isomorphic(qa, qb)
        if iso is None:
            return False, None
        return True, {
            "quotient": qb,
            "map_a": {v: iso[ma[v]] for v in a.graph.vertices},
            "map_b": dict(mb),
        }
    if max(a.graph.n, b.graph.n) > 8:
        raise BisimError("monochrome edges on a graph too large for the "
                         "exhaustive fallback")
    for qa, ma in all_quotients(a):
        for qb, mb in all_quotients(b):
            iso = colored_isomorphic(qa, qb)
            if iso is not None:
                return True, {
                    "quotient": qb,
                    "map_a": {v: iso[ma[v]] for v in a.graph.vertices},
                    "map_b": dict(mb),
                }
    return False, None


def p_colors(cg: ColoredGraph):
    return sorted({c for c in cg.colors.values() if c != "f"})


def recolor(cg: ColoredGraph, perm: dict) -> ColoredGraph:
    return colored_graph(cg.graph,
                         {v: perm.get(c, c) for v, c in cg.colors.items()})


def bisimilar_up_to_pcolor_permutation(a: ColoredGraph, b: ColoredGraph, n: int):
    """Try every permutation of the piece colors p1..p{n+1} on the first
    graph; (True, permutation, witness) on the first success."""
    palette = [f"p{i}" for i in range(1, n + 2)]
    for cg in (a, b):
        bad = set(cg.colors.values()) - set(palette) - {"f"}
        if bad:
            raise BisimError(f"unexpected colors {sorted(bad)}")
    for images in itertools.permutations(palette):
        perm = dict(zip(palette, images))
        ok, witness = bisimilar(recolor(a, perm), b)
        if ok:
            return True, perm, witness
    return False, None, None


# ---------------------------------------------------------------------------
# serialization

def colored_to_json(cg: ColoredGraph) -> str:
    return json.dumps({
        "vertices": list(cg.graph.vertices),
        "edges": sorted(sorted(e) for e in cg.graph.edges),
        "colors": dict(cg.color_items),
    })


def colored_from_json(text: str) -> ColoredGraph:
    data = json.loads(text)
    g = graphs.graph(data["vertices"], data.get("edges", []))
    return colored_graph(g, data["colors"])
