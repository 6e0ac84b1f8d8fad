import itertools

import pytest

from pcqi import bisim, embeddings, graphs, ntrees

from oracles import generate_ntrees, ntree_oracle


def K(n, *simplices):
    return ntrees.complex_(n, simplices)


PATH4 = K(1, "ab", "bc", "cd")
PATH5 = K(1, "ab", "bc", "cd", "de")
STAR3 = K(1, "cx", "cy", "cz")
TWO_TRIANGLES = K(2, "abc", "bcd")


def test_complex_basics():
    assert PATH4.vertices == frozenset("abcd")
    assert ntrees.skeleton(PATH4) == graphs.graph("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    with pytest.raises(ntrees.NTreeError):
        K(2, "ab")                       # wrong dimension
    rt = ntrees.complex_from_json(ntrees.complex_to_json(TWO_TRIANGLES))
    assert rt == TWO_TRIANGLES


def test_validate_examples():
    assert ntrees.validate_ntree(K(1, "ab")) == (True, None)
    assert ntrees.validate_ntree(PATH4) == (True, None)
    assert ntrees.validate_ntree(TWO_TRIANGLES) == (True, None)
    ok, why = ntrees.validate_ntree(K(1, "ab", "bc", "cd", "da"))   # C4
    assert not ok and why
    ok, why = ntrees.validate_ntree(K(2, "abc", "cde"))   # vertex-only gluing
    assert not ok and why
    ok, why = ntrees.validate_ntree(K(2, "abc", "abd", "acd"))
    assert not ok


def test_validate_matches_gluing_oracle(rng):
    for n in (1, 2, 3):
        # valid by construction
        for k in generate_ntrees(n, 5, rng, 25):
            assert ntree_oracle(k)
            assert ntrees.validate_ntree(k)[0]
        # random candidates, valid or not
        agree = 0
        pool = [f"g{i}" for i in range(n + 4)]
        for _ in range(40):
            simplices = {frozenset(rng.sample(pool, n + 1))
                         for _ in range(rng.randrange(1, 6))}
            k = ntrees.NTreeComplex(n, frozenset(simplices))
            assert ntrees.validate_ntree(k)[0] == ntree_oracle(k)
            agree += 1
        assert agree == 40


def test_vertex_coloring():
    col = ntrees.vertex_coloring(PATH4)
    assert [col[v] for v in "abcd"] == [1, 2, 1, 2]
    col2 = ntrees.vertex_coloring(TWO_TRIANGLES)
    assert col2["d"] == col2["a"]                 # both apexes off the spine
    assert {col2["a"], col2["b"], col2["c"]} == {1, 2, 3}
    for k in (PATH5, STAR3, TWO_TRIANGLES):
        col = ntrees.vertex_coloring(k)
        for s in k.simplices:
            assert sorted(col[v] for v in s) == list(range(1, k.n + 2))
    with pytest.raises(ntrees.NTreeError):
        ntrees.vertex_coloring(K(1, "ab", "bc", "ca"))


def test_pieces_and_gph():
    ps = ntrees.pieces(PATH4)
    assert [sorted(p.spine) for p in ps] == [["b"], ["c"]]
    assert sorted(ps[0].tips) == ["a", "c"]

    g = ntrees.build_gph(PATH4)
    assert set(g.colors.values()) == {"p1", "p2", "f"}
    assert g.graph.n == 3 and len(g.graph.edges) == 2

    g1 = ntrees.build_gph(STAR3)                  # single piece, no f
    assert g1.graph.n == 1
    # spine {c} is colored 1, so the piece is labelled by the missing color
    assert list(g1.colors.values()) == ["p2"]

    g5 = ntrees.build_gph(PATH5)
    colors = sorted(g5.colors.values())
    assert colors == ["f", "f", "p1", "p1", "p2"]

    g2 = ntrees.build_gph(TWO_TRIANGLES)          # one piece, spine {b,c}
    assert g2.graph.n == 1


def test_gph_invariants(rng):
    for n in (1, 2):
        for k in generate_ntrees(n, 5, rng, 20):
            g = ntrees.build_gph(k)
            if g.graph.n == 0:
                continue
            assert graphs.is_tree(g.graph) or g.graph.n == 1
            for v in g.graph.vertices:
                if g.color(v) == "f":
                    nbrs = graphs.link(g.graph, v)
                    assert 2 <= len(nbrs) <= n + 1
                    labels = [g.color(u) for u in nbrs]
                    assert len(set(labels)) == len(labels)


def test_double_ntree():
    single = K(2, "abc")
    d, fold = ntrees.double_ntree(single, "a")
    assert d == single

    p3 = K(1, "ab", "bc")
    d, fold = ntrees.double_ntree(p3, "a")
    sk = ntrees.skeleton(d)
    assert graphs.are_isomorphic(sk, graphs.graph(
        "wxyz", [("w", "x"), ("w", "y"), ("w", "z")])) is not None
    assert fold["c'"] == "c"

    with pytest.raises(ntrees.NTreeError):
        ntrees.double_ntree(p3, "zz")


def test_double_is_bisimilar(rng):
    fixtures = [PATH4, PATH5, STAR3, TWO_TRIANGLES,
                K(2, "abc", "bcd", "cde")]
    for k in fixtures:
        for v in sorted(k.vertices):
            d, _ = ntrees.double_ntree(k, v)
            ok, _ = bisim.bisimilar(ntrees.build_gph(d), ntrees.build_gph(k))
            assert ok, (sorted(map(sorted, k.simplices)), v)


def test_weak_cover_to_embedding_examples():
    # identity on a single simplex
    cert = ntrees.weak_cover_to_embedding(K(2, "abc"), K(2, "xyz"), {})
    assert embeddings.verify_certificate(cert)

    # the doubled path folds onto the path
    d, fold = ntrees.double_ntree(PATH4, "a")
    f = ntrees.induced_gph_map(d, PATH4, fold)
    ok, _ = bisim.check_weak_covering(f, ntrees.build_gph(d), ntrees.build_gph(PATH4))
    assert ok
    cert = ntrees.weak_cover_to_embedding(d, PATH4, f)
    assert embeddings.verify_certificate(cert)
    by_name = {v: cg.name() for v, cg in cert.mapping}
    assert by_name["c'"] == "c^a"

    # a non-covering map is rejected
    with pytest.raises(ntrees.NTreeError):
        ntrees.weak_cover_to_embedding(d, PATH4, {k: "p:b" for k in f})


def test_weak_cover_path5_onto_path4():
    f = {"p:b": "p:b", "p:d": "p:b", "p:c": "p:c",
         "f:b,c": "f:b,c", "f:c,d": "f:b,c"}
    ok, why = bisim.check_weak_covering(
        f, ntrees.build_gph(PATH5), ntrees.build_gph(PATH4))
    assert ok, why
    cert = ntrees.weak_cover_to_embedding(PATH5, PATH4, f)
    assert embeddings.verify_certificate(cert)
