from itertools import product

import pytest

from treespec.certificate import verify
from treespec.constructions import (
    PrescribedSpectrum,
    cartesian_sum,
    divisor_tree,
    double_composition,
    gadget_F,
    prescribe_connected,
    prescribe_tree,
    smallest_gadget,
    tensor_product,
    unimodalize,
    zero_augment,
)
from treespec.errors import GraphError, PolyError
from treespec.graph import (
    Graph,
    complete,
    cycle,
    disjoint_union,
    is_bipartite,
    is_connected,
    is_tree,
    path,
    star,
)
from treespec.poly import X, IntPoly, abs_profile, compose_sum, divides, is_unimodal, parse_poly_csv
from treespec.search import enumerate_labeled_graphs, free_trees, unlabeled_graphs
from treespec.spectral import charpoly, contains_root

P = parse_poly_csv


def test_cartesian_examples():
    c4 = cartesian_sum(complete(2), complete(2))
    assert c4.edge_count == 4 and all(c4.degree(v) == 2 for v in range(4)) and is_connected(c4)
    assert charpoly(c4) == P("0,0,-4,0,1")
    assert cartesian_sum(Graph(1), path(4)) == path(4)
    f = cartesian_sum(path(5), cycle(3))
    assert f.order == 15 and f == gadget_F("large")


def test_tensor_examples():
    t = tensor_product(complete(2), complete(2))
    assert t.sorted_edges() == [(0, 3), (1, 2)]
    assert is_connected(tensor_product(cycle(3), complete(2)))
    assert not is_connected(tensor_product(path(3), complete(2)))


def test_row_major_numbering():
    # vertex (i, j) is i * |h| + j
    g = cartesian_sum(complete(2), path(3))
    assert g.has_edge(0, 3) and g.has_edge(1, 2) and not g.has_edge(0, 2)


def test_compose_sum_identity():
    small = [g for n in range(1, 5) for g in unlabeled_graphs(n)]
    for g in small:
        for h in small:
            assert charpoly(cartesian_sum(g, h)) == compose_sum(charpoly(g), charpoly(h))


def test_tensor_multiplicativity():
    spectra = {
        "K2": (complete(2), [1, -1]),
        "C3": (cycle(3), [2, -1, -1]),
        "K14": (star(4), [2, -2, 0, 0, 0]),
        "K4": (complete(4), [3, -1, -1, -1]),
    }
    for (g, sg), (h, sh) in product(spectra.values(), repeat=2):
        want = IntPoly.from_roots([a * b for a in sg for b in sh])
        assert charpoly(tensor_product(g, h)) == want


def test_product_connectivity_rules():
    graphs = [g for n in range(1, 5) for g in unlabeled_graphs(n, connected=True)]
    for g in graphs:
        for h in graphs:
            assert is_connected(cartesian_sum(g, h))
            # tensor of connected graphs: connected iff one factor is non-bipartite
            # (single vertices have no edges, so any product with them is edgeless)
            if g.order > 1 and h.order > 1:
                want = not (is_bipartite(g) and is_bipartite(h))
                assert is_connected(tensor_product(g, h)) == want


def test_product_connectivity_exhaustive_order_5():
    conn = [g for n in range(2, 6) for g in unlabeled_graphs(n, connected=True)]
    for g in conn:
        for h in [complete(2), cycle(3), path(3)]:
            assert is_connected(cartesian_sum(g, h))
            assert is_connected(tensor_product(g, h)) == (not (is_bipartite(g) and is_bipartite(h)))


def test_products_reject_empty():
    with pytest.raises(GraphError):
        cartesian_sum(Graph(0), complete(2))


@pytest.mark.parametrize("variant,order", [("small", 7), ("large", 15)])
def test_gadgets(variant, order):
    f = gadget_F(variant)
    assert f.order == order
    assert is_connected(f) and not is_bipartite(f)
    assert contains_root(f, X) and contains_root(f, X - 1)
    if variant == "small":
        assert f.edge_count == 7
    with pytest.raises(GraphError):
        gadget_F("medium")


def test_smallest_gadget_query():
    g = smallest_gadget(6)
    assert g is not None and g.order == 6
    assert smallest_gadget(5) is None
    assert not is_bipartite(g) and contains_root(g, X) and contains_root(g, X - 1)


def test_zero_augment():
    h = zero_augment(path(3))
    assert h.order == 21 and is_connected(h)
    assert contains_root(h, X) and contains_root(h, P("-2,0,1"))
    h = zero_augment(complete(2))
    assert h.order == 14
    assert contains_root(h, X) and contains_root(h, X - 1) and contains_root(h, X + 1)
    with pytest.raises(GraphError):
        zero_augment(disjoint_union([complete(2), complete(2)]))
    for g in unlabeled_graphs(4, connected=True):
        assert is_connected(zero_augment(g))


def test_double_composition_examples():
    t = double_composition(Graph(1), [(complete(2), 0, 0), (star(4), 0, 0)])
    assert (t.order, t.edge_count) == (15, 14) and is_tree(t)
    assert divides(P("4,0,-5,0,1"), charpoly(t))
    p3 = double_composition(Graph(1), [(Graph(1), 0, 0)])
    assert is_tree(p3) and charpoly(p3) == charpoly(path(3))
    with pytest.raises(GraphError):
        double_composition(Graph(1), [(complete(2), 2, 0)])
    with pytest.raises(GraphError):
        double_composition(Graph(1), [(complete(2), 0, 1)])
    with pytest.raises(GraphError):
        double_composition(Graph(1), [])


def test_double_composition_sweep():
    trees = [t.to_graph() for n in range(1, 5) for t in free_trees(n)]
    hosts = [Graph(1), complete(2), path(3)]
    for g in hosts:
        for h in trees:
            for v in range(h.order):
                for x in range(g.order):
                    out = double_composition(g, [(h, v, x)])
                    assert out.order == g.order + 2 * h.order
                    assert out.edge_count == g.edge_count + 2 * h.edge_count + 2
                    assert is_tree(out)
                    assert divides(charpoly(h), charpoly(out))
    # general graphs too, with two parts
    some = list(unlabeled_graphs(3)) + [cycle(4)]
    for h1 in some:
        for h2 in some:
            out = double_composition(cycle(3), [(h1, 0, 1), (h2, h2.order - 1, 2)])
            assert divides(charpoly(h1) * charpoly(h2), charpoly(out))


def test_prescribed_spectrum_validation():
    s = PrescribedSpectrum.from_polys([P("-1,0,1"), P("-2,0,1"), P("-2,0,1")])
    assert dict(s.factors) == {P("-1,0,1"): 1, P("-2,0,1"): 2}
    assert s.provenance == ("squarefree", "irreducible")
    assert s.product() == P("-1,0,1") * P("-2,0,1") ** 2
    with pytest.raises(PolyError):
        PrescribedSpectrum.from_polys([P("1,0,1")])
    with pytest.raises(PolyError):
        PrescribedSpectrum.from_polys([P("1,2,1")])
    with pytest.raises(PolyError):
        PrescribedSpectrum.from_polys([P("-2,0,2")])
    s = PrescribedSpectrum.from_poly(charpoly(cycle(3)))
    assert dict(s.factors) == {X - 2: 1, X + 1: 2}


def test_prescribe_connected_examples():
    g, cert = prescribe_connected(PrescribedSpectrum.from_polys([P("-2,0,1")]))
    assert g.order == 21 and is_connected(g)
    assert contains_root(g, P("-2,0,1")) and contains_root(g, X)
    assert verify(cert).ok
    g, cert = prescribe_connected(PrescribedSpectrum.from_polys([X - 1]))
    assert is_connected(g) and contains_root(g, X - 1) and contains_root(g, X)
    g, cert = prescribe_connected(PrescribedSpectrum.from_polys([X - 1]), variant="large")
    assert g.order == 30 and cert.gadget_variant == "large"


def test_prescribe_connected_rejects_nonreal():
    with pytest.raises(PolyError):
        prescribe_connected(PrescribedSpectrum.from_polys([P("1,0,1")]))


def test_prescribe_tree_examples():
    t, cert = prescribe_tree(PrescribedSpectrum.from_polys([P("-1,0,1"), P("-4,0,1")]))
    assert t == double_composition(Graph(1), [(complete(2), 0, 0), (star(4), 0, 0)])
    assert verify(cert).ok
    t, _ = prescribe_tree(PrescribedSpectrum.from_polys([P("-2,0,1")]))
    assert t.order == 7 and divides(P("-2,0,1"), charpoly(t))
    t, cert = prescribe_tree(PrescribedSpectrum.from_polys([X - 4]))
    assert t.order == 35 and is_tree(t) and divides(X - 4, charpoly(t))


def test_prescribe_tree_kernel_mode_above_cap():
    t, cert = prescribe_tree(PrescribedSpectrum.from_polys([X - 4]), exact_cap=20)
    assert {c.mode for c in cert.claims if c.poly is not None} == {"kernel"}
    assert verify(cert).ok


def test_divisor_tree_examples():
    t, cert = divisor_tree(cycle(3))
    assert is_tree(t) and t.order == 19
    assert divides(P("-2,-3,0,1"), charpoly(t))
    t, _ = divisor_tree(complete(2))
    assert t.order == 5 and charpoly(t) == P("0,3,0,-4,0,1")
    t, _ = divisor_tree(Graph(1))
    assert t.order == 3 and is_tree(t) and divides(X, charpoly(t))
    assert verify(cert).ok


def test_divisor_tree_small_sweep():
    for n in range(1, 4):
        for g in enumerate_labeled_graphs(n):
            t, _ = divisor_tree(g)
            assert is_tree(t) and divides(charpoly(g), charpoly(t))


def test_unimodalize_examples():
    r = unimodalize(P("4,0,-5,0,1"))
    assert is_unimodal(abs_profile(r.g * P("4,0,-5,0,1")))
    assert verify(r.certificate).ok
    r = unimodalize(X)
    assert r.g == P("-2,0,1") and abs_profile(X * r.g) == [1, 2]
    r = unimodalize(P("-1,0,1"))
    assert r.g * P("-1,0,1") == charpoly(r.tree) == P("0,3,0,-4,0,1")


def test_unimodalize_search_finds_smaller_tree():
    f = P("4,0,-5,0,1")
    big = unimodalize(f)
    small = unimodalize(f, search=10)
    assert small.source == "search" and small.tree.order < big.tree.order
    assert divides(f, charpoly(small.tree)) and verify(small.certificate).ok
    with pytest.raises(PolyError):
        unimodalize(P("1,0,1"))
