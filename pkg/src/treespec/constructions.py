"""Graph building blocks and the prescribed-spectrum pipelines.

Connected graphs come from tensoring witnesses with a gadget that has 0 and 1
as eigenvalues, then taking Cartesian sums.  Trees come from attaching two
identical copies of each witness tree to a common vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .certificate import Certificate, Claim, Recorder
from .errors import CapExceededError, GraphError, PolyError
from .graph import Graph, cycle, is_bipartite, is_connected, is_tree, make_graph, path
from .poly import (
    X,
    IntPoly,
    abs_profile,
    divides,
    exact_quotient,
    factor_irreducible,
    is_totally_real,
    is_unimodal,
    squarefree_part,
)
from .search import WitnessSource, free_trees, unlabeled_graphs
from .spectral import EXACT, EXACT_ORDER_CAP, KERNEL, charpoly, contains_root, spectrum_divides

GADGETS = ("small", "large")


# ---------------------------------------------------------------------------
# products


def _check_orders(g: Graph, h: Graph) -> None:
    if g.order < 1 or h.order < 1:
        raise GraphError("graph products need nonempty operands")


def cartesian_sum(g: Graph, h: Graph) -> Graph:
    """Adjacency A(g) x I + I x A(h); vertex (i, j) becomes i * |h| + j."""
    _check_orders(g, h)
    m = h.order
    edges = []
    for u, v in g.edges:
        edges.extend((u * m + j, v * m + j) for j in range(m))
    for u, v in h.edges:
        edges.extend((i * m + u, i * m + v) for i in range(g.order))
    return make_graph(g.order * m, edges)


def tensor_product(g: Graph, h: Graph) -> Graph:
    """Adjacency A(g) x A(h), same vertex numbering as cartesian_sum."""
    _check_orders(g, h)
    m = h.order
    edges = []
    for u, v in g.edges:
        for a, b in h.edges:
            edges.append((u * m + a, v * m + b))
            edges.append((u * m + b, v * m + a))
    return make_graph(g.order * m, edges)


def gadget_F(variant: str = "small") -> Graph:
    """Connected non-bipartite graph with eigenvalues 0 and 1.

    ``small``: a triangle 0-1-2 with two pendant vertices and a two-vertex
    path hanging off vertex 0 (7 vertices).  ``large``: P5 + C3 (15 vertices).
    """
    if variant == "small":
        return make_graph(7, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6)])
    if variant == "large":
        return cartesian_sum(path(5), cycle(3))
    raise GraphError(f"unknown gadget variant {variant!r}; expected one of {GADGETS}")


def zero_augment(g: Graph, variant: str = "small") -> Graph:
    """gadget x g: connected, has eigenvalue 0, and keeps every eigenvalue of g."""
    if g.order < 1 or not is_connected(g):
        raise GraphError("zero_augment needs a connected graph")
    return tensor_product(gadget_F(variant), g)


def smallest_gadget(max_order: int = 6) -> Graph | None:
    """First connected non-bipartite graph of order <= max_order with 0 and 1 as eigenvalues."""
    for n in range(1, max_order + 1):
        for g in unlabeled_graphs(n, connected=True):
            if not is_bipartite(g) and contains_root(g, X) and contains_root(g, X - 1):
                return g
    return None


def double_composition(g: Graph, parts: Sequence[tuple[Graph, int, int]]) -> Graph:
    """Join vertex x of g to vertex v in each of two copies of h, for every (h, v, x).

    Vertices: g first, then every part once, then every part's second copy.
    """
    if not parts:
        raise GraphError("double_composition needs at least one part")
    edges = list(g.edges)
    total = sum(h.order for h, _, _ in parts)
    offset = g.order
    for h, v, x in parts:
        if not 0 <= v < h.order:
            raise GraphError(f"attachment vertex {v} out of range for a part of order {h.order}")
        if not 0 <= x < g.order:
            raise GraphError(f"host vertex {x} out of range for order {g.order}")
        for shift in (offset, offset + total):
            edges.extend((a + shift, b + shift) for a, b in h.edges)
            edges.append((x, v + shift))
        offset += h.order
    return make_graph(g.order + 2 * total, edges)


# ---------------------------------------------------------------------------
# prescribed spectra


@dataclass(frozen=True)
class PrescribedSpectrum:
    """Monic totally real squarefree factors with multiplicities."""

    factors: tuple[tuple[IntPoly, int], ...]
    provenance: tuple[str, ...]  # "irreducible" or "squarefree" per factor

    def __post_init__(self):
        if len(self.provenance) != len(self.factors):
            raise PolyError("one provenance entry per factor expected")
        for f, m in self.factors:
            if not f.is_monic() or f.degree < 1:
                raise PolyError(f"factor {f} must be monic and nonconstant")
            if m < 1:
                raise PolyError(f"multiplicity of {f} must be positive")
            if squarefree_part(f) != f:
                raise PolyError(f"factor {f} has a repeated root")
            if not is_totally_real(f):
                raise PolyError(f"factor {f} is not totally real")

    @classmethod
    def from_polys(cls, polys: Iterable[IntPoly]) -> PrescribedSpectrum:
        """Each polynomial is one factor instance; repeats add multiplicity."""
        counts: dict[IntPoly, int] = {}
        for f in polys:
            counts[f] = counts.get(f, 0) + 1
        factors = tuple(counts.items())
        prov = []
        for f, _ in factors:
            fac = factor_irreducible(f)
            prov.append("irreducible" if len(fac.factors) == 1 and fac.factors[0][1] == 1 else "squarefree")
        return cls(factors, tuple(prov))

    @classmethod
    def from_poly(cls, f: IntPoly) -> PrescribedSpectrum:
        """Full irreducible factorization of a monic polynomial."""
        if not f.is_monic():
            raise PolyError(f"{f} is not monic")
        fac = factor_irreducible(f)
        return cls(tuple(fac.factors), ("irreducible",) * len(fac.factors))

    def instances(self) -> list[IntPoly]:
        return [f for f, m in self.factors for _ in range(m)]

    def product(self) -> IntPoly:
        out = IntPoly((1,))
        for f in self.instances():
            out = out * f
        return out


def _connected_witness(f: IntPoly, witnesses: WitnessSource) -> tuple[Graph, str]:
    g, how = witnesses.tree_for(f)
    if not is_connected(g):
        raise GraphError(f"witness for {f} is not connected")
    return g, how


def prescribe_connected(
    spec: PrescribedSpectrum,
    witnesses: WitnessSource | None = None,
    variant: str = "small",
) -> tuple[Graph, Certificate]:
    """Connected graph containing 0 and a root of every factor.

    Built by induction over the factors: the first one is a zero-augmented
    witness, and each later one is Cartesian-summed on as its own
    zero-augmented witness.
    """
    witnesses = witnesses or WitnessSource()
    rec = Recorder(gadget_variant=variant)
    gadget = rec.gadget(variant)
    current = None
    for f, _ in spec.factors:
        w, how = _connected_witness(f, witnesses)
        wid = rec.literal(w, note=f"witness for {f.to_csv()} ({how})")
        aug = rec.tensor(gadget, wid)
        if current is None:
            current = aug
        else:
            current = rec.cartesian(current, aug)
    graph = rec.graph(current)
    claims = [Claim("connected")]
    claims.append(Claim("contains", X, KERNEL))
    claims.extend(Claim("contains", f, KERNEL) for f, _ in spec.factors)
    return graph, rec.finish(current, claims)


def prescribe_tree(
    spec: PrescribedSpectrum,
    witnesses: WitnessSource | None = None,
    *,
    exact_cap: int = EXACT_ORDER_CAP,
) -> tuple[Graph, Certificate]:
    """Tree E1 o [T_1, ..., T_p] built from witness trees for the factor instances.

    A witness whose characteristic polynomial has room for several pending
    instances (x^2 - 1 for both x - 1 and x + 1, say) is used once for all
    of them, so every instance is still accounted for with multiplicity.
    """
    witnesses = witnesses or WitnessSource()
    rec = Recorder()
    host = rec.literal(Graph(1), note="host E1")
    parts = []
    pending = spec.instances()
    while pending:
        f = pending[0]
        w, how = witnesses.tree_for(f)
        if not is_tree(w):
            raise GraphError(f"witness for {f} is not a tree")
        # the witness also serves every other pending instance it has room for
        rest, covered, left = charpoly(w), [], []
        for q in pending:
            if divides(q, rest):
                rest = exact_quotient(rest, q)
                covered.append(q.to_csv())
            else:
                left.append(q)
        if not covered:
            raise AssertionError(f"witness for {f} does not contain it")
        pending = left
        note = f"witness for {' * '.join(covered)} ({how})"
        parts.append((rec.literal(w, note=note), 0, 0))
    root = rec.compose(host, parts)
    graph = rec.graph(root)
    mode = EXACT if graph.order <= exact_cap else KERNEL
    union = IntPoly((1,))
    for pid, _, _ in parts:
        union = union * charpoly(rec.graph(pid))
    claims = [Claim("tree")]
    if mode == EXACT:
        claims.append(Claim("divides", union, EXACT))
        claims.append(Claim("divides", spec.product(), EXACT))
    else:
        claims.extend(Claim("contains", f, KERNEL) for f, _ in spec.factors)
    return graph, rec.finish(root, claims)


def divisor_tree(
    g: Graph,
    witnesses: WitnessSource | None = None,
    *,
    exact_cap: int = EXACT_ORDER_CAP,
) -> tuple[Graph, Certificate]:
    """Tree whose characteristic polynomial is divisible by that of g."""
    if g.order < 1:
        raise GraphError("divisor_tree needs a nonempty graph")
    return _divisor_tree_for(charpoly(g), witnesses, exact_cap)


def _divisor_tree_for(f: IntPoly, witnesses, exact_cap: int) -> tuple[Graph, Certificate]:
    spec = PrescribedSpectrum.from_poly(f)
    t, cert = prescribe_tree(spec, witnesses, exact_cap=exact_cap)
    if t.order > exact_cap:
        raise CapExceededError(f"divisor tree has order {t.order}, beyond the exact cap {exact_cap}")
    verdict = spectrum_divides(f, t, EXACT, exact_cap=exact_cap)
    if not verdict.divides:
        raise AssertionError(f"assembled tree does not have {f} as a divisor")
    cert.claims.append(Claim("divides", f, EXACT))
    return t, cert


@dataclass
class Unimodalized:
    g: IntPoly
    tree: Graph
    certificate: Certificate
    source: str  # "divisor-tree" or "search"


def unimodalize(
    f: IntPoly,
    search: int | None = None,
    witnesses: WitnessSource | None = None,
) -> Unimodalized:
    """Totally real g with f * g unimodal, taken as charpoly(T) / f for a tree T.

    With ``search`` set, trees up to that order are scanned and the first one
    with f as a divisor replaces the divisor-tree construction if smaller.
    """
    if not f.is_monic() or f.degree < 1:
        raise PolyError(f"{f} must be monic and nonconstant")
    if not is_totally_real(f):
        raise PolyError(f"{f} is not totally real")
    t, cert = _divisor_tree_for(f, witnesses, EXACT_ORDER_CAP)
    source = "divisor-tree"
    if search is not None:
        hit = _smallest_tree_divisible(f, min(search, t.order - 1))
        if hit is not None:
            t = hit
            cert = Recorder.single(hit, [Claim("tree"), Claim("divides", f, EXACT)])
            source = "search"
    p = charpoly(t)
    g = exact_quotient(p, f)
    if not is_unimodal(abs_profile(f * g)):
        raise AssertionError(f"tree characteristic polynomial {p} is not unimodal")
    cert.claims.append(Claim("unimodal"))
    return Unimodalized(g, t, cert, source)


def _smallest_tree_divisible(f: IntPoly, max_order: int) -> Graph | None:
    for n in range(max(1, f.degree), max_order + 1):
        for t in free_trees(n):
            if divides(f, t.charpoly()):
                return t.to_graph()
    return None
