"""Bounded exhaustive search: labeled graphs, unlabeled trees, tree witnesses.

Nothing here ever claims nonexistence beyond the bound it was given; running
out of room raises ``WitnessNotFoundError`` or ``CapExceededError``.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from pathlib import Path
from typing import Iterator, Mapping

from .errors import CapExceededError, Graph6Error, GraphError, PolyError, WitnessNotFoundError
from .graph import Graph, emit_graph6, is_connected, make_graph, parse_graph6, star
from .poly import (
    X,
    IntPoly,
    divides,
    factor_irreducible,
    inverse_mod,
    is_totally_real,
    parse_poly_csv,
    power_sum,
    residue,
    residue_mul,
    squarefree_part,
    sturm_count,
)
from .spectral import charpoly, contains_root

log = logging.getLogger(__name__)

LABELED_CAP = 8
TREE_CAP = 18


@dataclass(frozen=True)
class SearchBound:
    max_order: int = 12
    mode: str = "trees"
    budget: int | None = None

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be at least 1")
        if self.mode not in ("graphs", "trees", "connected-graphs"):
            raise ValueError(f"unknown search mode {self.mode!r}")

    def __str__(self) -> str:
        s = f"{self.mode} of order <= {self.max_order}"
        if self.budget is not None:
            s += f", budget {self.budget}"
        return s


# ---------------------------------------------------------------------------
# labeled graphs


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def enumerate_labeled_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n choose 2) labeled graphs on n vertices, by ascending edge bitmask.

    Bit k of the mask is the k-th pair (i, j), i < j, in lexicographic order.
    """
    if n < 0:
        raise ValueError("order must be non-negative")
    if n > LABELED_CAP:
        raise CapExceededError(f"labeled enumeration is capped at order {LABELED_CAP}")
    pairs = _pairs(n)
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))


def canonical_key(g: Graph) -> tuple:
    """Brute-force canonical form (lexicographically least relabeled edge list).

    Only meant for the tiny orders used in sweeps.
    """
    best = None
    for perm in permutations(range(g.order)):
        key = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return (g.order, best)


def _invariant(g: Graph) -> tuple:
    deg = [len(a) for a in g.adjacency]
    return tuple(sorted((deg[v], tuple(sorted(deg[w] for w in g.adjacency[v]))) for v in range(g.order)))


def _isomorphic(g: Graph, h: Graph) -> bool:
    # degree-respecting backtracking; g and h share the invariant already
    n = g.order
    dg = [len(a) for a in g.adjacency]
    dh = [len(a) for a in h.adjacency]
    image = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w] or dh[w] != dg[v]:
                continue
            if all(h.has_edge(w, image[u]) == g.has_edge(v, u) for u in range(v)):
                image[v], used[w] = w, True
                if extend(v + 1):
                    return True
                image[v], used[w] = -1, False
        return False

    return extend(0)


@lru_cache(maxsize=None)
def _unlabeled(n: int, connected: bool) -> tuple[Graph, ...]:
    buckets: dict[tuple, list[Graph]] = {}
    out = []
    for g in enumerate_labeled_graphs(n):
        if connected and (n == 0 or not is_connected(g)):
            continue
        reps = buckets.setdefault(_invariant(g), [])
        if not any(_isomorphic(g, r) for r in reps):
            reps.append(g)
            out.append(g)
    return tuple(out)


def unlabeled_graphs(n: int, connected: bool = False) -> list[Graph]:
    """One representative per isomorphism class, first labeled occurrence kept."""
    if n > 6:
        raise CapExceededError("unlabeled graph listing is only offered for order <= 6")
    return list(_unlabeled(n, connected))


# ---------------------------------------------------------------------------
# rooted and free trees
#
# Rooted trees are interned as integer ids.  A tree is determined by the
# tuple of its children's ids, sorted by decreasing key, where the key is
# (height, size, nested-parentheses code).  The single vertex is id 0.

_children: list[tuple[int, ...]] = []
_keys: list[tuple[int, int, str]] = []
_ids: dict[tuple[int, ...], int] = {}


def _intern(children: tuple[int, ...]) -> int:
    t = _ids.get(children)
    if t is None:
        t = len(_children)
        size = 1 + sum(_keys[c][1] for c in children)
        height = 1 + max(_keys[c][0] for c in children) if children else 0
        code = "(" + "".join(_keys[c][2] for c in children) + ")"
        _children.append(children)
        _keys.append((height, size, code))
        _ids[children] = t
    return t


LEAF = _intern(())


def _size(t: int) -> int:
    return _keys[t][1]


def _height(t: int) -> int:
    return _keys[t][0]


def _code(t: int) -> str:
    return _keys[t][2]


def _key(t: int) -> tuple[int, int, str]:
    return _keys[t]


def _make_rooted(children) -> int:
    return _intern(tuple(sorted(children, key=_key, reverse=True)))


@lru_cache(maxsize=None)
def _rooted(size: int, maxh: int) -> tuple[int, ...]:
    """Rooted trees with this many vertices and height <= maxh, decreasing by key."""
    if size == 1:
        return (LEAF,)
    if maxh <= 0:
        return ()
    out = [_intern(tuple(f)) for f in _forests(size - 1, maxh - 1, None)]
    out.sort(key=_key, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def _candidate_table(total: int, maxh: int) -> tuple[tuple[int, ...], tuple]:
    out: list[int] = []
    for s in range(1, total + 1):
        out.extend(_rooted(s, maxh))
    out.sort(key=_key, reverse=True)
    # ascending copy of the keys for bisection
    return tuple(out), tuple(_key(t) for t in reversed(out))


def _candidates(total: int, maxh: int, limit: int | None) -> tuple[int, ...]:
    out, asc = _candidate_table(total, maxh)
    if limit is None:
        return out
    # keep the suffix whose keys are <= key(limit)
    k = bisect_right(asc, _key(limit))
    return out[len(out) - k :]


def _forests(total: int, maxh: int, limit: int | None) -> Iterator[list[int]]:
    # multisets of rooted trees, listed in nonincreasing key order
    if total == 0:
        yield []
        return
    for t in _candidates(total, maxh, limit):
        for rest in _forests(total - _size(t), maxh, t):
            yield [t] + rest


def _exact_height(size: int, h: int) -> list[int]:
    return [t for t in _rooted(size, h) if _height(t) == h]


@dataclass(frozen=True)
class FreeTree:
    """Center-rooted canonical description of an unlabeled tree."""

    halves: tuple[int, ...]  # (root,) if unicentral, (a, b) if bicentral

    @property
    def order(self) -> int:
        return sum(_size(h) for h in self.halves)

    @property
    def code(self) -> str:
        return ("U" if len(self.halves) == 1 else "B") + "".join(_code(h) for h in self.halves)

    def to_graph(self) -> Graph:
        edges: list[tuple[int, int]] = []
        nxt = 0

        def place(t: int) -> int:
            nonlocal nxt
            v = nxt
            nxt += 1
            for c in _children[t]:
                edges.append((v, place(c)))
            return v

        roots = [place(h) for h in self.halves]
        if len(roots) == 2:
            edges.append((roots[0], roots[1]))
        return make_graph(nxt, edges)

    def charpoly(self) -> IntPoly:
        if len(self.halves) == 1:
            return _tree_phi(self.halves[0])[0]
        a, b = (_tree_phi(h) for h in self.halves)
        return a[0] * b[0] - a[1] * b[1]


@lru_cache(maxsize=None)
def _tree_phi(t: int) -> tuple[IntPoly, IntPoly]:
    """(charpoly of the rooted tree, charpoly with its root deleted)."""
    kids = [_tree_phi(c) for c in _children[t]]
    prefix = [IntPoly((1,))]
    for phi, _ in kids:
        prefix.append(prefix[-1] * phi)
    suffix = [IntPoly((1,))]
    for phi, _ in reversed(kids):
        suffix.append(suffix[-1] * phi)
    suffix.reverse()
    prod = prefix[-1]
    total = X * prod
    for i, (_, psi) in enumerate(kids):
        total = total - psi * prefix[i] * suffix[i + 1]
    return total, prod


def free_trees(n: int) -> list[FreeTree]:
    """All unlabeled trees of order n, sorted by canonical code."""
    if n < 1:
        return []
    if n > TREE_CAP:
        raise CapExceededError(f"tree enumeration is capped at order {TREE_CAP}")
    return list(_free_trees(n))


@lru_cache(maxsize=4)
def _free_trees(n: int) -> tuple[FreeTree, ...]:
    if n == 1:
        return (FreeTree((LEAF,)),)
    out: list[FreeTree] = []
    # unicentral: at least two root branches reach height h - 1
    for h in range(1, (n - 1) // 2 + 1):
        for first in _candidates(n - 1, h - 1, None):
            if _height(first) != h - 1:
                continue
            s1 = _size(first)
            for second in _candidates(n - 1 - s1, h - 1, first):
                if _height(second) != h - 1:
                    continue
                for rest in _forests(n - 1 - s1 - _size(second), h - 1, second):
                    out.append(FreeTree((_intern(tuple([first, second] + rest)),)))
    # bicentral: two halves of equal height h joined at their roots
    for h in range(0, n // 2):
        for a_size in range((n + 1) // 2, n - h):
            b_size = n - a_size
            if b_size < h + 1:
                continue
            for a in _exact_height(a_size, h):
                for b in _exact_height(b_size, h):
                    if _key(b) <= _key(a):
                        out.append(FreeTree((a, b)))
    out.sort(key=lambda t: t.code)
    return tuple(out)


def enumerate_trees(n: int) -> Iterator[Graph]:
    """Each unlabeled tree of order n exactly once, in canonical order.

    Vertices are numbered in preorder from the center (the first center for
    bicentral trees), so stars come out with their center at vertex 0.
    """
    for t in free_trees(n):
        yield t.to_graph()


# ---------------------------------------------------------------------------
# witnesses


def _squares_poly(mu: IntPoly) -> IntPoly:
    # polynomial whose roots are the squares of the roots of mu
    even = IntPoly(mu.coeffs[0::2])
    odd = IntPoly(mu.coeffs[1::2])
    y = X
    return even * even - y * odd * odd if mu.degree % 2 == 0 else y * odd * odd - even * even


def _min_tree_order(mu: IntPoly) -> int:
    # a tree of order n has largest eigenvalue at most sqrt(n-1) and
    # eigenvalue square sum 2(n-1)
    sq = squarefree_part(_squares_poly(mu))
    n = 1
    while sturm_count(sq, n - 1, None) > 0:
        n += 1
    return max(n, -(-power_sum(mu, 2) // 2) + 1)


def _check_irreducible_input(mu: IntPoly) -> None:
    if not mu.is_monic() or mu.degree < 1:
        raise PolyError(f"witness polynomial must be monic and nonconstant, got {mu}")
    if not is_totally_real(mu):
        raise PolyError(f"{mu} is not totally real; no graph has it as an eigenvalue")
    fac = factor_irreducible(mu)
    if len(fac.factors) != 1 or fac.factors[0][1] != 1:
        raise PolyError(f"{mu} is reducible")


def _scan_chunk(args) -> int | None:
    mu, trees = args
    for i, t in enumerate(trees):
        if divides(mu, t.charpoly()):
            return i
    return None


def find_tree_witness(mu: IntPoly, bound: SearchBound = SearchBound(), threads: int = 1) -> Graph:
    """Canonically first tree within the bound having the roots of mu as eigenvalues.

    Orders below the spectral-radius and edge-count limits are skipped
    outright, since no tree there can qualify.  The hit is re-checked by
    kernel rank on its adjacency matrix before it is returned.
    """
    _check_irreducible_input(mu)
    if bound.max_order > TREE_CAP:
        raise CapExceededError(f"tree search is capped at order {TREE_CAP}")
    scanned = 0
    for n in range(_min_tree_order(mu), bound.max_order + 1):
        trees = free_trees(n)
        if bound.budget is not None and scanned + len(trees) > bound.budget:
            trees = trees[: bound.budget - scanned]
        hit = _first_hit(mu, trees, threads)
        scanned += len(trees)
        if hit is not None:
            g = trees[hit].to_graph()
            if not contains_root(g, mu):
                raise AssertionError(f"kernel check rejected tree witness {emit_graph6(g)} for {mu}")
            return g
        if bound.budget is not None and scanned >= bound.budget:
            raise WitnessNotFoundError(mu, bound, f"budget exhausted after {scanned} trees")
    raise WitnessNotFoundError(mu, bound)


def _first_hit(mu: IntPoly, trees: list[FreeTree], threads: int) -> int | None:
    if threads <= 1 or len(trees) < 2000:
        return _scan_chunk((mu, trees))
    size = -(-len(trees) // threads)
    chunks = [trees[i : i + size] for i in range(0, len(trees), size)]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        results = list(ex.map(_scan_chunk, [(mu, c) for c in chunks]))
    # the canonical minimum, whatever the worker count
    for k, r in enumerate(results):
        if r is not None:
            return k * size + r
    return None


def integer_eigen_star(k: int) -> Graph:
    """K_{1,k^2}, which has k as an eigenvalue."""
    if k < 1:
        raise ValueError("k must be positive")
    g = star(k * k)
    if not contains_root(g, IntPoly((-k, 1))):
        raise AssertionError("star eigenvalue check failed")
    return g


@dataclass
class RefuteResult:
    refuted: bool
    graph: Graph | None
    scanned: int


def refute_spectrum(f: IntPoly, n: int) -> RefuteResult:
    """Scan every labeled graph of order n for one with characteristic polynomial f."""
    if f.degree != n:
        raise PolyError(f"degree {f.degree} does not match order {n}")
    if n > LABELED_CAP:
        raise CapExceededError(f"refutation scans are capped at order {LABELED_CAP}")
    # edge count is fixed by the second power sum; graphs with a different
    # number of edges cannot match and are skipped after counting
    want_edges = power_sum(f, 2) / 2 if f.is_monic() else None
    pairs = _pairs(n)
    scanned = 0
    for mask in range(1 << len(pairs)):
        scanned += 1
        if want_edges is not None and mask.bit_count() != want_edges:
            continue
        g = Graph(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))
        if charpoly(g) == f:
            return RefuteResult(False, g, scanned)
    return RefuteResult(True, None, scanned)


# ---------------------------------------------------------------------------
# branch combination: a root carrying copies of small rooted branches


def branch_witness(mu: IntPoly, max_branch: int = 6, max_copies: int = 64) -> Graph:
    """Tree made of a root and copies of small rooted branches, with mu | charpoly.

    A root joined to branches B_t (m_t copies each) has characteristic
    polynomial prod phi_t^m_t * (x - sum m_t psi_t / phi_t), where phi_t and
    psi_t are the branch polynomials with and without the branch root.  So the
    roots of mu are eigenvalues as soon as sum m_t psi_t/phi_t = x in
    Q[x]/(mu), a linear system in the counts.  The nonnegative integer
    solution is found with an ILP and then checked exactly.
    """
    _check_irreducible_input(mu)
    d = mu.degree
    types: list[tuple] = []
    vecs: list[tuple[Fraction, ...]] = []
    for s in range(1, max_branch + 1):
        for t in _rooted(s, s):
            phi, psi = _tree_phi(t)
            if divides(mu, phi):
                g = FreeTree((t,)).to_graph()
                if contains_root(g, mu):
                    return g
            try:
                inv = inverse_mod(phi, mu)
            except PolyError:
                continue
            types.append(t)
            vecs.append(residue_mul(residue(psi, mu), inv, mu))
    target = residue(X, mu)
    counts = _solve_counts(vecs, target, [_size(t) for t in types], max_copies)
    if counts is None:
        raise WitnessNotFoundError(mu, f"branches of order <= {max_branch}, <= {max_copies} copies each")
    # exact check of the linear condition before building anything
    total = [sum(Fraction(c) * v[i] for c, v in zip(counts, vecs)) for i in range(d)]
    if tuple(total) != target:
        raise WitnessNotFoundError(mu, f"branches of order <= {max_branch}", "ILP solution failed the exact check")
    children = []
    for t, c in zip(types, counts):
        children.extend([t] * c)
    g = FreeTree((_make_rooted(children),)).to_graph()
    if not contains_root(g, mu):
        raise AssertionError("branch witness failed the kernel check")
    return g


def _solve_counts(vecs, target, sizes, max_copies) -> list[int] | None:
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp

    d = len(target)
    rows, rhs = [], []
    for i in range(d):
        # scale by the largest entry; the exact check afterwards catches
        # anything the floating tolerance lets through
        scale = max(abs(v[i]) for v in vecs + [target]) or Fraction(1)
        rows.append([float(v[i] / scale) for v in vecs])
        rhs.append(float(target[i] / scale))
    a = np.array(rows)
    b = np.array(rhs)
    res = milp(
        np.array(sizes, dtype=float),
        constraints=LinearConstraint(a, b, b),
        integrality=np.ones(len(vecs)),
        bounds=Bounds(0, max_copies),
    )
    if res.x is None:
        return None
    return [int(round(v)) for v in res.x]


# ---------------------------------------------------------------------------
# witness sourcing


class WitnessCache:
    """Plain-text map ``<poly csv>\\t<graph6>``; every entry is re-verified on load."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self.entries: dict[IntPoly, Graph] = {}
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            try:
                csv, g6 = line.split("\t")
                poly = parse_poly_csv(csv)
                g = parse_graph6(g6)
                if not (poly.is_monic() and poly.degree >= 1 and divides(poly, charpoly(g))):
                    raise ValueError("witness does not contain the polynomial")
            except (ValueError, Graph6Error, GraphError, PolyError) as exc:
                log.warning("discarding witness cache line %d of %s: %s", lineno, self.path, exc)
                continue
            self.entries[poly] = g

    def get(self, poly: IntPoly) -> Graph | None:
        return self.entries.get(poly)

    def put(self, poly: IntPoly, g: Graph) -> None:
        if self.entries.get(poly) == g:
            return
        self.entries[poly] = g
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(f"{poly.to_csv()}\t{emit_graph6(g)}\n")


def default_cache_path() -> str | None:
    return os.environ.get("TREESPEC_WITNESS_CACHE")


def _path_charpolys(limit: int) -> Iterator[tuple[int, IntPoly]]:
    a, b = IntPoly((1,)), X
    for n in range(1, limit + 1):
        yield n, b
        a, b = b, X * b - a


class WitnessSource:
    """Strategy chain for tree witnesses: user, cache, closed forms, search, branches.

    ``tree_for`` accepts any monic totally real polynomial and returns a tree
    whose characteristic polynomial it divides, together with the name of the
    strategy that produced it.  Only irreducible polynomials reach the
    exhaustive search and the branch solver.
    """

    def __init__(
        self,
        user: Mapping[IntPoly, Graph] | None = None,
        cache: WitnessCache | None = None,
        bound: SearchBound = SearchBound(max_order=10),
        max_branch: int = 6,
        threads: int = 1,
    ):
        self.user = dict(user or {})
        self.cache = cache
        self.bound = bound
        self.max_branch = max_branch
        self.threads = threads

    def tree_for(self, poly: IntPoly) -> tuple[Graph, str]:
        if not poly.is_monic() or poly.degree < 1:
            raise PolyError(f"witness polynomial must be monic and nonconstant, got {poly}")
        if not is_totally_real(poly):
            raise PolyError(f"{poly} is not totally real")
        g = self.user.get(poly)
        if g is not None:
            if not divides(poly, charpoly(g)):
                raise GraphError(f"supplied witness {emit_graph6(g)} does not have {poly} as a divisor")
            return g, "user"
        if self.cache is not None:
            g = self.cache.get(poly)
            if g is not None:
                return g, "cache"
        g = _closed_form(poly)
        if g is not None:
            return self._remember(poly, g), "closed-form"
        fac = factor_irreducible(poly)
        if len(fac.factors) != 1 or fac.factors[0][1] != 1:
            raise WitnessNotFoundError(poly, "closed forms", "reducible input; split it into irreducible factors")
        try:
            g = find_tree_witness(poly, self.bound, self.threads)
            return self._remember(poly, g), "enumeration"
        except WitnessNotFoundError:
            pass
        g = branch_witness(poly, self.max_branch)
        return self._remember(poly, g), "branch-combination"

    def _remember(self, poly: IntPoly, g: Graph) -> Graph:
        if self.cache is not None:
            self.cache.put(poly, g)
        return g


def _closed_form(poly: IntPoly) -> Graph | None:
    c = poly.coeffs
    if poly.degree == 1:
        k = abs(c[0])
        return Graph(1) if k == 0 else star(k * k)
    if poly.degree == 2 and c[1] == 0 and c[0] < 0:
        return star(-c[0])
    for n, p in _path_charpolys(24):
        if divides(poly, p):
            return make_graph(n, [(i, i + 1) for i in range(n - 1)])
    return None
