"""Exact spectral invariants of graphs and integer matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CapExceededError, PolyError
from .graph import Graph
from .poly import (
    DEFAULT_DEGREE_CAP,
    IntPoly,
    RootBox,
    X,
    divides,
    factor_irreducible,
    is_totally_real,
    isolate_extreme_roots,
    poly_gcd,
    power_sum,
    sturm_count,
    sturm_sequence,
)

try:  # exact multimodular rank for large matrices
    import flint
except ImportError:  # pragma: no cover - declared dependency
    flint = None

EXACT_ORDER_CAP = 160
# above this size, kernel computations go through FLINT
FLINT_THRESHOLD = 48


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ValueError("matrix dimensions do not match the entry count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntegerMatrix:
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(r, c, tuple(int(v) for row in rows for v in row))

    @classmethod
    def zeros(cls, r: int, c: int) -> IntegerMatrix:
        return cls(r, c, (0,) * (r * c))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def adjacency(cls, g: Graph) -> IntegerMatrix:
        return cls.from_rows(g.adjacency_matrix())

    @classmethod
    def block(cls, grid: Sequence[Sequence[IntegerMatrix | None]]) -> IntegerMatrix:
        """Assemble from blocks; ``None`` is a zero block sized by its row/column."""
        heights = [next(b.rows for b in row if b is not None) for row in grid]
        widths = [next(grid[i][j].cols for i in range(len(grid)) if grid[i][j] is not None) for j in range(len(grid[0]))]
        out = []
        for bi, row in enumerate(grid):
            for r in range(heights[bi]):
                line = []
                for bj, b in enumerate(row):
                    if b is None:
                        line.extend([0] * widths[bj])
                    else:
                        if b.rows != heights[bi] or b.cols != widths[bj]:
                            raise ValueError("incompatible block sizes")
                        line.extend(b.row(r))
                out.append(line)
        return cls.from_rows(out)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def is_symmetric(self) -> bool:
        return self.is_square and all(self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntegerMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self + other.scale(-1)

    def scale(self, k: int) -> IntegerMatrix:
        return IntegerMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c) if a) for c in cols)
        return IntegerMatrix(self.rows, other.cols, tuple(out))

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[j :: self.cols]) if self.cols else ()


def _as_matrix(m) -> IntegerMatrix:
    if isinstance(m, IntegerMatrix):
        return m
    if isinstance(m, Graph):
        return IntegerMatrix.adjacency(m)
    return IntegerMatrix.from_rows(m)


# ---------------------------------------------------------------------------
# characteristic polynomial


def charpoly(m: Graph | IntegerMatrix | Sequence[Sequence[int]]) -> IntPoly:
    """det(xI - A) by Berkowitz's division-free algorithm.

    Rows are kept as sparse (column, value) lists, so adjacency matrices of
    sparse graphs cost far less than the dense O(n^4) bound.
    """
    if isinstance(m, Graph):
        n = m.order
        nz = [[(j, 1) for j in m.adjacency[i]] for i in range(n)]
        diag = [0] * n
    else:
        a = _as_matrix(m)
        if not a.is_square:
            raise ValueError("charpoly needs a square matrix")
        n = a.rows
        nz = [[(j, a[i, j]) for j in range(n) if j != i and a[i, j]] for i in range(n)]
        diag = [a[i, i] for i in range(n)]
    # column lists for the k-th column above the diagonal
    colnz: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in range(n):
        for j, v in nz[i]:
            colnz[j].append((i, v))

    p = [1]  # highest degree first
    for k in range(n):
        t = [1, -diag[k]]
        row_k = [(j, v) for j, v in nz[k] if j < k]
        if row_k:
            vec = [0] * k
            for i, v in colnz[k]:
                if i < k:
                    vec[i] = v
            for step in range(k):
                t.append(-sum(v * vec[j] for j, v in row_k))
                if step == k - 1:
                    break
                nxt = [0] * k
                for i in range(k):
                    s = diag[i] * vec[i]
                    for j, v in nz[i]:
                        if j < k and vec[j]:
                            s += v * vec[j]
                    nxt[i] = s
                vec = nxt
        else:
            t.extend([0] * k)
        q = [0] * (k + 2)
        for i in range(k + 2):
            s = 0
            for j in range(max(0, i - k - 1), min(i, k) + 1):
                tv = t[i - j]
                if tv:
                    s += tv * p[j]
            q[i] = s
        p = q
    return IntPoly(tuple(reversed(p)))


# ---------------------------------------------------------------------------
# matching polynomial


def matching_poly(g: Graph) -> IntPoly:
    """sum_k (-1)^k m_k x^(n-2k) by deletion/contraction on edges.

    Residual graphs are memoized on an order-preserving compression of their
    non-isolated vertices; isolated vertices contribute a factor of x.
    """
    cache: dict[frozenset, IntPoly] = {}
    return _matching(g.order, frozenset(g.edges), cache)


def _compress(edges: frozenset) -> tuple[int, frozenset]:
    verts = sorted({v for e in edges for v in e})
    idx = {v: i for i, v in enumerate(verts)}
    return len(verts), frozenset((idx[u], idx[v]) for u, v in edges)


def _matching(n: int, edges: frozenset, cache) -> IntPoly:
    if not edges:
        return X**n
    k, key = _compress(edges)
    iso = n - k
    hit = cache.get(key)
    if hit is None:
        deg: dict[int, int] = {}
        for u, v in key:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        # branch on an edge at a minimum-degree vertex (a leaf edge in forests)
        w = min(deg, key=lambda t: (deg[t], t))
        e = min((u, v) for u, v in key if w in (u, v))
        u, v = e
        rest = key - {e}
        without = _matching(k, rest, cache)
        contracted = frozenset(f for f in key if u not in f and v not in f)
        hit = without - _matching(k - 2, contracted, cache)
        cache[key] = hit
    return hit.shift_degree(iso) if iso else hit


# ---------------------------------------------------------------------------
# kernels and eigenvalue membership


def _bareiss_rank(rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank, prev = 0, 1
    for c in range(nc):
        piv = next((i for i in range(rank, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        pv = pr[c]
        for i in range(rank + 1, nr):
            ri = m[i]
            a = ri[c]
            for j in range(c + 1, nc):
                ri[j] = (ri[j] * pv - a * pr[j]) // prev
            ri[c] = 0
        prev = pv
        rank += 1
        if rank == nr:
            break
    return rank


def rank(m: IntegerMatrix, method: str = "auto") -> int:
    m = _as_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    if method == "auto":
        method = "flint" if flint is not None and max(m.rows, m.cols) > FLINT_THRESHOLD else "bareiss"
    if method == "bareiss":
        return _bareiss_rank(m.to_rows())
    if method == "flint":
        if flint is None:
            raise RuntimeError("python-flint is not installed")
        return flint.fmpz_mat(m.to_rows()).rank()
    raise ValueError(f"unknown rank method {method!r}")


def kernel_dimension(m: IntegerMatrix, method: str = "auto") -> int:
    """Dimension of the rational null space of a square integer matrix."""
    m = _as_matrix(m)
    if not m.is_square:
        raise ValueError("kernel_dimension needs a square matrix")
    return m.rows - rank(m, method)


def poly_of_matrix(mu: IntPoly, m: IntegerMatrix) -> IntegerMatrix:
    """mu(M) by Horner's rule over the integers."""
    m = _as_matrix(m)
    n = m.rows
    acc = IntegerMatrix.zeros(n, n)
    eye = IntegerMatrix.identity(n)
    for c in reversed(mu.coeffs):
        acc = (acc @ m) + eye.scale(c)
    return acc


def _flint_poly_of_matrix(mu: IntPoly, rows: list[list[int]]):
    a = flint.fmpz_mat(rows)
    n = len(rows)
    eye = flint.fmpz_mat(n, n)
    for i in range(n):
        eye[i, i] = 1
    acc = flint.fmpz_mat(n, n)
    for c in reversed(mu.coeffs):
        acc = acc * a + eye * c
    return acc


def root_nullity(g: Graph | IntegerMatrix, mu: IntPoly, method: str = "auto") -> int:
    """Nullity of mu(A).  For symmetric A and irreducible mu this is
    deg(mu) times the multiplicity of mu in the characteristic polynomial."""
    a = _as_matrix(g)
    n = a.rows
    if method == "auto":
        method = "flint" if flint is not None and n > FLINT_THRESHOLD else "bareiss"
    if method == "flint":
        return n - _flint_poly_of_matrix(mu, a.to_rows()).rank()
    return kernel_dimension(poly_of_matrix(mu, a), "bareiss")


def contains_root(g: Graph | IntegerMatrix, mu: IntPoly, method: str = "auto") -> bool:
    """Whether the roots of irreducible monic mu are eigenvalues of g.

    Decided as nullity(mu(A)) >= deg mu, which is exact for symmetric A.
    Irreducibility is the caller's responsibility.
    """
    if mu.degree < 1:
        raise PolyError("contains_root needs a nonconstant polynomial")
    if not mu.is_monic():
        raise PolyError(f"contains_root needs a monic polynomial, got {mu}")
    return root_nullity(g, mu, method) >= mu.degree


# ---------------------------------------------------------------------------
# divisibility verdicts

EXACT = "exact"
KERNEL = "kernel"

DIVIDES_CERTIFIED = "divides-with-multiplicity"
ROOTS_PRESENT = "roots-present"
REFUTED = "refuted"


@dataclass
class Verdict:
    divides: bool
    level: str
    mode: str
    detail: str = ""
    nullities: list[tuple[str, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.divides


def spectrum_divides(
    f: IntPoly,
    g: Graph,
    mode: str = EXACT,
    *,
    exact_cap: int = EXACT_ORDER_CAP,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> Verdict:
    """Does monic f divide the characteristic polynomial of g?

    ``exact`` mode divides charpoly(g) outright and certifies multiplicity.
    ``kernel`` mode factors f and checks each irreducible factor by kernel
    rank; a positive answer only certifies that every root is present, and
    the recorded nullities are lower-bound evidence for multiplicity.
    """
    if not f.is_monic():
        raise PolyError(f"spectrum_divides needs a monic polynomial, got {f}")
    if mode == EXACT:
        if g.order > exact_cap:
            raise CapExceededError(f"exact charpoly capped at order {exact_cap}, graph has {g.order}")
        ok = divides(f, charpoly(g))
        return Verdict(ok, DIVIDES_CERTIFIED if ok else REFUTED, EXACT)
    if mode == KERNEL:
        fac = factor_irreducible(f, degree_cap)
        nullities = []
        for p, mult in fac.factors:
            k = root_nullity(g, p)
            nullities.append((p.to_csv(), k))
            if k < p.degree:
                return Verdict(False, REFUTED, KERNEL, f"factor {p} is not a divisor", nullities)
        return Verdict(True, ROOTS_PRESENT, KERNEL, "", nullities)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# necessary conditions on a candidate spectrum


@dataclass
class Condition:
    item: int
    name: str
    passed: bool
    witness: str


@dataclass
class NecessaryReport:
    poly: IntPoly
    order: int
    p1: int
    p2: int
    bound_p2: int
    largest: RootBox
    smallest: RootBox
    conditions: list[Condition]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def failed_items(self) -> list[int]:
        return [c.item for c in self.conditions if not c.passed]

    def lines(self) -> list[str]:
        out = []
        for c in self.conditions:
            out.append(f"[{'PASS' if c.passed else 'FAIL'}] {c.item}. {c.name}: {c.witness}")
        return out


def check_necessary(f: IntPoly, n: int) -> NecessaryReport:
    """Five classical necessary conditions for f to be a graph characteristic polynomial."""
    if f.degree != n:
        raise PolyError(f"degree {f.degree} does not match order {n}")
    if not f.is_monic():
        raise PolyError("candidate spectrum must be given by a monic polynomial")
    if n < 1:
        raise PolyError("order must be at least 1")
    if not is_totally_real(f):
        raise PolyError(f"{f} has non-real roots and cannot be a spectrum")
    conds = []
    conds.append(Condition(1, "closed under conjugation", True, "integer coefficients; structural"))

    p1 = power_sum(f, 1)
    conds.append(Condition(2, "eigenvalue sum is zero", p1 == 0, f"p1 = {p1}"))

    p2 = power_sum(f, 2)
    bound = n * (n - 1)
    conds.append(Condition(3, "sum of squares at most n(n-1)", p2 <= bound, f"p2 = {p2} {'<=' if p2 <= bound else '>'} {bound}"))

    above = sturm_count(f, n - 1, None)
    conds.append(
        Condition(4, "largest eigenvalue at most n-1", above == 0, f"{above} distinct root(s) in ({n - 1}, +inf)")
    )

    ok5, why5 = _smallest_within_largest(f)
    conds.append(Condition(5, "|smallest| at most largest", ok5, why5))

    top, bottom = isolate_extreme_roots(f, Fraction(1, 1024))
    return NecessaryReport(f, n, p1, p2, bound, top, bottom, conds)


def _smallest_within_largest(f: IntPoly) -> tuple[bool, str]:
    # compare the largest root of f with the largest root of f(-x), i.e. -lambda_n
    g = f.reflect()
    if g.lc < 0:
        g = -g
    top_f, _ = isolate_extreme_roots(f, 1)
    top_g, _ = isolate_extreme_roots(g, 1)
    common = poly_gcd(f, g)
    seq_f, seq_g = sturm_sequence(top_f.poly), sturm_sequence(top_g.poly)
    while True:
        if top_g.hi <= top_f.lo:
            return True, f"-lambda_n in {top_g} lies below lambda_1 in {top_f}"
        if top_f.hi <= top_g.lo:
            return False, f"lambda_1 in {top_f} lies below -lambda_n in {top_g}"
        lo = max(top_f.lo, top_g.lo)
        hi = min(top_f.hi, top_g.hi)
        if common.degree >= 1 and lo < hi and sturm_count(common, lo, hi) >= 1:
            return True, f"lambda_1 = -lambda_n, common root of f(x) and f(-x) in ({lo}, {hi}]"
        top_f = top_f.bisect(seq_f)
        top_g = top_g.bisect(seq_g)


# ---------------------------------------------------------------------------
# block similarity identity


def assemble_blocks(a: IntegerMatrix, b: IntegerMatrix, e: IntegerMatrix, f: IntegerMatrix):
    """The 3x3 block matrix [[A,F,F],[E,B,0],[E,0,B]] and the 2x2 one [[A,2F],[E,B]]."""
    k, m = a.rows, b.rows
    if not (a.is_square and b.is_square):
        raise ValueError("A and B must be square")
    if (e.rows, e.cols) != (m, k) or (f.rows, f.cols) != (k, m):
        raise ValueError(f"E must be {m}x{k} and F must be {k}x{m}")
    m3 = IntegerMatrix.block([[a, f, f], [e, b, None], [e, None, b]])
    m2 = IntegerMatrix.block([[a, f.scale(2)], [e, b]])
    return m3, m2


def verify_block_identity(a: IntegerMatrix, b: IntegerMatrix, e: IntegerMatrix, f: IntegerMatrix) -> bool:
    """charpoly of the 3x3 block matrix equals charpoly(B) * charpoly of the 2x2 one."""
    m3, m2 = assemble_blocks(a, b, e, f)
    return charpoly(m3) == charpoly(b) * charpoly(m2)
