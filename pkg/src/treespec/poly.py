"""Dense integer polynomials with exact real-root machinery.

Coefficients are stored lowest degree first.  The zero polynomial has an
empty coefficient tuple and degree -1.  Rational numbers only appear inside
division, Sturm evaluation and root boxes; everything a caller gets back as a
polynomial has integer coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import PolyError, UnsupportedDegreeError

Number = int | Fraction

DEFAULT_DEGREE_CAP = 16


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        for a in c:
            if isinstance(a, bool) or not isinstance(a, int):
                raise TypeError(f"IntPoly coefficients must be int, got {type(a).__name__}")
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # construction helpers

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @classmethod
    def from_csv(cls, text: str) -> IntPoly:
        return parse_poly_csv(text)

    def to_csv(self) -> str:
        return format_poly_csv(self)

    # basic properties

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        # coefficient of x**i, zero past the degree
        if i < 0:
            raise IndexError(i)
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        return g

    def primitive(self) -> IntPoly:
        """Primitive part with a positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(tuple(a // g for a in self.coeffs))

    # arithmetic

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-a for a in self.coeffs))

    def __add__(self, other) -> IntPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPoly(tuple(out))

    __radd__ = __add__

    def __sub__(self, other) -> IntPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> IntPoly:
        return (-self) + other

    def __mul__(self, other) -> IntPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    out[i + j] += u * v
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise ValueError("negative power")
        result, base = IntPoly((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __floordiv__(self, other) -> IntPoly:
        return exact_quotient(self, _coerce(other))

    def __call__(self, t: Number) -> Number:
        acc: Number = 0
        for a in reversed(self.coeffs):
            acc = acc * t + a
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(tuple(i * a for i, a in enumerate(self.coeffs) if i))

    def compose(self, inner: IntPoly) -> IntPoly:
        acc = IntPoly()
        for a in reversed(self.coeffs):
            acc = acc * inner + a
        return acc

    def reflect(self) -> IntPoly:
        """f(-x)."""
        return IntPoly(tuple(-a if i & 1 else a for i, a in enumerate(self.coeffs)))

    def shift_degree(self, k: int) -> IntPoly:
        return IntPoly((0,) * k + self.coeffs) if self.coeffs else self

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if not a:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if i == 1 else f"x^{i}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"IntPoly({str(self)!r})"


def _coerce(v):
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return IntPoly((v,))
    return NotImplemented


X = IntPoly((0, 1))
ONE = IntPoly((1,))


def parse_poly_csv(text: str) -> IntPoly:
    """Parse ``"4,0,-5,0,1"`` (lowest degree first) into x^4 - 5x^2 + 4."""
    parts = [p.strip() for p in text.strip().split(",")]
    if not parts or any(p == "" for p in parts):
        raise PolyError(f"malformed polynomial csv: {text!r}")
    try:
        return IntPoly(tuple(int(p) for p in parts))
    except ValueError as exc:
        raise PolyError(f"malformed polynomial csv: {text!r}") from exc


def format_poly_csv(f: IntPoly) -> str:
    return ",".join(str(a) for a in f.coeffs) if f.coeffs else "0"


# ---------------------------------------------------------------------------
# division and gcd


def divrem(dividend: IntPoly, divisor: IntPoly) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Division over the rationals: ``dividend = q*divisor + r``, deg r < deg divisor.

    Quotient and remainder come back as coefficient tuples of Fractions,
    lowest degree first, with trailing zeros stripped.
    """
    if divisor.is_zero():
        raise PolyError("polynomial division by zero")
    r = [Fraction(a) for a in dividend.coeffs]
    d = divisor.coeffs
    dd = len(d) - 1
    lc = d[-1]
    q = [Fraction(0)] * max(len(r) - dd, 0)
    for k in range(len(r) - 1 - dd, -1, -1):
        c = r[k + dd] / lc
        q[k] = c
        if c:
            for j, b in enumerate(d):
                r[k + j] -= c * b
    r = r[:dd]
    while r and r[-1] == 0:
        r.pop()
    while q and q[-1] == 0:
        q.pop()
    return tuple(q), tuple(r)


def _int_divmod(dividend: IntPoly, divisor: IntPoly) -> tuple[IntPoly, IntPoly] | None:
    """Division in Z[x]; None as soon as a non-integral quotient term appears."""
    if divisor.is_zero():
        raise PolyError("polynomial division by zero")
    r = list(dividend.coeffs)
    d = divisor.coeffs
    dd = len(d) - 1
    lc = d[-1]
    q = [0] * max(len(r) - dd, 0)
    for k in range(len(r) - 1 - dd, -1, -1):
        top = r[k + dd]
        if top % lc:
            return None
        c = top // lc
        q[k] = c
        if c:
            for j, b in enumerate(d):
                r[k + j] -= c * b
    return IntPoly(tuple(q)), IntPoly(tuple(r[:dd]))


def divides(f: IntPoly, g: IntPoly) -> bool:
    """True iff g = q*f for some q with integer coefficients."""
    if f.is_zero():
        return g.is_zero()
    res = _int_divmod(g, f)
    return res is not None and res[1].is_zero()


def exact_quotient(g: IntPoly, f: IntPoly) -> IntPoly:
    """g / f in Z[x]; raises PolyError unless the division is exact."""
    res = _int_divmod(g, f)
    if res is None or not res[1].is_zero():
        raise PolyError(f"{f} does not divide {g} over the integers")
    return res[0]


def pseudo_remainder(f: IntPoly, g: IntPoly) -> IntPoly:
    """lc(g)^(deg f - deg g + 1) * f reduced modulo g, all in Z[x]."""
    if g.is_zero():
        raise PolyError("pseudo-remainder by zero polynomial")
    r = list(f.coeffs)
    d = g.coeffs
    dd = len(d) - 1
    lc = d[-1]
    steps = len(r) - dd
    if steps <= 0:
        return f
    for k in range(len(r) - 1 - dd, -1, -1):
        top = r[k + dd]
        r = [lc * a for a in r]
        if top:
            for j, b in enumerate(d):
                r[k + j] -= top * b
        r.pop()  # leading term is now zero
    return IntPoly(tuple(r))


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a, b = f.primitive(), g.primitive()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def squarefree_part(f: IntPoly) -> IntPoly:
    if f.is_zero():
        raise PolyError("squarefree part of the zero polynomial")
    if f.degree <= 0:
        return ONE
    g = poly_gcd(f, f.derivative())
    return exact_quotient(f.primitive(), g)


def squarefree_factor(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm over Z.

    Returns squarefree, pairwise coprime primitive factors with their
    multiplicities; the product of ``p**m`` equals ``f`` up to content (and
    sign).  Constant inputs give an empty list.
    """
    if f.is_zero():
        raise PolyError("squarefree factorization of the zero polynomial")
    f = f.primitive()
    if f.degree <= 0:
        return []
    out = []
    rest = f
    b = squarefree_part(f)
    i = 1
    # b holds the product of factors with multiplicity >= i
    while b.degree > 0:
        rest = exact_quotient(rest, b)
        nxt = poly_gcd(rest, b) if rest.degree > 0 else ONE
        factor = exact_quotient(b, nxt)
        if factor.degree > 0:
            out.append((factor.primitive(), i))
        b = nxt
        i += 1
    return out


def _sort_key(item):
    p = item[0] if isinstance(item, tuple) else item
    return (p.degree, p.coeffs)


# ---------------------------------------------------------------------------
# Sturm sequences and real roots


def sign(v: Number) -> int:
    return (v > 0) - (v < 0)


def sturm_sequence(f: IntPoly) -> list[IntPoly]:
    """Sturm sequence of the squarefree part of f, kept in Z[x].

    Each remainder is a positive multiple of the true negated remainder, so
    the sign pattern at every point is the classical one.
    """
    p0 = squarefree_part(f)
    seq = [p0, p0.derivative()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        delta = a.degree - b.degree + 1
        r = pseudo_remainder(a, b)
        # prem = lc(b)^delta * rem; flip if that multiplier is negative
        if b.lc < 0 and delta % 2 == 1:
            r = -r
        r = -r
        if r.is_zero():
            break
        c = r.content()
        seq.append(IntPoly(tuple(v // c for v in r.coeffs)))
    return seq


def _sign_at(p: IntPoly, t: Fraction | None, side: int) -> int:
    """Sign of p at t; t=None with side=+1/-1 means +inf/-inf."""
    if t is None:
        if p.is_zero():
            return 0
        s = sign(p.lc)
        if side < 0 and p.degree % 2 == 1:
            s = -s
        return s
    return sign(_eval_scaled(p, t))


def _eval_scaled(p: IntPoly, t: Fraction) -> int:
    # q^d * p(n/q), same sign as p(t) because q > 0
    n, q = t.numerator, t.denominator
    d = p.degree
    acc = 0
    qpow = 1
    # Horner from the top: sum a_i n^i q^(d-i)
    for a in reversed(p.coeffs):
        acc = acc * n + a * qpow
        qpow *= q
    # the loop above multiplies a_i by q^(d-i) implicitly via qpow ordering
    return acc if d >= 0 else 0


def _variations(seq: Sequence[IntPoly], t: Fraction | None, side: int = 1) -> int:
    signs = [s for s in (_sign_at(p, t, side) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _as_fraction(v) -> Fraction | None:
    if v is None:
        return None
    if isinstance(v, float):
        if v in (float("inf"), float("-inf")):
            return None
        raise TypeError("float endpoints are not accepted; use Fraction or int")
    return Fraction(v)


def sturm_count(f: IntPoly, lo=None, hi=None, *, seq: Sequence[IntPoly] | None = None) -> int:
    """Number of distinct real roots of f in the half-open interval (lo, hi].

    ``None`` (or +-inf) stands for an unbounded end.
    """
    if f.is_zero():
        raise PolyError("sturm_count of the zero polynomial")
    lo_f, hi_f = _as_fraction(lo), _as_fraction(hi)
    if lo_f is not None and hi_f is not None and lo_f >= hi_f:
        return 0
    if seq is None:
        seq = sturm_sequence(f)
    return _variations(seq, lo_f, -1) - _variations(seq, hi_f, +1)


def is_totally_real(f: IntPoly) -> bool:
    """All complex roots of f are real."""
    if f.is_zero():
        raise PolyError("is_totally_real of the zero polynomial")
    sf = squarefree_part(f)
    return sturm_count(sf) == sf.degree


def cauchy_bound(f: IntPoly) -> int:
    """Integer B with every root of f inside (-B, B)."""
    if f.degree < 1:
        return 1
    lc = abs(f.lc)
    m = max(abs(a) for a in f.coeffs[:-1])
    return 1 + -(-m // lc) + 1


@dataclass(frozen=True)
class RootBox:
    """A half-open interval (lo, hi] holding exactly one real root of ``poly``."""

    poly: IntPoly
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def sign_lo(self) -> int:
        return sign(_eval_scaled(self.poly, self.lo))

    @property
    def sign_hi(self) -> int:
        return sign(_eval_scaled(self.poly, self.hi))

    def count(self) -> int:
        return sturm_count(self.poly, self.lo, self.hi)

    def contains(self, t) -> bool:
        return self.lo < t <= self.hi

    def bisect(self, seq=None) -> RootBox:
        mid = (self.lo + self.hi) / 2
        if sturm_count(self.poly, self.lo, mid, seq=seq) == 1:
            return RootBox(self.poly, self.lo, mid)
        return RootBox(self.poly, mid, self.hi)

    def refine(self, width) -> RootBox:
        box, seq = self, sturm_sequence(self.poly)
        width = Fraction(width)
        while box.width > width:
            box = box.bisect(seq)
        return box

    def __str__(self) -> str:
        return f"({self.lo}, {self.hi}]"


def isolate_real_roots(f: IntPoly) -> list[RootBox]:
    """Disjoint boxes, one per distinct real root, in increasing order."""
    sf = squarefree_part(f)
    if sf.degree < 1:
        return []
    seq = sturm_sequence(sf)
    b = cauchy_bound(sf)
    out = []
    stack = [(Fraction(-b), Fraction(b), sturm_count(sf, -b, b, seq=seq))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(RootBox(sf, lo, hi))
            continue
        mid = (lo + hi) / 2
        left = sturm_count(sf, lo, mid, seq=seq)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort(key=lambda r: r.lo)
    return out


def isolate_extreme_roots(f: IntPoly, precision=Fraction(1, 1024)) -> tuple[RootBox, RootBox]:
    """Boxes of width <= precision around the largest and smallest real roots.

    Only defined for totally real, nonconstant f.
    """
    if f.degree < 1:
        raise PolyError("isolate_extreme_roots needs a nonconstant polynomial")
    if not is_totally_real(f):
        raise PolyError(f"{f} has non-real roots")
    sf = squarefree_part(f)
    seq = sturm_sequence(sf)
    precision = Fraction(precision)
    b = Fraction(cauchy_bound(sf))

    # largest: keep no roots above hi and at least one in (lo, hi]
    lo, hi = -b, b
    while hi - lo > precision or sturm_count(sf, lo, hi, seq=seq) > 1:
        mid = (lo + hi) / 2
        if sturm_count(sf, mid, hi, seq=seq) >= 1:
            lo = mid
        else:
            hi = mid
    top = RootBox(sf, lo, hi)

    # smallest: keep no roots at or below lo and at least one in (lo, hi]
    lo, hi = -b, b
    while hi - lo > precision or sturm_count(sf, lo, hi, seq=seq) > 1:
        mid = (lo + hi) / 2
        if sturm_count(sf, lo, mid, seq=seq) >= 1:
            hi = mid
        else:
            lo = mid
    bottom = RootBox(sf, lo, hi)
    return top, bottom


# ---------------------------------------------------------------------------
# factorization


class Factorization(NamedTuple):
    content: int
    factors: list[tuple[IntPoly, int]]

    def expand(self) -> IntPoly:
        out = IntPoly((self.content,))
        for p, m in self.factors:
            out = out * p**m
        return out


def factor_irreducible(f: IntPoly, degree_cap: int = DEFAULT_DEGREE_CAP) -> Factorization:
    """Complete factorization of f into irreducible primitive integer factors.

    Factors have positive leading coefficients (monic whenever f is monic)
    and are sorted by degree, then coefficients.  The expansion reproduces f
    exactly, content and sign included.

    Totally real squarefree parts are split by recombining isolated real
    roots under exact interval bounds; anything else falls back to
    Kronecker's method.  Every candidate factor is confirmed by exact
    division, so the answer never depends on rounding.
    """
    if f.is_zero():
        raise PolyError("cannot factor the zero polynomial")
    if f.degree > degree_cap:
        raise UnsupportedDegreeError(f"degree {f.degree} exceeds the factorization cap {degree_cap}")
    content = f.content() * (1 if f.lc > 0 else -1)
    factors: list[tuple[IntPoly, int]] = []
    for part, mult in squarefree_factor(f):
        for irr in _split_squarefree(part):
            factors.append((irr, mult))
    factors.sort(key=_sort_key)
    return Factorization(content, factors)


def _split_squarefree(p: IntPoly) -> list[IntPoly]:
    p = p.primitive()
    if p.degree <= 1:
        return [p]
    if p[0] == 0:
        return [X] + _split_squarefree(exact_quotient(p, X))
    if is_totally_real(p):
        return _split_real(p)
    return _split_kronecker(p)


def _monicize(p: IntPoly) -> tuple[IntPoly, int]:
    # q(y) = a^(d-1) p(y/a) is monic with roots a*r
    a, d = p.lc, p.degree
    return IntPoly(tuple(c * a ** (d - 1 - i) if i < d else 1 for i, c in enumerate(p.coeffs))), a


def _unmonicize(g: IntPoly, a: int) -> IntPoly:
    # g(a x), primitive part
    return IntPoly(tuple(c * a**i for i, c in enumerate(g.coeffs))).primitive()


def _split_real(p: IntPoly) -> list[IntPoly]:
    q, a = _monicize(p)
    found = _split_real_monic(q)
    if a == 1:
        return sorted(found, key=_sort_key)
    return sorted((_unmonicize(g, a) for g in found), key=_sort_key)


def _split_real_monic(q: IntPoly) -> list[IntPoly]:
    out = []
    boxes = isolate_real_roots(q)
    bits = 64
    encl = _dyadic(boxes, bits)
    while q.degree > 1:
        hit = _find_root_subset_factor(q, boxes, encl, bits)
        if hit is None:
            break
        g, idx = hit
        out.append(g)
        q = exact_quotient(q, g)
        keep = [i for i in range(len(boxes)) if i not in idx]
        boxes = [RootBox(q, boxes[i].lo, boxes[i].hi) for i in keep]
        encl = [encl[i] for i in keep]
    out.append(q)
    return out


def _dyadic(boxes: list[RootBox], bits: int) -> list[tuple[int, int]]:
    """Integer enclosures [L, H] of each root at scale 2**bits."""
    scale = 1 << bits
    out = []
    for b in boxes:
        b = b.refine(Fraction(1, scale))
        lo = (b.lo * scale).__floor__()
        hi = (b.hi * scale).__ceil__()
        out.append((lo, hi))
    return out


def _interval_mul(a, b):
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(p), max(p)


def _subset_coeff_intervals(encl):
    """Enclosures of the coefficients of prod (x - R_i), highest degree first.

    With R_i = 2**bits * r_i, entry j equals 2**(bits*j) times the matching
    coefficient of prod (x - r_i).
    """
    poly = [(1, 1)]
    for lo, hi in encl:
        neg = (-hi, -lo)
        new = [(0, 0)] * (len(poly) + 1)
        for i, (cl, ch) in enumerate(poly):
            new[i] = (new[i][0] + cl, new[i][1] + ch)
            m = _interval_mul((cl, ch), neg)
            new[i + 1] = (new[i + 1][0] + m[0], new[i + 1][1] + m[1])
        poly = new
    return poly


def _find_root_subset_factor(q: IntPoly, boxes, encl, bits: int):
    # q is monic, so every monic integer factor is the product over a root subset
    d = q.degree
    scale = 1 << bits
    for k in range(1, d // 2 + 1):
        for idx in combinations(range(len(boxes)), k):
            lo_sum = sum(encl[i][0] for i in idx)
            hi_sum = sum(encl[i][1] for i in idx)
            # the trace must be an integer
            if -((-lo_sum) // scale) * scale > hi_sum:
                continue
            cand = _candidate_from_subset(q, [boxes[i] for i in idx], [encl[i] for i in idx], bits)
            if cand is not None:
                return cand, set(idx)
    return None


def _candidate_from_subset(q: IntPoly, sub: list[RootBox], encl, bits: int):
    while True:
        ivs = _subset_coeff_intervals(encl)
        coeffs_high_first = []
        ambiguous = False
        for j, (lo, hi) in enumerate(ivs):
            s = 1 << (bits * j)
            first = -((-lo) // s)
            if first * s > hi:
                return None
            if (first + 1) * s <= hi:
                ambiguous = True
                break
            coeffs_high_first.append(first)
        if not ambiguous:
            g = IntPoly(tuple(reversed(coeffs_high_first)))
            return g if divides(g, q) else None
        bits *= 2
        if bits > 1 << 14:
            raise PolyError("root refinement did not converge")
        encl = _dyadic(sub, bits)


def _integer_divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [0]
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    pos = small + large[::-1]
    return pos + [-v for v in pos]


def _lagrange(points: list[int], values: list[int]) -> IntPoly | None:
    # interpolate through (points, values); None unless the result is integral
    n = len(points)
    acc = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= points[j] * basis[t + 1]
            denom *= points[i] - points[j]
        for t in range(n):
            acc[t] += values[i] * basis[t] / denom
    if any(c.denominator != 1 for c in acc):
        return None
    return IntPoly(tuple(int(c) for c in acc))


def _split_kronecker(p: IntPoly) -> list[IntPoly]:
    d = p.degree
    for k in range(1, d // 2 + 1):
        pts: list[int] = []
        t = 0
        while len(pts) < k + 1:
            if p(t) != 0:
                pts.append(t)
            t = -t if t > 0 else -t + 1
        divs = [_integer_divisors(p(t)) for t in pts]
        seen = set()
        for combo in _product(divs):
            g = _lagrange(pts, list(combo))
            if g is None or g.degree != k or g in seen:
                continue
            seen.add(g)
            if divides(g, p):
                g = g.primitive()
                return sorted(_split_kronecker(g) + _split_kronecker(exact_quotient(p, g)), key=_sort_key)
    return [p]


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _product(lists[1:]):
            yield (head,) + tail


def is_irreducible(f: IntPoly, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    fac = factor_irreducible(f, degree_cap)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1


# ---------------------------------------------------------------------------
# symmetric functions of roots


def power_sum(f: IntPoly, k: int) -> int:
    """Sum of k-th powers of the roots of monic f (Newton's identities)."""
    if not f.is_monic():
        raise PolyError("power_sum needs a monic polynomial")
    if k < 1:
        raise ValueError("k must be positive")
    n = f.degree
    # e_i with sign: f = x^n + a_{n-1}x^{n-1} + ... ; c[i] = a_{n-i}
    c = [f[n - i] for i in range(n + 1)]
    p = [0] * (k + 1)
    for m in range(1, k + 1):
        s = -m * c[m] if m <= n else 0
        for i in range(1, m):
            if i <= n:
                s -= c[i] * p[m - i]
        p[m] = s
    return p[k]


def bareiss_det(rows: list[list], zero, one, exact_div):
    """Fraction-free determinant over an integral domain."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return one
    sgn = 1
    prev = one
    for k in range(n - 1):
        if m[k][k] == zero:
            swap = next((i for i in range(k + 1, n) if m[i][k] != zero), None)
            if swap is None:
                return zero
            m[k], m[swap] = m[swap], m[k]
            sgn = -sgn
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * pivot - m[i][k] * m[k][j], prev)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sgn == 1 else -det


def sylvester_matrix(f: Sequence, g: Sequence, zero=0) -> list[list]:
    """Sylvester matrix from coefficient lists given lowest degree first."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fh, gh = list(reversed(f)), list(reversed(g))
    for i in range(n):
        rows.append([zero] * i + fh + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + gh + [zero] * (size - i - n - 1))
    return rows


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) = lc(f)^deg g * prod g(roots of f), as a Sylvester determinant."""
    if f.is_zero() or g.is_zero():
        raise PolyError("resultant with the zero polynomial")
    if f.degree == 0:
        return f.lc**g.degree
    if g.degree == 0:
        return g.lc**f.degree
    rows = sylvester_matrix(f.coeffs, g.coeffs)
    return bareiss_det(rows, 0, 1, lambda a, b: a // b)


def compose_sum(f: IntPoly, g: IntPoly) -> IntPoly:
    """Polynomial whose roots are all sums a + b, a a root of f, b a root of g.

    Computed as Res_y(f(y), g(x - y)) with polynomial entries and normalized
    to a positive leading coefficient (monic for monic inputs).
    """
    if f.is_zero() or g.is_zero():
        raise PolyError("compose_sum with the zero polynomial")
    if f.degree == 0 or g.degree == 0:
        return ONE
    # g(x - y) as a polynomial in y whose coefficients lie in Z[x]
    m = g.degree
    gy: list[IntPoly] = [IntPoly() for _ in range(m + 1)]
    for k, a in enumerate(g.coeffs):
        if not a:
            continue
        # a (x - y)^k = a sum_j C(k,j) x^(k-j) (-y)^j
        for j in range(k + 1):
            term = a * comb(k, j) * (-1 if j % 2 else 1)
            gy[j] = gy[j] + IntPoly((0,) * (k - j) + (term,))
    fy = [IntPoly((a,)) for a in f.coeffs]
    rows = sylvester_matrix(fy, gy, IntPoly())
    res = bareiss_det(rows, IntPoly(), ONE, exact_quotient)
    if res.lc < 0:
        res = -res
    lc = res.lc
    if lc != 1 and all(c % lc == 0 for c in res.coeffs):
        res = IntPoly(tuple(c // lc for c in res.coeffs))
    return res


# ---------------------------------------------------------------------------
# unimodality


def is_unimodal(seq: Sequence[int]) -> bool:
    """Non-decreasing up to some index, non-increasing afterwards."""
    i, n = 0, len(seq)
    while i + 1 < n and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < n and seq[i] >= seq[i + 1]:
        i += 1
    return i >= n - 1


def abs_profile(f: IntPoly, literal: bool = False) -> list[int]:
    """Absolute coefficients of f, leading coefficient first.

    By default the zeros forced by structure are removed: the low-order run
    of zeros (a power of x dividing f) and, when f is even or odd, the
    coefficients of the wrong parity.  ``literal=True`` keeps everything.
    """
    vals = [abs(a) for a in reversed(f.coeffs)]
    if literal or not vals:
        return vals
    while vals and vals[-1] == 0:
        vals.pop()
    if all(v == 0 for v in vals[1::2]):
        vals = vals[0::2]
    return vals


# ---------------------------------------------------------------------------
# arithmetic in Q[x]/(m)


def _qtrim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / b[-1]
        q[k] = c
        if c:
            for j, v in enumerate(b):
                a[k + j] -= c * v
    return _qtrim(q), _qtrim(a[:db])


def _qmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return _qtrim(out)


def _qsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return _qtrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def residue(f: IntPoly | Sequence[Fraction], m: IntPoly) -> tuple[Fraction, ...]:
    """Coordinates of f modulo m in the basis 1, x, ..., x^(deg m - 1)."""
    coeffs = f.coeffs if isinstance(f, IntPoly) else f
    _, r = _qdivmod([Fraction(c) for c in coeffs], [Fraction(c) for c in m.coeffs])
    return tuple(r) + (Fraction(0),) * (m.degree - len(r))


def inverse_mod(f: IntPoly, m: IntPoly) -> tuple[Fraction, ...]:
    """Inverse of f in Q[x]/(m), as coordinates; PolyError if gcd(f, m) != 1."""
    r0 = [Fraction(c) for c in m.coeffs]
    r1 = list(residue(f, m))
    r1 = _qtrim(r1)
    s0: list[Fraction] = []
    s1 = [Fraction(1)]
    while r1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
    if len(r0) != 1:
        raise PolyError(f"{f} is not invertible modulo {m}")
    inv = [c / r0[0] for c in s0]
    return residue(inv, m)


def residue_mul(a: Sequence[Fraction], b: Sequence[Fraction], m: IntPoly) -> tuple[Fraction, ...]:
    return residue(_qmul(_qtrim(list(a)), _qtrim(list(b))), m)
