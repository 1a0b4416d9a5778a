"""Temperley-Lieb diagrams and Jones-Wenzl projectors.

A planar matching is stored as ``bytes`` whose entry ``p[i]`` is the partner
of point ``i``. Two layouts are used:

* line states: ``m`` points on a horizontal line, non-crossing in line order;
  these are sweep states.
* TL_n diagrams: labels ``0..n-1`` are the bottom points left to right and
  ``n..2n-1`` the top points left to right.

Products ``x * y`` stack ``x`` on top of ``y``. Projector coefficients live
in the rational function field Q(A) (``QA``), because they are not Laurent
polynomials.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from sympy import QQ
from sympy.polys.fields import field

from .series import LaurentPoly

__all__ = [
    "QA",
    "A_QA",
    "LOOP_QA",
    "to_qa",
    "from_qa",
    "qa_mirror",
    "line_matchings",
    "is_noncrossing_line",
    "tl_basis",
    "tl_identity",
    "tl_generator",
    "tl_compose",
    "tensor_id",
    "through_degree",
    "TLVector",
    "tl_mul",
    "loop_values_qa",
    "jw_solve",
    "jw_wenzl",
    "WENZL_VALIDATION_RANGE",
]

QA, A_QA = field("A", QQ)
LOOP_QA = -(A_QA**2) - A_QA**-2
WENZL_VALIDATION_RANGE = 6


def to_qa(p: LaurentPoly):
    out = QA.zero
    for e, c in p.items():
        out += QQ(c.numerator, c.denominator) * A_QA**e if hasattr(c, "denominator") else c * A_QA**e
    return out


def _poly_terms(poly) -> dict[int, object]:
    return {mon[0]: coef for mon, coef in poly.terms()}


def _qq_to_rat(c):
    from fractions import Fraction

    return Fraction(int(c.numerator), int(c.denominator))


def from_qa(x) -> LaurentPoly:
    """Convert a Q(A) element whose denominator is a monomial."""
    den = _poly_terms(x.denom)
    if len(den) != 1:
        raise ValueError(f"{x} is not a Laurent polynomial")
    (dexp, dcoef), = den.items()
    dcoef = _qq_to_rat(dcoef)
    return LaurentPoly({e - dexp: _qq_to_rat(c) / dcoef for e, c in _poly_terms(x.numer).items()})


def qa_mirror(x):
    """Apply A -> A^-1 to an element of Q(A)."""

    def flip(poly):
        out = QA.zero
        for e, c in _poly_terms(poly).items():
            out += c * A_QA**-e
        return out

    return flip(x.numer) / flip(x.denom)


# --- matchings -------------------------------------------------------------


@lru_cache(maxsize=None)
def line_matchings(m: int) -> tuple[bytes, ...]:
    """All non-crossing perfect matchings of ``m`` points on a line."""
    if m % 2:
        raise ValueError("matchings need an even number of points")

    def rec(points: tuple[int, ...]):
        if not points:
            yield {}
            return
        first = points[0]
        for k in range(1, len(points), 2):
            partner = points[k]
            for inner in rec(points[1:k]):
                for outer in rec(points[k + 1:]):
                    d = {first: partner, partner: first}
                    d.update(inner)
                    d.update(outer)
                    yield d

    out = []
    for d in rec(tuple(range(m))):
        out.append(bytes(d[i] for i in range(m)))
    return tuple(sorted(out))


def is_noncrossing_line(p: bytes) -> bool:
    m = len(p)
    if any(p[p[i]] != i or p[i] == i for i in range(m)):
        return False
    for i in range(m):
        j = p[i]
        if i < j:
            for k in range(i + 1, j):
                if not i < p[k] < j:
                    return False
    return True


def _cyclic_position(label: int, n: int) -> int:
    return label if label < n else 2 * n - 1 - (label - n)


@lru_cache(maxsize=None)
def tl_basis(n: int) -> tuple[bytes, ...]:
    """Basis diagrams of TL_n (Catalan(n) of them)."""
    out = []
    for lm in line_matchings(2 * n):
        # line position -> label
        lab = [p if p < n else n + (2 * n - 1 - p) for p in range(2 * n)]
        d = [0] * (2 * n)
        for pos in range(2 * n):
            d[lab[pos]] = lab[lm[pos]]
        out.append(bytes(d))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def tl_identity(n: int) -> bytes:
    return bytes([n + j for j in range(n)] + list(range(n)))


@lru_cache(maxsize=None)
def tl_generator(n: int, i: int) -> bytes:
    """The cup-cap generator e_i joining strands i and i+1 (0-based)."""
    if not 0 <= i < n - 1:
        raise ValueError(f"e_{i} does not exist in TL_{n}")
    d = list(tl_identity(n))
    d[i], d[i + 1] = i + 1, i
    d[n + i], d[n + i + 1] = n + i + 1, n + i
    return bytes(d)


@lru_cache(maxsize=1 << 20)
def tl_compose(x: bytes, y: bytes) -> tuple[bytes, int]:
    """Stack ``x`` on top of ``y``; returns the diagram and the closed loop count."""
    n = len(x) // 2
    # x bottom j is glued to y top j.
    out = [0] * (2 * n)
    seen_mid = [False] * n

    def walk(start_layer: str, label: int) -> int:
        # label is a point on the outer boundary; follow into the middle.
        layer, pt = start_layer, label
        while True:
            if layer == "x":
                q = x[pt]
                if q >= n:
                    return q  # reached top of x: result top label
                seen_mid[q] = True
                layer, pt = "y", n + q
            else:
                q = y[pt]
                if q < n:
                    return q - 2 * n  # reached bottom of y (encoded negative)
                seen_mid[q - n] = True
                layer, pt = "x", q - n

    for j in range(n):
        # top boundary points come from x's top, bottom from y's bottom
        end = walk("x", n + j)
        out[n + j] = end if end >= 0 else end + 2 * n
        end = walk("y", j)
        out[j] = end if end >= 0 else end + 2 * n
    loops = 0
    for j in range(n):
        if seen_mid[j]:
            continue
        loops += 1
        # trace the closed loop through the middle line
        pt = j
        while True:
            seen_mid[pt] = True
            a = x[pt]  # x bottom pt -> x bottom a
            seen_mid[a] = True
            b = y[n + a] - n  # y top a -> y top b
            if seen_mid[b]:
                break
            pt = b
    return bytes(out), loops


@lru_cache(maxsize=None)
def tensor_id(x: bytes) -> bytes:
    """``x`` tensor a vertical strand on the right: TL_{n} -> TL_{n+1}."""
    n = len(x) // 2
    m = n + 1

    def relabel(p: int) -> int:
        return p if p < n else p + 1

    d = [0] * (2 * m)
    for p in range(2 * n):
        d[relabel(p)] = relabel(x[p])
    d[n] = m + n
    d[m + n] = n
    return bytes(d)


def through_degree(x: bytes) -> int:
    n = len(x) // 2
    return sum(1 for j in range(n) if x[j] >= n)


def _top_pattern(x: bytes) -> tuple[int, ...]:
    n = len(x) // 2
    return tuple((x[n + j] - n) if x[n + j] >= n else -1 for j in range(n))


def _bottom_pattern(x: bytes) -> tuple[int, ...]:
    n = len(x) // 2
    return tuple(x[j] if x[j] < n else -1 for j in range(n))


# --- TL vectors ------------------------------------------------------------


class TLVector:
    """Linear combination of matchings on ``m`` points.

    ``loop`` is the closed-loop value in the coefficient ring (a LaurentPoly
    or an element of ``QA``).
    """

    __slots__ = ("terms", "m", "loop")

    def __init__(self, terms: Mapping[bytes, object], m: int, loop=None):
        self.m = m
        self.loop = LaurentPoly({2: -1, -2: -1}) if loop is None else loop
        clean = {}
        for k, c in terms.items():
            if len(k) != m:
                raise ValueError(f"matching on {len(k)} points in a TLVector over {m}")
            if c != 0:
                clean[bytes(k)] = c
        self.terms = clean

    @classmethod
    def basis(cls, key: bytes, coef=1, loop=None) -> "TLVector":
        return cls({key: coef}, len(key), loop)

    def __add__(self, other: "TLVector") -> "TLVector":
        if self.m != other.m:
            raise ValueError("point counts differ")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TLVector(out, self.m, self.loop)

    def __sub__(self, other: "TLVector") -> "TLVector":
        return self + other.scale(-1)

    def scale(self, s) -> "TLVector":
        return TLVector({k: c * s for k, c in self.terms.items()}, self.m, self.loop)

    def coeff(self, key: bytes):
        return self.terms.get(key, 0)

    def map_coeffs(self, fn, loop=None) -> "TLVector":
        return TLVector({k: fn(c) for k, c in self.terms.items()}, self.m,
                        self.loop if loop is None else loop)

    def __mul__(self, other: "TLVector") -> "TLVector":
        return tl_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TLVector):
            return NotImplemented
        if self.m != other.m or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] - other.terms[k] == 0 for k in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"TLVector(m={self.m}, {len(self.terms)} terms)"


def tl_mul(x: TLVector, y: TLVector) -> TLVector:
    """Product in TL_n: ``x`` stacked on top of ``y``."""
    if x.m != y.m or x.m % 2:
        raise ValueError("tl_mul needs two TL_n elements of the same n")
    loop = x.loop
    powers = {0: 1}
    out: dict[bytes, object] = {}
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            kz, loops = tl_compose(kx, ky)
            if loops not in powers:
                powers[loops] = loop**loops
            c = cx * cy * powers[loops] if loops else cx * cy
            out[kz] = out[kz] + c if kz in out else c
    return TLVector(out, x.m, loop)


def loop_values_qa(n: int) -> list:
    """Delta_0..Delta_n in Q(A) from Delta_{k+1} = Delta_1 Delta_k - Delta_{k-1}."""
    vals = [QA.one, LOOP_QA]
    while len(vals) <= n:
        vals.append(LOOP_QA * vals[-1] - vals[-2])
    return vals[: n + 1]


def _gauss_solve(rows: list[tuple[dict, object]], unknowns: list) -> dict:
    """Solve a consistent, possibly overdetermined linear system.

    Works over any exact field: Q(A) elements or Fractions.
    """
    rows = [(dict(r), rhs) for r, rhs in rows]
    solution_rows = []
    for var in unknowns:
        piv = next((k for k, (r, _) in enumerate(rows) if r.get(var, 0) != 0), None)
        if piv is None:
            raise ArithmeticError(f"linear system is singular in {var!r}")
        prow, prhs = rows.pop(piv)
        inv = 1 / prow[var]
        prow = {k: c * inv for k, c in prow.items()}
        prhs = prhs * inv
        new_rows = []
        for r, rhs in rows:
            f = r.get(var, 0)
            if f != 0:
                r = dict(r)
                for k, c in prow.items():
                    v = r.get(k, 0) - f * c
                    if v != 0:
                        r[k] = v
                    else:
                        r.pop(k, None)
                rhs = rhs - f * prhs
            new_rows.append((r, rhs))
        rows = new_rows
        solution_rows.append((var, prow, prhs))
    for r, rhs in rows:
        if any(c != 0 for c in r.values()) or rhs != 0:
            raise ArithmeticError("linear system is inconsistent")
    sol = {}
    for var, prow, prhs in reversed(solution_rows):
        val = prhs
        for k, c in prow.items():
            if k != var:
                val = val - c * sol[k]
        sol[var] = val
    return sol


@lru_cache(maxsize=None)
def jw_solve(n: int) -> TLVector:
    """The projector f_n by a direct linear solve.

    Unknowns are the coefficients of all non-identity basis diagrams. The
    conditions ``e_i f_n = 0`` are imposed through-degree by through-degree:
    left multiplication by ``e_i`` either lowers the through-degree or keeps
    the bottom half fixed, so each level splits into small blocks indexed by
    the bottom half, all sharing one coefficient pattern.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ident = tl_identity(n)
    if n == 1:
        return TLVector.basis(ident, QA.one, LOOP_QA)
    basis = tl_basis(n)
    # equations[(i, N)] = {M: coefficient}
    equations: dict[tuple[int, bytes], dict[bytes, object]] = {}
    for M in basis:
        for i in range(n - 1):
            N, loops = tl_compose(tl_generator(n, i), M)
            eq = equations.setdefault((i, N), {})
            eq[M] = eq.get(M, 0) + (LOOP_QA if loops else QA.one)
    known = {ident: QA.one}
    levels = sorted({through_degree(M) for M in basis if M != ident}, reverse=True)
    for t in levels:
        blocks: dict[tuple, list[bytes]] = {}
        for M in basis:
            if through_degree(M) == t:
                blocks.setdefault(_bottom_pattern(M), []).append(M)
        for bottom, unknowns in blocks.items():
            unk = set(unknowns)
            rows = []
            for (i, N), eq in equations.items():
                if N not in unk:
                    continue
                row = {M: c for M, c in eq.items() if M in unk}
                rhs = QA.zero
                for M, c in eq.items():
                    if M not in unk:
                        if M not in known:
                            if through_degree(M) <= t:
                                raise ArithmeticError("equation couples an unsolved level")
                            continue
                        rhs -= c * known[M]
                rows.append((row, rhs))
            known.update(_gauss_solve(rows, sorted(unknowns)))
    return TLVector(known, 2 * n, LOOP_QA)


_wenzl_validated = False


def _validate_wenzl() -> None:
    global _wenzl_validated
    if _wenzl_validated:
        return
    for k in range(1, WENZL_VALIDATION_RANGE + 1):
        if _jw_wenzl(k) != jw_solve(k):
            raise ArithmeticError(f"Wenzl recursion disagrees with the direct solve at n={k}")
    _wenzl_validated = True


@lru_cache(maxsize=None)
def _jw_wenzl(n: int) -> TLVector:
    if n == 1:
        return TLVector.basis(tl_identity(1), QA.one, LOOP_QA)
    prev = _jw_wenzl(n - 1)
    lifted = TLVector({tensor_id(k): c for k, c in prev.terms.items()}, 2 * n, LOOP_QA)
    delta = loop_values_qa(n - 1)
    gen = TLVector.basis(tl_generator(n, n - 2), QA.one, LOOP_QA)
    middle = tl_mul(tl_mul(lifted, gen), lifted)
    return lifted - middle.scale(delta[n - 2] / delta[n - 1])


def jw_wenzl(n: int) -> TLVector:
    """The projector f_n by the Wenzl recursion.

    Beyond ``WENZL_VALIDATION_RANGE`` the recursion is only used after it has
    been checked against :func:`jw_solve` on the whole validation range.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > WENZL_VALIDATION_RANGE:
        _validate_wenzl()
    return _jw_wenzl(n)


def projector(n: int) -> TLVector:
    """f_n as used by the evaluators (Wenzl recursion, validated)."""
    return jw_wenzl(n)


def tl_from_terms(terms: Iterable[tuple[bytes, object]], n: int, loop=None) -> TLVector:
    out: dict[bytes, object] = {}
    for k, c in terms:
        out[k] = out[k] + c if k in out else c
    return TLVector(out, 2 * n, loop)
