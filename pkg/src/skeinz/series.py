"""Exact arithmetic: Laurent polynomials in A and truncated series in h = A + 1.

Everything here is exact over the rationals. Laurent polynomials hold bracket
values; :class:`HLaurent` holds windowed expansions at ``A = -1`` with a
bounded principal part, which is how division by ``-A + A^-1`` is realized.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from numbers import Rational
from typing import Mapping, Sequence

__all__ = [
    "LaurentPoly",
    "HLaurent",
    "USeries",
    "lp_to_h",
    "ell_series",
    "h_exp",
    "h_log",
    "h_inv",
    "theta_series",
    "rebase_q4",
    "expand_q4",
    "subst_Ainv",
    "ONE_MINUS_H_POW",
]


def _norm(c):
    """Collapse integral Fractions to int so printing and hashing stay uniform."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Finite sum ``sum c_e A^e`` with exact rational coefficients.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = _norm(c)
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # construction helpers
    @classmethod
    def monomial(cls, exp: int, coef: Rational = 1) -> "LaurentPoly":
        return cls({exp: coef})

    @classmethod
    def const(cls, c: Rational) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, Rational):
            return cls({0: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # views
    @property
    def terms(self) -> dict[int, Rational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, e: int) -> Rational:
        return self._terms.get(e, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._terms))

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._terms))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def l1(self) -> Rational:
        return sum(abs(c) for c in self._terms.values())

    # ring operations
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Rational):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, Rational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly({e * k: Fraction(1) / Fraction(c) ** -k})
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by A^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def mirror(self) -> "LaurentPoly":
        """Substitute A -> A^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Long division treating both as polynomials after clearing A-powers.

        Returns ``(q, r)`` with ``self = q*other + r`` and the remainder
        reduced against ``other``'s leading term.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero LaurentPoly")
        if self.is_zero():
            return LaurentPoly(), LaurentPoly()
        lo_d = other.min_exp
        den = [Fraction(other.coeff(e)) for e in range(lo_d, other.max_exp + 1)]
        lo_n = self.min_exp
        num = [Fraction(self.coeff(e)) for e in range(lo_n, self.max_exp + 1)]
        dd = len(den) - 1
        if len(num) - 1 < dd:
            return LaurentPoly(), self
        lead = den[-1]
        q = [Fraction(0)] * (len(num) - dd)
        for i in range(len(num) - 1, dd - 1, -1):
            c = num[i]
            if c:
                t = c / lead
                q[i - dd] = t
                for j in range(dd + 1):
                    num[i - dd + j] -= t * den[j]
        quot = LaurentPoly({lo_n - lo_d + i: c for i, c in enumerate(q)})
        rem = LaurentPoly({lo_n + i: c for i, c in enumerate(num[:dd])})
        return quot, rem

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("LaurentPoly division is not exact")
        return q

    def evaluate(self, a):
        return sum(c * a ** e for e, c in self._terms.items())

    # comparisons
    def __eq__(self, other):
        if isinstance(other, Rational):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "LaurentPoly(0)"
        parts = []
        for e, c in self._terms.items():
            parts.append(f"{c}*A^{e}" if e else f"{c}")
        return "LaurentPoly(" + " + ".join(parts) + ")"

    def format_pairs(self) -> str:
        """``exp:coef`` pairs in increasing exponent order (the CLI format)."""
        if not self._terms:
            return "0:0"
        return ",".join(f"{e}:{c}" for e, c in self._terms.items())


A = LaurentPoly.monomial(1)
LOOP = LaurentPoly({2: -1, -2: -1})


class HLaurent:
    """Truncated Laurent series ``sum_{floor <= m < cap} c_m h^m + O(h^cap)``.

    ``h = A + 1``. Coefficients outside ``[floor, cap)`` are unknown (above)
    or zero (below).
    """

    __slots__ = ("floor", "cap", "coeffs")

    def __init__(self, floor: int, cap: int, coeffs: Sequence[Rational] | None = None):
        if cap <= floor:
            raise ValueError(f"empty window [{floor}, {cap})")
        self.floor = floor
        self.cap = cap
        size = cap - floor
        if coeffs is None:
            self.coeffs = [0] * size
        else:
            c = list(coeffs)[:size]
            self.coeffs = c + [0] * (size - len(c))

    @classmethod
    def from_dict(cls, d: Mapping[int, Rational], floor: int, cap: int) -> "HLaurent":
        out = cls(floor, cap)
        for m, c in d.items():
            if floor <= m < cap:
                out.coeffs[m - floor] = c
            elif m < floor and c:
                raise ValueError(f"term h^{m} lies below the window floor {floor}")
        return out

    @classmethod
    def const(cls, c: Rational, cap: int, floor: int = 0) -> "HLaurent":
        return cls.from_dict({0: c}, floor, cap)

    def __getitem__(self, m: int) -> Rational:
        if m < self.floor:
            return 0
        if m >= self.cap:
            raise IndexError(f"h^{m} is beyond the known window (cap {self.cap})")
        return self.coeffs[m - self.floor]

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.floor + i
        return None

    def principal_part(self) -> dict[int, Rational]:
        return {self.floor + i: c for i, c in enumerate(self.coeffs) if self.floor + i < 0 and c}

    def truncate(self, cap: int, floor: int | None = None) -> "HLaurent":
        floor = self.floor if floor is None else floor
        if cap > self.cap:
            raise ValueError(f"cannot extend cap from {self.cap} to {cap}")
        if floor > self.floor and any(self[m] for m in range(self.floor, floor)):
            raise ValueError("raising the floor would drop nonzero terms")
        return HLaurent(floor, cap, [self[m] for m in range(floor, cap)])

    def to_list(self, cap: int | None = None) -> list[Rational]:
        """Coefficients of h^0..h^(cap-1); requires an empty principal part."""
        cap = self.cap if cap is None else cap
        if self.principal_part():
            raise ValueError("series has a nonzero principal part")
        return [_norm(Fraction(self[m])) for m in range(cap)]

    def __add__(self, other):
        if isinstance(other, Rational):
            other = HLaurent.const(other, self.cap, min(0, self.floor))
        floor = min(self.floor, other.floor)
        cap = min(self.cap, other.cap)
        return HLaurent(floor, cap, [self[m] + other[m] for m in range(floor, cap)])

    __radd__ = __add__

    def __neg__(self):
        return HLaurent(self.floor, self.cap, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Rational) -> "HLaurent":
        return HLaurent(self.floor, self.cap, [c * s for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        if not isinstance(other, HLaurent):
            return NotImplemented
        floor = self.floor + other.floor
        cap = min(self.cap + other.floor, other.cap + self.floor)
        out = [0] * (cap - floor)
        a, b = self.coeffs, other.coeffs
        nb = len(b)
        for i, x in enumerate(a):
            if not x:
                continue
            lim = min(nb, cap - floor - i)
            for j in range(lim):
                y = b[j]
                if y:
                    out[i + j] += x * y
        return HLaurent(floor, cap, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return h_inv(self) ** (-k)
        if k == 0:
            return HLaurent.const(1, self.cap - min(self.floor, 0))
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, HLaurent):
            return NotImplemented
        floor = min(self.floor, other.floor)
        cap = min(self.cap, other.cap)
        return all(self[m] == other[m] for m in range(floor, cap))

    def __repr__(self):
        body = ", ".join(f"h^{self.floor + i}:{c}" for i, c in enumerate(self.coeffs) if c)
        return f"HLaurent([{self.floor},{self.cap}) {body})"


def _taylor_at_minus_one(q: list, terms: int) -> list:
    """Coefficients of (A+1)^m, m < terms, for the polynomial with coefficients q."""
    out = []
    work = list(q)
    while work and len(out) < terms:
        acc = 0
        quot = [0] * (len(work) - 1)
        for i in range(len(work) - 1, 0, -1):
            acc = work[i] - acc
            quot[i - 1] = acc
        out.append(work[0] - acc)
        work = quot
    return out


def lp_to_h(p: LaurentPoly, floor: int, cap: int) -> HLaurent:
    """Expand ``p(A)`` at ``A = h - 1`` in the window ``[floor, cap)``.

    Writes ``p = A^lo * q(A)`` and Taylor-shifts ``q`` about ``A = -1`` by
    repeated synthetic division by ``A + 1``; ``A^lo`` is expanded as a
    binomial series.
    """
    out = HLaurent(floor, cap)
    if p.is_zero() or cap <= 0:
        return out
    lo = p.min_exp
    taylor = _taylor_at_minus_one([p.coeff(e) for e in range(lo, p.max_exp + 1)], cap)
    # (h - 1)^lo = (-1)^lo (1 - h)^lo
    sign = -1 if lo % 2 else 1
    pw = [0] * cap
    if lo >= 0:
        for m in range(min(lo, cap - 1) + 1):
            pw[m] = sign * comb(lo, m) * (-1 if m % 2 else 1)
    else:
        f = -lo
        for m in range(cap):
            pw[m] = sign * comb(f + m - 1, m)
    for i, t in enumerate(taylor):
        if not t:
            continue
        for j in range(cap - i):
            if pw[j]:
                out.coeffs[i + j - floor] += t * pw[j]
    out.coeffs = [_norm(c) if isinstance(c, Fraction) else c for c in out.coeffs]
    return out


def ell_series(N: int) -> HLaurent:
    """``log(-A) = log(1 - h) = -sum h^k/k`` modulo h^N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return HLaurent(0, N, [0] + [Fraction(-1, k) for k in range(1, N)])


def ONE_MINUS_H_POW(k: int, N: int) -> HLaurent:
    """``(1 - h)^k = (-A)^k`` modulo h^N for any integer k."""
    if k >= 0:
        return HLaurent(0, N, [comb(k, m) * (-1) ** m for m in range(N)])
    f = -k
    return HLaurent(0, N, [comb(f + m - 1, m) for m in range(N)])


def h_inv(f: HLaurent) -> HLaurent:
    """Inverse of a series with nonzero leading coefficient.

    If ``f = h^v g`` with ``g`` a unit known to ``cap - v`` terms, the result
    is known on ``[-v, cap - 2v)``.
    """
    v = f.valuation()
    if v is None:
        raise ZeroDivisionError("h_inv of the zero series")
    n = f.cap - v
    g = [Fraction(f[v + i]) for i in range(n)]
    inv = [Fraction(0)] * n
    inv[0] = 1 / g[0]
    for m in range(1, n):
        s = sum(g[k] * inv[m - k] for k in range(1, m + 1))
        inv[m] = -s / g[0]
    return HLaurent(-v, n - v, [_norm(c) for c in inv])


def h_exp(f: HLaurent) -> HLaurent:
    """exp of a series of positive valuation."""
    if f.floor < 1 and any(f[m] for m in range(f.floor, min(1, f.cap))):
        raise ValueError("h_exp needs valuation >= 1")
    N = f.cap
    a = [Fraction(f[m]) if m >= f.floor else Fraction(0) for m in range(N)]
    # E' = a' E
    e = [Fraction(0)] * N
    e[0] = Fraction(1)
    for m in range(1, N):
        s = sum(k * a[k] * e[m - k] for k in range(1, m + 1))
        e[m] = s / m
    return HLaurent(0, N, [_norm(c) for c in e])


def h_log(g: HLaurent) -> HLaurent:
    """log of a series with constant term exactly 1."""
    if g.principal_part() or g[0] != 1:
        raise ValueError("h_log needs constant term 1 and no principal part")
    N = g.cap
    b = [Fraction(g[m]) for m in range(N)]
    # L' = g'/g
    out = [Fraction(0)] * N
    for m in range(1, N):
        s = m * b[m] - sum(k * out[k] * b[m - k] for k in range(1, m))
        out[m] = s / m
    return HLaurent(0, N, [_norm(c) for c in out])


def _poly_mul(a: Sequence, b: Sequence, n: int) -> list:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if not x or i > n:
            continue
        for j, y in enumerate(b):
            if i + j > n:
                break
            if y:
                out[i + j] += x * y
    return out


def theta_series(D: int) -> list[Fraction]:
    """Coefficients of ``Theta(u) = arccosh(1 - u/2)^2`` up to u^D.

    Obtained by formal reversion of ``u = -2 (cosh t - 1)`` in ``s = t^2``,
    so that ``Theta(u(t)) = t^2 + O(t^(2D+2))``.
    """
    if D < 1:
        raise ValueError("D must be >= 1")
    # u as a series in s = t^2
    us = [Fraction(0)] + [Fraction(-2, factorial(2 * m)) for m in range(1, D + 1)]
    powers = [[Fraction(1)] + [Fraction(0)] * D]
    for _ in range(D):
        powers.append(_poly_mul(powers[-1], us, D))
    th = [Fraction(0)] * (D + 1)
    for k in range(1, D + 1):
        acc = sum(th[j] * powers[j][k] for j in range(1, k))
        target = 1 if k == 1 else 0
        th[k] = (target - acc) / powers[k][k]
    return th


class USeries:
    """Polynomial in the annulus variable ``u = c + 2`` with HLaurent coefficients."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, coeffs: Sequence[HLaurent]):
        self.coeffs = list(coeffs)
        self.degree = len(self.coeffs) - 1
        windows = {(c.floor, c.cap) for c in self.coeffs}
        if len(windows) > 1:
            raise ValueError("USeries coefficient windows must be uniform")

    def __getitem__(self, k: int) -> HLaurent:
        return self.coeffs[k]


def _x_powers(N: int) -> list[list[int]]:
    """Powers of ``A^4 - 1 = h^4 - 4h^3 + 6h^2 - 4h`` modulo h^N."""
    x = [0, -4, 6, -4, 1][:N] + [0] * max(0, N - 5)
    pows = [[1] + [0] * (N - 1)]
    for _ in range(1, N):
        pows.append(_poly_mul(pows[-1], x, N - 1))
    return pows


def rebase_q4(f: Sequence[Rational] | HLaurent, K: int) -> list[Rational]:
    """Coefficients ``a_0..a_K`` with ``f = sum a_k (A^4 - 1)^k mod h^(K+1)``."""
    if isinstance(f, HLaurent):
        f = f.to_list()
    if len(f) < K + 1:
        raise ValueError(f"need f modulo h^{K + 1}, got {len(f)} terms")
    N = K + 1
    pows = _x_powers(N)
    r = [Fraction(c) for c in f[:N]]
    a = []
    for k in range(N):
        # (A^4-1)^k = (-4)^k h^k + ...
        ak = r[k] / pows[k][k]
        a.append(_norm(ak))
        if ak:
            for m in range(k, N):
                r[m] -= ak * pows[k][m]
    return a


def expand_q4(a: Sequence[Rational], N: int) -> list[Rational]:
    """Inverse of :func:`rebase_q4`: the h-series of ``sum a_k (A^4-1)^k`` mod h^N."""
    pows = _x_powers(N)
    out = [Fraction(0)] * N
    for k, ak in enumerate(a[:N]):
        for m in range(N):
            out[m] += ak * pows[k][m]
    return [_norm(c) for c in out]


def subst_Ainv(f: Sequence[Rational], N: int | None = None) -> list[Rational]:
    """Rewrite an h-series under ``A -> A^-1``, i.e. ``h -> -h - h^2 - ...``."""
    N = len(f) if N is None else N
    if len(f) < N:
        raise ValueError("series too short")
    g = [0] + [-1] * (N - 1)
    out = [Fraction(0)] * N
    # Horner: f(g) = f0 + g (f1 + g (f2 + ...))
    for c in reversed(list(f[:N])):
        out = _poly_mul(out, g, N - 1)
        out[0] += c
    return [_norm(Fraction(c)) for c in out]
