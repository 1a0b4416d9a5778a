"""z(M) for +-1 surgery on a knot.

The twist element exp(eps L / (-A + A^-1)) is expanded in the annulus as a
polynomial in u = z + 2 with coefficients in h = A + 1 (a bounded negative
tail is allowed), moved to the color basis e_n, and paired with 0-framed
colored brackets J_K(n). The result must have no negative h-powers; it is
then rebased to powers of A^4 - 1. Truncation is controlled empirically:
runs at increasing u-degree must agree on every coefficient reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable

from .cache import BracketCache
from .channels import DEFAULT_MAX_COLOR, default_law, knot_exponent, torus2_bracket
from .diagram import KnotPresentation, builtin
from .oracle import DEFAULT_MAX_WIDTH, colored_bracket, loop_law, twist_law
from .reference import POINCARE, reference_row
from .series import (HLaurent, LaurentPoly, ONE_MINUS_H_POW, USeries, ell_series, expand_q4,
                     h_inv, lp_to_h, rebase_q4, subst_Ainv, theta_series, _poly_mul)

__all__ = [
    "ResidueError",
    "StabilizationError",
    "Convention",
    "CONVENTION",
    "SurgeryInput",
    "InvariantSeries",
    "OmegaExpansion",
    "omega_coeffs",
    "color_basis_matrix",
    "bracket_source",
    "pair_invariant",
    "stabilize",
    "mirror_check",
    "two_ways_check",
    "connected_sum",
    "casson",
    "calibrate",
    "default_max_color",
    "PAIR_STATS",
]


class ResidueError(ArithmeticError):
    """Negative powers of h survived the pairing."""

    def __init__(self, residue: dict):
        lo = min(residue)
        super().__init__(f"negative-power residue: h^{lo} coefficient {residue[lo]}")
        self.residue = residue


class StabilizationError(RuntimeError):
    """No coefficient agreed across truncation levels."""


@dataclass(frozen=True)
class Convention:
    """Global choices fixed once by calibration.

    ``chirality = -1`` evaluates every knot through its mirror diagram;
    ``framing_offset = f`` multiplies J_K(n) by mu_n^f.
    """

    chirality: int = 1
    framing_offset: int = 0


# Frozen by calibration against the Poincare row; see calibrate().
CONVENTION = Convention(chirality=-1, framing_offset=0)


# ---------------------------------------------------------------- colored brackets

BracketFn = Callable[[int], LaurentPoly]


def bracket_source(K: KnotPresentation, engine: str = "auto", cache: BracketCache | None = None,
                   max_width: int | None = DEFAULT_MAX_WIDTH,
                   convention: Convention = CONVENTION) -> tuple[BracketFn, str]:
    """Return ``(n -> J(n), engine name)`` for ``K`` under ``convention``.

    The cache stores J_K(n) for the presentation as given; the convention
    is applied afterwards.
    """
    if engine not in ("auto", "oracle", "channel"):
        raise ValueError(f"unknown engine {engine!r}")
    w = knot_exponent(K)
    trivial = K.diagram.crossings == 0 and K.num_components == 1
    if engine == "channel" and w is None and not trivial:
        raise ValueError(f"the channel engine needs a 2-strand torus knot, got {K.id}")
    use_channel = engine == "channel" or (engine == "auto" and (w is not None or trivial))
    if use_channel:
        law = None if trivial else default_law()

        def raw(n: int) -> LaurentPoly:
            if trivial:
                return loop_law(n)
            return torus2_bracket(law, n, w, max_color=max(DEFAULT_MAX_COLOR, n))
        name = "channel"
    else:
        def raw(n: int) -> LaurentPoly:
            return colored_bracket(K, n, max_width)
        name = "oracle"

    @lru_cache(maxsize=None)
    def J(n: int) -> LaurentPoly:
        val = cache.get(K.id, n) if cache is not None else None
        if val is None:
            val = raw(n)
            if cache is not None:
                cache.put(K.id, n, val)
        if convention.chirality < 0:
            val = val.mirror()
        if convention.framing_offset and n:
            val = val * twist_law(n) ** convention.framing_offset
        return val

    return J, name


def default_max_color(K: KnotPresentation, engine: str, N: int,
                      max_width: int | None = DEFAULT_MAX_WIDTH) -> int:
    if engine == "channel":
        return max(2 * N, 28)
    if max_width is None:
        raise ValueError("the oracle needs a width capacity to choose its maximal color")
    return max_width // K.diagram.max_width


# ---------------------------------------------------------------- omega

@dataclass(frozen=True)
class OmegaExpansion:
    eps: int
    D: int
    N: int
    u_coeffs: USeries
    color_coeffs: tuple[HLaurent, ...]


@lru_cache(maxsize=None)
def color_basis_matrix(D: int) -> tuple[tuple[int, ...], ...]:
    """Row k: u^k = sum_n M[k][n] e_n, from u e_n = e_{n+1} + 2 e_n + e_{n-1}."""
    rows = [[1] + [0] * D]
    for _ in range(D):
        prev = rows[-1]
        row = [0] * (D + 1)
        for n, v in enumerate(prev):
            if not v:
                continue
            if n + 1 <= D:
                row[n + 1] += v
            row[n] += 2 * v
            if n > 0:
                row[n - 1] += v
        rows.append(row)
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def omega_coeffs(eps: int, D: int, N: int) -> OmegaExpansion:
    """(1-h)^-eps * sum_j (eps Theta(u) / (4 l))^j / j! truncated at u^D.

    The u^k coefficient lives in the window [-D, N); this is what pairing
    against brackets known to h^(N+D) needs for an answer modulo h^N.
    """
    if eps not in (1, -1):
        raise ValueError("surgery sign must be +1 or -1")
    if D < 0 or N < 1:
        raise ValueError("need D >= 0 and N >= 1")
    floor, cap = -D, N
    theta = theta_series(D) if D >= 1 else [Fraction(0)]
    # l^-1 has floor -1; its j-th power keeps cap N once l is known to h^(N+D+1)
    linv = h_inv(ell_series(N + D + 1))
    u = [HLaurent(floor, cap) for _ in range(D + 1)]
    theta_pow = [Fraction(1)] + [Fraction(0)] * D
    lpow = HLaurent.const(1, cap + D)
    for j in range(D + 1):
        if j:
            theta_pow = _poly_mul(theta_pow, theta, D)
            lpow = lpow * linv
        scale = Fraction(eps, 4) ** j / factorial(j)
        term = lpow.truncate(cap, floor)
        for k in range(j, D + 1):
            if theta_pow[k]:
                u[k] = u[k] + term.scale(scale * theta_pow[k])
    pre = ONE_MINUS_H_POW(-eps, cap + D)
    u = [(pre * c).truncate(cap, floor) for c in u]
    M = color_basis_matrix(D)
    colors = []
    for n in range(D + 1):
        acc = HLaurent(floor, cap)
        for k in range(n, D + 1):
            if M[k][n]:
                acc = acc + u[k].scale(M[k][n])
        colors.append(acc)
    return OmegaExpansion(eps, D, N, USeries(u), tuple(colors))


# ---------------------------------------------------------------- results

@dataclass(frozen=True)
class InvariantSeries:
    h_series: tuple[Fraction, ...]
    coeffs: tuple[Fraction, ...]
    certified_order: int
    label: str = ""
    runs: tuple[int, ...] = field(default=())

    @classmethod
    def from_h(cls, h: list, certified: int, label: str = "", runs=()) -> "InvariantSeries":
        h = tuple(Fraction(c) for c in h)
        a = tuple(Fraction(c) for c in rebase_q4(list(h), len(h) - 1))
        if a and a[0] != 1:
            raise ArithmeticError(f"constant term {a[0]} is not 1")
        return cls(h, a, certified, label, tuple(runs))

    @property
    def order(self) -> int:
        return len(self.h_series)

    def certified_coeffs(self) -> tuple[Fraction, ...]:
        return self.coeffs[: self.certified_order]

    def format_h(self) -> str:
        terms = [f"{c}*h^{m}" for m, c in enumerate(self.h_series[: self.certified_order]) if c]
        return " + ".join(terms) + f" + O(h^{self.certified_order})" if terms else f"O(h^{self.certified_order})"


@dataclass(frozen=True)
class SurgeryInput:
    knot: KnotPresentation
    eps: int
    order: int
    max_color: int | None = None
    engine: str = "auto"

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("surgery sign must be +1 or -1")
        if self.order < 2:
            raise ValueError("order must be >= 2")
        if self.max_color is not None and self.max_color < 0:
            raise ValueError("max color must be >= 0")


# every pairing is counted; a run with negative powers raises instead
PAIR_STATS = {"runs": 0, "residue_free": 0}


def _pair(J: BracketFn, eps: int, D: int, N: int) -> list[Fraction]:
    PAIR_STATS["runs"] += 1
    om = omega_coeffs(eps, D, N)
    total = HLaurent(-D, N)
    for n in range(D + 1):
        cn = om.color_coeffs[n]
        if cn.valuation() is None:
            continue
        total = total + cn * lp_to_h(J(n), 0, N + D)
    residue = total.principal_part()
    if residue:
        raise ResidueError(residue)
    PAIR_STATS["residue_free"] += 1
    return total.to_list(N)


def pair_invariant(inp: SurgeryInput, cache: BracketCache | None = None,
                   max_width: int | None = DEFAULT_MAX_WIDTH,
                   convention: Convention = CONVENTION) -> InvariantSeries:
    """One pairing at u-degree ``inp.max_color``; not certified (order 0)."""
    J, engine = bracket_source(inp.knot, inp.engine, cache, max_width, convention)
    D = inp.max_color if inp.max_color is not None else default_max_color(
        inp.knot, engine, inp.order, max_width)
    h = _pair(J, inp.eps, D, inp.order)
    return InvariantSeries.from_h(h, 0, f"{inp.knot.id} eps={inp.eps:+d} D={D}", (D,))


def stabilize(inp: SurgeryInput, cache: BracketCache | None = None,
              max_width: int | None = DEFAULT_MAX_WIDTH,
              convention: Convention = CONVENTION) -> InvariantSeries:
    """Certify coefficients by agreement across truncation levels.

    Channel engine: runs at D, D+2, D+4. Oracle engine: D is capped by the
    sweep capacity, so the runs are D-2 and D. The certified order is the
    longest prefix of a-coefficients equal in every run, capped at the
    requested order.
    """
    J, engine = bracket_source(inp.knot, inp.engine, cache, max_width, convention)
    D = inp.max_color if inp.max_color is not None else default_max_color(
        inp.knot, engine, inp.order, max_width)
    if engine == "channel":
        levels = [D, D + 2, D + 4]
    else:
        levels = [max(D - 2, 0), D]
    N = inp.order
    runs = [rebase_q4(_pair(J, inp.eps, d, N), N - 1) for d in levels]
    m = 0
    while m < N and all(r[m] == runs[-1][m] for r in runs):
        m += 1
    if m == 0:
        raise StabilizationError("no coefficient is stable across truncation levels")
    h = expand_q4(runs[-1], N)
    return InvariantSeries.from_h(h, m, f"{inp.knot.id} eps={inp.eps:+d}", tuple(levels))


# ---------------------------------------------------------------- checks

def _common(z1: InvariantSeries, z2: InvariantSeries) -> int:
    return min(z1.certified_order, z2.certified_order)


def mirror_check(K: KnotPresentation, eps: int, N: int, engine: str = "auto",
                 max_color: int | None = None, **kw) -> bool:
    """z(mirror K, -eps) equals z(K, eps) under A -> A^-1, to the common certified order."""
    z = stabilize(SurgeryInput(K, eps, N, max_color, engine), **kw)
    zm = stabilize(SurgeryInput(K.mirror(), -eps, N, max_color, engine), **kw)
    m = _common(z, zm)
    if m == 0:
        return False
    return tuple(subst_Ainv(list(z.h_series), m)) == zm.h_series[:m]


def two_ways_check(N: int, max_color: int | None = None, **kw) -> tuple[bool, int]:
    """fig8 rows against the trefoil rows they must equal; returns (ok, order)."""
    fig8 = builtin("fig8")
    ok = True
    order = N
    for eps, other, oeps in ((1, "trefoil", -1), (-1, "trefoil-mirror", 1)):
        z8 = stabilize(SurgeryInput(fig8, eps, N, max_color, "oracle"), **kw)
        zt = stabilize(SurgeryInput(builtin(other), oeps, N, None, "channel"), **kw)
        m = _common(z8, zt)
        order = min(order, m)
        ok = ok and m > 0 and z8.coeffs[:m] == zt.coeffs[:m]
    return ok, order


def connected_sum(z1: InvariantSeries, z2: InvariantSeries) -> InvariantSeries:
    """z(M1 # M2) = z(M1) z(M2)."""
    n = min(z1.order, z2.order)
    h = _poly_mul(list(z1.h_series[:n]), list(z2.h_series[:n]), n - 1)
    return InvariantSeries.from_h(h, _common(z1, z2), f"({z1.label})#({z2.label})")


def casson(z: InvariantSeries) -> Fraction:
    """a_1 / (-6)."""
    if z.certified_order < 2:
        raise ValueError("casson needs certified order >= 2")
    return Fraction(z.coeffs[1]) / -6


def calibrate(N: int = 14, max_color: int | None = None) -> Convention:
    """Find the convention reproducing the Poincare row.

    Tries the chirality pairing first and a framing offset only if needed;
    the first match is returned. The result is frozen as ``CONVENTION``.
    """
    knot, eps = POINCARE
    target = [Fraction(a) for a in reference_row(knot, eps)[:N]]
    for framing in (0, -1, 1):
        for chirality in (1, -1):
            conv = Convention(chirality, framing)
            try:
                z = stabilize(SurgeryInput(builtin(knot), eps, N, max_color, "channel"),
                              convention=conv)
            except (ResidueError, StabilizationError):
                continue
            if z.certified_order >= N and list(z.coeffs[:N]) == target:
                return conv
    raise RuntimeError("no convention reproduces the Poincare row")

