"""Colored brackets of 2-strand torus closures through channel eigenvalues.

Two parallel f_n-colored strands split into channels c = 0, 2, ..., 2n. A
positive crossing acts on channel c by a signed monomial lambda_c(n), and
the closure of sigma_1^w evaluates to sum_c lambda_c(n)^w Delta_c. The
eigenvalues are not assumed: they are recovered from oracle traces at small
n, fitted to a quadratic exponent law and a parity sign law, and checked
against the oracle beyond the fit range before use.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .diagram import KnotPresentation, braid_closure, colored_diagram
from .oracle import DEFAULT_MAX_WIDTH, bracket, loop_law, twist_law, loop_value, twist_monomial
from .series import LaurentPoly
from .tl import _gauss_solve, from_qa, to_qa

__all__ = [
    "ChannelFitError",
    "ChannelLaw",
    "trace_sequence",
    "channel_fit",
    "channel_validate",
    "torus2_bracket",
    "default_law",
    "DEFAULT_MAX_COLOR",
]

DEFAULT_FIT_RANGE = 4
DEFAULT_VALIDATION_RANGE = 5
DEFAULT_MAX_COLOR = 48
# quadratic monomials in (n, c) for the exponent law
_BASIS = ("n^2", "nc", "c^2", "n", "c", "1")


class ChannelFitError(ArithmeticError):
    """No consistent channel law; the channel engine is disabled."""


def _basis_values(n: int, c: int) -> tuple[int, ...]:
    return (n * n, n * c, c * c, n, c, 1)


@dataclass(frozen=True)
class ChannelLaw:
    texp_coeffs: tuple[Fraction, ...]
    # sign for (2n - c)/2 even, odd
    parity_signs: tuple[int, int]
    fit_range: int
    validation_range: int = 0
    validated: bool = False

    def texp(self, n: int, c: int) -> int:
        t = sum(a * b for a, b in zip(self.texp_coeffs, _basis_values(n, c)))
        if t.denominator != 1:
            raise ChannelFitError(f"exponent law is not integral at n={n}, c={c}")
        return int(t)

    def sign(self, n: int, c: int) -> int:
        return self.parity_signs[((2 * n - c) // 2) % 2]

    def eigen(self, n: int, c: int) -> LaurentPoly:
        return LaurentPoly.monomial(self.texp(n, c), self.sign(n, c))

    def table(self, n: int) -> list[tuple[int, LaurentPoly, LaurentPoly]]:
        """[(c, Delta_c, lambda_c(n))] for c = 0, 2, ..., 2n."""
        return [(c, loop_law(c), self.eigen(n, c)) for c in range(0, 2 * n + 1, 2)]

    def dump(self, max_n: int) -> list[str]:
        return [f"n={n} c={c} sign={self.sign(n, c):+d} texp={self.texp(n, c)}"
                for n in range(max_n + 1) for c in range(0, 2 * n + 1, 2)]

    def describe(self) -> str:
        terms = [f"{a}*{b}" for a, b in zip(self.texp_coeffs, _BASIS) if a]
        return "texp = " + (" + ".join(terms) or "0")


@lru_cache(maxsize=None)
def trace_sequence(n: int, w: int, max_width: int | None = DEFAULT_MAX_WIDTH) -> LaurentPoly:
    """Blackboard bracket of the closure of sigma_1^w, both strands colored n."""
    if abs(w) > 5:
        raise ValueError("trace probes are limited to |w| <= 5")
    if n == 0:
        return LaurentPoly.const(1)
    word = (1 if w > 0 else -1,) * abs(w)
    return bracket(colored_diagram(braid_closure(word, 2), n), max_width)


def _monomial_roots(coeffs: list[LaurentPoly], count: int) -> list[LaurentPoly]:
    """Signed-monomial roots of sum_i coeffs[i] x^i (monic of degree ``count``)."""
    bound = max(max(abs(p.min_exp), abs(p.max_exp)) for p in coeffs if p) + 1
    roots = []
    for t in range(-bound, bound + 1):
        for s in (1, -1):
            val = LaurentPoly()
            for i, a in enumerate(coeffs):
                if a:
                    val = val + (a.shift(t * i) if s > 0 or i % 2 == 0 else -a.shift(t * i))
            if not val:
                roots.append(LaurentPoly.monomial(t, s))
    if len(roots) != count:
        raise ChannelFitError(f"expected {count} monomial eigenvalues, found {len(roots)}")
    return roots


def _fit_color(n: int, max_width) -> dict[int, LaurentPoly]:
    """Recover {c: lambda_c(n)} from traces by a Prony solve over Q(A)."""
    r = n + 1
    ws = list(range(-r, r))
    T = {w: to_qa(trace_sequence(n, w, max_width)) for w in ws}
    # T_{w+r} = sum_i p_i T_{w+i}
    rows = [({i: T[ws[0] + j + i] for i in range(r)}, T[ws[0] + j + r]) for j in range(r)]
    p = _gauss_solve(rows, list(range(r)))
    try:
        char = [-from_qa(p[i]) for i in range(r)] + [LaurentPoly.const(1)]
    except ValueError as exc:
        raise ChannelFitError(f"recurrence at n={n} is not Laurent") from exc
    roots = _monomial_roots(char, r)
    lam_qa = [to_qa(x) for x in roots]
    vrows = [({j: lam_qa[j] ** w for j in range(r)}, T[w]) for w in ws]
    weights = _gauss_solve(vrows, list(range(r)))
    out: dict[int, LaurentPoly] = {}
    for j, lam in enumerate(roots):
        try:
            wt = from_qa(weights[j])
        except ValueError as exc:
            raise ChannelFitError(f"channel weight at n={n} is not Laurent") from exc
        match = [c for c in range(0, 2 * n + 1, 2) if loop_law(c) == wt]
        if len(match) != 1 or match[0] in out:
            raise ChannelFitError(f"weight {wt} at n={n} is not a channel loop value")
        out[match[0]] = lam
    return out


def channel_fit(n0: int = DEFAULT_FIT_RANGE, max_width: int | None = DEFAULT_MAX_WIDTH) -> ChannelLaw:
    """Fit exponent and sign laws to eigenvalues recovered for 1 <= n <= n0."""
    data = {n: _fit_color(n, max_width) for n in range(1, n0 + 1)}
    rows = []
    signs: dict[int, set] = {0: set(), 1: set()}
    for n, table in data.items():
        for c, lam in table.items():
            (t, s), = lam.items()
            rows.append((dict(enumerate(Fraction(v) for v in _basis_values(n, c))), Fraction(t)))
            signs[((2 * n - c) // 2) % 2].add(int(s))
    if any(len(v) != 1 for v in signs.values()):
        raise ChannelFitError(f"sign is not a function of (2n-c)/2 mod 2: {signs}")
    try:
        sol = _gauss_solve(rows, list(range(len(_BASIS))))
    except ArithmeticError as exc:
        raise ChannelFitError(f"no quadratic exponent law fits: {exc}") from exc
    law = ChannelLaw(tuple(sol[i] for i in range(len(_BASIS))),
                     (signs[0].pop(), signs[1].pop()), n0)
    for n, table in data.items():
        for c, lam in table.items():
            if law.eigen(n, c) != lam:
                raise ChannelFitError(f"law misses the fitted point n={n}, c={c}")
    return law


def channel_validate(law: ChannelLaw, n1: int = DEFAULT_VALIDATION_RANGE, wmax: int = 3,
                     max_width: int | None = DEFAULT_MAX_WIDTH) -> tuple[ChannelLaw, list[str]]:
    """Check the law against oracle traces for n <= n1, |w| <= wmax.

    Returns the law marked validated and a report; raises on any mismatch.
    """
    report = []
    for n in range(1, n1 + 1):
        table = law.table(n)
        dn = loop_law(n)
        if sum((d for _, d, _ in table), LaurentPoly()) != dn * dn:
            raise ChannelFitError(f"channel completeness fails at n={n}")
        report.append(f"n={n} completeness ok")
        for w in range(-wmax, wmax + 1):
            value = sum((lam ** w * d for _, d, lam in table), LaurentPoly())
            if value != trace_sequence(n, w, max_width):
                raise ChannelFitError(f"law disagrees with the oracle at n={n}, w={w}")
            report.append(f"n={n} w={w:+d} ok")
        if twist_law(n) != twist_monomial(n, max_width):
            raise ChannelFitError(f"twist law disagrees with the oracle at n={n}")
        if loop_law(n) != loop_value(n, max_width):
            raise ChannelFitError(f"loop law disagrees with the oracle at n={n}")
    return replace(law, validation_range=n1, validated=True), report


_DEFAULT_LAW: ChannelLaw | None = None


def default_law() -> ChannelLaw:
    """Fit and validate once per process with the default ranges."""
    global _DEFAULT_LAW
    if _DEFAULT_LAW is None:
        law = channel_fit()
        _DEFAULT_LAW, _ = channel_validate(law)
    return _DEFAULT_LAW


def torus2_bracket(law: ChannelLaw, n: int, w: int, max_color: int = DEFAULT_MAX_COLOR) -> LaurentPoly:
    """0-framed colored bracket of the closure of sigma_1^w.

    For w = 0 the closure is a 2-component unlink and the value is Delta_n^2.
    """
    if not law.validated:
        raise ChannelFitError("channel law has not been validated")
    if n > max_color:
        raise ValueError(f"color {n} beyond the configured maximum {max_color}")
    if n == 0:
        return LaurentPoly.const(1)
    total = sum((lam ** w * d for _, d, lam in law.table(n)), LaurentPoly())
    if w == 0:
        return total
    return total * twist_law(n) ** (-w)


def knot_exponent(K: KnotPresentation) -> int | None:
    """w if ``K`` is the trace closure of sigma_1^w (w odd), else None."""
    if not K.is_two_strand_torus() or len(K.braid) % 2 == 0:
        return None
    return sum(K.braid)
