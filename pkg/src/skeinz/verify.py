"""Check suites behind ``skeinz verify``.

Each check returns ``(name, ok, detail)``. Checks are exact; randomized
ones use a fixed seed so reports are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb
from typing import Callable, Iterator

from .channels import channel_fit, channel_validate
from .diagram import Cap, Cross, Cup, SliceDiagram, braid_closure, builtin
from .oracle import bracket, bracket_by_smoothing, loop_law, loop_value, twist_monomial
from .pipeline import (ResidueError, SurgeryInput, casson, connected_sum, mirror_check, stabilize,
                       two_ways_check)
from .reference import reference_row
from .series import LaurentPoly, expand_q4
from .tl import LOOP_QA, QA, TLVector, jw_solve, jw_wenzl, qa_mirror, tl_generator

__all__ = ["Check", "paper_table_checks", "property_checks", "run_suite",
           "random_braid", "add_curl", "finite_type_identity"]

Check = tuple[str, bool, str]

TABLE_ORDER = 14
SEED = 20240101


def _row_check(name: str, eps: int, engine: str, order: int, min_order: int) -> Check:
    label = f"row {name} eps={eps:+d} ({engine})"
    try:
        z = stabilize(SurgeryInput(builtin(name), eps, order, None, engine))
    except ResidueError as exc:
        return label, False, str(exc)
    want = reference_row(name, eps)
    m = z.certified_order
    got = [int(a) if a.denominator == 1 else a for a in z.coeffs[:m]]
    ok = m >= min_order and got == list(want[:m])
    return label, ok, f"certified {m}: {got}"


def paper_table_checks() -> Iterator[Check]:
    for name, eps in (("trefoil", 1), ("trefoil", -1), ("trefoil-mirror", -1), ("trefoil-mirror", 1)):
        yield _row_check(name, eps, "channel", TABLE_ORDER, TABLE_ORDER)
    for eps in (1, -1):
        yield _row_check("fig8", eps, "oracle", TABLE_ORDER, 2)
    ok, order = two_ways_check(TABLE_ORDER)
    yield "two ways: fig8 rows equal trefoil rows", ok, f"to order {order}"
    z = stabilize(SurgeryInput(builtin("trefoil"), 1, TABLE_ORDER, None, "channel"))
    yield "casson(Poincare) = 1", casson(z) == 1, str(casson(z))
    z8 = stabilize(SurgeryInput(builtin("fig8"), 1, 3, None, "oracle"))
    yield "casson(fig8, +1) = -1", casson(z8) == -1, str(casson(z8))


# ---------------------------------------------------------------- random diagrams

def random_braid(rng: random.Random, strands: int, length: int) -> list[int]:
    return [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]


def add_curl(d: SliceDiagram, slot: int, pos: int, sign: int) -> SliceDiagram:
    """Insert a kink on the strand at ``pos`` before event ``slot``."""
    ev = list(d.events)
    kink = [Cup(pos + 1), Cross(pos, sign), Cap(pos + 1)]
    return SliceDiagram(ev[:slot] + kink + ev[slot:], d.start_width)


def _reidemeister_checks(rng: random.Random, trials: int) -> Iterator[Check]:
    bad = []
    for t in range(trials):
        b = rng.randint(2, 4)
        word = random_braid(rng, b, rng.randint(1, 9))
        base = braid_closure(word, b)
        ref = bracket(base)
        if bracket_by_smoothing(base) != ref:
            bad.append(f"sweep vs smoothing {word}")
        # R2
        i = rng.randint(1, b - 1)
        s = rng.choice((1, -1))
        k = rng.randint(0, len(word))
        if bracket(braid_closure(word[:k] + [s * i, -s * i] + word[k:], b)) != ref:
            bad.append(f"R2 {word}")
        # R3 via the braid relations, mixed signs allowed
        if b >= 3:
            i = rng.randint(1, b - 2)
            a, c = rng.choice((1, -1)), rng.choice((1, -1))
            if rng.random() < 0.5:
                left, right = [a * i, a * (i + 1), a * i], [a * (i + 1), a * i, a * (i + 1)]
            else:
                left, right = [a * i, c * (i + 1), -a * i], [-a * (i + 1), c * i, a * (i + 1)]
            k = rng.randint(0, len(word))
            w1 = word[:k] + left + word[k:]
            w2 = word[:k] + right + word[k:]
            if bracket(braid_closure(w1, b)) != bracket(braid_closure(w2, b)):
                bad.append(f"R3 {w1} vs {w2}")
        # R1
        slot = rng.randint(b, b + len(word))
        width = base.widths[slot]
        pos = rng.randint(0, width - 1)
        sign = rng.choice((1, -1))
        curled = add_curl(base, slot, pos, sign)
        dw = curled.writhe() - base.writhe()
        want = ref * LaurentPoly.monomial(3 * dw, -1 if dw % 2 else 1)
        if abs(dw) != 1 or bracket(curled) != want:
            bad.append(f"R1 {word} at {slot},{pos}")
    yield f"Reidemeister I/II/III on {trials} random diagrams", not bad, "; ".join(bad[:3])


def _jw_checks(nmax: int = 6) -> Iterator[Check]:
    bad = []
    for n in range(1, nmax + 1):
        f = jw_solve(n)
        if jw_wenzl(n) != f:
            bad.append(f"wenzl != solve at n={n}")
        if f * f != f:
            bad.append(f"f_{n} not idempotent")
        for i in range(n - 1):
            e = TLVector.basis(tl_generator(n, i), QA.one, LOOP_QA)
            if not (e * f).is_zero() or not (f * e).is_zero():
                bad.append(f"e_{i} f_{n} != 0")
        if f.map_coeffs(qa_mirror) != f:
            bad.append(f"f_{n} not mirror symmetric")
    yield f"Jones-Wenzl projectors n <= {nmax}", not bad, "; ".join(bad)


def _loop_checks(nmax: int = 5) -> Iterator[Check]:
    vals = [loop_value(n) for n in range(nmax + 1)]
    ok = all(vals[n + 1] == vals[1] * vals[n] - vals[n - 1] for n in range(1, nmax))
    ok = ok and all(vals[n] == loop_law(n) for n in range(nmax + 1))
    yield f"Delta recursion n <= {nmax}", ok, ""
    mus = [twist_monomial(n) for n in range(nmax + 1)]
    yield f"mu_n monomial n <= {nmax}", all(m.is_monomial() for m in mus), str(mus[-1])


def _channel_checks() -> Iterator[Check]:
    law = channel_fit()
    law, report = channel_validate(law)
    yield "channel law validated n <= 5, |w| <= 3", law.validated, law.describe()
    ok = all(sum((d for _, d, _ in law.table(n)), LaurentPoly()) == loop_law(n) ** 2
             for n in range(0, 49))
    yield "channel completeness sum Delta_c = Delta_n^2, n <= 48", ok, ""


def finite_type_identity(z, n: int) -> bool:
    """(1 - z)^n == 6^n (A^4-1)^n mod h^(n+1), with powers of z by connected sums."""
    N = n + 1
    powers = [None, z]
    for _ in range(2, n + 1):
        powers.append(connected_sum(powers[-1], z))
    total = [Fraction(0)] * N
    total[0] = Fraction(1)  # the k = 0 term
    for k in range(1, n + 1):
        c = comb(n, k) * (-1) ** k
        for m in range(N):
            total[m] += c * powers[k].h_series[m]
    target = expand_q4([0] * n + [6**n], N)
    return total == target


def property_checks() -> Iterator[Check]:
    rng = random.Random(SEED)
    yield from _reidemeister_checks(rng, 25)
    yield from _jw_checks()
    yield from _loop_checks()
    yield from _channel_checks()
    for eps in (1, -1):
        try:
            z = stabilize(SurgeryInput(builtin("unknot"), eps, 14))
            ok = list(z.coeffs) == [1] + [0] * 13 and z.certified_order == 14
        except ResidueError:
            ok = False
        yield f"z(unknot, {eps:+d}) = 1 mod h^14", ok, ""
    yield ("mirror covariance trefoil", mirror_check(builtin("trefoil"), 1, 14, "channel"), "")
    yield ("mirror covariance trefoil-mirror",
           mirror_check(builtin("trefoil-mirror"), 1, 14, "channel"), "")
    yield ("mirror covariance fig8", mirror_check(builtin("fig8"), 1, 4, "oracle"), "")
    z = stabilize(SurgeryInput(builtin("trefoil"), 1, 14, None, "channel"))
    for n in (1, 2, 3):
        yield f"(1 - z(Poincare))^{n} = 6^{n} (A^4-1)^{n}", finite_type_identity(z, n), ""


SUITES: dict[str, Callable[[], Iterator[Check]]] = {
    "paper-table": paper_table_checks,
    "properties": property_checks,
}


def run_suite(name: str) -> Iterator[Check]:
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        try:
            yield from SUITES[n]()
        except Exception as exc:  # report, do not hide
            yield f"{n} suite aborted", False, f"{type(exc).__name__}: {exc}"
