"""Kauffman bracket evaluation by a sweep over planar line matchings.

The sweep keeps a map from line matchings of the current slice to packed
Laurent polynomials (see ``kernels._sweep_py``). Projectors are expanded
over TL diagrams with coefficients cleared to a common denominator; the
final value is divided exactly by that denominator once per projector.
"""

from __future__ import annotations

from functools import lru_cache
from math import lcm

from sympy import Poly, QQ, symbols

from .diagram import (Cap, Cross, Cup, KnotPresentation, Proj, SliceDiagram, TLGen,
                      builtin, colored_diagram)
from .kernels import kernel as _default_kernel
from .series import LOOP, LaurentPoly
from .tl import A_QA, LOOP_QA, TLVector, projector, to_qa

__all__ = [
    "CapacityError",
    "DEFAULT_MAX_WIDTH",
    "tl_apply",
    "bracket",
    "bracket_by_smoothing",
    "colored_bracket",
    "loop_value",
    "twist_monomial",
    "loop_law",
    "twist_law",
]

DEFAULT_MAX_WIDTH = 20
SMOOTHING_LIMIT = 16


class CapacityError(RuntimeError):
    """The diagram needs a wider sweep than allowed."""

    def __init__(self, width: int, limit: int, what: str = "sweep"):
        super().__init__(f"{what} needs width {width}, capacity is {limit}")
        self.width = width
        self.limit = limit


# ---------------------------------------------------------------- reference

def tl_apply(state: TLVector, event) -> TLVector:
    """Apply one event to a line-state vector.

    Coefficients are LaurentPoly, or Q(A) once a projector has been applied.
    Slow and direct; the packed sweep is checked against it.
    """
    m = state.m
    out: dict = {}
    laurent = isinstance(state.loop, LaurentPoly)
    loop = state.loop

    def mono(e):
        return LaurentPoly.monomial(e) if laurent else A_QA**e

    def acc(key, c):
        out[key] = out[key] + c if key in out else c

    if isinstance(event, Cup):
        if not 0 <= event.i <= m:
            raise ValueError(f"cup at {event.i} outside width {m}")
        for key, c in state.terms.items():
            t = [q + 2 if q >= event.i else q for q in key]
            acc(bytes(t[:event.i] + [event.i + 1, event.i] + t[event.i:]), c)
        return TLVector(out, m + 2, loop)
    i = event.i
    if isinstance(event, Proj):
        if i < 0 or i + event.n > m:
            raise ValueError(f"projector at {i}..{i + event.n - 1} outside width {m}")
        return _apply_proj_reference(state, i, event.n)
    if not 0 <= i < m - 1:
        raise ValueError(f"event at {i} outside width {m}")
    for key, c in state.terms.items():
        a, b = key[i], key[i + 1]
        paired = a == i + 1
        joined = bytearray(key)
        if not paired:
            joined[a], joined[b] = b, a
        if isinstance(event, Cap):
            del joined[i:i + 2]
            nk = bytes(q - 2 if q > i + 1 else q for q in joined)
            acc(nk, c * loop if paired else c)
            continue
        joined[i], joined[i + 1] = i + 1, i
        if isinstance(event, TLGen):
            acc(bytes(joined), c * loop if paired else c)
        elif isinstance(event, Cross):
            s = event.sign
            acc(key, c * mono(s))
            e_term = c * mono(-s)
            acc(bytes(joined), e_term * loop if paired else e_term)
        else:
            raise TypeError(f"unknown event {event!r}")
    return TLVector(out, m - 2 if isinstance(event, Cap) else m, loop)


def _apply_proj_reference(state: TLVector, p: int, n: int) -> TLVector:
    f = projector(n)
    out: dict = {}
    for key, c in state.terms.items():
        c = to_qa(c) if isinstance(c, LaurentPoly) else c
        pattern = _block_pattern(key, p, n)
        for x, fx in f.terms.items():
            route, links, loops = _route(x, pattern, n)
            nk = _rewire(key, p, route, links)
            val = c * fx * LOOP_QA**loops
            out[nk] = out[nk] + val if nk in out else val
    return TLVector(out, state.m, LOOP_QA)


# ---------------------------------------------------------------- projector blocks

def _block_pattern(key: bytes, p: int, n: int) -> tuple[int, ...]:
    return tuple(key[p + j] - p if p <= key[p + j] < p + n else -1 for j in range(n))


@lru_cache(maxsize=None)
def _route(x: bytes, pattern: tuple[int, ...], n: int) -> tuple[tuple, tuple, int]:
    """Stack TL diagram ``x`` on a block of a line state.

    Returns ``(route, links, loops)``. ``route[j]`` is ``("top", j')`` or
    ``("out", b)`` for new block point j (``b``: connect to the old outside
    partner of block point b); ``links`` pairs old outside partners that
    become joined to each other; ``loops`` counts closed loops.
    """
    seen = [False] * n
    route = []
    for j in range(n):
        cur = x[n + j]
        while cur < n:
            seen[cur] = True
            st = pattern[cur]
            if st < 0:
                route.append(("out", cur))
                break
            seen[st] = True
            cur = x[st]
        else:
            route.append(("top", cur - n))
    links = []
    for b in range(n):
        if seen[b] or pattern[b] >= 0:
            continue
        seen[b] = True
        cur = x[b]
        while True:
            seen[cur] = True
            st = pattern[cur]
            if st < 0:
                links.append((b, cur))
                break
            seen[st] = True
            cur = x[st]
    loops = 0
    for b in range(n):
        if seen[b]:
            continue
        loops += 1
        cur = b
        while not seen[cur]:
            seen[cur] = True
            nxt = pattern[cur]
            seen[nxt] = True
            cur = x[nxt]
    return tuple(route), tuple(links), loops


def _rewire(key: bytes, p: int, route, links) -> bytes:
    ba = bytearray(key)
    for j, (kind, t) in enumerate(route):
        if kind == "top":
            ba[p + j] = p + t
        else:
            q = key[p + t]
            ba[p + j] = q
            ba[q] = p + j
    for b1, b2 in links:
        q1, q2 = key[p + b1], key[p + b2]
        ba[q1] = q2
        ba[q2] = q1
    return bytes(ba)


_t = symbols("A")


def _qq_poly_to_laurent(poly: Poly, shift: int) -> LaurentPoly:
    return LaurentPoly({e[0] + shift: int(c) for e, c in poly.terms()})


@lru_cache(maxsize=None)
def projector_numerators(n: int) -> tuple[dict[bytes, LaurentPoly], LaurentPoly]:
    """Integer Laurent numerators F_x and a denominator D with f_n = sum F_x/D * x."""
    f = projector(n)
    nums, dens = {}, []
    for x, c in f.terms.items():
        num, den = c.numer, c.denom
        nums[x] = Poly(num.as_expr(), _t, domain=QQ)
        dens.append(Poly(den.as_expr(), _t, domain=QQ))
    common = dens[0]
    for d in dens[1:]:
        common = common.lcm(d)
    out: dict[bytes, Poly] = {}
    for x, c in f.terms.items():
        q, r = common.div(Poly(c.denom.as_expr(), _t, domain=QQ))
        assert r.is_zero
        out[x] = nums[x] * q
    scale = 1
    for pol in list(out.values()) + [common]:
        for c in pol.coeffs():
            scale = lcm(scale, int(c.q))
    laurent = {x: _qq_poly_to_laurent(pol * scale, 0) for x, pol in out.items()}
    den = _qq_poly_to_laurent(common * scale, 0)
    return laurent, den


# ---------------------------------------------------------------- packing

def _pack(poly: LaurentPoly, k: int, shift: int) -> int:
    v = 0
    for e, c in poly.items():
        if e + shift < 0:
            raise ArithmeticError("packing below the offset")
        v += int(c) << (k * (e + shift))
    return v


def _unpack(v: int, k: int, shift: int) -> LaurentPoly:
    out = {}
    e = 0
    half = 1 << (k - 1)
    mask = (1 << k) - 1
    while v:
        d = v & mask
        if d >= half:
            d -= 1 << k
        if d:
            out[e - shift] = d
        v = (v - d) >> k
        e += 1
    return LaurentPoly(out)


class _ProjectorBlock:
    """Packed action of f_n on a block of a line state."""

    def __init__(self, n: int, k: int):
        nums, den = projector_numerators(n)
        self.n = n
        self.den = den
        lo = min(p.min_exp for p in nums.values())
        self.shift = -lo + 2 * (n // 2)
        self.nums = nums
        self.k = k
        self.table: dict[tuple, list] = {}

    def entries(self, pattern):
        hit = self.table.get(pattern)
        if hit is not None:
            return hit
        acc: dict[tuple, LaurentPoly] = {}
        for x, num in self.nums.items():
            route, links, loops = _route(x, pattern, self.n)
            val = num * LOOP**loops if loops else num
            r = (route, links)
            acc[r] = acc[r] + val if r in acc else val
        hit = [(r, _pack(val, self.k, self.shift)) for r, val in acc.items() if val]
        self.table[pattern] = hit
        return hit

    def apply(self, states: dict, p: int) -> dict:
        out: dict = {}
        n = self.n
        for key, v in states.items():
            for (route, links), packed in self.entries(_block_pattern(key, p, n)):
                nk = _rewire(key, p, route, links)
                w = v * packed
                old = out.get(nk)
                out[nk] = w if old is None else old + w
        return {key: v for key, v in out.items() if v}


_NEED = {Cross: 3, Cap: 2, TLGen: 2}
# events between offset adjustments
_BATCH = 8


def _coefficient_bound(d: SliceDiagram) -> int:
    """Bound on the l1 norm of the bracket times every projector denominator.

    Only the final value has to fit the packing: intermediate packed values
    are exact evaluations at A = 2^k whatever their coefficient sizes.
    """
    l1 = 1
    for ev in d.events:
        if isinstance(ev, (Cross, Cap, TLGen)):
            l1 *= 2
        elif isinstance(ev, Proj):
            nums, _ = projector_numerators(ev.n)
            l1 *= sum(int(p.l1()) for p in nums.values()) << (ev.n // 2)
    return l1


def _retune(states: dict, k: int, need: int) -> tuple[dict, int]:
    """Shift all values so the lowest nonzero slot is exactly ``need``.

    Returns the new states and the change in the packing offset.
    """
    low = min((v & -v).bit_length() - 1 for v in states.values()) // k
    delta = low - need
    if delta > 0:
        return {key: v >> (delta * k) for key, v in states.items()}, -delta
    if delta < 0:
        return {key: v << (-delta * k) for key, v in states.items()}, -delta
    return states, 0


def bracket(d: SliceDiagram, max_width: int | None = DEFAULT_MAX_WIDTH, kernel=None) -> LaurentPoly:
    """Kauffman bracket of a closed sliced diagram (empty diagram = 1)."""
    if not d.is_closed:
        raise ValueError("bracket needs a closed diagram")
    if max_width is not None and d.max_width > max_width:
        raise CapacityError(d.max_width, max_width)
    kern = kernel or _default_kernel
    k = max(_coefficient_bound(d).bit_length() + 2, 4)
    blocks: dict[int, _ProjectorBlock] = {}
    # the packed value of a state is p(2^k) for p = A^shift * (true value)
    shift = 0
    states = {b"": 1}
    dens = []
    events = d.events
    for idx, ev in enumerate(events):
        if idx % _BATCH == 0:
            need = sum(_NEED.get(type(e), 0) for e in events[idx:idx + _BATCH])
            states, moved = _retune(states, k, need)
            shift += moved
        if isinstance(ev, Cup):
            states = kern.cup(states, ev.i)
        elif isinstance(ev, Cap):
            states = kern.cap(states, ev.i, k)
        elif isinstance(ev, Cross):
            states = kern.cross(states, ev.i, ev.sign, k)
        elif isinstance(ev, TLGen):
            states = kern.tlgen(states, ev.i, k)
        elif isinstance(ev, Proj):
            blk = blocks.get(ev.n)
            if blk is None:
                blk = blocks[ev.n] = _ProjectorBlock(ev.n, k)
            states = blk.apply(states, ev.i)
            shift += blk.shift
            dens.append(blk.den)
        if not states:
            return LaurentPoly()
    value = _unpack(states.get(b"", 0), k, shift)
    for den in dens:
        value = value.exact_div(den)
    return value


# ---------------------------------------------------------------- micro-oracle

def bracket_by_smoothing(d: SliceDiagram) -> LaurentPoly:
    """Sum over all 2^c smoothings with a union-find loop count."""
    if not d.is_closed:
        raise ValueError("bracket needs a closed diagram")
    crossings = [s for s, ev in enumerate(d.events) if isinstance(ev, Cross)]
    if len(crossings) > SMOOTHING_LIMIT:
        raise CapacityError(len(crossings), SMOOTHING_LIMIT, "state sum over crossings")
    if any(isinstance(ev, (TLGen, Proj)) for ev in d.events):
        raise ValueError("smoothing oracle handles cups, caps and crossings only")
    ws = d.widths
    ids: dict[tuple[int, int], int] = {}
    for s, w in enumerate(ws):
        for p in range(w):
            ids[(s, p)] = len(ids)
    fixed: list[tuple[int, int]] = []
    for s, ev in enumerate(d.events):
        w = ws[s]
        if isinstance(ev, Cup):
            fixed.append((ids[(s + 1, ev.i)], ids[(s + 1, ev.i + 1)]))
            for p in range(w):
                fixed.append((ids[(s, p)], ids[(s + 1, p + 2 if p >= ev.i else p)]))
        elif isinstance(ev, Cap):
            fixed.append((ids[(s, ev.i)], ids[(s, ev.i + 1)]))
            for p in range(w):
                if p in (ev.i, ev.i + 1):
                    continue
                fixed.append((ids[(s, p)], ids[(s + 1, p - 2 if p > ev.i else p)]))
        else:
            for p in range(w):
                if p not in (ev.i, ev.i + 1):
                    fixed.append((ids[(s, p)], ids[(s + 1, p)]))
    total: dict[int, int] = {}
    nodes = len(ids)
    for mask in range(1 << len(crossings)):
        parent = list(range(nodes))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for a, b in fixed:
            union(a, b)
        exp = 0
        for bit, s in enumerate(crossings):
            ev = d.events[s]
            i = ev.i
            vertical = not (mask >> bit) & 1
            if vertical:
                union(ids[(s, i)], ids[(s + 1, i)])
                union(ids[(s, i + 1)], ids[(s + 1, i + 1)])
                exp += ev.sign
            else:
                union(ids[(s, i)], ids[(s, i + 1)])
                union(ids[(s + 1, i)], ids[(s + 1, i + 1)])
                exp -= ev.sign
        loops = len({find(a) for a in range(nodes)})
        # each loop contributes d; the empty diagram counts as one state of value 1
        for e, c in (LOOP**loops).items():
            total[e + exp] = total.get(e + exp, 0) + c
    return LaurentPoly(total)


# ---------------------------------------------------------------- colored values

@lru_cache(maxsize=None)
def loop_value(n: int, max_width: int | None = DEFAULT_MAX_WIDTH) -> LaurentPoly:
    """Delta_n: the f_n-colored unknot."""
    if n < 0:
        raise ValueError("color must be >= 0")
    if n == 0:
        return LaurentPoly.const(1)
    return bracket(colored_diagram(builtin("unknot").diagram, n), max_width)


_CURL = SliceDiagram([Cup(0), Cross(0, -1), Cap(0)])


@lru_cache(maxsize=None)
def twist_monomial(n: int, max_width: int | None = DEFAULT_MAX_WIDTH) -> LaurentPoly:
    """mu_n: the factor of one positive curl on an f_n-colored strand."""
    if n < 0:
        raise ValueError("color must be >= 0")
    if n == 0:
        return LaurentPoly.const(1)
    curled = bracket(colored_diagram(_CURL, n), max_width)
    mu = curled.exact_div(loop_value(n, max_width))
    if not mu.is_monomial():
        raise ArithmeticError(f"twist factor at n={n} is not a monomial: {mu}")
    return mu


def loop_law(n: int) -> LaurentPoly:
    """Delta_n from Delta_{n+1} = Delta_1 Delta_n - Delta_{n-1}."""
    return _loop_law_list(n)[n]


@lru_cache(maxsize=None)
def _loop_law_list(n: int) -> tuple:
    vals = [LaurentPoly.const(1), LOOP]
    while len(vals) <= n:
        vals.append(LOOP * vals[-1] - vals[-2])
    return tuple(vals)


def twist_law(n: int) -> LaurentPoly:
    """(-1)^n A^(n^2+2n)."""
    return LaurentPoly.monomial(n * n + 2 * n, -1 if n % 2 else 1)


@lru_cache(maxsize=None)
def colored_bracket(K: KnotPresentation, n: int, max_width: int | None = DEFAULT_MAX_WIDTH,
                    placement: str = "first-cup", copies: int = 1) -> LaurentPoly:
    """0-framed bracket of ``K`` colored by f_n; J(0) = 1."""
    if n < 0:
        raise ValueError("color must be >= 0")
    if n == 0:
        return LaurentPoly.const(1)
    d = colored_diagram(K.diagram, n, placement, copies)
    if max_width is not None and d.max_width > max_width:
        raise CapacityError(d.max_width, max_width, f"{K.id} at color {n}")
    raw = bracket(d, max_width)
    return raw * twist_monomial(n) ** (-K.writhe)
