"""Sliced planar diagrams: braid and plat closures, cabling, orientation.

A diagram is read bottom to top as a sequence of events acting on a row of
boundary points. Positions are 0-based. ``Cross(i, +1)`` is the braid
generator sigma_{i+1}: its bracket is ``A * id + A^-1 * e_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

__all__ = [
    "Cup",
    "Cap",
    "Cross",
    "TLGen",
    "Proj",
    "SliceDiagram",
    "KnotPresentation",
    "braid_closure",
    "plat_closure",
    "cable",
    "colored_diagram",
    "parse_braid_word",
    "BUILTIN_KNOTS",
    "builtin",
]


class Cup(NamedTuple):
    i: int


class Cap(NamedTuple):
    i: int


class Cross(NamedTuple):
    i: int
    sign: int


class TLGen(NamedTuple):
    i: int


class Proj(NamedTuple):
    i: int
    n: int


Event = Union[Cup, Cap, Cross, TLGen, Proj]


def _delta(ev: Event) -> int:
    if isinstance(ev, Cup):
        return 2
    if isinstance(ev, Cap):
        return -2
    return 0


@dataclass(frozen=True)
class SliceDiagram:
    events: tuple
    start_width: int = 0

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        w = self.start_width
        for k, ev in enumerate(self.events):
            if isinstance(ev, Cup):
                ok = 0 <= ev.i <= w
            elif isinstance(ev, (Cap, Cross, TLGen)):
                ok = 0 <= ev.i and ev.i + 1 < w
                if isinstance(ev, Cross) and ev.sign not in (1, -1):
                    raise ValueError(f"crossing sign must be +-1, got {ev.sign}")
            elif isinstance(ev, Proj):
                ok = ev.n >= 1 and 0 <= ev.i and ev.i + ev.n <= w
            else:
                raise TypeError(f"unknown event {ev!r}")
            if not ok:
                raise ValueError(f"event {k} {ev!r} out of range for width {w}")
            w += _delta(ev)

    @property
    def widths(self) -> list[int]:
        """Width before each event, plus the final width."""
        out = [self.start_width]
        for ev in self.events:
            out.append(out[-1] + _delta(ev))
        return out

    @property
    def max_width(self) -> int:
        return max(self.widths)

    @property
    def is_closed(self) -> bool:
        ws = self.widths
        return ws[0] == 0 and ws[-1] == 0

    @property
    def crossings(self) -> int:
        return sum(1 for ev in self.events if isinstance(ev, Cross))

    def mirror(self) -> "SliceDiagram":
        return SliceDiagram(
            [Cross(ev.i, -ev.sign) if isinstance(ev, Cross) else ev for ev in self.events],
            self.start_width,
        )

    def then(self, other: "SliceDiagram") -> "SliceDiagram":
        if self.widths[-1] != other.start_width:
            raise ValueError("widths do not match for stacking")
        return SliceDiagram(self.events + other.events, self.start_width)

    def beside(self, other: "SliceDiagram") -> "SliceDiagram":
        """Distant union of two closed diagrams (``other`` to the right)."""
        if not (self.is_closed and other.is_closed):
            raise ValueError("beside() needs closed diagrams")
        return SliceDiagram(self.events + other.events)

    # orientation ----------------------------------------------------------

    def _strand_edges(self):
        """Edges between slice nodes ``(s, p)``; crossing edges carry a tag.

        Crossings and projectors are passed straight through, so the result
        describes the underlying curves of the diagram.
        """
        edges: list[tuple[tuple[int, int], tuple[int, int], object]] = []
        ws = self.widths
        for s, ev in enumerate(self.events):
            w = ws[s]
            if isinstance(ev, Cup):
                for p in range(w):
                    edges.append(((s, p), (s + 1, p if p < ev.i else p + 2), None))
                edges.append(((s + 1, ev.i), (s + 1, ev.i + 1), None))
            elif isinstance(ev, (Cap, TLGen)):
                edges.append(((s, ev.i), (s, ev.i + 1), None))
                if isinstance(ev, TLGen):
                    edges.append(((s + 1, ev.i), (s + 1, ev.i + 1), None))
                for p in range(w):
                    if p not in (ev.i, ev.i + 1):
                        q = p if isinstance(ev, TLGen) or p < ev.i else p - 2
                        edges.append(((s, p), (s + 1, q), None))
            elif isinstance(ev, Cross):
                for p in range(w):
                    if p == ev.i:
                        edges.append(((s, p), (s + 1, p + 1), (s, 0)))
                    elif p == ev.i + 1:
                        edges.append(((s, p), (s + 1, p - 1), (s, 1)))
                    else:
                        edges.append(((s, p), (s + 1, p), None))
            else:
                for p in range(w):
                    edges.append(((s, p), (s + 1, p), None))
        return edges

    def _oriented_components(self):
        """Each component as a list of traversed edges ``(from, to, tag)``."""
        if not self.is_closed:
            raise ValueError("components need a closed diagram")
        edges = self._strand_edges()
        inc: dict[tuple[int, int], list[int]] = {}
        for k, (a, b, _) in enumerate(edges):
            inc.setdefault(a, []).append(k)
            inc.setdefault(b, []).append(k)
        used = [False] * len(edges)
        comps = []
        for k0 in range(len(edges)):
            if used[k0]:
                continue
            a, b, tag = edges[k0]
            walk = [(a, b, tag)]
            used[k0] = True
            start, cur, last = a, b, k0
            while cur != start:
                nxt = next(k for k in inc[cur] if k != last and not used[k])
                used[nxt] = True
                x, y, t = edges[nxt]
                step = (x, y, t) if x == cur else (y, x, t)
                walk.append(step)
                last, cur = nxt, step[1]
            comps.append(walk)
        return comps

    def components(self) -> list[set[tuple[int, int]]]:
        """Node sets of the closed components."""
        return [{e[0] for e in walk} for walk in self._oriented_components()]

    def writhe(self) -> int:
        """Signed crossing count with every component oriented."""
        up: dict[tuple[int, int], bool] = {}
        for walk in self._oriented_components():
            for a, b, tag in walk:
                if tag is not None:
                    up[tag] = a[0] < b[0]
        total = 0
        for s, ev in enumerate(self.events):
            if isinstance(ev, Cross):
                total += ev.sign if up[(s, 0)] == up[(s, 1)] else -ev.sign
        return total


def braid_closure(word: Sequence[int], strands: int | None = None) -> SliceDiagram:
    """Trace closure of a braid word; letter ``+-g`` is sigma_g^{+-1} (1-based)."""
    if any(g == 0 for g in word):
        raise ValueError("braid letters must be nonzero")
    b = strands if strands is not None else (max((abs(g) for g in word), default=0) + 1)
    if any(abs(g) >= b for g in word):
        raise ValueError(f"letter out of range for {b} strands")
    events: list = [Cup(k) for k in range(b)]
    events += [Cross(abs(g) - 1, 1 if g > 0 else -1) for g in word]
    events += [Cap(k) for k in range(b - 1, -1, -1)]
    return SliceDiagram(events)


def plat_closure(word: Sequence[int], strands: int) -> SliceDiagram:
    """Plat closure on an even number of strands: caps (0,1),(2,3),... at both ends."""
    if strands % 2:
        raise ValueError("plat closures need an even number of strands")
    if any(g == 0 or abs(g) >= strands for g in word):
        raise ValueError("braid letter out of range")
    events: list = [Cup(2 * k) for k in range(strands // 2)]
    events += [Cross(abs(g) - 1, 1 if g > 0 else -1) for g in word]
    events += [Cap(0) for _ in range(strands // 2)]
    return SliceDiagram(events)


def _cable_event(ev: Event, j: int) -> list:
    if isinstance(ev, Cup):
        return [Cup(j * ev.i + r) for r in range(j)]
    if isinstance(ev, Cap):
        return [Cap(j * ev.i + j - 1 - r) for r in range(j)]
    if isinstance(ev, Cross):
        base = j * ev.i
        return [Cross(base + (j - 1) - a + b, ev.sign) for a in range(j) for b in range(j)]
    raise ValueError(f"cannot cable a diagram containing {type(ev).__name__} events")


def cable(d: SliceDiagram, j: int) -> SliceDiagram:
    """Blackboard-parallel ``j``-cable of every strand."""
    if j < 1:
        raise ValueError("cable index must be >= 1")
    events: list = []
    for ev in d.events:
        events += _cable_event(ev, j)
    return SliceDiagram(events, d.start_width * j)


def colored_diagram(d: SliceDiagram, n: int, placement: str = "first-cup",
                    copies: int = 1) -> SliceDiagram:
    """``n``-cable of ``d`` with one projector f_n on each component.

    ``placement`` picks where the projector sits on each component:
    ``"first-cup"`` right after the component's first cup (cheapest for a
    sweep), ``"max-width"`` at the first slice of maximal width. ``copies``
    inserts that many consecutive projectors (idempotence check).
    """
    if n < 1:
        raise ValueError("color must be >= 1")
    comps = d.components()
    # For each component pick a slice boundary s and a position p on it.
    chosen: dict[int, list[int]] = {}
    ws = d.widths
    if placement == "first-cup":
        for cyc in comps:
            nodes = set(cyc)
            for s, ev in enumerate(d.events):
                if isinstance(ev, Cup) and (s + 1, ev.i) in nodes:
                    chosen.setdefault(s + 1, []).append(ev.i)
                    break
    elif placement == "max-width":
        s_max = ws.index(max(ws))
        for cyc in comps:
            pts = sorted(p for (s, p) in cyc if s == s_max)
            if not pts:
                raise ValueError("component does not meet the widest slice")
            chosen.setdefault(s_max, []).append(pts[0])
    else:
        raise ValueError(f"unknown placement {placement!r}")
    events: list = []
    for s, ev in enumerate(d.events):
        if s in chosen:
            for p in chosen[s]:
                events += [Proj(n * p, n)] * copies
        events += _cable_event(ev, n)
    if len(d.events) in chosen:
        raise ValueError("projector slot after the last event")
    return SliceDiagram(events, d.start_width * n)


def parse_braid_word(text: str) -> tuple[int, ...]:
    """Parse ``"1 -2 1"`` (spaces or commas) into a braid word."""
    parts = text.replace(",", " ").split()
    if not parts:
        raise ValueError("empty braid word")
    try:
        word = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"bad braid word {text!r}") from exc
    if any(g == 0 for g in word):
        raise ValueError("braid letters must be nonzero")
    return word


@dataclass(frozen=True)
class KnotPresentation:
    id: str
    diagram: SliceDiagram
    kind: str
    writhe: int
    braid: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in ("trace", "plat"):
            raise ValueError(f"unknown closure kind {self.kind!r}")
        actual = self.diagram.writhe()
        if actual != self.writhe:
            raise ValueError(f"{self.id}: declared writhe {self.writhe}, diagram has {actual}")

    @classmethod
    def from_braid(cls, word: Sequence[int], id: str | None = None,
                   strands: int | None = None) -> "KnotPresentation":
        d = braid_closure(word, strands)
        kid = id or "braid:" + ",".join(str(g) for g in word)
        return cls(kid, d, "trace", d.writhe(), tuple(word))

    @classmethod
    def from_plat(cls, word: Sequence[int], strands: int, id: str) -> "KnotPresentation":
        d = plat_closure(word, strands)
        return cls(id, d, "plat", d.writhe(), tuple(word))

    @property
    def num_components(self) -> int:
        return len(self.diagram.components())

    def mirror(self, id: str | None = None) -> "KnotPresentation":
        return KnotPresentation(id or self.id + "-mirror", self.diagram.mirror(), self.kind,
                                -self.writhe, tuple(-g for g in self.braid))

    def is_two_strand_torus(self) -> bool:
        """Trace closure of sigma_1^w on two strands."""
        return (self.kind == "trace" and self.braid and all(abs(g) == 1 for g in self.braid)
                and len(set(self.braid)) == 1 and self.diagram.max_width == 4)


def _builtins() -> dict[str, KnotPresentation]:
    return {
        "unknot": KnotPresentation("unknot", SliceDiagram([Cup(0), Cap(0)]), "plat", 0),
        "trefoil": KnotPresentation.from_braid((1, 1, 1), "trefoil"),
        "trefoil-mirror": KnotPresentation.from_braid((-1, -1, -1), "trefoil-mirror"),
        "fig8": KnotPresentation.from_plat((2, -1, 2, 2), 4, "fig8"),
        "fig8-braid": KnotPresentation.from_braid((1, -2, 1, -2), "fig8-braid"),
    }


BUILTIN_KNOTS = _builtins()


def builtin(name: str) -> KnotPresentation:
    try:
        return BUILTIN_KNOTS[name]
    except KeyError:
        raise ValueError(f"unknown knot {name!r}; choose from {sorted(BUILTIN_KNOTS)}") from None
