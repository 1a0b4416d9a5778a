"""Colored-bracket cache: one text record per (knot, color).

Record format::

    knot=<id> n=<color> framing=0 poly=<exp>:<num>/<den>,<exp>:<num>/<den>,...

with exponents of A increasing. The zero polynomial is written ``poly=``.
"""

from __future__ import annotations

import os
import threading
from fractions import Fraction
from pathlib import Path

from .series import LaurentPoly

__all__ = ["BracketCache", "format_record", "parse_record", "default_cache_path", "CACHE_ENV"]

CACHE_ENV = "SKEINZ_CACHE_DIR"
CACHE_FILE = "brackets.txt"


def default_cache_path() -> Path | None:
    d = os.environ.get(CACHE_ENV)
    return Path(d) / CACHE_FILE if d else None


def format_record(knot: str, n: int, poly: LaurentPoly) -> str:
    if any(ch.isspace() for ch in knot):
        raise ValueError("knot ids in the cache may not contain whitespace")
    parts = []
    for e in sorted(poly.terms):
        c = Fraction(poly.terms[e])
        parts.append(f"{e}:{c.numerator}/{c.denominator}")
    return f"knot={knot} n={n} framing=0 poly={','.join(parts)}"


def parse_record(line: str) -> tuple[str, int, LaurentPoly]:
    fields = {}
    for tok in line.split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise ValueError(f"malformed cache token {tok!r}")
        fields[key] = val
    if set(fields) != {"knot", "n", "framing", "poly"} or fields["framing"] != "0":
        raise ValueError(f"malformed cache record {line!r}")
    terms = {}
    last = None
    for item in filter(None, fields["poly"].split(",")):
        e, _, q = item.partition(":")
        num, _, den = q.partition("/")
        exp = int(e)
        if last is not None and exp <= last:
            raise ValueError("cache exponents must increase")
        last = exp
        terms[exp] = Fraction(int(num), int(den))
    return fields["knot"], int(fields["n"]), LaurentPoly(terms)


class BracketCache:
    """In-memory map backed by an append-only record file (optional)."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self._data: dict[tuple[str, int], LaurentPoly] = {}
        self._lock = threading.Lock()
        if self.path is not None and self.path.exists():
            for line in self.path.read_text().splitlines():
                if line.strip():
                    knot, n, poly = parse_record(line)
                    self._data[(knot, n)] = poly

    def get(self, knot: str, n: int) -> LaurentPoly | None:
        return self._data.get((knot, n))

    def put(self, knot: str, n: int, poly: LaurentPoly) -> None:
        with self._lock:
            old = self._data.get((knot, n))
            if old is not None:
                if old != poly:
                    raise ValueError(f"conflicting cache values for {knot} n={n}")
                return
            self._data[(knot, n)] = poly
            if self.path is not None:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with self.path.open("a") as fh:
                    fh.write(format_record(knot, n, poly) + "\n")

    def __len__(self):
        return len(self._data)

    def keys(self):
        return sorted(self._data)
