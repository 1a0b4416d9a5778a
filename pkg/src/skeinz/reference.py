"""Published coefficient rows [1, a_1, ..., a_13] of z(M) in powers of A^4 - 1.

Keys are (knot, surgery sign) in this package's naming.
"""

from __future__ import annotations

from types import MappingProxyType

__all__ = ["REFERENCE_ROWS", "POINCARE", "reference_row"]

_ROWS = {
    # the Poincare homology sphere
    ("trefoil", 1): (
        1, -6, 45, -464, 6224, -102816, 2015237,
        -45679349, 1175123730, -33819053477,
        1076447743008, -37544249290614,
        1423851232935885, -58335380481272491,
    ),
    ("trefoil", -1): (
        1, 6, 63, 932, 17779, 415086, 11461591, 365340318,
        13201925372, 533298919166, 23814078531737,
        1164804017792623, 61932740213389942,
        3556638330023177088,
    ),
    ("trefoil-mirror", -1): (
        1, 6, 39, 380, 4961, 80530, 1558976, 35012383,
        894298109, 25591093351, 810785122236,
        28169720107881, 1064856557864671,
        43506118030443092,
    ),
    ("trefoil-mirror", 1): (
        1, -6, 69, -1064, 20770, -492052, 13724452,
        -440706098, 16015171303, -649815778392, 29121224693198,
        -1428607184648931, 76147883907835312,
        -4382222160786508572,
    ),
}

# the same manifolds reached through the figure-eight knot
_ROWS[("fig8", 1)] = _ROWS[("trefoil", -1)]
_ROWS[("fig8", -1)] = _ROWS[("trefoil-mirror", 1)]

REFERENCE_ROWS = MappingProxyType(_ROWS)
POINCARE = ("trefoil", 1)


def reference_row(knot: str, eps: int) -> tuple[int, ...] | None:
    return REFERENCE_ROWS.get((knot, eps))
