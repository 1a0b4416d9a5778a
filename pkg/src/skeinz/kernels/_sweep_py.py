"""Pure-Python sweep kernel.

States map a line matching (``bytes`` of partner indices) to a packed
Laurent polynomial: the integer ``p(2**k)`` where ``p`` is the state's
coefficient times ``A**offset``. Multiplying by ``A`` is ``<< k``; by
``A**-1`` is ``>> k``, which is exact as long as the offset keeps every
exponent nonnegative.
"""

from __future__ import annotations

_CUP_TABLES: dict[int, bytes] = {}
_CAP_TABLES: dict[int, bytes] = {}


def _cup_table(i: int) -> bytes:
    t = _CUP_TABLES.get(i)
    if t is None:
        t = bytes(q if q < i else min(q + 2, 255) for q in range(256))
        _CUP_TABLES[i] = t
    return t


def _cap_table(i: int) -> bytes:
    t = _CAP_TABLES.get(i)
    if t is None:
        t = bytes(q if q < i else max(q - 2, 0) for q in range(256))
        _CAP_TABLES[i] = t
    return t


def _acc(out: dict, key: bytes, v: int) -> None:
    old = out.get(key)
    out[key] = v if old is None else old + v


def _prune(out: dict) -> dict:
    return {key: v for key, v in out.items() if v}


def cup(states: dict, i: int) -> dict:
    table = _cup_table(i)
    ins = bytes((i + 1, i))
    out = {}
    for key, v in states.items():
        t = key.translate(table)
        out[t[:i] + ins + t[i:]] = v
    return out


def cap(states: dict, i: int, k: int) -> dict:
    table = _cap_table(i)
    out: dict = {}
    k2 = 2 * k
    for key, v in states.items():
        a = key[i]
        if a == i + 1:
            v = -(v << k2) - (v >> k2)
            nk = (key[:i] + key[i + 2:]).translate(table)
        else:
            b = key[i + 1]
            ba = bytearray(key)
            ba[a] = b
            ba[b] = a
            del ba[i:i + 2]
            nk = bytes(ba).translate(table)
        _acc(out, nk, v)
    return _prune(out)


def cross(states: dict, i: int, sign: int, k: int) -> dict:
    """sigma: A * id + A^-1 * e_i (sign +1); the mirror for sign -1."""
    out: dict = {}
    k3 = 3 * k
    for key, v in states.items():
        a = key[i]
        if a == i + 1:
            # A^s + A^-s * loop = -A^(-3s)
            _acc(out, key, -(v >> k3) if sign > 0 else -(v << k3))
            continue
        b = key[i + 1]
        ba = bytearray(key)
        ba[a] = b
        ba[b] = a
        ba[i] = i + 1
        ba[i + 1] = i
        if sign > 0:
            _acc(out, key, v << k)
            _acc(out, bytes(ba), v >> k)
        else:
            _acc(out, key, v >> k)
            _acc(out, bytes(ba), v << k)
    return _prune(out)


def tlgen(states: dict, i: int, k: int) -> dict:
    out: dict = {}
    k2 = 2 * k
    for key, v in states.items():
        a = key[i]
        if a == i + 1:
            _acc(out, key, -(v << k2) - (v >> k2))
            continue
        b = key[i + 1]
        ba = bytearray(key)
        ba[a] = b
        ba[b] = a
        ba[i] = i + 1
        ba[i + 1] = i
        _acc(out, bytes(ba), v)
    return _prune(out)
