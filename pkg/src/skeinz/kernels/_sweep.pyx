# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernel; same contract as ``_sweep_py``."""

from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING, PyBytes_GET_SIZE

DEF MAXW = 256


cdef inline void _acc(dict out, bytes key, object v):
    old = out.get(key)
    if old is None:
        out[key] = v
    else:
        out[key] = old + v


cdef dict _prune(dict out):
    return {key: v for key, v in out.items() if v}


def cup(dict states, int i):
    cdef dict out = {}
    cdef bytes key
    cdef const unsigned char* src
    cdef unsigned char buf[MAXW]
    cdef Py_ssize_t m, p, q
    for key, v in states.items():
        src = <const unsigned char*>PyBytes_AS_STRING(key)
        m = PyBytes_GET_SIZE(key)
        for p in range(m):
            q = src[p]
            if q >= i:
                q += 2
            buf[p if p < i else p + 2] = <unsigned char>q
        buf[i] = <unsigned char>(i + 1)
        buf[i + 1] = <unsigned char>i
        out[PyBytes_FromStringAndSize(<char*>buf, m + 2)] = v
    return out


def cap(dict states, int i, int k):
    cdef dict out = {}
    cdef bytes key
    cdef const unsigned char* src
    cdef unsigned char buf[MAXW]
    cdef Py_ssize_t m, p, q, a, b, w
    cdef int k2 = 2 * k
    for key, v in states.items():
        src = <const unsigned char*>PyBytes_AS_STRING(key)
        m = PyBytes_GET_SIZE(key)
        a = src[i]
        b = src[i + 1]
        w = 0
        for p in range(m):
            if p == i or p == i + 1:
                continue
            q = src[p]
            if a != i + 1:
                if p == a:
                    q = b
                elif p == b:
                    q = a
            if q > i + 1:
                q -= 2
            buf[w] = <unsigned char>q
            w += 1
        if a == i + 1:
            v = -(v << k2) - (v >> k2)
        _acc(out, PyBytes_FromStringAndSize(<char*>buf, m - 2), v)
    return _prune(out)


def cross(dict states, int i, int sign, int k):
    cdef dict out = {}
    cdef bytes key
    cdef const unsigned char* src
    cdef unsigned char buf[MAXW]
    cdef Py_ssize_t m, p, a, b
    cdef int k3 = 3 * k
    for key, v in states.items():
        src = <const unsigned char*>PyBytes_AS_STRING(key)
        a = src[i]
        if a == i + 1:
            _acc(out, key, -(v >> k3) if sign > 0 else -(v << k3))
            continue
        m = PyBytes_GET_SIZE(key)
        b = src[i + 1]
        for p in range(m):
            buf[p] = src[p]
        buf[a] = <unsigned char>b
        buf[b] = <unsigned char>a
        buf[i] = <unsigned char>(i + 1)
        buf[i + 1] = <unsigned char>i
        if sign > 0:
            _acc(out, key, v << k)
            _acc(out, PyBytes_FromStringAndSize(<char*>buf, m), v >> k)
        else:
            _acc(out, key, v >> k)
            _acc(out, PyBytes_FromStringAndSize(<char*>buf, m), v << k)
    return _prune(out)


def tlgen(dict states, int i, int k):
    cdef dict out = {}
    cdef bytes key
    cdef const unsigned char* src
    cdef unsigned char buf[MAXW]
    cdef Py_ssize_t m, p, a, b
    cdef int k2 = 2 * k
    for key, v in states.items():
        src = <const unsigned char*>PyBytes_AS_STRING(key)
        a = src[i]
        if a == i + 1:
            _acc(out, key, -(v << k2) - (v >> k2))
            continue
        m = PyBytes_GET_SIZE(key)
        b = src[i + 1]
        for p in range(m):
            buf[p] = src[p]
        buf[a] = <unsigned char>b
        buf[b] = <unsigned char>a
        buf[i] = <unsigned char>(i + 1)
        buf[i + 1] = <unsigned char>i
        _acc(out, PyBytes_FromStringAndSize(<char*>buf, m), v)
    return _prune(out)
