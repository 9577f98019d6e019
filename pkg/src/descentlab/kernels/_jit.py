"""numba kernels; int64 only, callers guarantee no overflow."""

import numpy as np
from numba import njit


@njit(cache=True)
def _gcd(x, y):
    x = abs(x)
    y = abs(y)
    while y:
        x, y = y, x % y
    return x


# bit j set iff j is a square mod 64: rejects 81% of non-squares cheaply
# (a plain int below 2^63; a uint64 global would be routed through float64)
_SQ64 = sum(1 << j for j in {x * x % 64 for x in range(64)})


@njit(cache=True, inline="always")
def _maybe_square(v):
    return (_SQ64 >> (v & 63)) & 1


@njit(cache=True)
def _isqrt(v):
    y = np.int64(np.sqrt(np.float64(v)))
    while y * y > v:
        y -= 1
    while (y + 1) * (y + 1) <= v:
        y += 1
    return y


def _make_qb_scan(parity):
    # parity is frozen into each compiled kernel; a runtime flag in the
    # inner loop costs a factor of about 8
    @njit(inline="always")
    def test(a, b, r, s, out, n):
        if parity and (r % 2 == 0 or s % 2 != 0):
            return n
        v = b * r * r + a * r * s - b * s * s
        if v > 0 and (v & 1) == 0:
            h = v >> 1
            if _maybe_square(h):
                x = _isqrt(h)
                if x * x == h and _gcd(r, s) == 1:
                    out[n, 0] = r
                    out[n, 1] = s
                    out[n, 2] = x
                    return n + 1
        return n

    @njit
    def scan(a, b, k0, k1):
        out = np.empty((8 * k1 + 8, 3), dtype=np.int64)
        for k in range(k0, k1 + 1):
            n = 0
            if k == 1:
                n = test(a, b, 0, 1, out, n)
            for s in range(-k, k + 1):
                n = test(a, b, k, s, out, n)
            for r in range(1, k):
                n = test(a, b, r, -k, out, n)
                n = test(a, b, r, k, out, n)
            if n:
                return k, out[:n].copy()
        return -1, out[:0].copy()

    return scan


_qb_scan_all = _make_qb_scan(False)
_qb_scan_odd_even = _make_qb_scan(True)


def qb_scan(a, b, k0, k1, parity):
    return (_qb_scan_odd_even if parity else _qb_scan_all)(a, b, k0, k1)


@njit(cache=True, inline="always")
def _torsor_test(a, b, xi, eta):
    if (xi - eta) % 2 == 0:
        return 0
    r = xi * xi - eta * eta
    s = 2 * xi * eta
    t = 0
    v = b * r * r + a * r * s - b * s * s
    if v >= 0 and _maybe_square(v) and _isqrt(v) ** 2 == v:
        t = 1
    else:
        v = -b * r * r + a * r * s + b * s * s
        if v >= 0 and _maybe_square(v) and _isqrt(v) ** 2 == v:
            t = -1
    if t and _gcd(xi, eta) != 1:
        return 0
    return t


@njit(cache=True)
def torsor_scan(a, b, k0, k1):
    for k in range(k0, k1 + 1):
        for eta in range(k):
            t = _torsor_test(a, b, k, eta)
            if t:
                return k, eta, t
        for xi in range(k + 1):
            t = _torsor_test(a, b, xi, k)
            if t:
                return xi, k, t
    return -1, -1, 0
