"""Pure-numpy versions of the search kernels, vectorized per shell."""

import numpy as np


def _isqrt(v):
    y = np.floor(np.sqrt(v.astype(np.float64))).astype(np.int64)
    y -= (y * y > v)
    y += ((y + 1) * (y + 1) <= v)
    return y


def _qb_shell(k):
    s_edge = np.arange(-k, k + 1, dtype=np.int64)
    r_side = np.arange(1, k, dtype=np.int64)
    r = np.concatenate([np.full(s_edge.size, k, dtype=np.int64), np.repeat(r_side, 2)])
    s = np.concatenate([s_edge, np.tile(np.array([-k, k], dtype=np.int64), r_side.size)])
    if k == 1:
        r = np.concatenate([[0], r])
        s = np.concatenate([[1], s])
    keep = np.gcd(r, s) == 1
    return r[keep], s[keep]


def qb_scan(a, b, k0, k1, parity):
    for k in range(k0, k1 + 1):
        r, s = _qb_shell(k)
        if parity:
            keep = (r % 2 == 1) & (s % 2 == 0)
            r, s = r[keep], s[keep]
        v = b * r * r + a * r * s - b * s * s
        ok = (v > 0) & (v % 2 == 0)
        half = np.where(ok, v // 2, 0)
        x = _isqrt(half)
        ok &= x * x == half
        if ok.any():
            return k, np.stack([r[ok], s[ok], x[ok]], axis=1)
    return -1, np.empty((0, 3), dtype=np.int64)


def torsor_scan(a, b, k0, k1):
    for k in range(k0, k1 + 1):
        xi = np.concatenate([np.full(k, k, dtype=np.int64), np.arange(k + 1, dtype=np.int64)])
        eta = np.concatenate([np.arange(k, dtype=np.int64), np.full(k + 1, k, dtype=np.int64)])
        keep = ((xi - eta) % 2 == 1) & (np.gcd(xi, eta) == 1)
        xi, eta = xi[keep], eta[keep]
        r = xi * xi - eta * eta
        s = 2 * xi * eta
        hits = np.zeros(xi.size, dtype=np.int64)
        for sign in (-1, 1):
            bb = sign * b
            v = bb * r * r + a * r * s - bb * s * s
            pos = np.where(v >= 0, v, 0)
            y = _isqrt(pos)
            sq = (v >= 0) & (y * y == pos)
            hits = np.where(sq, sign, hits)
        idx = np.flatnonzero(hits)
        if idx.size:
            j = idx[0]
            return int(xi[j]), int(eta[j]), int(hits[j])
    return -1, -1, 0
