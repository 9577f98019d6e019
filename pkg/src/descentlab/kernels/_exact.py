"""Reference implementations in Python integers (no overflow, slow)."""

from math import gcd, isqrt


def qb_shell_points(k):
    """Primitive (r, s) with max(|r|, |s|) = k, r > 0 or (r, s) = (0, 1),
    in a fixed order shared by every backend."""
    if k == 1:
        yield 0, 1
    for s in range(-k, k + 1):
        if gcd(k, s) == 1:
            yield k, s
    for r in range(1, k):
        if gcd(r, k) == 1:
            yield r, -k
            yield r, k


def qb_scan(a, b, k0, k1, parity):
    for k in range(k0, k1 + 1):
        hits = []
        for r, s in qb_shell_points(k):
            if parity and (r % 2 == 0 or s % 2):
                continue
            v = b * r * r + a * r * s - b * s * s
            if v > 0 and v % 2 == 0:
                x = isqrt(v // 2)
                if x * x == v // 2:
                    hits.append((r, s, x))
        if hits:
            return k, hits
    return -1, []


def torsor_shell_points(k):
    """max(xi, eta) = k, ordered by (eta, xi)."""
    for eta in range(k):
        yield k, eta
    for xi in range(k + 1):
        yield xi, k


def torsor_scan(a, b, k0, k1):
    for k in range(k0, k1 + 1):
        for xi, eta in torsor_shell_points(k):
            if (xi - eta) % 2 == 0 or gcd(xi, eta) != 1:
                continue
            r, s = xi * xi - eta * eta, 2 * xi * eta
            for bb in (b, -b):
                v = bb * r * r + a * r * s - bb * s * s
                if v >= 0 and isqrt(v) ** 2 == v:
                    return xi, eta, bb
    return None
