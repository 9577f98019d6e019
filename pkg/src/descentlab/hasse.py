"""Hasse's operation of (x0 + x1 tau)/2, tau^2 = m, on Z[i] for m = a^2 + 4b^2."""

from __future__ import annotations

import itertools
import random
from typing import NamedTuple

from .arith import DomainError
from .gaussian import GInt, I

LAWS = ("identity", "associative", "scalars", "twist", "no_zero_divisors", "norm")


class HalfInt2(NamedTuple):
    """(x0 + x1 tau)/2."""

    x0: int
    x1: int

    def integral(self) -> bool:
        return (self.x0 - self.x1) % 2 == 0

    def conj(self) -> HalfInt2:
        return HalfInt2(self.x0, -self.x1)

    def norm(self, m: int) -> int:
        n = self.x0 * self.x0 - m * self.x1 * self.x1
        if n % 4:
            raise DomainError(f"N({self}) is not integral for m = {m}")
        return n // 4

    def mul(self, o: HalfInt2, m: int) -> HalfInt2:
        u = self.x0 * o.x0 + m * self.x1 * o.x1
        v = self.x0 * o.x1 + self.x1 * o.x0
        if u % 2 or v % 2:
            raise DomainError(f"{self} * {o} leaves the half-integers")
        return HalfInt2(u // 2, v // 2)

    def scale(self, q: int) -> HalfInt2:
        return HalfInt2(q * self.x0, q * self.x1)


ONE = HalfInt2(2, 0)
TAU = HalfInt2(0, 2)


def circle(x: HalfInt2, y, a: int, b: int) -> GInt:
    """x o y = (x0 y + x1 (a - 2bi) conj(y)) / 2."""
    y = GInt.coerce(y)
    z = x.x0 * y + x.x1 * GInt(a, -2 * b) * y.conj()
    if z.re % 2 or z.im % 2:
        raise DomainError(f"{x} o {y}: {z} is not divisible by 2")
    return GInt(z.re // 2, z.im // 2)


def phi(y, a: int, b: int) -> int:
    y = GInt.coerce(y)
    r, s = y.re, y.im
    return a * r * r - 4 * b * r * s - a * s * s


def phi_hat(y, a: int, b: int) -> int:
    y = GInt.coerce(y)
    r, s = y.re, y.im
    return b * r * r + a * r * s - b * s * s


def norm_identity(alpha: HalfInt2, y, a: int, b: int) -> bool:
    """phi_hat(alpha o y) = N(alpha) phi_hat(y)."""
    m = a * a + 4 * b * b
    return phi_hat(circle(alpha, y, a, b), a, b) == alpha.norm(m) * phi_hat(y, a, b)


def _rand_half(rng, lim):
    x0 = rng.randint(-lim, lim)
    x1 = rng.randint(-lim, lim)
    if (x0 - x1) % 2:
        x1 += 1
    return HalfInt2(x0, x1)


def _rand_g(rng, lim):
    return GInt(rng.randint(-lim, lim), rng.randint(-lim, lim))


def check_circle_laws(a: int, b: int, samples: int = 500, seed: int = 0,
                      box: int = 0, lim: int = 10**6) -> dict:
    """Test the laws on random integral data, plus an exhaustive box
    |x0|, |x1|, |re y|, |im y| <= box for the identity, twist, zero-divisor
    and norm laws."""
    m = a * a + 4 * b * b
    if m % 4 != 1:
        raise DomainError("a must be odd")
    rng = random.Random(seed)
    report = {law: {"checked": 0, "failures": 0, "counterexample": None} for law in LAWS}

    def record(law, ok, data):
        e = report[law]
        e["checked"] += 1
        if not ok:
            e["failures"] += 1
            if e["counterexample"] is None:
                e["counterexample"] = [str(v) for v in data]

    def single(x, y):
        record("identity", circle(ONE, y, a, b) == y, (y,))
        record("twist", circle(x, I * y, a, b) == I * circle(x.conj(), y, a, b), (x, y))
        zero = circle(x, y, a, b) == 0
        record("no_zero_divisors", zero == (x == (0, 0) or not y), (x, y))
        record("norm", norm_identity(x, y, a, b), (x, y))

    for _ in range(samples):
        x1, x2, y = _rand_half(rng, lim), _rand_half(rng, lim), _rand_g(rng, lim)
        q = rng.randint(-1000, 1000)
        single(x1, y)
        record("associative",
               circle(x1.mul(x2, m), y, a, b) == circle(x1, circle(x2, y, a, b), a, b),
               (x1, x2, y))
        lhs = circle(x1.scale(q), y, a, b)
        record("scalars", lhs == circle(x1, q * y, a, b) == q * circle(x1, y, a, b),
               (q, x1, y))
    if box:
        rng_box = range(-box, box + 1)
        for x0, x1_ in itertools.product(rng_box, repeat=2):
            x = HalfInt2(x0, x1_)
            if not x.integral():
                continue
            for r, s in itertools.product(rng_box, repeat=2):
                single(x, GInt(r, s))
    report_out = {"m": m, "a": a, "b": b, "samples": samples, "box": box, "laws": report}
    report_out["ok"] = all(v["failures"] == 0 for v in report.values())
    return report_out
