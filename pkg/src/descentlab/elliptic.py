"""Rational points on y^2 = x(x^2 - 4p) from the torsor Z^2 = p X^4 - 4 Y^4."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import kernels
from .arith import BoundExhausted, DomainError, is_prime, two_squares_reps

DEFAULT_BOUND = 2000


@dataclass(frozen=True)
class TorsorWitness:
    """Z + 2i Y^2 = (a + 2bi)(r + si)^2 with r + si = (xi + i eta)^2."""

    p: int
    a: int
    b: int
    xi: int
    eta: int

    @property
    def r(self):
        return self.xi**2 - self.eta**2

    @property
    def s(self):
        return 2 * self.xi * self.eta

    @property
    def X(self):
        return self.xi**2 + self.eta**2

    @property
    def Q(self):
        return self.b * self.r**2 + self.a * self.r * self.s - self.b * self.s**2

    @property
    def Y(self):
        if self.Q < 0:
            raise DomainError(f"Q_b(r, s) = {self.Q} < 0")
        return isqrt(self.Q)

    @property
    def Z(self):
        return abs(self.a * (self.r**2 - self.s**2) - 4 * self.b * self.r * self.s)

    @property
    def point(self) -> tuple[Fraction, Fraction]:
        return reconstruct_point(self)

    def check(self) -> bool:
        if self.Q < 0:
            return False
        r, s, X, Y, Z = self.r, self.s, self.X, self.Y, self.Z
        return (self.a**2 + 4 * self.b**2 == self.p
                and X * X == r * r + s * s
                and Y * Y == self.b * r * r + self.a * r * s - self.b * s * s
                and Z * Z == self.p * X**4 - 4 * Y**4
                and gcd(r, s) == 1 and r % 2 == 1)

    def to_json(self) -> dict:
        x, y = self.point
        out = {k: str(getattr(self, k)) for k in ("p", "a", "b", "xi", "eta", "r", "s", "X", "Y", "Z")}
        out["point"] = {"x": str(x), "y": str(y)}
        out["label"] = "rank >= 1 certificate"
        return out


def identity_check(xi: int, eta: int, a: int, b: int) -> bool:
    """b(xi^4 - 6 xi^2 eta^2 + eta^4) + 2a xi eta (xi^2 - eta^2) = Q_b(r, s)."""
    lhs = b * (xi**4 - 6 * xi**2 * eta**2 + eta**4) + 2 * a * xi * eta * (xi**2 - eta**2)
    r, s = xi * xi - eta * eta, 2 * xi * eta
    return lhs == b * r * r + a * r * s - b * s * s


def torsor_search(p: int, bound: int = DEFAULT_BOUND) -> TorsorWitness:
    """Least (xi, eta) by max(xi, eta), then (eta, xi), with Q_b(r, s) a square,
    trying b and -b. Raises BoundExhausted (which says nothing about the rank)."""
    if p % 4 != 1 or not is_prime(p):
        raise DomainError(f"{p} is not a prime = 1 mod 4")
    (rep,) = two_squares_reps(p)
    hit = kernels.torsor_scan(rep.a, rep.b, 1, bound)
    if hit is None:
        raise BoundExhausted(f"torsor search for p = {p}", bound)
    xi, eta, b = hit
    w = TorsorWitness(p, rep.a, b, xi, eta)
    if not w.check():
        raise ArithmeticError(f"inconsistent witness {w}")
    return w


def reconstruct_point(w: TorsorWitness) -> tuple[Fraction, Fraction]:
    """x = p X^2 / Y^2, y = p X Z / Y^3 on y^2 = x(x^2 - 4p)."""
    if w.Y == 0:
        raise DomainError("Y = 0 gives the point of order 2")
    x = Fraction(w.p * w.X**2, w.Y**2)
    y = Fraction(w.p * w.X * w.Z, w.Y**3)
    if y * y != x * (x * x - 4 * w.p):
        raise ArithmeticError("reconstructed point is not on the curve")
    return x, y


def on_curve(p: int, x: Fraction, y: Fraction) -> bool:
    return y * y == x * (x * x - 4 * p)
