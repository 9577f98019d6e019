"""Exact arithmetic in Z[i]."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import isqrt

from .arith import DomainError, cornacchia_prime, factor


_GINT_RE = re.compile(r"([+-]?\d+(?![\di]))?(?:([+-]?\d*)i)?")


def _round_div(x: int, n: int) -> int:
    """Nearest integer to x/n for n > 0 (ties towards +inf)."""
    return (2 * x + n) // (2 * n)


@dataclass(frozen=True, slots=True)
class GInt:
    re: int
    im: int = 0

    @staticmethod
    def coerce(z) -> GInt:
        if isinstance(z, GInt):
            return z
        if isinstance(z, int):
            return GInt(z, 0)
        if isinstance(z, complex) and z.real.is_integer() and z.imag.is_integer():
            return GInt(int(z.real), int(z.imag))
        raise TypeError(f"cannot convert {z!r} to GInt")

    def __add__(self, other):
        o = GInt.coerce(other)
        return GInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GInt.coerce(other)
        return GInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GInt.coerce(other) - self

    def __neg__(self):
        return GInt(-self.re, -self.im)

    def __mul__(self, other):
        o = GInt.coerce(other)
        return GInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out, base = GInt(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GInt.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def conj(self) -> GInt:
        return GInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __divmod__(self, other):
        """Euclidean division with N(remainder) <= N(divisor) / 2."""
        o = GInt.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by 0 in Z[i]")
        num = self * o.conj()
        q = GInt(_round_div(num.re, n), _round_div(num.im, n))
        return q, self - q * o

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        o = GInt.coerce(other)
        if not self:
            return not o
        return not (o % self)

    def exact_div(self, other) -> GInt:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def normalized(self) -> GInt:
        """Associate with re > 0 and im >= 0 (0 stays 0)."""
        z = self
        for _ in range(4):
            if z.re > 0 and z.im >= 0:
                return z
            z = z * GInt(0, 1)
        return z

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @staticmethod
    def from_json(d) -> GInt:
        return GInt(int(d["re"]), int(d["im"]))

    @staticmethod
    def parse(text: str) -> GInt:
        """Read forms like '3', '-i', '2+3i', '6-6i'."""
        t = text.replace(" ", "")
        m = _GINT_RE.fullmatch(t)
        if not m or not (m.group(1) or m.group(2) is not None):
            raise ValueError(f"not a Gaussian integer: {text!r}")
        re_part, im_part = m.group(1), m.group(2)
        re_v = int(re_part) if re_part else 0
        if im_part is None:
            return GInt(re_v)
        if im_part in ("", "+"):
            return GInt(re_v, 1)
        if im_part == "-":
            return GInt(re_v, -1)
        return GInt(re_v, int(im_part))

    def __repr__(self):
        return f"GInt({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        im = {1: "+i", -1: "-i"}.get(self.im, f"{self.im:+d}i")
        return f"{self.re}{im}"


I = GInt(0, 1)
UNITS = (GInt(1), I, GInt(-1), -I)


def g_gcd(alpha, beta) -> GInt:
    x, y = GInt.coerce(alpha), GInt.coerce(beta)
    if not x and not y:
        raise DomainError("gcd(0, 0) is undefined")
    while y:
        x, y = y, x % y
    return x.normalized()


def g_factor(alpha) -> tuple[GInt, list[tuple[GInt, int]]]:
    """Return (unit, [(prime, exponent), ...]) with primes normalized to the
    first quadrant and sorted by (norm, re)."""
    z = GInt.coerce(alpha)
    if not z:
        raise DomainError("cannot factor 0")
    out = []
    for p, _ in factor(z.norm()):
        if p == 2:
            cands = [GInt(1, 1)]
        elif p % 4 == 3:
            cands = [GInt(p)]
        else:
            x, y = cornacchia_prime(p)
            cands = sorted({GInt(x, y).normalized(), GInt(x, -y).normalized()},
                           key=lambda g: (g.re, g.im))
        for pi in cands:
            k = 0
            while pi.divides(z):
                z = z.exact_div(pi)
                k += 1
            if k:
                out.append((pi, k))
    assert z in UNITS, z
    out.sort(key=lambda t: (t[0].norm(), t[0].re))
    return z, out


def g_expand(unit: GInt, pairs) -> GInt:
    z = unit
    for pi, e in pairs:
        z = z * pi**e
    return z


def is_gaussian_prime(pi) -> bool:
    from .arith import is_prime

    pi = GInt.coerce(pi)
    n = pi.norm()
    if is_prime(n):
        return True
    r = isqrt(n)
    if r * r != n or not is_prime(r) or r % 4 != 3:
        return False
    return pi.normalized() == GInt(r)


def g_powmod(alpha: GInt, k: int, mod: GInt) -> GInt:
    out, base = GInt(1) % mod, alpha % mod
    while k:
        if k & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        k >>= 1
    return out


def g_quadratic_symbol(alpha, pi) -> int:
    """Quadratic residue symbol [alpha/pi] for a prime pi of odd norm."""
    alpha, pi = GInt.coerce(alpha), GInt.coerce(pi)
    n = pi.norm()
    if n % 2 == 0:
        raise DomainError(f"{pi} has even norm")
    if not is_gaussian_prime(pi):
        raise DomainError(f"{pi} is not a Gaussian prime")
    if pi.divides(alpha):
        raise DomainError(f"{pi} divides {alpha}")
    r = g_powmod(alpha, (n - 1) // 2, pi)
    if pi.divides(r - 1):
        return 1
    if pi.divides(r + 1):
        return -1
    raise ArithmeticError("Euler criterion produced neither +1 nor -1")


def second_descent_factor(T: int, m: int) -> tuple[GInt, GInt]:
    """Split T + 2i = mu * rho^2 with N(mu) = m and mu = a + 2bi, a odd > 0."""
    n = T * T + 4
    if m <= 0 or n % m or isqrt(n // m) ** 2 != n // m:
        raise DomainError(f"T^2 + 4 = {n} is not m*U^2 for m = {m}")
    target = GInt(T, 2)
    unit, pairs = g_factor(target)
    mu = g_expand(unit, [(p, e % 2) for p, e in pairs])
    rho = g_expand(GInt(1), [(p, e // 2) for p, e in pairs])
    if mu.re % 2 == 0 or mu.im % 2:
        raise ArithmeticError(f"no unit makes {mu} = 1 mod 2")
    if mu.re < 0:
        mu, rho = -mu, rho * I
    if rho.re < 0 or (rho.re == 0 and rho.im < 0):
        rho = -rho
    if mu.norm() != m or mu * rho * rho != target:
        raise ArithmeticError("inconsistent Gaussian factorization")
    return mu, rho
