"""Rational integer arithmetic: factoring, residue symbols, Hilbert symbols
and representations m = a^2 + 4b^2."""

from __future__ import annotations

import itertools
import os
import threading
from dataclasses import dataclass, field
from math import gcd, isqrt
from pathlib import Path

INFINITY = 0  # place marker used by hilbert_symbol


class DomainError(ValueError):
    """An input violates the precondition of an operation."""


class BoundExhausted(RuntimeError):
    """A bounded search ended without a result; nothing is proven."""

    def __init__(self, what: str, bound: int):
        super().__init__(f"{what}: nothing found up to bound {bound}")
        self.bound = bound


@dataclass(frozen=True)
class Factorization:
    sign: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.pairs]

    @property
    def value(self) -> int:
        v = self.sign
        for p, e in self.pairs:
            v *= p**e
        return v

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __str__(self):
        if not self.pairs:
            return "-1" if self.sign < 0 else "1"
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.pairs)
        return ("-" if self.sign < 0 else "") + body


@dataclass(frozen=True, order=True)
class TwoSquares:
    """m = a^2 + 4 b^2."""

    a: int
    b: int
    m: int = field(compare=False)

    def __post_init__(self):
        if self.a * self.a + 4 * self.b * self.b != self.m:
            raise DomainError(f"{self.a}^2 + 4*{self.b}^2 != {self.m}")


class FactorCache:
    """Thread-safe memo of factorizations, optionally persisted as
    ``n<TAB>p1^e1,p2^e2,...`` lines."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path else None
        self._data: dict[int, tuple[tuple[int, int], ...]] = {}
        self._lock = threading.Lock()
        self._dirty = False
        if self.path and self.path.exists():
            self.load(self.path)

    def load(self, path):
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                n_text, _, body = line.partition("\t")
                pairs = []
                for item in filter(None, body.split(",")):
                    p, _, e = item.partition("^")
                    pairs.append((int(p), int(e or 1)))
                n = int(n_text)
                if _expand(pairs) != abs(n):
                    raise ValueError(f"corrupt cache record for {n}")
                with self._lock:
                    self._data[abs(n)] = tuple(pairs)

    def save(self, path=None):
        path = Path(path) if path else self.path
        if path is None:
            return
        with self._lock:
            items = sorted(self._data.items())
            self._dirty = False
        tmp = Path(str(path) + ".tmp")
        with open(tmp, "w") as fh:
            for n, pairs in items:
                fh.write(f"{n}\t" + ",".join(f"{p}^{e}" for p, e in pairs) + "\n")
        os.replace(tmp, path)

    def get(self, n: int):
        with self._lock:
            return self._data.get(n)

    def put(self, n: int, pairs):
        with self._lock:
            self._data[n] = tuple(pairs)
            self._dirty = True

    def __len__(self):
        with self._lock:
            return len(self._data)

    @property
    def dirty(self) -> bool:
        return self._dirty


def _expand(pairs) -> int:
    v = 1
    for p, e in pairs:
        v *= p**e
    return v


def is_prime(n: int) -> bool:
    from sympy import isprime

    return n > 1 and bool(isprime(n))


_default_cache: FactorCache | None = None


def set_default_cache(cache: FactorCache | None) -> FactorCache | None:
    """Install a process-wide cache used when factor() gets none; returns
    the previous one."""
    global _default_cache
    old, _default_cache = _default_cache, cache
    return old


def factor(n: int, cache: FactorCache | None = None) -> Factorization:
    if n == 0:
        raise DomainError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    cache = cache if cache is not None else _default_cache
    pairs = cache.get(n) if cache is not None else None
    if pairs is None:
        # trial division, Pollard rho and BPSW primality behind sympy
        from sympy import factorint

        pairs = tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))
        if cache is not None:
            cache.put(n, pairs)
    return Factorization(sign, tuple(pairs))


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_squarefree(n: int) -> bool:
    return n != 0 and factor(n).is_squarefree()


def divisors(n: int) -> list[int]:
    """Positive divisors of n, ascending."""
    out = [1]
    for p, e in factor(n):
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise DomainError(f"Jacobi symbol needs odd positive modulus, got {n}")
    a %= n
    acc = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                acc = -acc
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            acc = -acc
        a %= n
    return acc if n == 1 else 0


def quartic_symbol(a: int, p: int) -> int:
    """Rational quartic residue symbol (a/p)_4 for a quadratic residue a."""
    if p % 4 != 1 or not is_prime(p):
        raise DomainError(f"{p} is not a prime = 1 mod 4")
    if jacobi(a, p) != 1:
        raise DomainError(f"{a} is not a quadratic residue mod {p}")
    r = pow(a % p, (p - 1) // 4, p)
    assert r in (1, p - 1)
    return 1 if r == 1 else -1


def quartic_symbol_two(m: int) -> int:
    """(m/2)_4 = (-1)^((m-1)/8) for m = 1 mod 8."""
    if m % 8 != 1:
        raise DomainError(f"{m} is not 1 mod 8")
    return -1 if ((m - 1) // 8) % 2 else 1


def _split_prime_power(x: int, p: int) -> tuple[int, int]:
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k, x


def hilbert_symbol(a: int, b: int, p: int) -> int:
    """Local Hilbert symbol (a, b)_p; p = INFINITY (0) is the real place."""
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol of zero")
    if p == INFINITY:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split_prime_power(a, p)
    beta, v = _split_prime_power(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_v = ((v - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_v = ((v * v - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= jacobi(u, p)
    if alpha % 2:
        s *= jacobi(v, p)
    return s


def relevant_places(a: int, b: int) -> list[int]:
    """Places where (a, b)_v can be -1: INFINITY, 2 and odd primes of ab."""
    ps = {2} | set(factor(a).primes) | set(factor(b).primes)
    return [INFINITY] + sorted(ps)


def cornacchia_prime(p: int) -> tuple[int, int]:
    """(x, y) with x^2 + y^2 = p, x odd, for p = 2 or a prime = 1 mod 4."""
    if p == 2:
        return 1, 1
    if p % 4 != 1:
        raise DomainError(f"{p} is not a sum of two squares")
    c = 2
    while jacobi(c, p) != -1:
        c += 1
    r0 = pow(c, (p - 1) // 4, p)
    a, b = p, r0
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    x, y = b, isqrt(p - b * b)
    if x * x + y * y != p:
        raise DomainError(f"{p} is not prime")
    return (x, y) if x % 2 else (y, x)


def two_squares_reps(m: int) -> list[TwoSquares]:
    """All m = a^2 + 4b^2 with a, b > 0, sorted by a."""
    if m <= 1 or m % 2 == 0:
        raise DomainError(f"{m}: need an odd m > 1")
    fac = factor(m)
    if not fac.is_squarefree():
        raise DomainError(f"{m} is not squarefree")
    bad = [p for p in fac.primes if p % 4 != 1]
    if bad:
        raise DomainError(f"{m} has prime factor {bad[0]} = 3 mod 4")
    gens = [cornacchia_prime(p) for p in fac.primes]
    first, rest = gens[0], gens[1:]
    reps = set()
    for flips in itertools.product((1, -1), repeat=len(rest)):
        x, y = first
        for (u, v), f in zip(rest, flips):
            x, y = x * u - y * v * f, x * v * f + y * u
        x, y = abs(x), abs(y)
        a, e = (x, y) if x % 2 else (y, x)
        reps.add((a, e // 2))
    return [TwoSquares(a, b, m) for a, b in sorted(reps)]


def admissible(m: int) -> bool:
    """m > 1 odd squarefree with every prime factor = 1 mod 4."""
    if m <= 1 or m % 2 == 0:
        return False
    fac = factor(m)
    return fac.is_squarefree() and all(p % 4 == 1 for p in fac.primes)


def coprime(*xs: int) -> bool:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g == 1
