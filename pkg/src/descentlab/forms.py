"""Binary quadratic forms A x^2 + B xy + C y^2 under the right SL2(Z) action."""

from __future__ import annotations

from functools import cached_property
from math import gcd, isqrt
from typing import NamedTuple

from .arith import BoundExhausted, DomainError, divisors, factor, is_square, jacobi


class UniMat(NamedTuple):
    r: int
    s: int
    t: int
    u: int

    def det(self) -> int:
        return self.r * self.u - self.s * self.t

    def __matmul__(self, o: UniMat) -> UniMat:
        return UniMat(self.r * o.r + self.s * o.t, self.r * o.s + self.s * o.u,
                      self.t * o.r + self.u * o.t, self.t * o.s + self.u * o.u)

    def inv(self) -> UniMat:
        if self.det() != 1:
            raise DomainError(f"{self} is not unimodular")
        return UniMat(self.u, -self.s, -self.t, self.r)

    @property
    def T(self) -> UniMat:
        return UniMat(self.r, self.t, self.s, self.u)

    def apply(self, x: int, y: int) -> tuple[int, int]:
        return self.r * x + self.s * y, self.t * x + self.u * y


IDENTITY = UniMat(1, 0, 0, 1)
SWAP = UniMat(0, -1, 1, 0)


class Form(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def is_primitive(self) -> bool:
        return self.content() == 1

    def __neg__(self):
        return Form(-self.a, -self.b, -self.c)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c)}

    @staticmethod
    def from_json(d) -> Form:
        return Form(int(d["a"]), int(d["b"]), int(d["c"]))

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def principal_form(disc: int) -> Form:
    k = disc % 4
    if k not in (0, 1):
        raise DomainError(f"{disc} is not a discriminant")
    return Form(1, k, (k - disc) // 4)


def pairing(q1: Form, q2: Form) -> int:
    """Symmetric bilinear pairing with pairing(Q, Q) = disc(Q)."""
    return q1.b * q2.b - 2 * q1.a * q2.c - 2 * q2.a * q1.c

def dual_pairing(q1: Form, q2: Form) -> int:
    """pairing(q1, J q2) with J: (A,B,C) -> (C,-B,A); adjoint to act under
    transposition."""
    return -q1.b * q2.b - 2 * q1.a * q2.a - 2 * q1.c * q2.c


def act(q: Form, S: UniMat) -> Form:
    """Q|S (x, y) = Q(r x + s y, t x + u y)."""
    if S.det() != 1:
        raise DomainError(f"det {S} = {S.det()} != 1")
    A, B, C = q
    r, s, t, u = S
    return Form(A * r * r + B * r * t + C * t * t,
                2 * A * r * s + B * (r * u + s * t) + 2 * C * t * u,
                A * s * s + B * s * u + C * u * u)


def _check_disc(q: Form) -> int:
    D = q.disc
    if D == 0 or is_square(D):
        raise DomainError(f"{q}: discriminant {D} is zero or a square")
    return D


# -- definite ---------------------------------------------------------------

def is_reduced_definite(q: Form) -> bool:
    """|b| <= a <= c with b >= 0 on the boundary; negative forms via -q."""
    a, b, c = q if q.a > 0 else -q
    if not (abs(b) <= a <= c):
        return False
    return b >= 0 if (abs(b) == a or a == c) else True


def _reduce_definite(q: Form) -> tuple[Form, UniMat]:
    neg = q.a < 0
    if neg:
        q = -q
    M = IDENTITY
    while True:
        a, b, c = q
        k = (a - b) // (2 * a)  # puts b + 2ak in (-a, a]
        if k:
            T = UniMat(1, k, 0, 1)
            q, M = act(q, T), M @ T
        if q.a > q.c or (q.a == q.c and q.b < 0):
            q, M = act(q, SWAP), M @ SWAP
            continue
        break
    return (-q if neg else q), M


# -- indefinite -------------------------------------------------------------

def is_reduced_indefinite(q: Form) -> bool:
    a, b, _ = q
    D = q.disc
    if b <= 0 or b * b >= D or a == 0:
        return False
    t = 2 * abs(a)
    return (t + b) ** 2 > D and (t - b < 0 or (t - b) ** 2 < D)


def _rho_shift(q: Form, D: int, sq: int) -> int:
    """s with -b + 2cs normalized (Cohen's r(-b, c))."""
    _, b, c = q
    m = 2 * abs(c)
    if c * c < D:
        r = sq - ((sq + b) % m)
    else:
        r = -b % m
        if r > abs(c):
            r -= m
    return (r + b) // (2 * c)


def rho(q: Form, D: int | None = None, sq: int | None = None) -> tuple[Form, UniMat]:
    D = q.disc if D is None else D
    sq = isqrt(D) if sq is None else sq
    s = _rho_shift(q, D, sq)
    S = UniMat(0, -1, 1, s)
    return act(q, S), S


def _reduce_indefinite(q: Form) -> tuple[Form, UniMat]:
    D = q.disc
    sq = isqrt(D)
    M = IDENTITY
    while not is_reduced_indefinite(q):
        q, S = rho(q, D, sq)
        M = M @ S
    return q, M


def reduce(q: Form) -> tuple[Form, UniMat]:
    """A reduced form R and S with act(q, S) = R."""
    D = _check_disc(q)
    return _reduce_definite(q) if D < 0 else _reduce_indefinite(q)


def cycle(q: Form) -> list[tuple[Form, UniMat]]:
    """The rho-cycle of reduced forms reached from q, each with the matrix
    taking q to it."""
    if _check_disc(q) < 0:
        raise DomainError("cycles are for indefinite forms")
    D = q.disc
    sq = isqrt(D)
    R, M = _reduce_indefinite(q)
    out = [(R, M)]
    f = R
    while True:
        f, S = rho(f, D, sq)
        M = M @ S
        if f == R:
            return out
        out.append((f, M))


def automorph(q: Form) -> UniMat:
    """Generator G (up to sign) of the proper automorphs: act(q, G) = q."""
    if _check_disc(q) < 0:
        raise DomainError("definite forms have finite automorph groups")
    R, M = _reduce_indefinite(q)
    D, sq = q.disc, isqrt(q.disc)
    W, f = IDENTITY, R
    while True:
        f, S = rho(f, D, sq)
        W = W @ S
        if f == R:
            break
    return M @ W @ M.inv()


def equivalent(q1: Form, q2: Form) -> UniMat | None:
    """Some S with act(q1, S) = q2, or None if not properly equivalent."""
    if q1.disc != q2.disc:
        raise DomainError(f"discriminants differ: {q1.disc} vs {q2.disc}")
    D = _check_disc(q1)
    if D < 0:
        if (q1.a > 0) != (q2.a > 0):
            return None
        R1, M1 = _reduce_definite(q1)
        R2, M2 = _reduce_definite(q2)
        return M1 @ M2.inv() if R1 == R2 else None
    R2, M2 = _reduce_indefinite(q2)
    for f, M in cycle(q1):
        if f == R2:
            return M @ M2.inv()
    return None


def class_key(q: Form) -> Form:
    """Canonical reduced representative of the proper class of q."""
    if _check_disc(q) < 0:
        return _reduce_definite(q)[0]
    return min((f for f, _ in cycle(q)), key=_cycle_rank)


def _cycle_rank(f: Form):
    return (abs(f.a), f.a < 0, f.b, f.c)


# -- composition ------------------------------------------------------------

def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def compose(q1: Form, q2: Form, normalize: bool = True) -> Form:
    """Dirichlet composition; result reduced (class_key) unless normalize=False."""
    D = q1.disc
    if q2.disc != D:
        raise DomainError(f"discriminants differ: {D} vs {q2.disc}")
    if not (q1.is_primitive() and q2.is_primitive()):
        raise DomainError("composition needs primitive forms")
    a1, b1, _ = q1
    a2, b2, c2 = q2
    if a1 == 0 or a2 == 0:
        raise DomainError("leading coefficient 0")
    h = (b1 + b2) // 2
    g, x1, y1 = _egcd(a1, a2)
    e, x2, w = _egcd(g, h)
    u_, v = x1 * x2, y1 * x2
    A = a1 * a2 // (e * e)
    B = b2 + (2 * a2 // e) * (v * (b1 - b2) // 2 - w * c2)
    m = 2 * abs(A)
    B %= m
    if B > abs(A):
        B -= m
    out = Form(A, B, (B * B - D) // (4 * A))
    assert out.disc == D
    return class_key(out) if normalize else out


def inverse(q: Form) -> Form:
    return Form(q.a, -q.b, q.c)


# -- class groups -----------------------------------------------------------

def reduced_forms(disc: int) -> list[Form]:
    """All primitive reduced forms of a discriminant (positive ones when
    definite)."""
    if disc % 4 not in (0, 1) or disc == 0 or is_square(disc):
        raise DomainError(f"{disc} is not a non-square discriminant")
    out = []
    if disc < 0:
        a = 1
        while 3 * a * a <= -disc:
            for b in range(-a + 1, a + 1):
                if (b - disc) % 2:
                    continue
                n = b * b - disc
                if n % (4 * a):
                    continue
                c = n // (4 * a)
                f = Form(a, b, c)
                if c >= a and is_reduced_definite(f) and f.is_primitive():
                    out.append(f)
            a += 1
        return out
    sq = isqrt(disc)
    for b in range(1, sq + 1):
        if (b - disc) % 2 or b * b >= disc:
            continue
        n = (disc - b * b) // 4
        for t in range(max(1, (sq - b) // 2), (sq + b) // 2 + 1):
            if n % t:
                continue
            for a in (t, -t):
                f = Form(a, b, -n // a)
                if is_reduced_indefinite(f) and f.is_primitive():
                    out.append(f)
    return sorted(out, key=_cycle_rank)


class ClassGroup:
    """Proper (narrow) class group of primitive forms of one discriminant."""

    def __init__(self, disc: int, max_disc: int = 10**7):
        if abs(disc) > max_disc:
            raise DomainError(f"|disc| {abs(disc)} exceeds bound {max_disc}")
        self.disc = disc
        red = reduced_forms(disc)
        if disc < 0:
            self.representatives = sorted(red)
            self._key = {f: f for f in red}
        else:
            self._key = {}
            reps = []
            for f in red:
                if f in self._key:
                    continue
                cyc = [g for g, _ in cycle(f)]
                k = min(cyc, key=_cycle_rank)
                reps.append(k)
                for g in cyc:
                    self._key[g] = k
            self.representatives = sorted(reps, key=_cycle_rank)
        self.identity = self.key(principal_form(disc))

    def __len__(self):
        return len(self.representatives)

    @property
    def h(self) -> int:
        return len(self.representatives)

    def key(self, q: Form) -> Form:
        if q in self._key:
            return self._key[q]
        if q.disc != self.disc:
            raise DomainError(f"{q} has discriminant {q.disc}, not {self.disc}")
        return self._key[reduce(q)[0]]

    # Wide classes: proper classes modulo the class of (-1, k, *). This is
    # the ideal class group; it equals the proper one when that class is
    # principal (always for definite discriminants).

    @cached_property
    def minus_one(self) -> Form:
        if self.disc < 0:
            return self.identity
        k = self.disc % 2
        return self.key(Form(-1, k, (self.disc - k * k) // 4))

    def wide_key(self, q: Form) -> Form:
        k = self.key(q)
        return min(k, self.mul(k, self.minus_one), key=_cycle_rank)

    @cached_property
    def wide_representatives(self) -> list[Form]:
        return sorted({self.wide_key(f) for f in self.representatives}, key=_cycle_rank)

    def wide_two_torsion(self) -> list[Form]:
        one = self.wide_key(self.identity)
        return [f for f in self.wide_representatives
                if self.wide_key(self.mul(f, f)) == one]

    def mul(self, q1: Form, q2: Form) -> Form:
        return self.key(compose(q1, q2, normalize=False))

    def power(self, q: Form, k: int) -> Form:
        out, base = self.identity, self.key(q)
        if k < 0:
            base, k = self.key(inverse(base)), -k
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def order(self, q: Form) -> int:
        g = self.key(q)
        x, n = g, 1
        while x != self.identity:
            x = self.mul(x, g)
            n += 1
        return n

    @cached_property
    def orders(self) -> dict[Form, int]:
        return {f: self.order(f) for f in self.representatives}

    @cached_property
    def structure(self) -> tuple[int, ...]:
        """Invariant factors, largest first (each divisible by the next)."""
        h = self.h
        if h == 1:
            return ()
        ords = list(self.orders.values())
        factors: list[int] = []
        for p, e in factor(h):
            counts = [sum(1 for o in ords if (p**k) % o == 0) for k in range(e + 1)]
            ranks = []  # number of cyclic p-factors of order >= p^k
            for k in range(1, e + 1):
                r = 0
                q = counts[k] // counts[k - 1]
                while q > 1:
                    q //= p
                    r += 1
                ranks.append(r)
            exps = []
            for k in range(1, e + 1):
                nxt = ranks[k] if k < e else 0
                exps += [k] * (ranks[k - 1] - nxt)
            exps.sort(reverse=True)
            for i, x in enumerate(exps):
                if i < len(factors):
                    factors[i] *= p**x
                else:
                    factors.append(p**x)
        return tuple(sorted(factors, reverse=True))

    def two_torsion(self) -> list[Form]:
        return [f for f in self.representatives if self.orders[f] <= 2]

    def to_json(self) -> dict:
        return {"disc": str(self.disc), "h": str(self.h),
                "structure": [str(d) for d in self.structure],
                "representatives": [f.to_json() for f in self.representatives]}


def class_group(disc: int, max_disc: int = 10**7) -> ClassGroup:
    return ClassGroup(disc, max_disc)


def ambiguous_forms(disc: int) -> list[Form]:
    """Primitive forms (d, 0, -disc/4d) and (d, d, (d^2-disc)/4d), d | disc
    signed (positive only when disc < 0)."""
    out = set()
    n = abs(disc)
    ds = divisors(n)
    signs = (1,) if disc < 0 else (1, -1)
    for d0 in ds:
        for d in (sg * d0 for sg in signs):
            if disc % (4 * d) == 0:
                out.add(Form(d, 0, -disc // (4 * d)))
            if (d * d - disc) % (4 * d) == 0:
                out.add(Form(d, d, (d * d - disc) // (4 * d)))
    return sorted(f for f in out if f.is_primitive())


def strongly_ambiguous_classes(disc: int, G: ClassGroup | None = None,
                               wide: bool = False) -> list[Form]:
    """Classes containing an ambiguous form."""
    G = G or class_group(disc)
    k = G.wide_key if wide else G.key
    return sorted({k(f) for f in ambiguous_forms(disc)}, key=_cycle_rank)


def two_torsion_classes(disc: int, G: ClassGroup | None = None) -> list[Form]:
    """Representatives of Cl(disc)[2]. Ambiguous forms are used where one
    lies in the class; otherwise the canonical reduced form."""
    G = G or class_group(disc)
    amb = {}
    for f in sorted(ambiguous_forms(disc), key=_cycle_rank):
        amb.setdefault(G.key(f), f)
    return [amb.get(k, k) for k in G.two_torsion()]


# -- genus theory -----------------------------------------------------------

def _delta(n):
    return -1 if n % 4 == 3 else 1


def _eps(n):
    return -1 if n % 8 in (3, 5) else 1


def genus_labels(disc: int) -> list[str]:
    labels = [str(p) for p in factor(disc).primes if p != 2]
    if disc % 4 == 0:
        d = disc // 4
        if d % 4 == 3:
            labels.append("delta")
        elif d % 8 in (2, 6):
            labels.append("eps" if (d // 2) % 4 == 1 else "delta*eps")
        elif d % 8 == 4:
            labels.append("delta")
        elif d % 8 == 0:
            labels += ["delta", "eps"]
    return labels


def _coprime_value(q: Form, D: int) -> int:
    k = 1
    while True:
        for x in range(-k, k + 1):
            for y in (k, -k) if abs(x) < k else range(-k, k + 1):
                if gcd(x, y) == 1:
                    v = q(x, y)
                    if v and gcd(v, 2 * D) == 1:
                        return v
        k += 1


def genus_characters(q: Form) -> list[int]:
    """Assigned characters of q, ordered as genus_labels(disc)."""
    if not q.is_primitive():
        raise DomainError(f"{q} is not primitive")
    D = _check_disc(q)
    n = _coprime_value(q, D)
    out = []
    for lab in genus_labels(D):
        if lab == "delta":
            out.append(_delta(n))
        elif lab == "eps":
            out.append(_eps(n))
        elif lab == "delta*eps":
            out.append(_delta(n) * _eps(n))
        else:
            out.append(jacobi(n, int(lab)))
    return out


def in_principal_genus(q: Form) -> bool:
    return all(v == 1 for v in genus_characters(q))


# -- representations --------------------------------------------------------

def _canon(x: int, y: int) -> tuple[int, int]:
    return (x, y) if x > 0 or (x == 0 and y > 0) else (-x, -y)


def _orbit_minimum(q: Form, v: tuple[int, int]) -> tuple[int, int]:
    """Element of the automorph orbit of v with least x^2 + y^2."""
    G = automorph(q)
    Gi = G.inv()
    best = v
    for M in (G, Gi):
        w = v
        while True:
            w2 = M.apply(*w)
            if w2[0] ** 2 + w2[1] ** 2 >= w[0] ** 2 + w[1] ** 2:
                break
            w = w2
        if w[0] ** 2 + w[1] ** 2 < best[0] ** 2 + best[1] ** 2:
            best = w
    # ties: the two neighbours can share the minimal norm
    cands = [best, G.apply(*best), Gi.apply(*best)]
    nmin = min(x * x + y * y for x, y in cands)
    return max(_canon(x, y) for x, y in cands if x * x + y * y == nmin)


def _represent_unit(q: Form, n: int):
    for f, M in cycle(q):
        if f.a == n:
            x, y = M.r, M.t
            assert q(x, y) == n
            return _orbit_minimum(q, (x, y))
    return None


def obstructed(q: Form, n: int) -> str | None:
    """A local reason q cannot represent n primitively, if one is found."""
    D = q.disc
    m = 4 * abs(n)
    if not any((b * b - D) % m == 0 for b in range(2 * abs(n))):
        return f"{D} is not a square mod {m}"
    if gcd(n, 2 * D) == 1 and q.is_primitive():
        labs = genus_labels(D)
        vals = genus_characters(q)
        for lab, v in zip(labs, vals):
            if lab == "delta":
                w = _delta(n)
            elif lab == "eps":
                w = _eps(n)
            elif lab == "delta*eps":
                w = _delta(n) * _eps(n)
            else:
                w = jacobi(n, int(lab))
            if w != v:
                return f"genus character {lab} differs"
    return None


def represent(q: Form, n: int, bound: int | None = 10**4):
    """Primitive (x, y) with q(x, y) = n.

    n = +-1 on indefinite forms: decided completely by the cycle, returns
    the orbit element of least x^2 + y^2 (x > 0). Otherwise an expanding box
    search; among solutions with least max(|x|, |y|) the one with least
    |x| + |y|, preferring y >= 0. Returns None only when nonexistence is proven; raises
    BoundExhausted otherwise.
    """
    if n == 0:
        raise DomainError("n = 0")
    D = _check_disc(q)
    if D > 0 and abs(n) == 1:
        return _represent_unit(q, n)
    if D < 0 and (n > 0) != (q.a > 0):
        return None
    if obstructed(q, n):
        return None
    A, B, C = q
    limit = bound if bound is not None else 10**4
    complete = False
    if D < 0:
        # |y| <= sqrt(4An/|D|) and |x| <= sqrt(4Cn/|D|)
        box = max(isqrt(4 * A * n // -D), isqrt(4 * C * n // -D)) + 1
        complete = box <= limit
        limit = min(limit, box)
    k, prev = 1, 0
    while True:
        k = min(k, limit)
        hits = []
        for y in range(-k, k + 1):
            disc_x = D * y * y + 4 * A * n
            if disc_x < 0 or not is_square(disc_x):
                continue
            sr = isqrt(disc_x)
            for num in {-B * y + sr, -B * y - sr}:
                if num % (2 * A):
                    continue
                x = num // (2 * A)
                if prev < max(abs(x), abs(y)) <= k and gcd(x, y) == 1:
                    hits.append(_canon(x, y))
        if hits:
            return min(hits, key=lambda v: (max(abs(v[0]), abs(v[1])),
                                            abs(v[0]) + abs(v[1]), v[1] < 0, v))
        if k >= limit:
            if complete:
                return None
            raise BoundExhausted(f"represent {n} by {q}", limit)
        prev, k = k, 2 * k


def pell_to_two_squares(m: int, r: int, s: int) -> tuple[int, int]:
    """From r^2 - m s^2 = -1 build m = a^2 + b1^2 by reducing (ms, 2r, s)."""
    if r * r - m * s * s != -1:
        raise DomainError(f"{r}^2 - {m}*{s}^2 != -1")
    if s < 0:
        r, s = -r, -s
    q2 = Form(m * s, 2 * r, s)
    R, S = reduce(q2)
    assert R == Form(1, 0, 1), R
    S0 = S.inv()
    a, b2, c = act(Form(1, 0, -m), S0.T)
    assert c == -a and b2 % 2 == 0 and a * a + (b2 // 2) ** 2 == m
    return a, b2 // 2
