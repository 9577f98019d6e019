"""Pell conics T^2 - m U^2 = +-4 and the two 2-descents for the negative equation."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .arith import (
    DomainError,
    admissible,
    divisors,
    factor,
    hilbert_symbol,
    is_prime,
    is_square,
    jacobi,
    quartic_symbol,
    relevant_places,
    two_squares_reps,
)
from .forms import (
    Form,
    automorph,
    class_group,
    cycle,
    principal_form,
    represent,
    strongly_ambiguous_classes,
)

SOLVABLE, UNSOLVABLE, UNDECIDED = "solvable", "unsolvable", "undecided"


@dataclass(frozen=True)
class PellSolution:
    m: int
    T: int
    U: int
    rhs: int
    fundamental: bool = True

    def __post_init__(self):
        if self.T * self.T - self.m * self.U * self.U != self.rhs:
            raise ArithmeticError(f"{self.T}^2 - {self.m}*{self.U}^2 != {self.rhs}")

    def to_json(self):
        return {"m": str(self.m), "T": str(self.T), "U": str(self.U),
                "rhs": str(self.rhs), "fundamental": self.fundamental}


def _order_disc(m: int) -> int:
    return m if m % 4 in (0, 1) else 4 * m


def _unit_plus(m: int) -> tuple[int, int]:
    """Least (T, U), U > 0, with T^2 - m U^2 = 4, read off the automorph of
    the principal form (one period of its reduced cycle)."""
    D = _order_disc(m)
    G = automorph(principal_form(D))
    t, u = abs(G.r + G.u), abs(G.t)
    if D != m:
        t, u = t, 2 * u  # t^2 - 4m u^2 = 4 -> (t, 2u) for T^2 - m U^2 = 4
    return t, u


def _unit_minus(m: int, plus: tuple[int, int]) -> tuple[int, int] | None:
    """Square root of the norm +1 generator, when it has norm -1."""
    T, U = plus
    if not is_square(T - 2) or (T + 2) % m or not is_square((T + 2) // m):
        return None
    return isqrt(T - 2), isqrt((T + 2) // m)


def _mul(m, x, y):
    (t1, u1), (t2, u2) = x, y
    return (t1 * t2 + m * u1 * u2) // 2, (t1 * u2 + t2 * u1) // 2


def fundamental_solution(m: int, rhs: int) -> PellSolution | None:
    """Least positive solution of T^2 - m U^2 = rhs for rhs in {4, -4, 1, -1}."""
    if m <= 0 or is_square(m):
        raise DomainError(f"m = {m} must be positive and not a square")
    if rhs not in (4, -4, 1, -1):
        raise DomainError(f"rhs {rhs} not in {{+-1, +-4}}")
    plus = _unit_plus(m)
    minus = _unit_minus(m, plus)
    base = plus if rhs > 0 else minus
    if base is None:
        return None
    if abs(rhs) == 4:
        return PellSolution(m, base[0], base[1], rhs)
    # powers of the generator with even coordinates form a subgroup, so the
    # least one, k0, decides both signs
    gen = minus or plus
    x = gen
    for k0 in range(1, 13):
        if x[0] % 2 == 0 and x[1] % 2 == 0:
            break
        x = _mul(m, x, gen)
    else:
        raise ArithmeticError(f"no even power found for m = {m}")
    sign = -1 if (minus and k0 % 2) else 1
    if rhs == sign:
        return PellSolution(m, x[0] // 2, x[1] // 2, rhs)
    if rhs == -1:
        return None
    x = _mul(m, x, x)
    return PellSolution(m, x[0] // 2, x[1] // 2, rhs)


def negative_pell_solvable(m: int) -> bool:
    return fundamental_solution(m, -4) is not None


# -- first descent ----------------------------------------------------------

@dataclass(frozen=True)
class Branch:
    c: int
    d: int
    status: str
    witness: tuple[int, int] | None = None

    @property
    def form(self) -> Form:
        return Form(self.c, -self.c, (self.c - self.d) // 4)

    def to_json(self):
        w = None if self.witness is None else [str(v) for v in self.witness]
        return {"c": str(self.c), "d": str(self.d), "status": self.status, "witness": w}


@dataclass(frozen=True)
class DescentReport:
    m: int
    branches: tuple[Branch, ...]

    def solvable(self) -> list[Branch]:
        return [b for b in self.branches if b.status == SOLVABLE]

    def to_json(self):
        return {"m": str(self.m), "branches": [b.to_json() for b in self.branches]}


def _check_m(m: int):
    if m <= 1 or m % 4 != 1:
        raise DomainError(f"m = {m} must be > 1 and = 1 mod 4")
    if not factor(m).is_squarefree():
        raise DomainError(f"m = {m} is not squarefree")


def first_descent(m: int) -> DescentReport:
    """Decide c R^2 - c R S + (c-d)/4 S^2 = 1 for every signed cd = m.

    The form (c, -c, (c-d)/4) has discriminant m, so each branch is settled
    by the reduced cycle; no branch is left undecided.
    """
    _check_m(m)
    out = []
    for sign in (1, -1):
        for c0 in divisors(m):
            c = sign * c0
            d = m // c
            F = Form(c, -c, (c - d) // 4)
            w = represent(F, 1)
            if w is not None:
                R, S = w
                assert c * R * R - c * R * S + (c - d) // 4 * S * S == 1
                out.append(Branch(c, d, SOLVABLE, w))
            else:
                out.append(Branch(c, d, UNSOLVABLE))
    return DescentReport(m, tuple(out))


# -- second descent ---------------------------------------------------------

def qb(a: int, b: int) -> Form:
    return Form(b, a, -b)


def _check_admissible(m: int):
    if not admissible(m):
        raise DomainError(f"m = {m} must be odd, squarefree, with all primes = 1 mod 4")


def rational_solvability(m: int, a: int, b: int) -> dict:
    """Is b x^2 + a xy - b y^2 = 1 solvable over Q?  Decided by (b/p) for p | m;
    the Hilbert symbols (b, m)_v are reported alongside."""
    if a * a + 4 * b * b != m:
        raise DomainError(f"{a}^2 + 4*{b}^2 != {m}")
    _check_admissible(m)
    out = {"m": m, "a": a, "b": b, "status": SOLVABLE, "prime": None,
           "symbols": []}
    for p in factor(m).primes:
        jb, ja = jacobi(b, p), jacobi(a, p)
        out["symbols"].append({"p": p, "b": jb, "a": ja})
        if jb == -1 and out["prime"] is None:
            out["status"], out["prime"] = UNSOLVABLE, p
    out["hilbert"] = {str(v): hilbert_symbol(b, m, v) for v in relevant_places(b, m)}
    return out


@dataclass
class NegPellVerdict:
    m: int
    status: str
    witness: dict | None = None
    half_solution: tuple[int, int] | None = None
    obstruction: list = field(default_factory=list)

    def text(self) -> str:
        if self.status == SOLVABLE:
            w = self.witness
            return (f"T={w['T']} U={w['U']} via (a,b)=({w['a']},{w['b']}),"
                    f"(x,y)=({w['x']},{w['y']})")
        parts = []
        for ob in self.obstruction:
            if ob["prime"] is not None:
                p = ob["prime"]
                parts.append(f"Q_b=({ob['b']},{ob['a']},{-ob['b']}): ({ob['b']}/{p})={ob['jacobi_b']}"
                             f" ({ob['a']}/{p})={ob['jacobi_a']}")
            else:
                parts.append(f"Q_b=({ob['b']},{ob['a']},{-ob['b']}): not principal")
        return f"m={self.m} unsolvable; " + "; ".join(parts)

    def to_json(self):
        w = None if self.witness is None else {k: str(v) for k, v in self.witness.items()}
        hs = None if self.half_solution is None else [str(v) for v in self.half_solution]
        obs = [{k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v)
                for k, v in ob.items()} for ob in self.obstruction]
        return {"m": str(self.m), "status": self.status, "witness": w,
                "half_solution": hs, "obstruction": obs}


def second_descent(m: int) -> NegPellVerdict:
    """Search the forms Q_b = (b, a, -b) over m = a^2 + 4b^2 for Q_b(x, y) = 1."""
    _check_admissible(m)
    obstruction = []
    for rep in two_squares_reps(m):
        a, b = rep.a, rep.b
        sol = represent(qb(a, b), 1)
        if sol is not None:
            x, y = sol
            T = a * x * x - 4 * b * x * y - a * y * y
            U = x * x + y * y
            assert b * x * x + a * x * y - b * y * y == 1
            assert T * T - m * U * U == -4
            half = None
            if T % 2 == 0 and U % 2 == 0:
                half = (-T // 2, U // 2)
                assert half[0] ** 2 - m * half[1] ** 2 == -1
            return NegPellVerdict(m, SOLVABLE,
                                  {"a": a, "b": b, "x": x, "y": y, "T": T, "U": U}, half)
        p = next((p for p in factor(m).primes if jacobi(b, p) == -1), None)
        if p is None:
            obstruction.append({"a": a, "b": b, "prime": None,
                                "jacobi_b": None, "jacobi_a": None})
        else:
            obstruction.append({"a": a, "b": b, "prime": p,
                                "jacobi_b": jacobi(b, p), "jacobi_a": jacobi(a, p)})
    return NegPellVerdict(m, UNSOLVABLE, obstruction=obstruction)


def scholz_criterion(p: int, q: int) -> str:
    """Dirichlet-Scholz verdict on T^2 - pq U^2 = -4."""
    for r in (p, q):
        if r % 4 != 1 or not is_prime(r):
            raise DomainError(f"{r} is not a prime = 1 mod 4")
    if p == q:
        raise DomainError("p = q")
    if jacobi(p, q) == -1:
        return SOLVABLE
    e1, e2 = quartic_symbol(p, q), quartic_symbol(q, p)
    if e1 != e2:
        return UNSOLVABLE
    return SOLVABLE if e1 == -1 else UNDECIDED


def burde_identity(p: int, q: int) -> tuple[int, int]:
    """(jacobi(AC + 4BD, p), (p/q)_4 (q/p)_4) for p = A^2 + 4B^2, q = C^2 + 4D^2."""
    (P,), (Q,) = two_squares_reps(p), two_squares_reps(q)
    lhs = jacobi(P.a * Q.a + 4 * P.b * Q.b, p)
    return lhs, quartic_symbol(p, q) * quartic_symbol(q, p)


def euler_identity(a: int, p: int, q: int) -> bool:
    """a p^2 - 1 = q^2 implies a (2pq)^2 + 1 = (2q^2 + 1)^2."""
    if a * p * p - 1 != q * q:
        raise DomainError("need a p^2 - 1 = q^2")
    return a * (2 * p * q) ** 2 + 1 == (2 * q * q + 1) ** 2


def qb_class_distribution(m: int) -> dict:
    """Where the classes of the forms Q_b fall inside Cl(m)[2], with Cl(m)
    the wide (ideal) class group; C is the subgroup of strongly ambiguous
    classes."""
    _check_admissible(m)
    G = class_group(m)
    two = set(G.wide_two_torsion())
    C = set(strongly_ambiguous_classes(m, G, wide=True))
    one = G.wide_key(G.identity)
    solvable = negative_pell_solvable(m)
    reps = two_squares_reps(m)
    keys = [G.wide_key(qb(r.a, r.b)) for r in reps]
    counts: dict = {}
    for k in keys:
        counts[k] = counts.get(k, 0) + 1
    t = len(factor(m))
    checks = {"in_two_torsion": all(k in two for k in keys),
              "two_torsion_order": len(two) == 2 ** (t - 1)}
    if solvable:
        checks["distinct"] = len(counts) == len(keys)
        checks["exhaust"] = set(keys) == two
        checks["one_principal"] = keys.count(one) == 1
    else:
        checks["index_two"] = C <= two and 2 * len(C) == len(two)
        checks["outside_C"] = not (set(keys) & C)
        checks["two_to_one"] = all(v == 2 for v in counts.values())
        checks["cover"] = set(keys) == two - C
    return {"m": m, "solvable": solvable, "h_narrow": G.h,
            "h_wide": len(G.wide_representatives), "two_torsion": sorted(two),
            "C": sorted(C), "forms": [(qb(r.a, r.b), k) for r, k in zip(reps, keys)],
            "checks": checks, "ok": all(checks.values())}


def principal_cycle_has_minus_one(m: int) -> bool:
    """Independent check of -4 solvability: does (-1, *, *) occur in the
    principal cycle of discriminant m (m = 1 mod 4)?"""
    return any(f.a == -1 for f, _ in cycle(principal_form(m)))
