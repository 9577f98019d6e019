import pytest
from hypothesis import given, strategies as st

from descentlab.arith import DomainError
from descentlab.gaussian import (
    I,
    UNITS,
    GInt,
    g_expand,
    g_factor,
    g_gcd,
    g_quadratic_symbol,
    is_gaussian_prime,
    second_descent_factor,
)

gints = st.builds(GInt, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
small = st.builds(GInt, st.integers(-60, 60), st.integers(-60, 60))


def test_ring_basics():
    z = GInt(2, 3)
    assert z * z.conj() == 13 and z.norm() == 13
    assert I * I == -1 and (1 + I) ** 4 == -4
    assert GInt(3, -1) - 3 == -I and 2 + z == GInt(4, 3)
    with pytest.raises(ValueError):
        z ** -1


@given(gints, gints.filter(bool))
def test_divmod_is_euclidean(x, y):
    q, r = divmod(x, y)
    assert q * y + r == x
    assert 2 * r.norm() <= y.norm()


@given(small.filter(bool), small.filter(bool))
def test_gcd_divides_and_is_normalized(x, y):
    g = g_gcd(x, y)
    assert g.divides(x) and g.divides(y)
    assert g.re > 0 and g.im >= 0
    # any common divisor of small norm divides g
    for d in (GInt(1, 1), GInt(2, 1), GInt(1, 2), GInt(3)):
        if d.divides(x) and d.divides(y):
            assert d.divides(g)


def test_gcd_zero():
    assert g_gcd(0, GInt(0, -3)) == 3
    with pytest.raises(DomainError):
        g_gcd(0, 0)


@given(small.filter(bool))
def test_factor_roundtrip(z):
    unit, pairs = g_factor(z)
    assert unit in UNITS
    assert g_expand(unit, pairs) == z
    assert all(is_gaussian_prime(p) for p, _ in pairs)


def test_factor_examples():
    unit, pairs = g_factor(89)
    assert unit == -I and pairs == [(GInt(5, 8), 1), (GInt(8, 5), 1)]
    unit, pairs = g_factor(2)
    assert pairs == [(GInt(1, 1), 2)] and unit == -I
    with pytest.raises(DomainError):
        g_factor(0)


def test_gaussian_primes():
    assert is_gaussian_prime(GInt(3)) and is_gaussian_prime(GInt(0, 7))
    assert is_gaussian_prime(GInt(1, 1)) and is_gaussian_prime(GInt(2, 1))
    assert not is_gaussian_prime(GInt(5)) and not is_gaussian_prime(GInt(9))
    assert not is_gaussian_prime(GInt(3, 3))


def test_quadratic_symbol_brute():
    # [alpha/pi] = +1 iff alpha is a square mod pi; Z[i]/pi ~ Z/p for split p
    for pi in (GInt(2, 1), GInt(3, 2), GInt(5, 4), GInt(3)):
        n = pi.norm()
        residues = {(GInt(x, y) ** 2) % pi for x in range(n) for y in range(n)}
        residues = {z for z in residues if z}
        reps = {GInt(x, y) % pi for x in range(n) for y in range(n)}
        for z in reps:
            if not z:
                continue
            sym = g_quadratic_symbol(z, pi)
            assert (sym == 1) == any((z - r) % pi == 0 for r in residues)
    with pytest.raises(DomainError):
        g_quadratic_symbol(3, GInt(1, 1))
    with pytest.raises(DomainError):
        g_quadratic_symbol(GInt(2, 1) * 3, GInt(2, 1))
    with pytest.raises(DomainError):
        g_quadratic_symbol(3, GInt(5))


def test_second_descent_factor_4777():
    mu, rho = second_descent_factor(-325431264, 4777)
    assert (mu, rho) == (GInt(59, 36), GInt(587, 2089))
    assert mu * rho * rho == GInt(-325431264, 2)
    assert mu.re % 2 == 1 and mu.im % 2 == 0 and mu.re > 0


def test_second_descent_factor_small():
    mu, rho = second_descent_factor(64, 41)
    assert mu.norm() == 41 and mu * rho * rho == GInt(64, 2)
    with pytest.raises(DomainError):
        second_descent_factor(5, 41)


@pytest.mark.parametrize("text,value", [
    ("3", GInt(3)), ("-i", -I), ("i", I), ("2+3i", GInt(2, 3)), ("6-6i", GInt(6, -6)),
    ("-3+8i", GInt(-3, 8)), ("-7", GInt(-7)), ("0", GInt(0)), ("5i", GInt(0, 5)),
    ("-12i", GInt(0, -12)),
])
def test_parse(text, value):
    assert GInt.parse(text) == value
    assert GInt.parse(str(value)) == value


@pytest.mark.parametrize("bad", ["", "i3", "2+", "x", "1.5"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        GInt.parse(bad)


def test_json_roundtrip():
    z = GInt(-325431264, 2)
    assert GInt.from_json(z.to_json()) == z and z.to_json()["re"] == "-325431264"
