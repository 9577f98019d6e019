from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from descentlab.arith import BoundExhausted, DomainError
from descentlab.elliptic import (
    TorsorWitness,
    identity_check,
    on_curve,
    reconstruct_point,
    torsor_search,
)
from conftest import brute_primes


def test_797():
    w = torsor_search(797)
    assert (w.a, w.b, w.xi, w.eta) == (11, 13, 1462, 771)
    assert (w.X, w.Y, w.Z) == (2731885, 1773371, 210600981540301)
    x, y = w.point
    assert x == Fraction(5948166935620325, 3144844703641)
    assert y == Fraction(458544116976814482315845, 5576976396940543811)
    assert on_curve(797, x, y) and y * y == x * (x * x - 3188)


def test_small_primes():
    w = torsor_search(5)
    assert (w.xi, w.eta) == (1, 0) and w.point == (5, 5)
    assert torsor_search(13).point == (13, 39)


def test_witnesses_certify_points():
    found = 0
    for p in brute_primes(400):
        if p % 4 != 1:
            continue
        try:
            w = torsor_search(p, bound=200)
        except BoundExhausted:
            continue
        found += 1
        assert w.check()
        x, y = w.point
        # torsion on y^2 = x^3 - 4p x is {O, (0, 0)}, so y != 0 has infinite order
        assert on_curve(p, x, y) and y != 0
    assert found > 20


def test_search_is_least():
    w = torsor_search(797)
    from math import gcd, isqrt

    for k in range(1, 60):
        for xi, eta in [(k, e) for e in range(k)] + [(x, k) for x in range(k + 1)]:
            if (xi - eta) % 2 == 0 or gcd(xi, eta) != 1:
                continue
            r, s = xi * xi - eta * eta, 2 * xi * eta
            for bb in (w.b, -w.b):
                v = bb * r * r + w.a * r * s - bb * s * s
                assert v < 0 or isqrt(v) ** 2 != v


def test_errors():
    with pytest.raises(DomainError):
        torsor_search(7)
    with pytest.raises(DomainError):
        torsor_search(21)
    with pytest.raises(BoundExhausted) as e:
        torsor_search(797, bound=100)
    assert e.value.bound == 100


def test_reconstruct_rejects_non_witness():
    w = TorsorWitness(797, 11, 13, 2, 1)  # Q_b(r, s) = 41 is not a square
    assert w.Q == 41 and not w.check()
    with pytest.raises(ArithmeticError):
        reconstruct_point(w)
    w = TorsorWitness(797, 11, 13, 1, 2)
    assert w.Q < 0 and not w.check()
    with pytest.raises(DomainError):
        w.Y


@given(st.integers(-300, 300), st.integers(-300, 300),
       st.integers(-99, 99).map(lambda t: 2 * t + 1), st.integers(-200, 200))
def test_identity_check(xi, eta, a, b):
    assert identity_check(xi, eta, a, b)


def test_json():
    j = torsor_search(797).to_json()
    assert j["Z"] == "210600981540301" and j["label"] == "rank >= 1 certificate"
    assert j["point"]["x"] == "5948166935620325/3144844703641"
