"""Hot search loops behind a backend switch.

Backends: ``numba`` (default when importable), ``numpy``. Setting
``DESCENTLAB_NO_NUMBA=1`` selects the numpy path. Both work in int64;
inputs whose values could leave int64 go to the exact Python path.
"""

import os

from . import _exact, _vec

INT64_SAFE = 2**62

try:
    if os.environ.get("DESCENTLAB_NO_NUMBA", "") not in ("", "0"):
        raise ImportError("disabled by DESCENTLAB_NO_NUMBA")
    from . import _jit
except ImportError:
    _jit = None

BACKEND = "numba" if _jit is not None else "numpy"


def available_backends():
    return ["numba", "numpy", "exact"] if _jit is not None else ["numpy", "exact"]


def use_backend(name):
    """Switch the process-wide backend; returns the previous one."""
    global BACKEND
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available")
    old, BACKEND = BACKEND, name
    return old


def _backend(bound_value):
    if bound_value >= INT64_SAFE:
        return "exact"
    return BACKEND


def qb_scan(a, b, k0, k1, parity=False):
    """First shell k in [k0, k1] (max-norm of (r, s)) holding primitive
    solutions of b r^2 + a r s - b s^2 = 2 x^2; returns (k, [(r, s, x), ...])
    or (-1, [])."""
    if k1 < k0:
        return -1, []
    worst = (2 * abs(b) + abs(a)) * k1 * k1
    mod = _backend(worst)
    if mod == "exact":
        return _exact.qb_scan(a, b, k0, k1, parity)
    impl = _jit if mod == "numba" else _vec
    k, hits = impl.qb_scan(a, b, k0, k1, bool(parity))
    return int(k), [tuple(int(v) for v in row) for row in hits]


def torsor_scan(a, b, k0, k1):
    """First coprime (xi, eta) >= 0, xi != eta mod 2, ordered by max(xi, eta)
    then by (eta, xi), with b' r^2 + a r s - b' s^2 a square for b' = b or
    -b, where r = xi^2 - eta^2, s = 2 xi eta. Returns (xi, eta, b') or None."""
    if k1 < k0:
        return None
    worst = (2 * abs(b) + abs(a)) * (2 * k1 * k1) ** 2
    mod = _backend(worst)
    if mod == "exact":
        return _exact.torsor_scan(a, b, k0, k1)
    impl = _jit if mod == "numba" else _vec
    xi, eta, t = impl.torsor_scan(a, b, k0, k1)
    if t == 0:
        return None
    return int(xi), int(eta), b * int(t)
