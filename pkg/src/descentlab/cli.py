"""Command-line front end.

Exit codes: 0 success, 2 domain error, 3 search bound exhausted. JSON output
renders every integer as a decimal string.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import arith, classfield, elliptic, hasse, pell
from .arith import BoundExhausted, DomainError, FactorCache
from .forms import Form
from .gaussian import GInt

EXIT_OK, EXIT_DOMAIN, EXIT_BOUND = 0, 2, 3


def jsonable(x):
    """Recursively convert results to JSON-ready values, ints as strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, (Form, GInt)) or hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in seq]
    raise TypeError(f"cannot render {type(x).__name__}")


def _int(text: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}") from None


def _pos(text: str) -> int:
    v = _int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _tup(w) -> str:
    if w is None:
        return "none"
    if isinstance(w, str):
        return w
    return "(" + ",".join(map(str, w)) + ")"


# -- command handlers: each returns (json payload, text lines) --------------

def _arith_factor(ns):
    f = arith.factor(ns.n)
    return ({"n": ns.n, "sign": f.sign, "factors": [[p, e] for p, e in f.pairs]},
            [f"{ns.n} = {f}"])


def _arith_jacobi(ns):
    v = arith.jacobi(ns.a, ns.n)
    return {"a": ns.a, "n": ns.n, "value": v}, [f"({ns.a}/{ns.n}) = {v}"]


def _arith_quartic(ns):
    v = arith.quartic_symbol(ns.a, ns.p)
    return {"a": ns.a, "p": ns.p, "value": v}, [f"({ns.a}/{ns.p})_4 = {v}"]


def _arith_twosquares(ns):
    reps = arith.two_squares_reps(ns.m)
    return ({"m": ns.m, "reps": [{"a": r.a, "b": r.b} for r in reps]},
            [f"{ns.m} = {r.a}^2 + 4*{r.b}^2" for r in reps])


def _pell_fund(ns):
    sol = pell.fundamental_solution(ns.m, ns.rhs)
    if sol is None:
        return ({"m": ns.m, "rhs": ns.rhs, "solution": None},
                [f"T^2 - {ns.m} U^2 = {ns.rhs}: no solution"])
    return ({"m": ns.m, "rhs": ns.rhs, "solution": sol},
            [f"T={sol.T} U={sol.U}"])


def _pell_descend1(ns):
    rep = pell.first_descent(ns.m)
    lines = []
    for br in rep.branches:
        w = "" if br.witness is None else f" (R,S)=({br.witness[0]},{br.witness[1]})"
        lines.append(f"c={br.c} d={br.d} {br.form}: {br.status}{w}")
    return rep, lines


def _negpell(ns):
    v = pell.second_descent(ns.m)
    return v, [v.text()]


def _pell_tquf(ns):
    r = pell.qb_class_distribution(ns.m)
    r = dict(r, forms=[{"form": q, "class": k} for q, k in r["forms"]])
    lines = [f"m={ns.m} negative Pell {'solvable' if r['solvable'] else 'unsolvable'};"
             f" h={r['h_narrow']} h_wide={r['h_wide']}"]
    lines += [f"Q_b={f['form']} ~ {f['class']}" for f in r["forms"]]
    lines += [f"{k}: {'ok' if v else 'FAIL'}" for k, v in r["checks"].items()]
    return r, lines


def _cf_quartic(ns):
    gens = classfield.quartic_generator(ns.m)
    data = {"m": ns.m, "generators": [
        {"a": a, "b": b, "radicand": GInt(a, 2 * b), "unramified": u} for a, b, u in gens]}
    lines = [f"sqrt({GInt(a, 2 * b)}): {'unramified' if u else 'ramified'}" for a, b, u in gens]
    return data, lines


def _cf_octic(ns):
    cert = classfield.octic_certificate(ns.a, ns.b, ns.bound)
    if cert is None:
        return ({"a": ns.a, "b": ns.b, "certificate": None},
                [f"(a,b)=({ns.a},{ns.b}): no cyclic octic extension"])
    lines = [f"m={cert.m} (a,b)=({cert.a},{cert.b}) (r,s,x)={_tup(cert.rs_witness)}",
             f"alpha={cert.alpha} beta={cert.beta} gamma={cert.gamma}",
             f"mu = {cert.mu_display}",
             f"octic unramified: {cert.octic_unramified}"]
    lines += [f"correction: {c}" for c in cert.corrections]
    return cert, lines


def _cf_t14(ns):
    r = classfield.t14_report(ns.p, ns.q, ns.bound)
    lines = [f"p={ns.p} q={ns.q} two={r['two']} four={r['four']} embeds={r['embeds']}"]
    for row in r["rows"]:
        lines.append(f"(b,a,-b)=({row['b']},{row['a']},{-row['b']}) sym2={row['sym2']}"
                     f" witness={_tup(row['witness'])}")
    return r, lines


def _render_row(kind, row):
    if kind.startswith("octic"):
        c = row["certificate"]
        line = (f"p={row['p']} h={row['h']} (a,b)=({c.a},{c.b}) alpha={c.alpha}"
                f" beta={c.beta} gamma={c.gamma} [{row['status']}]")
        if row["corrections"]:
            line += " corrections: " + "; ".join(row["corrections"])
        return [line]
    head = f"{row['p']}*{row['q']} structure={_tup(row['structure'])}"
    if "eps" in row:
        head += f" eps={_tup(row['eps'])}"
    if "ok" in row:
        head += " [ok]" if row["ok"] else " [FAIL]"
    out = [head]
    for r in row["rows"]:
        out.append(f"  ({r['b']},{r['a']},{-r['b']}) sym2={r['sym2']} witness={_tup(r['witness'])}")
    for cell in row.get("cells", []):
        if cell.get("witness") == "alternate":
            out.append(f"  note: printed witness for ({cell['b']},{cell['a']}) is valid but not least")
    return out


def _cf_table(ns):
    rows = classfield.build_table(ns.kind, ns.bound)
    lines = [ln for row in rows for ln in _render_row(ns.kind, row)]
    return {"kind": ns.kind, "rows": rows}, lines


def _ell_search(ns):
    w = elliptic.torsor_search(ns.p, ns.bound)
    x, y = w.point
    return w, [f"p={w.p} (xi,eta)=({w.xi},{w.eta}) X={w.X} Y={w.Y} Z={w.Z}",
               f"point x={x} y={y}", "rank >= 1 certificate"]


def _hasse_laws(ns):
    reps = arith.two_squares_reps(ns.m)
    a, b = classfield.normalize_sign(reps[0].a, reps[0].b)
    r = hasse.check_circle_laws(a, b, samples=ns.samples, seed=ns.seed, box=ns.box)
    lines = [f"m={r['m']} (a,b)=({a},{b}) samples={ns.samples} box={ns.box}"]
    for law, e in r["laws"].items():
        lines.append(f"{law}: {e['checked']} checked, {e['failures']} failures")
    lines.append("ok" if r["ok"] else "FAIL")
    return r, lines


def _verify(ns):
    from .verify import verify_references

    r = verify_references()
    lines = [f"{c['status']:8s} {c['name']}" + (f": {c['detail']}" if c["detail"] else "")
             for c in r["checks"]]
    ct = r["counts"]
    lines.append(f"{ct['pass']} pass, {ct['erratum']} erratum, {ct['fail']} fail")
    r = dict(r)
    r.pop("seconds")  # keep output byte-identical across runs
    return r, lines


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a flag given before the subcommand from being reset
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON")
    common.add_argument("--cache", metavar="PATH", default=argparse.SUPPRESS,
                        help="factorization cache file")

    p = argparse.ArgumentParser(prog="descentlab", parents=[common],
                                description="Exact 2-descent and class field computations.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def cmd(parent, name, fn, help_):
        sp = parent.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    ar = sub.add_parser("arith", help="integer arithmetic").add_subparsers(dest="sub", required=True)
    cmd(ar, "factor", _arith_factor, "factor n").add_argument("n", type=_int)
    sp = cmd(ar, "jacobi", _arith_jacobi, "Jacobi symbol (a/n)")
    sp.add_argument("a", type=_int)
    sp.add_argument("n", type=_int)
    sp = cmd(ar, "quartic", _arith_quartic, "quartic symbol (a/p)_4")
    sp.add_argument("a", type=_int)
    sp.add_argument("p", type=_int)
    cmd(ar, "twosquares", _arith_twosquares, "m = a^2 + 4b^2").add_argument("m", type=_int)

    pl = sub.add_parser("pell", help="Pell equations").add_subparsers(dest="sub", required=True)
    sp = cmd(pl, "fund", _pell_fund, "fundamental solution")
    sp.add_argument("m", type=_int)
    sp.add_argument("--rhs", type=_int, default=-4, choices=(4, -4, 1, -1))
    cmd(pl, "descend1", _pell_descend1, "first descent").add_argument("m", type=_int)
    cmd(pl, "descend2", _negpell, "second descent").add_argument("m", type=_int)
    cmd(pl, "negpell", _negpell, "decide T^2 - m U^2 = -4").add_argument("m", type=_int)
    cmd(pl, "tquf", _pell_tquf, "Q_b classes in Cl[2]").add_argument("m", type=_int)
    cmd(sub, "negpell", _negpell, "alias of 'pell negpell'").add_argument("m", type=_int)

    cf = sub.add_parser("cf", help="class fields").add_subparsers(dest="sub", required=True)
    cmd(cf, "quartic", _cf_quartic, "cyclic quartic generators").add_argument("m", type=_int)
    sp = cmd(cf, "octic", _cf_octic, "octic certificate for (a, b)")
    sp.add_argument("a", type=_int)
    sp.add_argument("b", type=_int)
    sp.add_argument("--bound", type=_pos, default=classfield.DEFAULT_BOUND)
    sp = cmd(cf, "t14", _cf_t14, "octic embedding for m = pq")
    sp.add_argument("p", type=_int)
    sp.add_argument("q", type=_int)
    sp.add_argument("--bound", type=_pos, default=classfield.DEFAULT_BOUND)
    sp = cmd(cf, "table", _cf_table, "regenerate a reference table")
    sp.add_argument("kind", choices=("octic-all", "octic-unramified", "caseA", "caseB"))
    sp.add_argument("--bound", type=_pos, default=classfield.DEFAULT_BOUND)

    el = sub.add_parser("ell", help="elliptic curves").add_subparsers(dest="sub", required=True)
    sp = cmd(el, "search", _ell_search, "torsor search on y^2 = x(x^2 - 4p)")
    sp.add_argument("-p", type=_int, required=True)
    sp.add_argument("--bound", type=_pos, default=elliptic.DEFAULT_BOUND)

    hs = sub.add_parser("hasse", help="circle operation").add_subparsers(dest="sub", required=True)
    sp = cmd(hs, "laws", _hasse_laws, "check the circle laws")
    sp.add_argument("-m", type=_int, required=True)
    sp.add_argument("--samples", type=_pos, default=500)
    sp.add_argument("--box", type=_int, default=0)
    sp.add_argument("--seed", type=_int, default=0)

    cmd(sub, "verify", _verify, "run all reference checks")
    return p


def _install_cache(path):
    path = os.environ.get("DESCENTLAB_CACHE") or path
    if not path:
        return None
    cache = FactorCache(path)
    arith.set_default_cache(cache)
    return cache


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ns = build_parser().parse_args(argv)
    cache = _install_cache(getattr(ns, "cache", None))
    try:
        payload, lines = ns.fn(ns)
        code = EXIT_OK
        if ns.fn is _verify and not payload["ok"]:
            code = 1
    except DomainError as e:
        print(f"domain error: {e}", file=err)
        return EXIT_DOMAIN
    except BoundExhausted as e:
        print(f"bound exhausted: {e}", file=err)
        return EXIT_BOUND
    finally:
        if cache is not None:
            arith.set_default_cache(None)
            if cache.dirty:
                cache.save()
    if getattr(ns, "json", False):
        out.write(json.dumps(jsonable(payload), indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
