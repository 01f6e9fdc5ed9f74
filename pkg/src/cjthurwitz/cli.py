"""Command line interface.

Subcommands map one-to-one onto library entry points; `--route all`
cross-checks every available route and fails loudly on disagreement.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from .action import JMVariant, act, parse_symfunc, structure_coefficient, SymFunc
from .cache import JsonlStore
from .errors import CJTError
from .exact import BRat, CJTPoly, specialize_b, specialize_point
from .golden import GOLDEN_ACTION, golden_rows
from .oracle import normalization, oracle_weight
from .partitions import as_partition, partitions_of
from .recursions import (MonotoneTable, b_double_h,
                         connected_from_disconnected, refined_monotone_H,
                         refined_simple_h, single_monotone_N)
from .toprec import (CLOSED_FORMS, laplace_beltrami_check,
                     proportionality_check, virasoro_residual)
from .tropical import export_dot, single_monotone_tropical, sweep_b_double


def _parse_partition(text: str):
    return as_partition(int(x) for x in text.split(","))


def _parse_spec(text: str):
    if text in ("cjt", "b"):
        return text
    if text == "zonal":
        return (Fraction(1), Fraction(1))
    if text == "schur":
        return (Fraction(1, 2), Fraction(0))
    if text.startswith("point:"):
        cj, t = text[len("point:"):].split(",")
        return (Fraction(cj), Fraction(t))
    raise argparse.ArgumentTypeError(f"unknown spec {text!r}")


def _apply_spec(value, spec):
    if isinstance(value, BRat):
        if spec == "cjt":
            raise CJTError("value is already b-specialized")
        if spec == "b":
            return value
        cj, t = spec
        b = 2 * cj - 1
        if t != b:
            raise CJTError("a point spec for a b-route needs T = 2*CJ - 1")
        return value.eval(b)
    if spec == "cjt":
        return value
    if spec == "b":
        return specialize_b(value)
    cj, t = spec
    return specialize_point(value, cj, t)


def _value_json(value):
    if isinstance(value, CJTPoly):
        return {"kind": "cjt", "text": value.text(), "terms": value.to_json()}
    if isinstance(value, BRat):
        return {"kind": "brat", "text": value.text(), **value.to_json()}
    if isinstance(value, Fraction):
        return {"kind": "rational", "text": str(value),
                "num": value.numerator, "den": value.denominator}
    return {"kind": "other", "text": str(value)}


def _emit(payload, started, out="json"):
    payload["timing_ms"] = int((time.monotonic() - started) * 1000)
    print(json.dumps(payload, indent=2, default=str))


def _k_from_genus(args, nu, mu) -> int:
    if args.k is not None:
        return args.k
    if args.g2 is None:
        raise CJTError("need either --k or --g2")
    k = args.g2 - 2 + len(nu) + len(mu)
    if k < 0:
        raise CJTError(f"g2={args.g2} gives a negative step count")
    return k


def cmd_act(args, started):
    F = parse_symfunc(args.func)
    lam = _parse_partition(args.type)
    variant = JMVariant.REFINED if args.variant == "refined" else JMVariant.PRELIMINARY
    tv = act(F, lam, variant)
    spec = args.spec
    value = {",".join(map(str, mu)): _value_json(_apply_spec(coeff, spec))
             for mu, coeff in sorted(tv.items(), reverse=True)}
    _emit({"query": {"command": "act", "n": sum(lam), "func": args.func,
                     "type": list(lam), "variant": args.variant},
           "route": "jm-action", "value": value, "spec": str(args.spec)},
          started)
    return 0


def _monotone_routes(k, nu, mu, routes, table):
    out = {}
    if "recursion" in routes:
        g2 = k + 2 - len(nu) - len(mu)
        out["recursion"] = (refined_monotone_H(g2, nu, mu, table)
                            if g2 >= 0 else CJTPoly.zero())
    if "jm" in routes:
        disc = {}
        for key in _all_subkeys(nu, mu, k):
            disc[key] = structure_coefficient(SymFunc.h(key[2]), key[1], key[0])
        out["jm"] = connected_from_disconnected(disc, (nu, mu, k))
    if "oracle" in routes:
        out["oracle"] = oracle_weight(nu, mu, k) * normalization(nu, mu)
    return out


def _all_subkeys(nu, mu, k):
    from .recursions import _sub_keys
    return _sub_keys((nu, mu, k)) | {(nu, mu, k)}


def _simple_routes(k, nu, mu, routes):
    out = {}
    if "recursion" in routes:
        out["recursion"] = refined_simple_h(k, nu, mu)
    if "oracle" in routes:
        disc = {}
        for key in _all_subkeys(nu, mu, k):
            n1, m1, k1 = key
            disc[key] = (oracle_weight(n1, m1, k1, monotone=False,
                                       transitive=False)
                         * normalization(n1, m1))
        out["oracle"] = connected_from_disconnected(disc, (nu, mu, k))
    return out


def _bdouble_routes(k, nu, mu, routes):
    out = {}
    if "recursion" in routes:
        out["recursion"] = b_double_h(k, nu, mu)
    if "specialization" in routes:
        out["specialization"] = specialize_b(refined_simple_h(k, nu, mu))
    if "tropical" in routes:
        out["tropical"] = sweep_b_double(k, nu, mu)[0]
    return out


def _single_routes(g2, mu, routes):
    out = {}
    if "recursion" in routes:
        out["recursion"] = single_monotone_N(g2, mu)
    if "tropical" in routes:
        out["tropical"] = single_monotone_tropical(g2, mu)[0]
    return out


def _route_command(args, started, name, compute, all_routes, spec_ok=True):
    routes = all_routes if args.route == "all" else [args.route]
    values = compute(routes)
    texts = {r: _value_json(v) for r, v in values.items()}
    distinct = {json.dumps(_value_json(v), sort_keys=True)
                for v in values.values()}
    agree = len(distinct) <= 1
    payload = {"query": {"command": name, **args.query_info},
               "route": args.route, "value": texts, "agree": agree}
    if not agree:
        payload["diff"] = {r: t["text"] for r, t in texts.items()}
        _emit(payload, started)
        return 1
    if args.spec != "cjt" and spec_ok:
        first = next(iter(values.values()))
        payload["specialized"] = _value_json(_apply_spec(first, args.spec))
        payload["spec"] = str(args.spec)
    _emit(payload, started)
    return 0


def cmd_monotone(args, started):
    nu, mu = _parse_partition(args.nu), _parse_partition(args.mu)
    k = _k_from_genus(args, nu, mu)
    table = MonotoneTable(store=JsonlStore(args.cache) if args.cache else None)
    args.query_info = {"k": k, "nu": list(nu), "mu": list(mu)}
    return _route_command(
        args, started, "monotone",
        lambda routes: _monotone_routes(k, nu, mu, routes, table),
        ["recursion", "jm", "oracle"])


def cmd_simple(args, started):
    nu, mu = _parse_partition(args.nu), _parse_partition(args.mu)
    k = _k_from_genus(args, nu, mu)
    args.query_info = {"k": k, "nu": list(nu), "mu": list(mu)}
    return _route_command(args, started, "simple",
                          lambda routes: _simple_routes(k, nu, mu, routes),
                          ["recursion", "oracle"])


def cmd_bdouble(args, started):
    nu, mu = _parse_partition(args.nu), _parse_partition(args.mu)
    k = _k_from_genus(args, nu, mu)
    args.query_info = {"k": k, "nu": list(nu), "mu": list(mu)}
    args.spec = "b"
    return _route_command(args, started, "bdouble",
                          lambda routes: _bdouble_routes(k, nu, mu, routes),
                          ["recursion", "specialization", "tropical"],
                          spec_ok=False)


def cmd_single(args, started):
    mu = _parse_partition(args.mu)
    if args.g2 is None:
        raise CJTError("single needs --g2")
    args.query_info = {"g2": args.g2, "mu": list(mu)}
    return _route_command(args, started, "single",
                          lambda routes: _single_routes(args.g2, mu, routes),
                          ["recursion", "tropical"], spec_ok=False)


def cmd_tropical(args, started):
    mu = _parse_partition(args.mu)
    if args.family == "bdouble":
        nu = _parse_partition(args.nu)
        if args.k is None:
            raise CJTError("bdouble covers need --k")
        total, covers = sweep_b_double(args.k, nu, mu)
        query = {"family": "bdouble", "k": args.k,
                 "nu": list(nu), "mu": list(mu)}
    else:
        if args.g2 is None:
            raise CJTError("single covers need --g2")
        total, covers = single_monotone_tropical(args.g2, mu)
        query = {"family": "single", "g2": args.g2, "mu": list(mu)}
    limit = args.max_covers if args.max_covers else len(covers)
    manifest = []
    for idx, (cover, mult) in enumerate(covers[:limit]):
        entry = {"index": idx, "genus": cover.genus,
                 "multiplicity": mult.text(),
                 "in_ends": list(cover.in_ends),
                 "out_ends": list(cover.out_ends)}
        if args.out == "dot":
            os.makedirs(args.dot_dir, exist_ok=True)
            path = os.path.join(args.dot_dir, f"cover_{idx}.dot")
            with open(path, "w") as fh:
                fh.write(export_dot(cover, name=f"cover_{idx}"))
            entry["dot"] = path
        manifest.append(entry)
    _emit({"query": query, "route": "tropical",
           "value": _value_json(total), "covers": manifest,
           "n_covers": len(covers)}, started)
    return 0


def cmd_verify(args, started):
    if args.suite != "appendixA":
        raise CJTError(f"unknown verification suite {args.suite!r}")
    failures = []
    for (n, k, lam), expected in golden_rows():
        tv = act(SymFunc.e(k), lam, JMVariant.PRELIMINARY)
        ok = tv == expected
        status = "pass" if ok else "FAIL"
        print(f"{status}  n={n} e{k} type={lam}")
        if not ok:
            failures.append((n, k, lam))
    print(f"{len(GOLDEN_ACTION) - len(failures)}/{len(GOLDEN_ACTION)} rows match")
    return 1 if failures else 0


def cmd_toprec(args, started):
    ok = True
    for i in range(1, args.imax + 1):
        res = virasoro_residual(i, args.order)
        good = res.is_zero()
        ok = ok and good
        print(f"{'pass' if good else 'FAIL'}  constraint L_{i} at order {args.order}")
    lb = laplace_beltrami_check(max(2, args.order - 1))
    ok = ok and lb
    print(f"{'pass' if lb else 'FAIL'}  evolution equation at order {max(2, args.order - 1)}")
    for tag in CLOSED_FORMS:
        rep = proportionality_check(tag, args.closed_order)
        good = rep.get("ok", False)
        ok = ok and good
        const = rep.get("constant")
        print(f"{'pass' if good else 'FAIL'}  closed form {tag}: "
              f"ratio {'=' + str(const) if const else rep.get('reason', '?')}")
    return 0 if ok else 1


def cmd_table(args, started):
    rows = [(n, k, lam, val) for (n, k, lam), val in golden_rows()
            if n == args.n] if args.n else \
           [(n, k, lam, val) for (n, k, lam), val in golden_rows()]
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["n", "function", "type", "result"])
    for n, k, lam, _ in rows:
        tv = act(SymFunc.e(k), lam, JMVariant.PRELIMINARY)
        parts = []
        for target in sorted(tv, reverse=True):
            dname = "D" + "".join(map(str, target))
            parts.append(f"({tv[target].text()})*{dname}")
        writer.writerow([n, f"e{k}", " ".join(map(str, lam)),
                         " + ".join(parts)])
    sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cjt",
        description="exact cut/join/twist weighted Hurwitz numbers")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, routes=None):
        p.add_argument("--spec", type=_parse_spec, default="cjt",
                       help="cjt | b | zonal | schur | point:CJ,T")
        p.add_argument("--out", choices=["json", "csv", "dot"],
                       default="json")
        p.add_argument("--cache", default=os.environ.get("CJT_CACHE"))
        p.add_argument("--threads", type=int, default=1,
                       help="worker bound; results are independent of it")
        if routes:
            p.add_argument("--route", choices=routes + ["all"],
                           default="all")

    p = sub.add_parser("act", help="apply a symmetric function to a type")
    p.add_argument("--n", type=int, required=False)
    p.add_argument("--func", required=True)
    p.add_argument("--type", required=True)
    p.add_argument("--variant", choices=["preliminary", "refined"],
                   default="preliminary")
    common(p)
    p.set_defaults(fn=cmd_act)

    p = sub.add_parser("monotone", help="monotone double numbers")
    p.add_argument("--nu", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--g2", type=int)
    common(p, ["recursion", "jm", "oracle"])
    p.set_defaults(fn=cmd_monotone)

    p = sub.add_parser("simple", help="simple double numbers")
    p.add_argument("--nu", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--g2", type=int)
    common(p, ["recursion", "oracle"])
    p.set_defaults(fn=cmd_simple)

    p = sub.add_parser("bdouble", help="b-deformed double numbers")
    p.add_argument("--nu", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--g2", type=int)
    common(p, ["recursion", "specialization", "tropical"])
    p.set_defaults(fn=cmd_bdouble)

    p = sub.add_parser("single", help="single monotone numbers")
    p.add_argument("--mu", required=True)
    p.add_argument("--g2", type=int)
    common(p, ["recursion", "tropical"])
    p.set_defaults(fn=cmd_single)

    p = sub.add_parser("tropical", help="enumerate covers")
    p.add_argument("--family", choices=["bdouble", "single"],
                   default="bdouble")
    p.add_argument("--nu")
    p.add_argument("--mu", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--g2", type=int)
    p.add_argument("--max-covers", type=int, default=0)
    p.add_argument("--dot-dir", default="covers_out")
    common(p)
    p.set_defaults(fn=cmd_tropical)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["appendixA"])
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("toprec", help="constraint and closed-form checks")
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--imax", type=int, default=3)
    p.add_argument("--closed-order", type=int, default=6)
    common(p)
    p.set_defaults(fn=cmd_toprec)

    p = sub.add_parser("table", help="action table as CSV")
    p.add_argument("--n", type=int)
    common(p)
    p.set_defaults(fn=cmd_table)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        ap.error("--threads must be positive")
    started = time.monotonic()
    try:
        return args.fn(args, started)
    except CJTError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
