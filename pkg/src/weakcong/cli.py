"""Command line: ``weakcong {count,bottoms,quotient,hopf,fan,accept}``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from math import comb, factorial, prod

from .families import (
    FamilySpec,
    bottoms,
    count_bottoms,
    family_congruence,
    family_from_generators,
    named_family,
)
from .perm import format_word, parse_word

MAX_COUNT_N = 12
MAX_LIST_N = 10
MAX_QUOTIENT_N = 7
MAX_FAN_EXPORT_N = 5
MAX_FAN_VERIFY_N = 6


def _catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _pell(n: int) -> int:
    a, b = 1, 2
    for _ in range(n - 1):
        a, b = b, 2 * b + a
    return a


def _baxter(n: int) -> int:
    top = sum(comb(n + 1, k - 1) * comb(n + 1, k) * comb(n + 1, k + 1) for k in range(1, n + 1))
    return top // (comb(n + 1, 1) * comb(n + 1, 2)) if n else 1


def closed_form(name: str | None):
    """The known formula for the number of bottoms of a named family, if any."""
    if name is None:
        return None
    key = name.strip().lower()
    fixed = {
        "tamari": _catalan,
        "tamari-231": _catalan,
        "descent": lambda n: 2 ** (n - 1) if n else 1,
        "twisted-baxter": _baxter,
        "trivial": factorial,
        "full": lambda n: 1,
        "pnk 3": _pell,
    }
    if key in fixed:
        return fixed[key]
    match = re.fullmatch(r"snk[\s_-]*(\d+)", key)
    if match:
        k = int(match.group(1))
        return lambda n: prod(min(i, k) for i in range(1, n + 1))
    return None


def _family(args) -> FamilySpec | None:
    if getattr(args, "generators", None):
        return family_from_generators(args.generators, args.kind)
    if getattr(args, "family", None):
        return named_family(args.family)
    return None


def _require_family(args) -> FamilySpec:
    spec = _family(args)
    if spec is None:
        raise SystemExit("error: give --family NAME or --generators W1,W2,...")
    return spec


def _n_values(args) -> list[int]:
    if args.range:
        lo, _, hi = args.range.partition("..")
        return list(range(int(lo), int(hi or lo) + 1))
    if args.n is not None:
        return [args.n]
    raise SystemExit("error: give --n N or --range A..B")


def _guard(n: int, limit: int, what: str):
    if n > limit:
        raise SystemExit(f"error: {what} is limited to n <= {limit}")


def _emit(args, payload, text: str):
    out = json.dumps(payload, indent=2) if args.format == "json" else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


# ---------------------------------------------------------------- verbs

def cmd_count(args) -> int:
    spec = _require_family(args)
    formula = closed_form(args.family) if not args.generators else None
    rows = []
    for n in _n_values(args):
        _guard(n, MAX_COUNT_N, "count")
        got = count_bottoms(spec, n, args.threads)
        rows.append({"n": n, "count": got, "expected": formula(n) if formula else None})
    lines = [f"{r['n']}\t{r['count']}" + (f"\t(closed form {r['expected']})" if r["expected"] is not None else "")
             for r in rows]
    _emit(args, {"family": str(spec), "counts": rows}, "\n".join(lines))
    return 0 if all(r["expected"] in (None, r["count"]) for r in rows) else 1


def cmd_bottoms(args) -> int:
    spec = _require_family(args)
    result = {}
    for n in _n_values(args):
        _guard(n, MAX_LIST_N, "bottoms")
        result[n] = [format_word(b) for b in bottoms(spec, n)]
    text = "\n".join(f"{n}: {' '.join(ws)}" for n, ws in result.items())
    _emit(args, {"family": str(spec), "bottoms": {str(n): ws for n, ws in result.items()}}, text)
    return 0


def cmd_quotient(args) -> int:
    spec = _require_family(args)
    (n,) = _n_values(args)
    _guard(n, MAX_QUOTIENT_N, "quotient")
    theta = family_congruence(spec, n)
    P = theta.quotient
    payload = {"family": str(spec), **theta.to_json(), "poset": P.to_json(format_word)}
    lines = [f"{str(spec)} on S_{n}: {len(P)} classes"]
    for j in range(len(P)):
        below = ", ".join(format_word(P.elements[i]) for i in P.down[j])
        lines.append(f"{format_word(P.elements[j])} covers {below or '-'}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_hopf(args) -> int:
    from .hopf import MRAlgebra, QuotientAlgebra, as_vector

    spec = _family(args)
    alg = QuotientAlgebra(spec) if spec else MRAlgebra()
    words = [parse_word(w) for w in args.words]
    if args.op == "product":
        if len(words) < 2:
            raise SystemExit("error: product needs at least two permutations")
        result = as_vector(words[0])
        for w in words[1:]:
            result = alg.product(result, w)
    else:
        if len(words) != 1:
            raise SystemExit(f"error: {args.op} takes one permutation")
        result = alg.coproduct(words[0]) if args.op == "coproduct" else alg.antipode(words[0])
    _emit(args, {"algebra": alg.name, "op": args.op, "terms": result.to_json()}, str(result))
    return 0


def cmd_fan(args) -> int:
    from .fan import build_fan, check_fan_poset_properties

    spec = _require_family(args)
    (n,) = _n_values(args)
    theta = family_congruence(spec, n)
    if args.what == "export":
        _guard(n, MAX_FAN_EXPORT_N, "fan export")
        data = build_fan(theta).to_json()
        data["family"] = str(spec)
        text = json.dumps(data, indent=2) if args.format == "json" or args.out else (
            f"{str(spec)} n={n}: {len(data['rays'])} rays, {len(data['maximal_cones'])} maximal cones, "
            f"f={data['f_vector']}, h={data['h_vector']}")
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(json.dumps(data, indent=2) + "\n")
            print(f"wrote {args.out}")
        else:
            print(text)
        return 0
    _guard(n, MAX_FAN_VERIFY_N, "fan verify")
    rep = check_fan_poset_properties(theta, seed=args.seed)
    payload = {"family": str(spec), "n": n, "ok": rep.ok,
               "checks": {k: {"status": s, "detail": d} for k, (s, d) in rep.results.items()}}
    _emit(args, payload, str(rep))
    return 0 if rep.ok else 1


def cmd_accept(args) -> int:
    from .acceptance import run_suite

    echo = print if args.format == "text" else None
    outcomes = run_suite(args.suite, threads=args.threads, echo=echo)
    failed = [o.criterion.number for o in outcomes if not o.ok]
    summary = {
        "suite": args.suite,
        "passed": len(outcomes) - len(failed),
        "failed": failed,
        "criteria": [{"number": o.criterion.number, "title": o.criterion.title, "ok": o.ok,
                      "seconds": round(o.seconds, 2), "detail": o.detail} for o in outcomes],
    }
    if args.format == "json":
        _emit(args, summary, "")
    else:
        print(f"{summary['passed']}/{len(outcomes)} criteria passed")
        if args.out:
            with open(args.out, "w") as fh:
                json.dump(summary, fh, indent=2)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", help="tamari, tamari-231, descent, twisted-baxter, trivial, full, 'snk K', 'pnk K'")
    common.add_argument("--generators", help="comma-separated generators, e.g. 2413,3412")
    common.add_argument("--kind", choices=["H", "Tr"], default="H", help="family kind for --generators")
    common.add_argument("--n", type=int)
    common.add_argument("--range", help="A..B")
    common.add_argument("--degree", type=int, help="degree bound for Hopf checks")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write output to this file")

    parser = argparse.ArgumentParser(prog="weakcong", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("count", parents=[common], help="count class bottoms").set_defaults(run=cmd_count)
    sub.add_parser("bottoms", parents=[common], help="list class bottoms").set_defaults(run=cmd_bottoms)
    sub.add_parser("quotient", parents=[common], help="print the quotient lattice").set_defaults(run=cmd_quotient)
    hopf = sub.add_parser("hopf", parents=[common], help="products, coproducts, antipodes")
    hopf.add_argument("op", choices=["product", "coproduct", "antipode", "check"])
    hopf.add_argument("words", nargs="*")
    hopf.set_defaults(run=cmd_hopf_or_check)
    fan = sub.add_parser("fan", parents=[common], help="export or verify a quotient fan")
    fan.add_argument("what", choices=["export", "verify"])
    fan.set_defaults(run=cmd_fan)
    acc = sub.add_parser("accept", parents=[common], help="run the acceptance criteria")
    acc.add_argument("suite", nargs="?", default="all", choices=["all", "lattice", "hopf", "fan"])
    acc.set_defaults(run=cmd_accept)
    return parser


def cmd_hopf_or_check(args) -> int:
    if args.op != "check":
        return cmd_hopf(args)
    from .hopf import MRAlgebra, QuotientAlgebra, check_axioms

    spec = _family(args)
    alg = QuotientAlgebra(spec) if spec else MRAlgebra()
    rep = check_axioms(alg, args.degree if args.degree is not None else 4)
    payload = {"algebra": alg.name, "ok": rep.ok, "checked": rep.checked,
               "failures": [[a, list(w)] for a, w in rep.failures]}
    _emit(args, payload, str(rep))
    return 0 if rep.ok else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
