"""Command-line interface: ``lrcbounds <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 parse error,
4 enumeration guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds
from .code import CodeFormatError, GuardError, LinearCode, minimum_distance, read_code, write_code
from .constructions import parity_product_code, shortened_hamming_6_3
from .graph import (
    build_expander_set,
    build_recovering_graph,
    closure,
    distance_bound_coloring,
    expansion_ratio,
    find_large_colored_set,
    recovery_elimination_order,
)
from .recovery import find_recovering_family, locality_profile
from .search import bound_sweep, max_distance_with_locality, sweep_cells, sweep_to_csv, sweep_to_json
from .verify import run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3, 4


def _positive(value: str) -> int:
    try:
        x = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer") from None
    if x < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {x}")
    return x


def _nonneg(value: str) -> int:
    try:
        x = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer") from None
    if x < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {x}")
    return x


def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        print(text)


# ---------------------------------------------------------------- commands


def cmd_bounds(args) -> int:
    if (args.n is None) != (args.k is None):
        args.parser.error("--n and --k must be given together")
    if args.n is not None and not 1 <= args.k <= args.n:
        args.parser.error(f"need 1 <= k <= n, got n={args.n}, k={args.k}")
    if args.table:
        reports = [bounds.BoundReport(r, t, args.n, args.k) for r in range(1, args.r + 1) for t in range(1, args.t + 1)]
        _emit([rep.to_dict() for rep in reports], args.json, bounds.report_table(reports))
        return EXIT_OK
    rep = bounds.BoundReport(args.r, args.t, args.n, args.k)
    _emit(rep.to_dict(), args.json, rep.to_text())
    return EXIT_OK


def cmd_analyze(args) -> int:
    code = read_code(args.file)
    d = minimum_distance(code)
    profile = locality_profile(code, args.r)
    t_eff = min(args.t, min(profile))
    out = {
        "q": code.q, "n": code.n, "k": code.k, "distance": d, "r": args.r, "t_requested": args.t,
        "locality_profile": list(profile), "t": t_eff, "notes": [],
    }
    lines = [f"[{code.n},{code.k}] code over GF({code.q}), minimum distance {d}",
             f"locality profile (r={args.r}): {' '.join(map(str, profile))}"]
    if t_eff == 0:
        out["notes"].append("no locality (t=0)")
        lines.append(f"no locality (t=0): some coordinate has no recovering set of size <= {args.r}")
        _emit(out, args.json, "\n".join(lines))
        return EXIT_OK
    if t_eff < args.t:
        note = f"only t={t_eff} disjoint recovering sets available at every coordinate"
        out["notes"].append(note)
        lines.append(note)
    fam = find_recovering_family(code, args.r, t_eff)
    flags = [] if fam.is_uniform else ["family contains recovering sets smaller than r"]
    rep = bounds.BoundReport(args.r, t_eff, code.n, code.k, d, tuple(flags))
    G = build_recovering_graph(fam, code.n)
    out["family"] = fam.to_dict()
    out["report"] = rep.to_dict()
    lines.append(f"recovering family: {fam.to_json()}")
    lines.append(rep.to_text())
    if code.k >= 2:
        S = distance_bound_coloring(G, code.k)
        C = closure(G, S)
        target = sum((code.k - 1) // args.r**i for i in range(t_eff + 1))
        out["distance_procedure"] = {"S": list(S), "closure_size": len(C), "target": target}
        lines.append(f"distance procedure: |S|={len(S)}, |closure(S)|={len(C)} (>= {target} guaranteed)")
    verdict = (
        "meets distance bound with equality" if rep.distance_met
        else "VIOLATES distance bound" if d > rep.distance_bound
        else f"distance {d} below bound {rep.distance_bound}"
    )
    out["verdict"] = verdict
    lines.append(verdict)
    _emit(out, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    hamming = read_code(args.hamming) if args.hamming else None
    results = run_checks(hamming)
    ok = all(r.passed for r in results)
    text = "\n".join(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in results)
    text += f"\n{sum(r.passed for r in results)}/{len(results)} checks passed"
    _emit({"passed": ok, "checks": [r.to_dict() for r in results]}, args.json, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_construct(args) -> int:
    if args.kind == "parity-product":
        code, fam = parity_product_code(args.r, args.t)
        comment = f"binary {args.t}-fold product of the [{args.r + 1},{args.r}] single-parity-check code"
        kind = "generator"
    else:
        code, fam = shortened_hamming_6_3()
        comment = "binary [6,3,3] shortened Hamming code"
        kind = "parity"
    out = Path(args.out)
    write_code(code, out, kind, comment)
    sidecar = out.with_suffix(".family.json")
    sidecar.write_text(fam.to_json() + "\n", encoding="utf-8")
    print(f"wrote {out} ([{code.n},{code.k}] over GF({code.q})) and {sidecar}")
    return EXIT_OK


def cmd_search(args) -> int:
    res = max_distance_with_locality(args.n, args.k, args.q, args.r, args.t, jobs=args.jobs)
    oracle = "none" if res.distance is None else res.distance
    _emit(res.to_dict(), args.json, f"oracle {oracle}, bound {res.bound}, {res.flag}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    rows = bound_sweep(sweep_cells(args.n_min, args.n_max, args.r_max, args.t_max), q=args.q, jobs=args.jobs)
    sys.stdout.write(sweep_to_json(rows) + "\n" if args.json else sweep_to_csv(rows))
    return EXIT_FAIL if any(r.flag == "VIOLATION" for r in rows) else EXIT_OK


def _family_graph(args, code: LinearCode):
    fam = find_recovering_family(code, args.r, args.t)
    if fam is None:
        raise LookupError(f"the code has no family with t={args.t} disjoint recovering sets of size <= {args.r}")
    return fam, build_recovering_graph(fam, code.n)


def cmd_permute(args) -> int:
    code = read_code(args.file)
    fam, G = _family_graph(args, code)
    res = find_large_colored_set(G, args.trials, args.seed, jobs=args.jobs)
    order = recovery_elimination_order(G, res.U)
    out = res.to_dict() | {"elimination_order": order, "k": code.k, "n": code.n, "uniform": fam.is_uniform}
    text = "\n".join([
        f"seed {res.seed}, best of {args.trials} trials (trial {res.trial})",
        f"best |U| = {res.size}, target n(1 - 1/prod(1 + 1/(jr))) = {res.target} = {float(res.target):.4f}",
        f"U = {sorted(res.U)}",
        f"elimination order: {order}",
        f"k = {code.k} <= n - |U| = {code.n - res.size}",
    ])
    _emit(out, args.json, text)
    return EXIT_OK


def cmd_expander(args) -> int:
    code = read_code(args.file)
    _, G = _family_graph(args, code)
    if not 1 <= args.vertex <= code.n:
        args.parser.error(f"--vertex must be in [1, {code.n}]")
    tp = args.t if args.t_prime is None else args.t_prime
    S = build_expander_set(G, args.vertex, tp)
    C = closure(G, S)
    ratio = expansion_ratio(G, S)
    e = bounds.expansion_constant(G.r, tp) if G.r >= 2 else None
    out = {"vertex": args.vertex, "t_prime": tp, "S": list(S), "closure": sorted(C), "ratio": str(ratio),
           "e_t": None if e is None else str(e)}
    text = "\n".join([
        f"S = {list(S)} (|S| = {len(S)} <= r^t' = {G.r ** tp})",
        f"closure = {sorted(C)}",
        f"expansion ratio {ratio}" + ("" if e is None else f" >= e_{tp} = {e}"),
    ])
    _emit(out, args.json, text)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrcbounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="evaluate the rate and distance bounds")
    p.add_argument("--n", type=_positive)
    p.add_argument("--k", type=_positive)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--table", action="store_true", help="tabulate all r' <= r, t' <= t")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("analyze", help="locality, distance and bounds for a code file")
    p.add_argument("file")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-paper", help="run the built-in check suite")
    p.add_argument("--hamming", help="code file to use in place of the built-in [6,3] Hamming code")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("construct", help="write a construction as a code file plus family sidecar")
    p.add_argument("kind", choices=["parity-product", "hamming63"])
    p.add_argument("--r", type=_positive, default=2)
    p.add_argument("--t", type=_positive, default=2)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="exhaustive max distance under a locality constraint")
    for name in ("n", "k", "r", "t"):
        p.add_argument(f"--{name}", type=_positive, required=True)
    p.add_argument("--q", type=_positive, default=2)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="oracle vs bound over a parameter grid (CSV or JSON)")
    p.add_argument("--n-min", type=_positive, default=1)
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--r-max", type=_positive, required=True)
    p.add_argument("--t-max", type=_positive, required=True)
    p.add_argument("--q", type=_positive, default=2)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("permute", help="random-permutation coloring of the recovering graph")
    p.add_argument("file")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--seed", type=_nonneg, required=True)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_permute)

    p = sub.add_parser("expander", help="build an expander set around a vertex")
    p.add_argument("file")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--vertex", type=_positive, required=True)
    p.add_argument("--t-prime", type=_nonneg)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_expander)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.parser = parser
    try:
        return args.func(args)
    except CodeFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardError as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (OSError, LookupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
