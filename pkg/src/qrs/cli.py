"""Command-line front end.

Subcommands: ``rep``, ``hamiltonian``, ``verify`` and ``limit``.  Reports are
JSON on standard output with exact residual strings; they are sorted by suite
and check name so that a fixed seed gives identical bytes.  Progress and
wall-time go to standard error.

Exit codes: 0 when every check passes, 1 when a verification fails (the
report is still printed), 2 for invalid arguments or exhausted sampling.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import dressed, qsl, rmat, rs, twist
from .report import Report
from .scalars import SamplingExhausted, derive_seed, sample_point

SUITES = ("relations", "ybe", "rform", "twist", "lemma1", "gauge", "limit")


class UsageError(ValueError):
    pass


def _points(suite: str, n: int, l: int, trials: int, seed: int, bound: int):
    base = derive_seed(seed, suite)
    return [sample_point(n, l, derive_seed(base, f"pt{k}"), bound) for k in range(trials)]


def _tagged(rpt: Report, out: Report, k: int | None) -> None:
    prefix = f"p{k:03d} " if k is not None else ""
    out.extend(rpt, prefix + rpt.title + ": ")


# -- suites --------------------------------------------------------------------

def suite_relations(n, l, trials, seed, bound) -> Report:
    out = Report("relations")
    for k, pt in enumerate(_points("relations", n, l, trials, seed, bound)):
        for rep in (qsl.fundamental_rep(n, pt), qsl.symmetric_rep(n, l, pt)):
            _tagged(qsl.check_relations(rep), out, k)
            _tagged(qsl.check_k_independence(rep), out, k)
            _tagged(qsl.check_weight_homogeneity(rep), out, k)
    return out


def suite_ybe(n, l, trials, seed, bound) -> Report:
    out = Report("ybe")
    for k, pt in enumerate(_points("ybe", n, l, trials, seed, bound)):
        _tagged(rmat.check_ybe(n, pt), out, k)
        _tagged(rmat.check_mixed_ybe(n, l, pt), out, k)
        neg = rmat.check_ybe(n, pt, with_K=False)
        out.add(f"p{k:03d} negative control: YBE fails without K", not neg.passed,
                point=pt.to_dict())
    return out


def suite_rform(n, l, trials, seed, bound) -> Report:
    out = Report("rform")
    for k, pt in enumerate(_points("rform", n, l, trials, seed, bound)):
        fund = qsl.fundamental_rep(n, pt)
        sym = qsl.symmetric_rep(n, l, pt)
        first = rmat.rhat(fund, sym, pt).op
        out.add(f"p{k:03d} product = closed_first", first == rmat.closed_first(sym, pt).op,
                point=pt.to_dict())
        second = rmat.rhat(sym, fund, pt).op
        out.add(f"p{k:03d} product = closed_second", second == rmat.closed_second(sym, pt).op,
                point=pt.to_dict())
        _tagged(twist.check_reduced_r21(n, l, pt, sym), out, k)
        for chain in qsl.increasing_chains(n):
            _tagged(qsl.check_star_reduction(sym, chain), out, k)
        _tagged(qsl.check_ef(sym), out, k)
    return out


def suite_twist(n, l, trials, seed, bound) -> Report:
    out = Report("twist")
    for k, pt in enumerate(_points("twist", n, l, trials, seed, bound)):
        sym = qsl.symmetric_rep(n, l, pt)
        coeffs = twist.TwistCoeffs(pt)
        _tagged(twist.check_F12_equation(n, l, pt, coeffs, sym), out, k)
        _tagged(twist.check_F21_equation(n, l, pt, coeffs, sym), out, k)
    return out


def suite_lemma1(n, l, trials, seed, bound) -> Report:
    out = Report("lemma1")
    for k, pt in enumerate(_points("lemma1", n, l, trials, seed, bound)):
        _tagged(dressed.check_sum_product(n, l, pt), out, k)
        _tagged(rs.check_trace_consistency(n, l, pt), out, k)
    return out


def suite_gauge(n, l, trials, seed, bound) -> Report:
    out = Report("gauge")
    s = derive_seed(seed, "gauge")
    _tagged(rs.check_gauge(n, l, trials, s, bound), out, None)
    neg = rs.check_gauge(n, l, trials, s, bound, restrict="k!=i")
    out.add("negative control: k != i product holds under no convention", not neg.passing)
    _tagged(rs.check_adjoint_gauge(n, l, trials, s), out, None)
    for lam in rs.symmetric_exponents(n):
        _tagged(rs.check_symmetry_preservation(n, l, lam, max(trials, 20), s), out, None)
    return out


def suite_limit(n, l, trials, seed, bound) -> Report:
    out = Report("limit")
    for y in (1, 2, 3):
        _tagged(rs.classical_limit_check(l, y), out, None)
    return out


SUITE_FUNCS = {
    "relations": suite_relations,
    "ybe": suite_ybe,
    "rform": suite_rform,
    "twist": suite_twist,
    "lemma1": suite_lemma1,
    "gauge": suite_gauge,
    "limit": suite_limit,
}


def suite_json(rpt: Report) -> dict:
    checks = sorted((c.to_dict() for c in rpt.checks), key=lambda c: c["name"])
    return {"suite": rpt.title, "pass": rpt.passed, "checks": checks}


def verify_all(n: int, l: int, trials: int = 10, seed: int = 0, bound: int = 16,
               suites=SUITES, progress=None) -> dict:
    """Run the named suites in order; the result is sorted by suite name."""
    results = []
    for name in suites:
        t0 = time.perf_counter()
        rpt = SUITE_FUNCS[name](n, l, trials, seed, bound)
        if progress:
            progress(f"{name}: {'pass' if rpt.passed else 'FAIL'} "
                     f"({len(rpt)} checks, {time.perf_counter() - t0:.2f}s)")
        results.append(suite_json(rpt))
    results.sort(key=lambda r: r["suite"])
    return {
        "params": {"n": n, "l": l, "trials": trials, "seed": seed, "bound": bound},
        "pass": all(r["pass"] for r in results),
        "suites": results,
    }


# -- other subcommands -------------------------------------------------------------

def _op_entries(op) -> list:
    return [[r, c, f"{v.numerator}/{v.denominator}"] for (r, c), v in op.entries()]


def rep_dump(n: int, l: int, kind: str, seed: int, bound: int) -> dict:
    pt = sample_point(n, l, derive_seed(seed, "rep"), bound)
    rep = qsl.fundamental_rep(n, pt) if kind == "fundamental" else qsl.symmetric_rep(n, l, pt)
    out = {"kind": kind, "n": n, "l": l, "point": pt.to_dict(),
           "basis": [list(b) if isinstance(b, tuple) else b for b in rep.basis]}
    for gen in ("e", "f", "h"):
        out[gen] = [{"i": i, "entries": _op_entries(rep.gen(gen, i))} for i in range(1, n)]
    return out


def hamiltonian_dump(n: int, l: int, form: str, ordering: str, trials: int, seed: int,
                     bound: int) -> dict:
    gauge = rs.check_gauge(n, l, trials, derive_seed(seed, "gauge"), bound)
    if ordering == "auto":
        if len(gauge.passing) != 1:
            raise RuntimeError("gauge identity does not single out one convention")
        h_ord, hh_ord = gauge.passing[0]
    else:
        h_ord = ordering
        hh_ord = "shift-left" if ordering == "coeff-left" else "coeff-left"
    if form == "raw":
        op = rs.hamiltonian(n, l, h_ord)
    else:
        op = rs.conjugated_hamiltonian(n, l, hh_ord)
    out = op.to_dict()
    out["form"] = form
    out["ordering"] = h_ord
    out["hhat_ordering"] = hh_ord
    out["gauge_check"] = "pass" if (h_ord, hh_ord) in gauge.passing else "fail"
    return out


def _summary(report: dict) -> str:
    lines = []
    for suite in report.get("suites", [report]):
        for c in suite["checks"]:
            mark = "PASS" if c["pass"] else "FAIL"
            lines.append(f"{mark} {suite.get('suite', '')} {c['name']}".rstrip())
    lines.append("OVERALL " + ("PASS" if report["pass"] else "FAIL"))
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--l", type=int, default=1)
    common.add_argument("--trials", type=int, default=10)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=int, default=16)
    common.add_argument("--output", choices=("json", "summary"), default="json")

    p = argparse.ArgumentParser(prog="qrs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("rep", parents=[common], help="dump generator matrices")
    r.add_argument("--kind", choices=("symmetric", "fundamental"), default="symmetric")
    r.add_argument("--dump", action="store_true")
    h = sub.add_parser("hamiltonian", parents=[common], help="emit H or Hhat as JSON")
    h.add_argument("--form", choices=("raw", "conjugated"), default="raw")
    h.add_argument("--ordering", choices=("auto",) + rs.ORDERINGS, default="auto")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", choices=("all",) + SUITES)
    lim = sub.add_parser("limit", parents=[common], help="classical limit of the coupling")
    lim.add_argument("--y", type=int, action="append")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def progress(msg):
        print(msg, file=stderr)

    try:
        if args.n < 2 or args.l < 1 or args.trials < 1 or args.bound < 1:
            raise UsageError("need --n >= 2, --l >= 1, --trials >= 1, --bound >= 1")
        if args.command == "rep":
            result = rep_dump(args.n, args.l, args.kind, args.seed, args.bound)
            ok = True
        elif args.command == "hamiltonian":
            result = hamiltonian_dump(args.n, args.l, args.form, args.ordering, args.trials,
                                      args.seed, args.bound)
            ok = True
        elif args.command == "verify":
            suites = SUITES if args.suite == "all" else (args.suite,)
            result = verify_all(args.n, args.l, args.trials, args.seed, args.bound, suites,
                                progress)
            ok = result["pass"]
        else:
            ys = args.y or [1, 2, 3]
            if any(y < 1 for y in ys):
                raise UsageError("--y must be a positive integer")
            rpt = Report("limit")
            for y in ys:
                rpt.extend(rs.classical_limit_check(args.l, y), f"y={y}: ")
            result = suite_json(rpt)
            ok = rpt.passed
    except (UsageError, SamplingExhausted) as exc:
        print(f"error: {exc}", file=stderr)
        return 2

    if args.output == "summary" and "pass" in result:
        print(_summary(result), file=stdout)
    else:
        print(json.dumps(result, sort_keys=True, indent=1), file=stdout)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
