"""Command-line front end.

Exit status: 0 when everything passes (or the run is informational), 1 on
a bound violation or identity failure, 2 on a usage error.  Exact rationals
are written as ``"p/q"`` strings; every such field gets a ``<name>_decimal``
companion that is lossy and meant for reading only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Optional

from . import bounds, counting, enumeration, sampling
from .counting import CountingContext, CountReport, IllegalContext
from .enumeration import BudgetExceeded, EmptyOrbitError
from .geometry import FormKind, sign_str

log = logging.getLogger("classical_span")


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# serialization


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def jsonable(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            out[str(k)] = jsonable(v)
            if isinstance(v, Fraction):
                out[f"{k}_decimal"] = f"{float(v):.12g}"
        return out
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return obj


def csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return frac_str(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(args, records: list, columns: Optional[list] = None, document=None) -> None:
    """Write ``records`` as CSV (with ``columns``) or JSON (``document`` if given)."""
    if args.format == "csv":
        buf = io.StringIO()
        cols = columns or (list(records[0].keys()) if records else [])
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(cols)
        for r in records:
            w.writerow([csv_cell(r.get(c)) for c in cols])
        text = buf.getvalue()
    else:
        text = json.dumps(jsonable(document if document is not None else records), indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser, fmt_default: str = "json") -> None:
    p.add_argument("--format", default=fmt_default, help="json or csv")
    p.add_argument("--output", default=None, help="write to this path instead of stdout")
    p.add_argument("--budget", type=int, default=None,
                   help="enumeration budget (default: $CLASSICAL_SPAN_BUDGET or 10^7)")
    p.add_argument("--threads", type=int, default=1,
                   help="partition count; results do not depend on it")


def _add_context(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", required=True, help="unitary, symplectic or orthogonal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nprime", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--epsilon", default=None, help="+, - or o (orthogonal)")
    p.add_argument("--sigma", default=None, help="+ or - (orthogonal)")
    p.add_argument("--sigma-prime", dest="sigma_prime", default=None, help="+ or - (orthogonal)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="classical-span",
                                 description="Span probabilities of non-degenerate subspaces "
                                             "in finite classical spaces.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="closed-form orbit counts of one classical space")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True, help="dimension of the space")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--tau", "--epsilon", dest="tau", default=None, help="orthogonal type +, - or o")
    p.add_argument("--name", default="all", help="P1, N1, N1+, N1-, P2, R2, P3, R3 or all")
    p.add_argument("--enumerate", action="store_true", help="also brute-force and compare")
    _add_common(p)

    p = sub.add_parser("phi-exact", help="exact phi by enumeration")
    _add_context(p)
    _add_common(p)

    p = sub.add_parser("phi-mc", help="Monte Carlo estimate of phi")
    _add_context(p)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("verify-bounds", help="theorem grid: phi against c/|F|")
    p.add_argument("--grid", default="small", help="preset name in grids.json")
    p.add_argument("--mode", default="exact", help="exact, mc or auto")
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p, "csv")

    p = sub.add_parser("verify-identities", help="inequality suites and enumerative identities")
    p.add_argument("--enumeration", action="store_true", help="include the brute-force identity checks")
    _add_common(p)

    p = sub.add_parser("table1", help="the constants of the main theorem")
    _add_common(p)

    p = sub.add_parser("q2-experiment", help="orthogonal q = 2 evidence")
    p.add_argument("--pairs", default=None, help="e.g. '2,2 4,4'; default: the preset in grids.json")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact-budget", type=int, default=2 * 10**6)
    _add_common(p)
    return ap


def context_from_args(args) -> CountingContext:
    kind = FormKind.parse(args.kind)
    labels = (args.epsilon, args.sigma, args.sigma_prime)
    if kind is not FormKind.QUADRATIC and any(v is not None for v in labels):
        raise UsageError(f"{kind.case_name} contexts take no --epsilon/--sigma/--sigma-prime")
    if kind is FormKind.QUADRATIC and args.epsilon is None:
        if (args.n + args.nprime) % 2:
            args.epsilon = "o"
        else:
            raise UsageError("orthogonal contexts with even n + n' need --epsilon")
    return CountingContext(kind, args.n, args.nprime, args.q, args.epsilon, args.sigma,
                           args.sigma_prime)


# --------------------------------------------------------------------------
# subcommands


def cmd_count(args) -> int:
    kind = FormKind.parse(args.kind)
    tau = None
    if kind is FormKind.QUADRATIC:
        if args.tau is None:
            if args.n % 2 == 0:
                raise UsageError("--tau is required for even-dimensional orthogonal spaces")
            args.tau = "o"
        from .geometry import parse_sign

        tau = parse_sign(args.tau)
        if (tau == 0) != (args.n % 2 == 1):
            raise UsageError("tau = o exactly when n is odd")
        if args.q % 2 == 0 and args.n % 2:
            raise UsageError("odd-dimensional orthogonal spaces need q odd")
    elif args.tau is not None:
        raise UsageError("--tau only applies to orthogonal spaces")
    if kind is FormKind.ALTERNATING and args.n % 2:
        raise UsageError("symplectic dimension must be even")
    values = counting.closed_form_values(kind, args.n, args.q, tau)
    found = None
    if args.enumerate:
        found = {k: v[1] for k, v in enumeration.count_oracle(kind, args.n, args.q, tau, args.budget).items()}
    names = list(values) if args.name == "all" else [args.name]
    ctx = {"kind": kind.case_name, "n": args.n, "q": args.q, "tau": tau}
    records, failed = [], False
    for name in names:
        if name not in values:
            raise UsageError(f"unknown count {name!r}; available: {', '.join(values)}")
        rec = CountReport(ctx, name, values[name]).to_dict()
        if found is not None:
            rec["enumerated"] = found[name]
            rec["match"] = found[name] == values[name]
            failed |= not rec["match"]
        records.append(rec)
    flat = [dict(r["context"], name=r["name"], value=r["value"], **{k: r[k] for k in ("enumerated", "match") if k in r})
            for r in records]
    emit(args, flat, None, records if len(records) > 1 else records[0])
    return 1 if failed else 0


def cmd_phi_exact(args) -> int:
    ctx = context_from_args(args)
    enumeration.check_budget(ctx.N, ctx.nprime, ctx.field_order, args.budget)
    rep = bounds.verify_context(ctx, "exact", args.budget)
    if rep.phi is None:
        raise UsageError(rep.reason)
    doc = {
        "context": ctx.to_dict(),
        "phi": rep.phi,
        "numerator": rep.counts["hits"],
        "denominator": rep.counts["U_prime"],
        "bound": rep.phi_bound,
        "bound_satisfied": rep.bound_satisfied,
        "margin": rep.margin,
        "verdict": rep.verdict,
        "reason": rep.reason,
        "checks": rep.checks,
    }
    for k in ("c1", "c2", "X1", "X2", "Y1", "Z1"):
        if getattr(rep, k) is not None:
            doc[k] = getattr(rep, k)
    emit(args, [dict(ctx.to_dict(), phi=rep.phi, bound=rep.phi_bound, margin=rep.margin,
                     verdict=rep.verdict)], None, doc)
    return 1 if rep.verdict == "fail" else 0


def cmd_phi_mc(args) -> int:
    ctx = context_from_args(args)
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    est = sampling.estimate_phi(ctx, args.samples, args.seed)
    doc = est.to_dict()
    c = bounds.table1_constant(ctx.kind)
    doc["bound"] = c / ctx.field_order
    emit(args, [dict(ctx.to_dict(), samples=est.samples, hits=est.hits, phat=doc["phat"],
                     ci_low=doc["ci_low"], ci_high=doc["ci_high"], seed=est.seed)], None, doc)
    return 0


BOUND_COLUMNS = ["kind", "n", "nprime", "q", "epsilon", "sigma", "sigma_prime",
                 "phi", "bound", "margin", "verdict"]


def cmd_verify_bounds(args) -> int:
    if args.mode not in ("exact", "mc", "auto"):
        raise UsageError(f"unknown mode {args.mode!r}")
    try:
        grid = bounds.expand_grid(args.grid)
    except KeyError:
        raise UsageError(f"unknown grid {args.grid!r}; presets: {', '.join(bounds.load_grids()['grids'])}")
    reports = bounds.verify_theorems(grid, args.mode, args.budget, args.samples, args.seed)
    rows = []
    for r in reports:
        row = r.row()
        for k in ("epsilon", "sigma", "sigma_prime"):
            row[k] = sign_str(row[k])
        rows.append(row)
    doc = {"grid": args.grid, "mode": args.mode, "summary": bounds.summarize(reports),
           "reports": [r.to_dict() for r in reports]}
    emit(args, rows, BOUND_COLUMNS, doc)
    log.info("summary: %s", doc["summary"])
    return 1 if any(r.verdict == "fail" for r in reports) else 0


def identity_suite(with_enumeration: bool = False) -> list:
    """``[(name, witnesses)]``; every witness list should be empty."""
    suite = [
        ("zeta chain", counting.verify_zeta_chain()),
        ("zeta products", counting.verify_zeta_products()),
        ("zeta ratio", counting.verify_zeta_ratio()),
        ("gamma chain", counting.verify_gamma_chain()),
        ("bound product", counting.verify_boundprod()),
        ("GL bound", counting.verify_gl_bound()),
        ("c1 chain", bounds.verify_c1_grid()),
        ("orthogonal waypoints", bounds.verify_waypoints()),
    ]
    if with_enumeration:
        suite.extend(enumerative_identities())
    return suite


def enumerative_identities() -> list:
    from .enumeration import OrbitSpec, verify_double_counting
    from .geometry import standard_space

    out = []
    bad = []
    for kind, n, q, tau in (("unitary", 2, 2, None), ("unitary", 3, 2, None), ("symplectic", 4, 2, None),
                            ("symplectic", 4, 3, None), ("orthogonal", 3, 3, 0), ("orthogonal", 4, 3, -1),
                            ("orthogonal", 4, 2, 1), ("orthogonal", 5, 3, 0)):
        for name, (a, b) in enumeration.count_oracle(kind, n, q, tau).items():
            if a != b:
                bad.append((kind, n, q, tau, name, a, b))
    out.append(("closed forms vs enumeration", bad))
    bad = []
    V = standard_space("symplectic", 4, None, 2)
    r = verify_double_counting(V, OrbitSpec("P", 1), OrbitSpec("nondeg", 2))
    if not r.ok:
        bad.append(r.diagnostic)
    out.append(("double counting", bad))
    bad = []
    for n, n2 in ((2, 2), (2, 4)):
        st = enumeration.symplectic_inclusion_exclusion(n, n2)
        if not st.ok:
            bad.append((n, n2, st.checks))
    out.append(("symplectic inclusion-exclusion", bad))
    bad = []
    V = standard_space("orthogonal", 4, 1, 3)
    res = enumeration.verify_orbit_intersections(V, 2)
    out.append(("orbit intersections", res["failures"]))
    return out


def cmd_verify_identities(args) -> int:
    suite = identity_suite(args.enumeration)
    rows = [{"name": name, "witnesses": len(w), "ok": not w} for name, w in suite]
    doc = [{"name": name, "ok": not w, "witnesses": [str(x) for x in w[:20]],
            "witness_count": len(w)} for name, w in suite]
    emit(args, rows, ["name", "witnesses", "ok"], doc)
    return 0 if all(not w for _, w in suite) else 1


def cmd_table1(args) -> int:
    rows = [dict(r) for r in bounds.TABLE1]
    emit(args, rows, ["case", "form", "field", "c", "conditions"], rows)
    return 0


def parse_pairs(text: str) -> list:
    pairs = []
    for tok in text.replace(";", " ").split():
        a, b = tok.split(",")
        pairs.append((int(a), int(b)))
    return pairs


Q2_COLUMNS = ["label", "status", "samples", "hits", "phat", "ci_low", "ci_high", "phat_q",
              "ci_low_q", "ci_high_q", "excludes_below_2", "exact", "exact_below_1"]


def cmd_q2(args) -> int:
    if args.pairs is None:
        pairs = [tuple(p) for p in bounds.load_grids()["q2_experiment"]["default"]]
    else:
        try:
            pairs = parse_pairs(args.pairs)
        except ValueError:
            raise UsageError(f"cannot parse --pairs {args.pairs!r}")
    try:
        rows = sampling.q2_orthogonal_experiment(pairs, args.samples, args.seed, args.exact_budget)
    except ValueError as exc:
        if isinstance(exc, EmptyOrbitError):
            raise
        raise UsageError(str(exc))
    emit(args, rows, Q2_COLUMNS, rows)
    return 1 if any(r.get("exact_below_1") is False for r in rows) else 0


COMMANDS = {
    "count": cmd_count,
    "phi-exact": cmd_phi_exact,
    "phi-mc": cmd_phi_mc,
    "verify-bounds": cmd_verify_bounds,
    "verify-identities": cmd_verify_identities,
    "table1": cmd_table1,
    "q2-experiment": cmd_q2,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.format not in ("json", "csv"):
        print(f"error: unknown format {args.format!r} (json or csv)", file=sys.stderr)
        return 2
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except (UsageError, IllegalContext, BudgetExceeded, EmptyOrbitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
