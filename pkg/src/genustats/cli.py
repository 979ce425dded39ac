"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 budget error.
Reports go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import constants as K
from . import families as F
from . import genus as G
from . import verify as V
from .arith import FundamentalDiscriminant
from .cubic_enum import cubic_discriminants, cubic_forms, cubic_genus_exponents
from .errors import BudgetError, DomainError
from .reports import from_constant, make_report, render, stamp

CONSTANT_NAMES = ("genus-one-density", "lambda", "A", "B", "resummation", "delta", "delta0",
                  "c0", "cq")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _positive(s: str) -> int:
    try:
        v = int(float(s)) if "e" in s.lower() else int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s}")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {s}")
    return v


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--reproducible", action="store_true",
                   help="omit the generated_at timestamp")
    p.add_argument("--prime-limit", type=_positive, default=500_000)
    p.add_argument("--threads", type=_positive, default=1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="genustats", description="Genus number statistics toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("constants", help="evaluate named constants")
    c.add_argument("name", choices=CONSTANT_NAMES + ("all",))
    c.add_argument("--disc-bound", type=_positive, default=10**8)
    c.add_argument("--conductor-bound", type=_positive, default=10**4)
    c.add_argument("--convention", default=None)
    c.add_argument("--coefficients", choices=tuple(K.COEFFICIENTS), default="29/81")
    c.add_argument("--k", type=int, default=0)
    c.add_argument("--l", type=int, default=0)
    c.add_argument("--q", type=int, default=5)
    c.add_argument("--d-bound", type=_positive, default=10**4)
    _common(c)

    t = sub.add_parser("table1", help="the (k, l) genus table")
    t.add_argument("--disc-bound", type=_positive, default=10**8)
    t.add_argument("--normalization", choices=("zeta2", "zeta2-squared"),
                   default="zeta2-squared")
    _common(t)

    m = sub.add_parser("moments", help="moments of genus numbers")
    m.add_argument("--family", choices=("s3", "s3c2", "s3cq"), required=True)
    m.add_argument("--q", type=int, default=5)
    m.add_argument("--rmax", type=int, default=5)
    m.add_argument("--disc-bound", type=_positive, default=None)
    _common(m)

    e = sub.add_parser("enumerate", help="enumerate a field family")
    e.add_argument("family", choices=("cubic", "pure-quartic", "quadratic", "cq"))
    e.add_argument("--max-disc", type=_positive, required=True)
    e.add_argument("--q", type=int, default=5)
    e.add_argument("--cache", default=None)
    e.add_argument("--partitions", type=_positive, default=1)
    e.add_argument("--records", action="store_true", help="emit one line per record")
    _common(e)

    n = sub.add_parser("count", help="family counts")
    n.add_argument("family", choices=("s3c2", "eta", "split-ideals", "pure-quartic"))
    n.add_argument("--max-disc", type=_positive, required=True)
    n.add_argument("--d", type=int, default=-1)
    _common(n)

    g = sub.add_parser("genus", help="genus number of one field")
    gs = g.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for name, args in (("quadratic", ("--disc",)), ("cubic", ("--disc",)),
                       ("sextic", ("--cubic-disc", "--quad-disc")),
                       ("cyclic", ("--q", "--conductor")), ("pure-quartic", ("--a",))):
        s = gs.add_parser(name)
        for a in args:
            s.add_argument(a, type=int, required=True)
        _common(s)
    s = gs.add_parser("prime-degree")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--cyclic", action="store_true")
    s.add_argument("--q-ramified", action="store_true")
    s.add_argument("--dagger", action="store_true")
    _common(s)

    v = sub.add_parser("verify", help="run a verification experiment")
    v.add_argument("experiment", choices=tuple(V.VERIFIERS))
    v.add_argument("--disc-bound", type=_positive, default=None)
    v.add_argument("--max-disc", type=_positive, default=None)
    _common(v)
    return p


def _config(args: argparse.Namespace) -> dict:
    # the worker count never changes results, so it stays out of the echo
    return {k: v for k, v in sorted(vars(args).items()) if k != "threads"}


def _constants(args, cfg) -> list[dict]:
    names = CONSTANT_NAMES if args.name == "all" else (args.name,)
    P = args.prime_limit
    out = []
    for name in names:
        if name == "genus-one-density":
            reps = [K.genus_one_density(P)]
        elif name == "lambda":
            convs = [args.convention] if args.convention else ["as-printed", "count-true"]
            reps = [K.lambda_const(c, P) for c in convs]
        elif name == "A":
            reps = [K.A_k(args.k, args.disc_bound)]
        elif name == "B":
            reps = [K.B_l(args.l, P, args.coefficients)]
        elif name == "resummation":
            reps = [K.resummation(disc_bound=args.disc_bound, prime_limit=P)]
        elif name == "delta":
            reps = [K.delta_genus_one(P)]
        elif name == "delta0":
            modes = [args.convention] if args.convention else ["exact-residue", "as-printed"]
            reps = [K.delta0(args.d_bound, P, m) for m in modes]
        elif name == "c0":
            vers = [args.convention] if args.convention else ["proof", "lemma-statement"]
            reps = [K.c0_pure_quartic(P, v) for v in vers]
        else:
            reps = [K.cq_constant(args.q, args.k, args.l, args.conductor_bound, P,
                                  args.coefficients)]
        out.extend(from_constant(r, cfg) for r in reps)
    return out


def _table1(args, cfg) -> list[dict]:
    t = K.table1(args.prime_limit, args.disc_bound, args.normalization)
    out = []
    for row in t.rows():
        out.append(make_report(f"table1({row['k']},{row['l']})", row["entry"],
                               row["tail_bound"], args.normalization,
                               {"prime_limit": args.prime_limit, "disc_bound": args.disc_bound},
                               cfg, k=row["k"], l=row["l"], proportion=row["proportion"],
                               printed_entry=row["printed_entry"],
                               printed_proportion=row["printed_proportion"]))
    return out


def _moments(args, cfg) -> list[dict]:
    out = []
    for r in range(args.rmax + 1):
        if args.family == "s3":
            rep = K.moments_s3(r, args.prime_limit)
        else:
            q = 2 if args.family == "s3c2" else args.q
            rep = K.moments_s3cq(q, r, args.prime_limit, args.disc_bound)
        out.append(from_constant(rep, cfg))
    return out


def _enumerate(args, cfg) -> list[dict]:
    X = args.max_disc
    trunc = {"max_disc": X}
    out: list[dict] = []
    if args.family == "cubic":
        if args.records:
            rows = cubic_forms(X, args.partitions, args.threads)
            e = cubic_genus_exponents(rows[:, 4])
            for (a, b, c, d, D), l in zip(rows.tolist(), e.tolist()):
                out.append(make_report("cubic_field", int(D), 0.0, None, trunc, cfg,
                                       form=[a, b, c, d], genus={"3": l}))
            count = len(rows)
        else:
            count = int(cubic_discriminants(X, args.cache, args.partitions, args.threads).size)
    elif args.family == "quadratic":
        count = 0
        for D in F.quadratic_discriminants(X):
            count += 1
            if args.records:
                out.append(make_report("fundamental_discriminant", D.D, 0.0, None, trunc, cfg,
                                       omega=D.omega))
    elif args.family == "pure-quartic":
        rad = F.pure_quartic_B_radicands(X)
        count = int(rad.size)
        if args.records:
            for a in rad.tolist():
                g = G.genus_pure_quartic(a)
                out.append(make_report("pure_quartic_field", G.pure_quartic_disc(a), 0.0, None,
                                       trunc, cfg, a=a, genus={"2": g.exponent(2)}))
    else:
        count = 0
        for rec in F.enumerate_cq_conductors(args.q, X):
            count += rec.multiplicity
            if args.records:
                out.append(make_report("cq_conductor", rec.f, 0.0, None, trunc, cfg, q=rec.q,
                                       multiplicity=rec.multiplicity, disc=rec.disc))
    out.append(make_report(f"{args.family}_count", count, 0.0, None, trunc, cfg))
    return out


def _count(args, cfg) -> list[dict]:
    X = args.max_disc
    trunc = {"max_disc": X}
    if args.family == "s3c2":
        total, hist = F.count_s3c2(X)
        return [make_report("s3c2_count", total, 0.0, None, trunc, cfg,
                            histogram=dict(sorted(hist.counts.items())))]
    if args.family == "eta":
        return [make_report("eta_count", F.count_eta(X), 0.0, None, trunc, cfg)]
    if args.family == "split-ideals":
        return [make_report("split_ideal_count", F.split_ideal_count(args.d, X), 0.0, None,
                            {**trunc, "d": args.d}, cfg)]
    fam = F.pure_quartic_family(X)
    return [make_report("pure_quartic_count", fam.B_count, 0.0, None, trunc, cfg,
                        A_counts=fam.A_counts, histogram=fam.B_histogram)]


def _genus(args, cfg) -> list[dict]:
    if args.kind == "quadratic":
        g = G.genus_quadratic(args.disc)
    elif args.kind == "cubic":
        g = G.genus_cubic(G.cubic_invariants(args.disc))
    elif args.kind == "sextic":
        g = G.genus_sextic_compositum(G.cubic_invariants(args.cubic_disc),
                                      FundamentalDiscriminant(args.quad_disc))
    elif args.kind == "cyclic":
        g = G.genus_cyclic_q(args.q, args.conductor)
    elif args.kind == "pure-quartic":
        g = G.genus_pure_quartic(args.a)
    else:
        g = G.genus_prime_degree(args.q, args.t, args.cyclic, args.q_ramified, args.dagger)
    return [make_report("genus", g.value, 0.0, None, {}, cfg, genus=g.as_dict())]


def _verify(args, cfg) -> list[dict]:
    fn = V.VERIFIERS[args.experiment]
    kw = {}
    if args.experiment in ("table1",):
        kw["prime_limit"] = args.prime_limit
        if args.disc_bound:
            kw["disc_bound"] = args.disc_bound
    elif args.experiment in ("moments", "genus-one-density"):
        kw["prime_limit"] = args.prime_limit
    elif args.experiment == "c0":
        kw["prime_limit"] = args.prime_limit
        if args.max_disc:
            kw["bound"] = args.max_disc
    elif args.experiment == "disc-sums" and args.disc_bound:
        kw["bound"] = args.disc_bound
    elif args.experiment == "cubic-oracle" and args.max_disc:
        kw["X"] = args.max_disc
    return [{**r, "config": cfg} for r in fn(**kw)]


HANDLERS = {"constants": _constants, "table1": _table1, "moments": _moments,
            "enumerate": _enumerate, "count": _count, "genus": _genus, "verify": _verify}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    cfg = _config(args)
    try:
        reports = HANDLERS[args.command](args, cfg)
    except BudgetError as exc:
        err.write(f"budget error: {exc}\n")
        return 3
    except DomainError as exc:
        err.write(f"domain error: {exc}\n")
        return 2
    if args.command == "table1" and args.format == "csv":
        cols = ("k", "l", "value", "proportion", "printed_entry", "printed_proportion",
                "tail_bound", "convention")
        out.write(",".join(c if c != "value" else "entry" for c in cols) + "\n")
        for r in reports:
            out.write(",".join(str(r[c]) for c in cols) + "\n")
        return 0
    render(stamp(reports, args.reproducible), args.format, out)
    return 0


def main() -> None:
    sys.exit(run())
