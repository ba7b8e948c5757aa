"""``partrank`` command line.

Reports go to stdout as ``key = value`` lines; artifacts go to ``--out``.
Exit codes: 0 ok, 2 verification failure, 3 input error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import io
from .certificate import INF, check_certificate
from .derivspace import df_experiment, dspace
from .descent import blowup_bound, descend
from .eqmine import LocusSpec, cubical_prk_bound, degree_bound_details, mine_equation, min_n, prk_bound
from .errors import VERIFICATION_CODES, PrankError
from .fields import extension, make_field
from .harness import suite_coeff_extract, suite_descent, suite_pi_iota, suite_prop_sym
from .poly import Form
from .search import SearchBudget, prk_exact, strength_exact
from .tensor import Tensor

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3, 4
BUDGET_CODES = {"BUDGET_EXCEEDED", "CAP_EXCEEDED"}


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    budget: Optional[int] = None  # node cap for searches, entry cap for interpolation
    field: Optional[str] = None
    in_path: Optional[str] = None
    out_path: Optional[str] = None

    @classmethod
    def from_args(cls, args):
        return cls(args.seed, args.budget, args.field, args.in_path, args.out)

    def search_budget(self):
        return SearchBudget(max_nodes=self.budget) if self.budget else SearchBudget()


class _Report:
    def __init__(self, out):
        self.out = out

    def __call__(self, key, value):
        if isinstance(value, bool):
            value = int(value)
        elif value == INF:
            value = "INF"
        self.out.write(f"{key} = {value}\n")


def _need_in(cfg):
    if not cfg.in_path:
        raise PrankError("MISSING_INPUT", "this command needs --in")
    try:
        return io.read_text(cfg.in_path)
    except OSError as exc:
        raise PrankError("MISSING_INPUT", str(exc)) from exc


def _write_out(cfg, text):
    if cfg.out_path:
        io.write_text(cfg.out_path, text)


def _ints(text, sep=","):
    return tuple(int(x) for x in text.split(sep) if x.strip())


# -- commands -------------------------------------------------------------------------

def cmd_rank(args, cfg, say):
    F = make_field(cfg.field) if cfg.field else None
    items = io.parse_tuple(_need_in(cfg), F)
    kind = args.kind
    if kind == "prk" and not all(isinstance(x, Tensor) for x in items):
        raise PrankError("UNSUPPORTED", "prk needs TENSOR blocks")
    if kind == "strength" and not all(isinstance(x, Form) for x in items):
        raise PrankError("UNSUPPORTED", "strength needs FORM blocks")
    t0 = time.perf_counter()
    if kind == "prk":
        cert = prk_exact(items, cfg.search_budget())
        target = items[0].shape
    else:
        cert = strength_exact(items, cfg.search_budget())
        target = (items[0].nvars, max(f.degree for f in items))
    elapsed = time.perf_counter() - t0
    field = items[0].field
    say("command", f"rank {kind}")
    say("field", field)
    say("m", len(items))
    say("value", cert.value)
    say("exhaustive", cert.exhaustive)
    say("budget_hit", cert.budget_hit)
    say("nodes", cert.stats.get("nodes", 0))
    if cert.coeffs is not None and len(items) > 1:
        say("c", " ".join(field.format(c) for c in cert.coeffs))
    if kind == "strength" and 0 < field.char <= target[1]:
        say("flags", "OUTSIDE_THEOREM_HYPOTHESES")
    say("elapsed_s", f"{elapsed:.3f}")
    _write_out(cfg, io.format_cert(cert, field, target))
    return EXIT_BUDGET if cert.budget_hit else EXIT_OK


def cmd_check(args, cfg, say):
    items = io.parse_tuple(_need_in(cfg))
    cert = io.parse_cert(io.read_text(args.cert))
    if cert.witness is not None:
        items = [io.lift(x, cert.witness.field) for x in items]
    ok = True
    try:
        check_certificate(cert, items)
    except PrankError as exc:
        ok = False
        say("error", exc.code)
    say("command", "check")
    say("value", cert.value)
    say("reassembles", ok)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_descend(args, cfg, say):
    K = make_field(cfg.field) if cfg.field else None
    items = io.parse_tuple(_need_in(cfg), K)
    K = items[0].field
    cert = io.parse_cert(io.read_text(args.cert))
    if cert.witness is None:
        raise PrankError("NOT_A_DECOMPOSITION", "certificate has no witness to descend")
    dec = cert.witness
    L = make_field(args.L) if args.L else dec.field
    e = extension(K, L).degree
    out = descend(items, L, dec)
    say("command", "descend")
    say("K", K)
    say("L", L)
    say("degree", e)
    say("terms_in", len(dec))
    say("terms_out", len(out))
    say("bound", blowup_bound(e, len(dec)))
    if out.m > 1:
        say("c", " ".join(K.format(c) for c in out.coeffs))
    _write_out(cfg, io.format_decomposition(out))
    return EXIT_OK


def _locus(args):
    if args.shape:
        shape = _ints(args.shape)
        parts = ()
        if args.partitions:
            parts = tuple(tuple(j - 1 for j in _ints(p)) for p in args.partitions.split(";"))
        return LocusSpec(d=args.d or len(shape), m=args.m, r=args.r, shape=shape, partitions=parts)
    if not args.nvars or not args.d:
        raise PrankError("UNSUPPORTED", "mine needs --shape, or --nvars with --d")
    splits = _ints(args.splits) if args.splits else ()
    return LocusSpec(d=args.d, m=args.m, r=args.r, nvars=args.nvars, degree_splits=splits)


def cmd_mine(args, cfg, say):
    F = make_field(cfg.field or "GF(101)")
    spec = _locus(args)
    kw = {"max_entries": cfg.budget} if cfg.budget else {}
    eq = mine_equation(spec, F, args.degree_cap, margin=args.margin, seed=cfg.seed, **kw)
    say("command", "mine")
    say("field", F)
    say("coordinates", spec.n_coords)
    say("degree_cap", args.degree_cap)
    if eq is None:
        say("result", "NONE_FOUND")
        return EXIT_OK
    p = eq.polynomial
    say("result", "FOUND")
    say("degree", p.degree)
    say("homogeneous", p.is_homogeneous())
    say("kernel_dim", eq.kernel_dim)
    say("samples", eq.samples_used)
    say("verification_samples", eq.verification_samples)
    say("field_order", F.order)
    say("polynomial", p)
    header = (f"# mined seed={cfg.seed} samples={eq.samples_used} "
              f"verification={eq.verification_samples} field_order={F.order}\n"
              f"# locus d={spec.d} m={spec.m} r={spec.r} coordinates={spec.n_coords}\n")
    body = io.format_form(p.as_form()) if p.is_homogeneous() else io.format_poly(p)
    _write_out(cfg, header + body)
    return EXIT_OK


def cmd_bounds(args, cfg, say):
    d, m, r = args.d, args.m, args.r
    n = min_n(d, m, r)
    say("command", "bounds")
    say("n", n)
    if args.shape:
        say("prk_bound", prk_bound(d, m, _ints(args.shape)))
    else:
        say("prk_bound", cubical_prk_bound(d, m, n))
    try:
        info = degree_bound_details(d, m, r)
        say("degree_bound_n", info["n"])
        say("degree_bound_bits", f"{info['rhs_bits']:.6f}")
        say("degree_bound", info["D"])
    except PrankError as exc:
        say("degree_bound", exc.code)
    return EXIT_OK


def cmd_dspace(args, cfg, say):
    F = make_field(cfg.field) if cfg.field else None
    items = io.parse_tuple(_need_in(cfg), F)
    f = items[0]
    if not isinstance(f, Form):
        raise PrankError("UNSUPPORTED", "dspace needs a FORM block")
    D = dspace(f)
    rep = df_experiment(f, cfg.search_budget() if cfg.budget else None)
    say("command", "dspace")
    say("field", f.field)
    say("dim", D.dim)
    for e in sorted(D.by_degree, reverse=True):
        say(f"dim_degree_{e}", len(D.by_degree[e]))
    for k, g in enumerate(D.basis):
        say(f"basis[{k}]", g)
    say("member", rep["member"])
    say("generators", rep["generators"] if rep["member"] else "NONE")
    say("strength", rep["strength"] if rep["strength"] is not None else "NA")
    if rep["flags"]:
        say("flags", ",".join(rep["flags"]))
    _write_out(cfg, "".join(io.format_form(g) for g in D.basis))
    return EXIT_OK


def cmd_verify(args, cfg, say):
    suite = args.suite
    count = args.count
    if suite == "pi-iota":
        F = make_field(cfg.field or "GF(5)")
        res = suite_pi_iota(F, args.d or 3, args.n or 2, count or 100, cfg.seed)
    elif suite == "prop-sym":
        F = make_field(cfg.field or "GF(2)")
        res = suite_prop_sym(F, args.d or 2, args.n or 2, count, cfg.seed)
    elif suite == "descent":
        K = make_field(args.K or cfg.field or "GF(2)")
        res = suite_descent(K, args.e or 2, count or 50, cfg.seed)
    else:
        F = make_field(cfg.field or "GF(5)")
        shape = _ints(args.shape) if args.shape else (2, 2, 2)
        res = suite_coeff_extract(F, shape, count or 100, cfg.seed)
    say("command", f"verify {suite}")
    say("passed", res.passed)
    say("failed", res.failed)
    say("skipped", res.skipped)
    if res.note:
        say("status", res.note)
    for k, msg in enumerate(res.failures):
        say(f"failure[{k}]", msg)
    return EXIT_OK if res.ok else EXIT_VERIFY


# -- parser ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field spec, e.g. GF(5), GF(9), GF(2^3), Q")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, help="search node cap / interpolation entry cap")
    common.add_argument("--in", dest="in_path", help="input file")
    common.add_argument("--out", help="output artifact path")

    p = argparse.ArgumentParser(prog="partrank",
                                description="Exact strength and partition rank at desk scale.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rank", parents=[common], help="exact prk / strength with certificate")
    s.add_argument("kind", choices=["prk", "strength"])
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("check", parents=[common], help="reassemble a certificate against a tuple")
    s.add_argument("--cert", required=True)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("descend", parents=[common], help="descend an L-certificate to the base field")
    s.add_argument("--cert", required=True)
    s.add_argument("--L", help="extension field (defaults to the certificate's field)")
    s.set_defaults(func=cmd_descend)

    s = sub.add_parser("mine", parents=[common], help="mine an equation of a bounded-rank locus")
    s.add_argument("--d", type=int)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--shape", help="tensor locus shape, e.g. 2,2")
    s.add_argument("--partitions", help="1-based slot subsets per term, e.g. '1;1,2'")
    s.add_argument("--nvars", type=int, help="form locus: number of variables")
    s.add_argument("--splits", help="form locus: degree of a_i per term, e.g. 1,1")
    s.add_argument("--degree-cap", type=int, default=2)
    s.add_argument("--margin", type=int, default=16)
    s.set_defaults(func=cmd_mine)

    s = sub.add_parser("bounds", parents=[common], help="explicit bound calculators")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--shape")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("dspace", parents=[common], help="derivative space of a form")
    s.set_defaults(func=cmd_dspace)

    s = sub.add_parser("verify", parents=[common], help="seeded invariant suites")
    s.add_argument("suite", choices=["pi-iota", "prop-sym", "descent", "coeff-extract"])
    s.add_argument("--d", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--count", type=int)
    s.add_argument("--K")
    s.add_argument("--e", type=int)
    s.add_argument("--shape")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig.from_args(args)
    say = _Report(stdout)
    try:
        return args.func(args, cfg, say)
    except PrankError as exc:
        say("error", exc.code)
        say("message", exc.message)
        if exc.code in VERIFICATION_CODES:
            return EXIT_VERIFY
        if exc.code in BUDGET_CODES:
            return EXIT_BUDGET
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
