"""Command line entry point: ``greedylab <subcommand> [flags]``."""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import acceptance
from .chebyshev import BudgetError, sigma_profile, theta_profile
from .classes import (KINDS, ClassNormParams, casec_construction, class_norm, imp1_experiment,
                      kppg_experiment, remark_ratio)
from .democracy import h_restricted, h_l, h_r
from .greedy import DEFAULT_CAP, _gamma, beta
from .harness import RunConfig, emit, parse_vectors, random_sample
from .spaces import SignedSet, make_space
from .weights import dilation_bounds, dilation_indices, make_weight

DEFAULT_SPACES = ["summing", "difference", "schreier", "mixnorm", "lp:2"]


def _q(text: str) -> float:
    return math.inf if text.lower() in ("inf", "infinity") else float(text)


def _config(args) -> RunConfig:
    return RunConfig(seed=args.seed, horizon=args.horizon, cap=args.cap, window=args.window,
                     output=args.out, format=args.format)


def _vectors(args, cfg):
    if args.vectors:
        text = args.vectors
        if not text.lstrip().startswith("["):
            text = Path(text).read_text()
        return parse_vectors(text)
    return random_sample(cfg.seed, args.count, 8, cfg.horizon)


def _spaces(args):
    names = args.space or DEFAULT_SPACES
    return [(n, make_space(n)) for n in names]


def cmd_norms(args, cfg):
    rows = []
    for name, sp in _spaces(args):
        for i, x in enumerate(_vectors(args, cfg)):
            rows.append({"space": name, "vector_id": i, "norm": sp.norm(x)})
    return rows, ["space", "vector_id", "norm"], True


def cmd_errors(args, cfg):
    rows, exact_all = [], True
    for name, sp in _spaces(args):
        for i, x in enumerate(_vectors(args, cfg)):
            s = len(x)
            ms = [args.m] if args.m is not None else range(s + 1)
            sg = sigma_profile(sp, x, s, cfg.window)
            th, te = theta_profile(sp, x, s, cfg.cap)
            for m in ms:
                g, ge = _gamma(sp, x, m, cfg.cap)
                exact_all &= ge and te
                flags = [] if ge and te else ["tie_cap"]
                rows.append({"space": name, "vector_id": i, "m": m,
                             "sigma": float(sg[m]) if m <= s else 0.0,
                             "gamma": g, "theta": float(th[m]) if m <= s else 0.0,
                             "beta": beta(sp, x, m), "truncated_flags": flags})
    cols = ["space", "vector_id", "m", "sigma", "gamma", "theta", "beta", "truncated_flags"]
    return rows, cols, exact_all


def cmd_democracy(args, cfg):
    if args.m is None:
        raise SystemExit("democracy needs --m")
    rows = []
    for name, sp in _spaces(args):
        if args.side in ("left", "right"):
            if args.u is None:
                raise SystemExit("restricted democracy needs --u")
            horizon = args.horizon_given
            rep = h_restricted(sp, args.m, args.u, args.side, horizon, args.method, args.signs)
        elif args.side == "r":
            rep = h_r(sp, args.m, cfg.horizon, args.method, args.signs)
        else:
            rep = h_l(sp, args.m, cfg.horizon, args.method, args.signs)
        wit = rep.witness
        rows.append({"space": name, "m": args.m, "u": args.u if args.u is not None else "",
                     "side": args.side, "value": rep.value,
                     "witness_indices": list(wit.indices) if wit else [],
                     "witness_signs": list(wit.signs) if wit else [], "horizon": rep.horizon})
    cols = ["space", "m", "u", "side", "value", "witness_indices", "witness_signs", "horizon"]
    return rows, cols, True


def cmd_weights(args, cfg):
    rows = []
    specs = args.w or ["sqrt"]
    for spec in specs:
        w = make_weight(spec)
        rep = dilation_indices(w, args.Mmax, args.kmax)
        Ms = sorted({2 ** k for k in range(1, int(math.log2(args.Mmax)) + 1)} | {args.Mmax})
        theta_hat = dilation_bounds(w, 2, args.kmax).Phi_hat
        for M in Ms:
            d = dilation_bounds(w, M, args.kmax)
            rows.append({"weight_id": w.name, "M": M, "phi_hat": d.phi_hat, "Phi_hat": d.Phi_hat,
                         "i_hat": rep.i_hat, "I_hat": rep.I_hat, "theta_hat": theta_hat,
                         "k_max": args.kmax})
    cols = ["weight_id", "M", "phi_hat", "Phi_hat", "i_hat", "I_hat", "theta_hat", "k_max"]
    return rows, cols, True


def cmd_classes(args, cfg):
    w = make_weight(args.w[0] if args.w else "sqrt")
    kinds = KINDS if args.kind == "all" else [args.kind]
    rows = []
    for name, sp in _spaces(args):
        for i, x in enumerate(_vectors(args, cfg)):
            for kind in kinds:
                v = class_norm(sp, x, ClassNormParams(w, args.q, kind), cfg.window, cfg.cap)
                rows.append({"space": name, "vector_id": i, "kind": kind, "q": args.q, "norm": v})
    return rows, ["space", "vector_id", "kind", "q", "norm"], True


def _exp_row(preset, r):
    return {"preset": preset, "j_or_m": r.j, "k": r.k if r.k is not None else "",
            "u": r.u if r.u is not None else "", "eta": r.eta if r.eta is not None else "",
            "num_norm": r.numerator_norm, "den_norm": r.denominator_norm, "ratio": r.ratio,
            "bound": r.bound if r.bound is not None else "", "flags": r.flags}


def cmd_experiment(args, cfg):
    preset = args.preset
    w = make_weight(args.w[0] if args.w else "sqrt")
    defaults = {"remark": "summing", "imp1": "summing", "kppg": "mixnorm", "casec": "lp:2"}
    sp = make_space(args.space[0] if args.space else defaults[preset])
    ok = True
    if preset == "remark":
        rows = remark_ratio(sp, w, args.q, range(1, (args.m or 50) + 1))
        ok = all(not r.flags for r in rows)
    elif preset == "imp1":
        rows = imp1_experiment(sp, w, args.q, args.jmax or 6, cfg.cap, cfg.window)
        ok = all(b.ratio > a.ratio for a, b in zip(rows, rows[1:]))
    elif preset == "kppg":
        rows = kppg_experiment(sp, w, args.q, args.jmax or 4, cfg.cap)
        ok = all(b.ratio > a.ratio for a, b in zip(rows, rows[1:]))
    else:
        m = args.m or 4
        r = args.r or 2
        rep = casec_construction(sp, SignedSet(range(1, m + 1)), range(m + 1, 2 * m + 1), r)
        flags = ["premise_holds" if rep["premise"] else "premise_fails"]
        if not rep["chain_holds"]:
            flags.append("chain_violated")
        ok = rep["chain_holds"]
        row = {"preset": "casec", "j_or_m": m, "k": r, "u": "", "eta": "",
               "num_norm": rep["norm_x"], "den_norm": rep["norm_V"],
               "ratio": rep["norm_x"] / rep["norm_V"], "bound": rep["three"][2] ** (1 / rep["p"]),
               "flags": flags}
        cols = ["preset", "j_or_m", "k", "u", "eta", "num_norm", "den_norm", "ratio", "bound", "flags"]
        return [row], cols, ok
    cols = ["preset", "j_or_m", "k", "u", "eta", "num_norm", "den_norm", "ratio", "bound", "flags"]
    return [_exp_row(preset, r) for r in rows], cols, ok


def cmd_verify(args, cfg):
    results = acceptance.run_all(cfg.seed, args.only)
    for r in results:
        # keep stdout clean when it carries the JSON report
        stream = sys.stderr if args.out is None and args.format == "json" else sys.stdout
        print(acceptance.format_line(r), file=stream)
    rows = [{"criterion": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
            for r in results]
    return rows, ["criterion", "name", "passed", "detail"], all(r.passed for r in results)


COMMANDS = {"norms": cmd_norms, "errors": cmd_errors, "democracy": cmd_democracy,
            "weights": cmd_weights, "classes": cmd_classes, "experiment": cmd_experiment,
            "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", action="append",
                        help="summing, difference, schreier, mixnorm or lp:<p> (repeatable)")
    common.add_argument("--w", action="append", help="weight preset, e.g. sqrt, power:0.5, sqrt*log")
    common.add_argument("--q", type=_q, default=math.inf, help="class exponent (inf for the sup)")
    common.add_argument("--m", type=int)
    common.add_argument("--u", type=int)
    common.add_argument("--horizon", type=int)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--window", type=int)
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")

    p = argparse.ArgumentParser(prog="greedylab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("norms", "errors", "classes"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--vectors", help="JSON [[i, a], ...] (or a list of them), or a path to one")
        s.add_argument("--count", type=int, default=5, help="random vectors when --vectors is absent")
        if name == "classes":
            s.add_argument("--kind", choices=list(KINDS) + ["all"], default="all")
    s = sub.add_parser("democracy", parents=[common])
    s.add_argument("--side", choices=["r", "l", "left", "right"], default="r")
    s.add_argument("--signs", choices=["all", "plus"], default="all",
                   help="sign patterns allowed in the extremal sets")
    s.add_argument("--method", choices=["auto", "brute", "structured"], default="auto")
    s = sub.add_parser("weights", parents=[common])
    s.add_argument("--Mmax", type=int, default=2**10)
    s.add_argument("--kmax", type=int, default=2**12)
    s = sub.add_parser("experiment", parents=[common])
    s.add_argument("--preset", choices=["remark", "imp1", "kppg", "casec"], required=True)
    s.add_argument("--jmax", type=int)
    s.add_argument("--r", type=int, help="number of partition blocks for casec")
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.horizon_given = args.horizon
    if args.horizon is None:
        args.horizon = 16
    cfg = _config(args)
    try:
        rows, cols, ok = COMMANDS[args.command](args, cfg)
    except (BudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command == "verify" and args.out is None and args.format == "csv":
        return 0 if ok else 1
    try:
        text = emit(rows, cols, cfg.format, cfg.output)
    except OSError as exc:
        print(f"error: cannot write {cfg.output}: {exc}", file=sys.stderr)
        return 2
    if cfg.output is None:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
