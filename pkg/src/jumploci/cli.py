"""Command-line entry point: jumploci {gen,det,matrix,analyze,verify,bounds}."""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .analysis import analyze, h_bound, j_min, predicted_multiplicity
from .bounds import feasibility_check
from .exactalg import GF, kernel_basis
from .geometry import (
    NAMED,
    GenerationError,
    GeometryError,
    PointConfig,
    named_config,
    random_config,
    sample_points_on,
)
from .interp import InterpProblem, NonSquareError, build_matrix, determinant, determinant_json, parity_parameters, specialize_at
from .logbundle import cross_check, cross_check_mod_p, generic_samples, points_on_curve_mod_p

EXIT_OK, EXIT_USAGE, EXIT_GEN, EXIT_NONSQUARE, EXIT_CONTRACT, EXIT_DISAGREE = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _manifest(command, params, config=None, seeds=None, t0=None):
    return {
        "command": command,
        "parameters": params,
        "config_sha256": config.digest() if config is not None else None,
        "seeds": seeds or {},
        "version": __version__,
        "wall_time": round(time.perf_counter() - t0, 6) if t0 is not None else None,
    }


def _emit(obj, args):
    text = json.dumps(obj, indent=2 if args.indent else None)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_config(path):
    try:
        if path == "-":
            obj = json.load(sys.stdin)
        else:
            with open(path) as fh:
                obj = json.load(fh)
        return PointConfig.from_json(obj)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read configuration {path!r}: {exc}") from exc


def _params(args, cfg):
    if (args.d is None) != (args.m is None):
        raise UsageError("pass both --d and --m, or neither")
    if args.d is not None:
        return args.d, args.m
    try:
        pc = parity_parameters(len(cfg))
    except ValueError as exc:
        raise UsageError(f"no default (d, m) for |Z| = {len(cfg)}: {exc}") from exc
    return pc.d, pc.m


def _problem(args, cfg):
    d, m = _params(args, cfg)
    try:
        p = InterpProblem(d, m, cfg.points)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not p.square:
        raise NonSquareError(
            f"(d, m) = ({d}, {m}) is not square for |Z| = {len(cfg)}; use 'matrix' for rectangular systems"
        )
    return p


def _parse_point(text):
    try:
        coords = [Fraction(c) for c in text.replace(":", ",").split(",")]
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}") from exc
    if len(coords) != 3 or not any(coords):
        raise UsageError(f"bad point {text!r}: need three coordinates, not all zero")
    return coords


def _curve_names(findings):
    out, counters = [], {}
    kinds = [f.curve.label or f"deg{f.curve.degree}" for f in findings]
    for k in kinds:
        counters[k] = counters.get(k, 0) + 1
    seen = {}
    for k in kinds:
        letter = {"line": "L", "conic": "C"}.get(k, "X")
        seen[k] = seen.get(k, 0) + 1
        out.append(letter if counters[k] == 1 else f"{letter}{seen[k]}")
    return out


# -- commands -----------------------------------------------------------------

def cmd_gen(args, t0):
    if (args.named is None) == (args.n is None):
        raise UsageError("gen needs exactly one of --n or --named")
    if args.named is not None:
        cfg = named_config(args.named, args.seed)
        params = {"named": args.named}
    else:
        if args.n < 2:
            raise UsageError("--n must be at least 2")
        cfg = random_config(args.n, args.seed, args.bound)
        params = {"n": args.n, "bound": args.bound}
    out = cfg.to_json()
    if args.with_manifest:
        out = {**out, "manifest": _manifest("gen", params, cfg, {"seed": args.seed}, t0)}
    _emit(out, args)
    return EXIT_OK


def cmd_det(args, t0):
    cfg = _load_config(args.config)
    p = _problem(args, cfg)
    F = determinant(p, args.algorithm)
    result = determinant_json(F, p)
    if args.pretty:
        print(f"F_{{{p.d},{p.m};Z}} (degree {F.degree}, expected {p.expected_degree}):")
        print(f"  {F}" if F else "  0")
        return EXIT_OK
    _emit({"manifest": _manifest("det", {"d": p.d, "m": p.m, "algorithm": args.algorithm}, cfg, {}, t0),
           "determinant": result}, args)
    return EXIT_OK


def cmd_matrix(args, t0):
    cfg = _load_config(args.config)
    d, m = _params(args, cfg)
    try:
        p = InterpProblem(d, m, cfg.points)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not p.square:
        print(f"warning: (d, m) = ({d}, {m}) gives a non-square matrix; determinant commands will refuse it",
              file=sys.stderr)
    M = build_matrix(p)
    out = {"manifest": _manifest("matrix", {"d": d, "m": m, "at": args.at}, cfg, {}, t0),
           "square": p.square, "basis": [list(e) for e in p.basis], "matrix": M.to_json()}
    if args.at:
        B = _parse_point(args.at)
        rank, _ = kernel_basis(specialize_at(M, B))
        out["at"] = {"B": [str(x) for x in B], "rank": rank, "corank": len(p.basis) - rank}
    _emit(out, args)
    return EXIT_OK


def cmd_analyze(args, t0):
    cfg = _load_config(args.config)
    p = _problem(args, cfg)
    rep = analyze(cfg, p.d, p.m, args.algorithm, args.primes, args.seed)
    out = rep.to_json()
    if args.emit_samples:
        for comp, f in zip(out["components"], rep.findings):
            try:
                pts = sample_points_on(f.curve, cfg.points, args.emit_samples, args.seed)
            except (GenerationError, GeometryError):
                pts = []
            comp["samples"] = [[str(c) for c in P] for P in pts]
    if args.plot:
        from .plotting import render_report

        render_report(args.plot, cfg, rep)
    code = EXIT_CONTRACT if rep.violations else EXIT_OK
    if args.pretty:
        names = _curve_names(rep.findings)
        print(f"deg F = {rep.F_degree}  (d, m) = ({p.d}, {p.m}), |Z| = {len(cfg)}")
        for name, f in zip(names, rep.findings):
            what = {"line": "line", "conic": "conic"}.get(f.curve.label, f"degree-{f.curve.degree} curve")
            print(f"{name} ({what} through {f.curve.n_support} pts): multiplicity {f.observed_multiplicity}"
                  f" (predicted ≥ {f.predicted_multiplicity})")
        verdict = out["irreducibility"]
        print(f"residual: degree {rep.residual_degree}" + (f", {verdict}" if verdict else ""))
        for C, pm in rep.missing:
            print(f"missing: {C.label} through {C.n_support} pts predicted with multiplicity ≥ {pm}")
        if args.plot:
            print(f"figure: {args.plot}")
        return code
    _emit({"manifest": _manifest("analyze", {"d": p.d, "m": p.m, "algorithm": args.algorithm,
                                             "primes": args.primes, "emit_samples": args.emit_samples},
                                 cfg, {"seed": args.seed}, t0),
           "report": out}, args)
    return code


def cmd_verify(args, t0):
    cfg = _load_config(args.config)
    p = _problem(args, cfg)
    F = determinant(p)
    if args.mod_p:
        cc = cross_check_mod_p(cfg.points, p.d, p.m, args.mod_p, args.samples, args.samples, args.seed, F=F)
        extra = None
        if args.emit_samples:
            extra = points_on_curve_mod_p(F.change_field(GF(args.mod_p)), args.mod_p, args.emit_samples, args.seed + 7)
    else:
        rep = analyze(cfg, p.d, p.m, F=F, h_tables=False, seed=args.seed)
        samples = list(generic_samples(args.samples, args.seed))
        sources = ["generic"] * len(samples)
        for f in rep.findings:
            try:
                pts = sample_points_on(f.curve, cfg.points, args.per_component, args.seed)
            except (GenerationError, GeometryError):
                pts = []
            samples += pts
            sources += [f"{f.curve.label or 'curve'}:{f.curve.poly}"] * len(pts)
        cc = cross_check(cfg.points, p.d, p.m, samples, F=F, sources=sources)
        extra = None
    out = cc.to_json()
    if extra is not None:
        out["emitted_samples"] = [list(P) for P in extra]
    code = EXIT_DISAGREE if cc.disagreements else EXIT_OK
    if args.pretty:
        s = out["summary"]
        print(f"{s['n_samples']} samples over {out['field']}: {s['n_agree']} agree, {s['n_disagree']} disagree"
              f" (F = 0 at {s['n_F_zero']}, jumping at {s['n_jumping']})")
        for r in cc.disagreements:
            print(f"  disagreement at B = ({', '.join(r['B'])}): F_is_zero={r['F_is_zero']} d1={r['d1']}"
                  f" jump={r['jump']} common factor degree={r.get('common_factor_degree')}")
        return code
    _emit({"manifest": _manifest("verify", {"d": p.d, "m": p.m, "samples": args.samples,
                                            "per_component": args.per_component, "mod_p": args.mod_p},
                                 cfg, {"seed": args.seed}, t0),
           "cross_check": out}, args)
    return code


def cmd_bounds(args, t0):
    if args.t not in (1, 2):
        raise UsageError("component degree t must be 1 or 2")
    rows = [{"j": j, "h_bound": h_bound(args.t, args.d, args.nC, j)} for j in range(1, args.m + 1)]
    out = {
        "manifest": _manifest("bounds", {"t": args.t, "d": args.d, "nC": args.nC, "m": args.m}, None, {}, t0),
        "j_min": j_min(args.t, args.d, args.nC),
        "feasible": feasibility_check(args.t, args.d, args.nC, args.m),
        "predicted_multiplicity": predicted_multiplicity(args.t, args.d, args.m, args.nC),
        "rows": rows,
    }
    if args.pretty:
        print(f"t={args.t} d={args.d} nC={args.nC} m={args.m}: j_min={out['j_min']}, feasible={out['feasible']},"
              f" predicted multiplicity {out['predicted_multiplicity']}")
        for r in rows:
            print(f"  j={r['j']}: h >= {r['h_bound']}")
        return EXIT_OK
    _emit(out, args)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="jumploci", description="Interpolation determinants and jumping-line loci.")
    ap.add_argument("--version", action="version", version=f"jumploci {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, config=True, dm=True):
        if config:
            p.add_argument("--config", required=True, help="configuration JSON file ('-' for stdin)")
        if dm:
            p.add_argument("--d", type=int)
            p.add_argument("--m", type=int)
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--indent", action="store_true", help="indent JSON output")
        p.add_argument("--pretty", action="store_true", help="human-readable summary instead of JSON")

    g = sub.add_parser("gen", help="generate a point configuration")
    g.add_argument("--n", type=int)
    g.add_argument("--named", help=f"one of {', '.join(NAMED)}")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--bound", type=int, default=100)
    g.add_argument("--with-manifest", action="store_true")
    common(g, config=False, dm=False)

    d = sub.add_parser("det", help="determinant F_{d,m;Z}")
    common(d)
    d.add_argument("--algorithm", choices=("interpolation", "bareiss"), default="interpolation")

    mx = sub.add_parser("matrix", help="symbolic interpolation matrix (square or not)")
    common(mx)
    mx.add_argument("--at", help="specialize at B given as a0,a1,a2 and report the rank")

    a = sub.add_parser("analyze", help="fixed components, residual and bound tables")
    common(a)
    a.add_argument("--algorithm", choices=("interpolation", "bareiss"), default="interpolation")
    a.add_argument("--primes", type=int, default=12)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--emit-samples", type=int, default=0, metavar="K")
    a.add_argument("--plot", metavar="FILE", help="render Z and the components on the chart a2 = 1")

    v = sub.add_parser("verify", help="cross-check F(B) = 0 against splitting types")
    common(v)
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--per-component", type=int, default=3)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--mod-p", type=int, metavar="P")
    v.add_argument("--emit-samples", type=int, default=0, metavar="K")

    b = sub.add_parser("bounds", help="h-bounds, j_min and predicted multiplicity")
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--nC", type=int, required=True)
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--indent", action="store_true")
    b.add_argument("--pretty", action="store_true")
    return ap


COMMANDS = {"gen": cmd_gen, "det": cmd_det, "matrix": cmd_matrix, "analyze": cmd_analyze,
            "verify": cmd_verify, "bounds": cmd_bounds}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    t0 = time.perf_counter()
    try:
        return COMMANDS[args.command](args, t0)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenerationError as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_GEN
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonSquareError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONSQUARE


if __name__ == "__main__":
    sys.exit(main())
