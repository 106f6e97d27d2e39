"""Command-line entry point: ``endspace <command> ...``.

Exit status 0 on success, 1 on domain errors, 2 on usage errors.  Every
error is reported as a single ``error: ...`` line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .balls import ball, distance
from .closedsets import ClosedSetSpec, validate_closed_set
from .descriptors import StandardGraphDescriptor
from .ends import component_tree, loop_accumulation_profile, rank_lower_bound
from .genericity import ExperimentConfig, run_experiment
from .graph import is_k_regular_within, to_dot, to_text
from .phe import Distinguished, descriptor_of, phe_distinguish, phe_equivalent
from .registry import load_spec, resolve_graph
from .surfaces import PantsComplex, surfaces_homeomorphic
from .reductions import gamma


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _radius(text: str) -> Fraction:
    try:
        r = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad radius {text!r}") from None
    if r < 0:
        raise argparse.ArgumentTypeError("radius must be non-negative")
    return r


def _nat(text: str) -> int:
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return int(text)


def _flat(x) -> str:
    return str(x).replace(" ", "")


# ------------------------------------------------------------------ commands

def cmd_ball(a, out):
    b = ball(resolve_graph(a.spec), a.radius)
    if a.format == "dot":
        out.write(b.to_dot())
    elif a.format == "json":
        data = {"radius": str(b.radius) + ("+" if b.eps else ""), "root": str(b.root),
                "vertices": [{"id": str(v), "depth": d, "stubs": b.stubs.get(v, 0)}
                             for v, d in b.depth.items()],
                "full_edges": [[str(u), str(v)] for u, v in b.full_edges],
                "rank": b.rank()}
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(f"ball radius={b.radius}{'+' if b.eps else ''} vertices={len(b.depth)} "
                  f"full_edges={len(b.full_edges)} stubs={b.total_stubs()} rank={b.rank()}\n")
        for v, d in b.depth.items():
            out.write(f"v {_flat(v)} depth={d} stubs={b.stubs.get(v, 0)}\n")
        for u, v in b.full_edges:
            out.write(f"e {_flat(u)} {_flat(v)}\n")


def cmd_dist(a, out):
    d = distance(resolve_graph(a.a), resolve_graph(a.b), a.budget)
    out.write(f"{d} {d.value:.10g}\n")


def cmd_ends(a, out):
    t = component_tree(resolve_graph(a.spec), a.depth, a.horizon)
    if a.format == "json":
        out.write(t.to_json())
    elif a.format == "dot":
        out.write(t.to_dot())
    else:
        out.write(f"horizon={t.horizon} levels={t.r_max + 1}\n")
        out.write("components " + " ".join(map(str, t.counts())) + "\n")
        out.write("persistent " + " ".join(map(str, t.persistent_counts())) + "\n")
        for br in loop_accumulation_profile(t):
            if br.persistent:
                out.write("branch " + ".".join(map(str, br.path)) + " cycles "
                          + " ".join(map(str, br.cumulative)) + "\n")


def cmd_rank(a, out):
    g = resolve_graph(a.spec)
    out.write(f"rank_lower_bound radius={a.radius} {rank_lower_bound(g, a.radius)}\n")
    d = descriptor_of(g)
    if d is not None:
        out.write(f"certified {d}\n")


def cmd_reduce(a, out):
    spec = load_spec(a.closed_set)
    if not isinstance(spec, ClosedSetSpec):
        raise ValueError("--closed-set must be a closed-set spec")
    rep = validate_closed_set(spec, a.validate_depth)
    for w in rep.warnings:
        sys.stderr.write(f"warning: {w}\n")
    g = gamma(spec, a.k)
    if a.check_regular is not None:
        ok = is_k_regular_within(g, a.k, a.check_regular)
        out.write(f"regular k={a.k} radius={a.check_regular} {'yes' if ok else 'no'}\n")
    if a.emit_ball is not None:
        b = ball(g, a.emit_ball)
        if a.format == "dot":
            out.write(b.to_dot(name=f"gamma{a.k}"))
        else:
            out.write(f"ball radius={b.radius} vertices={len(b.depth)} full_edges={len(b.full_edges)} "
                      f"stubs={b.total_stubs()} rank={b.rank()}\n")


def _phe_side(arg):
    spec = load_spec(arg)
    if isinstance(spec, StandardGraphDescriptor):
        return spec, None
    g = resolve_graph(arg)
    return descriptor_of(g), g


def cmd_phe(a, out):
    (d1, g1), (d2, g2) = _phe_side(a.a), _phe_side(a.b)
    if d1 is not None and d2 is not None:
        verdict = "equivalent" if phe_equivalent(d1, d2) else "not equivalent"
        out.write(f"{verdict}\n{d1}\n{d2}\n")
        return
    if g1 is None or g2 is None:
        from .phe import realize
        g1 = g1 if g1 is not None else realize(d1, "<inf")
        g2 = g2 if g2 is not None else realize(d2, "<inf")
    res = phe_distinguish(g1, g2, a.budget)
    if isinstance(res, Distinguished):
        out.write(f"not equivalent\nreason: {res.reason}\n")
    else:
        out.write(f"unknown\nreason: {res.reason}\n")


def cmd_generic(a, out):
    cfg = ExperimentConfig(a.k, a.N, a.n, a.R, a.trials, a.seed).validate()
    res = run_experiment(cfg, n_jobs=a.jobs)
    text = res.to_csv()
    if a.csv:
        with open(a.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    if res.records:
        sys.stderr.write(f"fraction in U_n {res.frac_U:.4f}, in V_n {res.frac_V:.4f}\n")


def cmd_surface(a, out):
    if a.homeo:
        x, y = (load_spec(f) for f in a.homeo)
        for s in (x, y):
            if not isinstance(s, (PantsComplex, StandardGraphDescriptor)):
                raise ValueError("--homeo takes pants files or descriptors")
        conv = [s if isinstance(s, PantsComplex) else _as_surface(s) for s in (x, y)]
        res = surfaces_homeomorphic(*conv)
        out.write({True: "homeomorphic", False: "not homeomorphic", None: "unknown"}[res] + "\n")
        return
    if not a.file:
        raise UsageError("surface: give --file or --homeo")
    pc = load_spec(a.file)
    if not isinstance(pc, PantsComplex):
        raise ValueError(f"{a.file} is not a pants file")
    if a.genus:
        out.write(f"genus {pc.genus()} euler_characteristic {pc.euler_characteristic()}\n")
    if a.to_graph or not a.genus:
        g = pc.to_graph()
        out.write(to_dot(g) if a.format == "dot" else to_text(g))


def _as_surface(d):
    from .surfaces import SurfaceClass
    return SurfaceClass(d.rank, d.endpair)


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="endspace", description="Rooted locally finite graphs: balls, ends, PHE.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("ball", help="closed ball around the root")
    s.add_argument("--spec", required=True)
    s.add_argument("--radius", type=_radius, required=True)
    s.add_argument("--format", choices=["text", "dot", "json"], default="text")
    s.set_defaults(fn=cmd_ball)

    s = sub.add_parser("dist", help="ball-metric distance")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--budget", type=_nat, required=True, help="half-steps to scan")
    s.set_defaults(fn=cmd_dist)

    s = sub.add_parser("ends", help="component tree of the complements of balls")
    s.add_argument("--spec", required=True)
    s.add_argument("--depth", type=_nat, required=True)
    s.add_argument("--horizon", type=_nat, required=True)
    s.add_argument("--format", choices=["text", "json", "dot"], default="text")
    s.set_defaults(fn=cmd_ends)

    s = sub.add_parser("rank", help="rank lower bound from a ball")
    s.add_argument("--spec", required=True)
    s.add_argument("--radius", type=_radius, required=True)
    s.set_defaults(fn=cmd_rank)

    s = sub.add_parser("reduce", help="build the k-regular graph of a closed set")
    s.add_argument("--closed-set", required=True, dest="closed_set")
    s.add_argument("--k", type=_nat, required=True)
    s.add_argument("--emit-ball", type=_radius, dest="emit_ball")
    s.add_argument("--check-regular", type=_nat, dest="check_regular")
    s.add_argument("--validate-depth", type=_nat, default=8, dest="validate_depth")
    s.add_argument("--format", choices=["text", "dot"], default="text")
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("phe", help="proper homotopy equivalence on descriptors")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--budget", type=_nat, default=8)
    s.set_defaults(fn=cmd_phe)

    s = sub.add_parser("generic", help="configuration-model experiment")
    s.add_argument("--k", type=_nat, required=True)
    s.add_argument("--N", type=_nat, required=True)
    s.add_argument("--n", type=_nat, required=True)
    s.add_argument("--R", type=_nat, required=True)
    s.add_argument("--trials", type=_nat, required=True)
    s.add_argument("--seed", type=_nat, required=True)
    s.add_argument("--csv")
    s.add_argument("--jobs", type=_nat, default=1)
    s.set_defaults(fn=cmd_generic)

    s = sub.add_parser("surface", help="pants complexes")
    s.add_argument("--file")
    s.add_argument("--to-graph", action="store_true", dest="to_graph")
    s.add_argument("--genus", action="store_true")
    s.add_argument("--homeo", nargs=2, metavar=("F1", "F2"))
    s.add_argument("--format", choices=["text", "dot"], default="text")
    s.set_defaults(fn=cmd_surface)
    return p


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        args.fn(args, out)
        return 0
    except UsageError as exc:
        sys.stderr.write(f"error: usage: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (ValueError, KeyError, RecursionError, OSError) as exc:
        msg = " ".join(str(exc).split()) or type(exc).__name__
        sys.stderr.write(f"error: {msg}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
