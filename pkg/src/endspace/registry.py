"""Named graphs and the resolution of command-line graph arguments."""

from __future__ import annotations

import os
import re

from .builtins import CombSequence, LochNess, Ray, RegularTree
from .closedsets import ClosedSetSpec, parse_closed_set
from .descriptors import FinitePair, StandardGraphDescriptor
from .graph import FiniteMultigraph, GraphError
from .phe import fig4_cantor, realize
from .reductions import gamma, gamma_star
from .specfile import BuiltinRef, parse_spec
from .surfaces import PantsComplex

FIXED = {
    "loch_ness": LochNess,
    "ray": Ray,
    "fig4_first": lambda: realize(StandardGraphDescriptor(3, FinitePair(1, 0)), "<=3"),
    "fig4_middle": CombSequence,
    "fig4_cantor": fig4_cantor,
}


def builtin_names() -> list[str]:
    return sorted(FIXED) + ["tree<k>", "gamma<k>:<closed set>", "gamma_star:<closed set>"]


def _closed(body: str) -> ClosedSetSpec:
    body = body.strip()
    return parse_closed_set(body if body.startswith("closedset") else "closedset " + body)


def builtin(name: str):
    """``loch_ness``, ``ray``, ``tree3``, ``fig4_*``, ``gamma5:full``, ``gamma_star:cylinders 0``."""
    if name in FIXED:
        g = FIXED[name]()
        g.metadata["name"] = name
        return g
    m = re.fullmatch(r"tree(\d+)", name)
    if m:
        return RegularTree(int(m.group(1)))
    m = re.fullmatch(r"gamma(\d+):(.+)", name, re.S)
    if m:
        return gamma(_closed(m.group(2)), int(m.group(1)))
    m = re.fullmatch(r"gamma_star:(.+)", name, re.S)
    if m:
        return gamma_star(_closed(m.group(1)))
    raise GraphError(f"unknown builtin {name!r}; known: {', '.join(builtin_names())}")


def load_spec(arg: str):
    """A registry name, a path to a spec file, or inline spec text."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse_spec(fh.read())
    return BuiltinRef(arg) if _looks_builtin(arg) else parse_spec(arg)


def _looks_builtin(arg: str) -> bool:
    return arg in FIXED or bool(re.fullmatch(r"tree\d+|gamma\d+:.+|gamma_star:.+", arg, re.S))


def resolve_graph(arg: str):
    """Turn a command-line argument into a graph (finite or oracle)."""
    spec = load_spec(arg)
    if isinstance(spec, BuiltinRef):
        return builtin(spec.name)
    if isinstance(spec, FiniteMultigraph):
        return spec
    if isinstance(spec, ClosedSetSpec):
        return gamma(spec, 3)
    if isinstance(spec, StandardGraphDescriptor):
        return realize(spec, "<inf")
    if isinstance(spec, PantsComplex):
        return spec.to_graph()
    raise GraphError(f"cannot build a graph from {arg!r}")
