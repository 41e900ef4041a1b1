"""Command-line front end.

Exit status: 0 when the check ran (1 instead if ``--strict`` and the
property fails), 2 for usage or input errors, 3 when a search budget
runs out.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .analysis import (covering_failure, default_box_radius, find_afpp_counterexample,
                       find_bu_counterexample, is_radius_n_local_iso, shy_failure)
from .connectivity import components, find_path
from .exthomotopy import LongHomotopy, RealHomotopy, is_long_homotopy, is_real_homotopy
from .homotopy import contraction, flatten_np1, is_homotopy
from .lattice import CU, as_point, product_image
from .maps import inverse, is_bijection, is_continuous, is_retraction
from .multimap import (has_strong_continuity, has_weak_continuity, is_connectivity_preserving,
                       is_continuous_multimap, subdivide)
from .search import DEFAULT_BUDGET, BudgetExceeded, Counter

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class Report:
    def __init__(self, command: str, prop: str, holds: bool, **details):
        self.command = command
        self.prop = prop
        self.holds = holds
        self.details = details

    def as_dict(self) -> dict:
        return {"command": self.command, "property": self.prop, "holds": self.holds, **self.details}

    def text(self) -> str:
        lines = [f"{self.prop}: {'yes' if self.holds else 'no'}"]
        for k, v in self.details.items():
            if k == "output":
                continue
            if isinstance(v, dict) and v:
                lines.append(f"  {k}:")
                for kk, vv in v.items():
                    if isinstance(vv, dict) and "report" in vv:
                        vv = f"{'pass' if vv.get('passed') else 'FAIL'}  {vv['report']}"
                    lines.append(f"    {kk}: {vv}")
            else:
                lines.append(f"  {k}: {v}")
        return "\n".join(lines)


def _pt(s: str):
    try:
        return as_point(int(c) for c in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (frozenset, set)):
        return sorted(_jsonable(x) for x in v)
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    try:
        return io.to_json(v)
    except TypeError:
        return repr(v)


# ---------------------------------------------------------------------------
# subcommand handlers; each returns a Report


def cmd_components(a):
    X = io.load(a.image, "image")
    comps = components(X)
    return Report("components", "connected", len(comps) == 1, count=len(comps),
                  components=[sorted(c) for c in comps])


def cmd_path(a):
    X = io.load(a.image, "image")
    for p in (a.source, a.target):
        if p not in X:
            raise ValueError(f"{p} is not a point of the image")
    path = find_path(X, a.source, a.target)
    return Report("path", "path exists", path is not None, path=path,
                  length=None if path is None else len(path) - 1)


def cmd_product(a):
    images = [io.load(p, "image") for p in a.images]
    P = product_image(images, a.u)
    return Report("product", "product built", True, size=len(P), output=io.to_json(P))


def cmd_check_continuity(a):
    f = io.load(a.map, "map")
    bad = [(x, y) for x, y in f.domain.edges() if not (f(x) == f(y) or f.codomain.is_adjacent(f(x), f(y)))]
    return Report("check-continuity", "continuous", not bad, witness=bad[0] if bad else None)


def cmd_check_iso(a):
    f = io.load(a.map, "map")
    if not is_bijection(f):
        return Report("check-iso", "isomorphism", False, reason="not a bijection")
    if not is_continuous(f):
        return Report("check-iso", "isomorphism", False, reason="map not continuous")
    if not is_continuous(inverse(f)):
        return Report("check-iso", "isomorphism", False, reason="inverse not continuous")
    return Report("check-iso", "isomorphism", True)


def cmd_check_retraction(a):
    r = io.load(a.map, "map")
    return Report("check-retraction", "retraction onto codomain", is_retraction(r, r.codomain.points))


def cmd_check_homotopy(a):
    doc = io.read_json(a.homotopy)
    kind = doc.get("kind", "homotopy") if isinstance(doc, dict) else "homotopy"
    if kind not in ("homotopy", "long", "real"):
        raise io.SchemaError(f"{a.homotopy}:$.kind", f"unknown homotopy kind {kind!r}")
    H = io.load(a.homotopy, kind)
    if isinstance(H, LongHomotopy):
        return Report("check-homotopy", "long homotopy", is_long_homotopy(H), N=H.N)
    if isinstance(H, RealHomotopy):
        return Report("check-homotopy", "real homotopy", is_real_homotopy(H),
                      breakpoints=[str(t) for t in H.breakpoints])
    ok = is_homotopy(H)
    return Report("check-homotopy", "homotopy", ok, length=H.length,
                  flattened_continuous=is_continuous(flatten_np1(H)))


def cmd_contractible(a):
    X = io.load(a.image, "image")
    H = contraction(X, budget=a.budget)
    return Report("contractible", "contractible", H is not None,
                  length=None if H is None else H.length)


def cmd_check_multimap(a):
    F = io.load(a.multimap, "multimap")
    if a.notion == "weak":
        return Report("check-multimap", "weak continuity", has_weak_continuity(F))
    if a.notion == "strong":
        return Report("check-multimap", "strong continuity", has_strong_continuity(F))
    if a.notion == "cp":
        return Report("check-multimap", "connectivity preserving", is_connectivity_preserving(F))
    found = is_continuous_multimap(F, a.rmax, Counter(a.budget))
    if found is None:
        return Report("check-multimap", "continuous", False,
                      note=f"no inducing map on S(X, r) for r <= {a.rmax}")
    r, f = found
    return Report("check-multimap", "continuous", True, r=r, witness=f)


def cmd_subdivide(a):
    X = io.load(a.image, "image")
    S = subdivide(X, a.r)
    return Report("subdivide", "subdivision built", True, size=len(S), output=io.to_json(S))


def cmd_check_shy(a):
    f = io.load(a.map, "map")
    why = shy_failure(f)
    return Report("check-shy", "shy", why is None, reason=why)


def cmd_check_afpp(a):
    X = io.load(a.image, "image")
    w = find_afpp_counterexample(X, budget=a.budget, workers=a.threads)
    return Report("check-afpp", "approximate fixed point property", w is None, witness=w)


def cmd_check_bu(a):
    S = io.load(a.image, "image")
    b = a.box if a.box is not None else default_box_radius(S)
    u = a.u if a.u is not None else 1
    w = find_bu_counterexample(S, a.m, b, CU(a.m, u), budget=a.budget)
    return Report("check-bu", f"Borsuk-Ulam property into [-{b},{b}]^{a.m} (c_{u})", w is None, witness=w)


def cmd_check_covering(a):
    g = io.load(a.map, "map")
    why = covering_failure(g)
    if why is not None:
        return Report("check-covering", "covering map", False, reason=why)
    if a.radius is None or a.radius == 1:
        return Report("check-covering", "covering map", True)
    ok = is_radius_n_local_iso(g, a.radius)
    return Report("check-covering", f"radius-{a.radius} local isomorphism", ok)


def cmd_fixtures(a):
    from .fixtures import FIXTURES, run

    if a.action == "list":
        return Report("fixtures", "listed", True, fixtures={n: fx.summary for n, fx in FIXTURES.items()})
    if a.all == (a.name is not None):
        raise ValueError("fixtures run needs exactly one of NAME or --all")
    names = list(FIXTURES) if a.all else [a.name]
    if a.name is not None and a.name not in FIXTURES:
        raise ValueError(f"unknown fixture {a.name!r}")
    results = [run(n) for n in names]
    details = {r.name: {"passed": r.passed, "report": r.report, "outcomes": r.outcomes} for r in results}
    if not a.all:
        r = results[0]
        return Report("fixtures", f"{r.name} matches expectations", r.passed, report=r.report,
                      outcomes=r.outcomes, expected=dict(r.expected), witnesses=r.witnesses)
    return Report("fixtures", "all fixtures match expectations", all(r.passed for r in results),
                  results=details)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--strict", action="store_true", help="exit 1 when the property fails")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node cap")
    common.add_argument("--threads", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--rmax", type=int, default=3, help="largest subdivision tried")

    p = argparse.ArgumentParser(prog="digitop", description="Digital topology checks on finite images.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(fn=fn)
        return s

    add("components", cmd_components, "connected components").add_argument("image")
    s = add("path", cmd_path, "shortest path between two points")
    s.add_argument("image")
    s.add_argument("source", type=_pt)
    s.add_argument("target", type=_pt)
    s = add("product", cmd_product, "NP_u product of images")
    s.add_argument("images", nargs="+")
    s.add_argument("--u", type=int, default=None)
    add("check-continuity", cmd_check_continuity, "continuity of a map").add_argument("map")
    add("check-iso", cmd_check_iso, "isomorphism check").add_argument("map")
    add("check-retraction", cmd_check_retraction, "retraction onto the codomain").add_argument("map")
    add("check-homotopy", cmd_check_homotopy, "validate a homotopy").add_argument("homotopy")
    add("contractible", cmd_contractible, "decide contractibility").add_argument("image")
    s = add("check-multimap", cmd_check_multimap, "multivalued continuity notions")
    s.add_argument("multimap")
    s.add_argument("--notion", choices=["weak", "strong", "cp", "continuous"], default="continuous")
    s = add("subdivide", cmd_subdivide, "subdivision S(X, r)")
    s.add_argument("image")
    s.add_argument("--r", type=int, required=True)
    add("check-shy", cmd_check_shy, "shy map check").add_argument("map")
    add("check-afpp", cmd_check_afpp, "approximate fixed point property").add_argument("image")
    s = add("check-bu", cmd_check_bu, "Borsuk-Ulam property on a bounded box")
    s.add_argument("image")
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--box", type=int, default=None, help="box radius (default twice the coordinate spread)")
    s.add_argument("--u", type=int, default=None, help="c_u adjacency on the box (default 1)")
    s = add("check-covering", cmd_check_covering, "covering map check")
    s.add_argument("map")
    s.add_argument("--radius", type=int, default=None)
    s = add("fixtures", cmd_fixtures, "built-in worked examples")
    s.add_argument("action", choices=["list", "run"])
    s.add_argument("name", nargs="?")
    s.add_argument("--all", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.fn(args)
    except io.SchemaError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(_jsonable(report.as_dict()), indent=2))
    else:
        out = report.details.get("output")
        print(report.text())
        if out is not None:
            print(json.dumps(out))
    if args.strict and not report.holds:
        return EXIT_FALSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
