"""JSON encoding of images, maps, multimaps and homotopies.

Images may appear inline or as a string naming another JSON file,
resolved relative to the referencing document.  Rationals are
``[num, den]`` pairs.  Every parse error is a :class:`SchemaError`
carrying a JSON-path style location.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exthomotopy import LongHomotopy, RealHomotopy
from .homotopy import Homotopy
from .lattice import CU, NP, DigitalImage, Explicit
from .maps import DigitalMap
from .multimap import MultiMap


class SchemaError(ValueError):
    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


def read_json(path: str | Path) -> Any:
    """Load a JSON file; syntax errors become :class:`SchemaError` with line and column."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise SchemaError(str(path), e.strerror or str(e)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}:{e.lineno}:{e.colno}", e.msg) from None


# ---------------------------------------------------------------------------
# small field readers


def _obj(doc, where) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(where, "expected an object")
    return doc


def _field(doc: dict, key: str, where: str):
    if key not in doc:
        raise SchemaError(where, f"missing field {key!r}")
    return doc[key]


def _int(v, where) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(where, f"expected an integer, got {v!r}")
    return v


def _point(v, where) -> tuple[int, ...]:
    if not isinstance(v, list) or not v:
        raise SchemaError(where, "expected a nonempty list of integers")
    return tuple(_int(c, f"{where}[{i}]") for i, c in enumerate(v))


def _list(v, where) -> list:
    if not isinstance(v, list):
        raise SchemaError(where, "expected a list")
    return v


def _rational(v, where) -> Fraction:
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    if not (isinstance(v, list) and len(v) == 2):
        raise SchemaError(where, "expected a rational [num, den]")
    den = _int(v[1], f"{where}[1]")
    if den == 0:
        raise SchemaError(where, "zero denominator")
    return Fraction(_int(v[0], f"{where}[0]"), den)


# ---------------------------------------------------------------------------
# adjacency and images


def adjacency_to_json(spec) -> dict:
    if isinstance(spec, CU):
        return {"kind": "cu", "u": spec.u, "dim": spec.dim}
    if isinstance(spec, NP):
        return {"kind": "np", "u": spec.u,
                "factors": [{"adjacency": adjacency_to_json(s), "dim": d} for s, d in spec.factors]}
    edges = sorted(tuple(sorted(e)) for e in spec.edges)
    return {"kind": "explicit", "dim": spec.dim, "edges": [[list(a), list(b)] for a, b in edges]}


def adjacency_from_json(doc, dim: int | None, where: str = "$"):
    doc = _obj(doc, where)
    kind = _field(doc, "kind", where)
    try:
        if kind == "cu":
            d = _int(doc.get("dim", dim), f"{where}.dim")
            return CU(d, _int(_field(doc, "u", where), f"{where}.u"))
        if kind == "np":
            facs = []
            for i, fac in enumerate(_list(_field(doc, "factors", where), f"{where}.factors")):
                w = f"{where}.factors[{i}]"
                fac = _obj(fac, w)
                d = _int(_field(fac, "dim", w), f"{w}.dim")
                facs.append((adjacency_from_json(_field(fac, "adjacency", w), d, f"{w}.adjacency"), d))
            return NP(_int(_field(doc, "u", where), f"{where}.u"), tuple(facs))
        if kind == "explicit":
            d = _int(doc.get("dim", dim), f"{where}.dim")
            pairs = []
            for i, e in enumerate(_list(_field(doc, "edges", where), f"{where}.edges")):
                w = f"{where}.edges[{i}]"
                e = _list(e, w)
                if len(e) != 2:
                    raise SchemaError(w, "an edge joins exactly two points")
                pairs.append((_point(e[0], f"{w}[0]"), _point(e[1], f"{w}[1]")))
            return Explicit.from_pairs(d, pairs)
    except SchemaError:
        raise
    except ValueError as e:
        raise SchemaError(where, str(e)) from None
    raise SchemaError(f"{where}.kind", f"unknown adjacency kind {kind!r}")


def image_to_json(X: DigitalImage) -> dict:
    doc = {"dim": X.dim, "denom": X.denom, "points": [list(p) for p in X.points],
           "adjacency": adjacency_to_json(X.adjacency)}
    if X.factors is not None:
        doc["factors"] = [image_to_json(F) for F in X.factors]
    return doc


def image_from_json(doc, where: str = "$", base: Path | None = None) -> DigitalImage:
    if isinstance(doc, str):
        ref = Path(doc) if base is None else base / doc
        return image_from_json(read_json(ref), f"{ref}:$", ref.parent)
    doc = _obj(doc, where)
    dim = _int(_field(doc, "dim", where), f"{where}.dim")
    denom = _int(doc.get("denom", 1), f"{where}.denom")
    pts = [_point(p, f"{where}.points[{i}]")
           for i, p in enumerate(_list(_field(doc, "points", where), f"{where}.points"))]
    spec = adjacency_from_json(_field(doc, "adjacency", where), dim, f"{where}.adjacency")
    factors = None
    if "factors" in doc:
        factors = tuple(image_from_json(F, f"{where}.factors[{i}]", base)
                        for i, F in enumerate(_list(doc["factors"], f"{where}.factors")))
    try:
        return DigitalImage(tuple(pts), spec, denom, factors)
    except ValueError as e:
        raise SchemaError(where, str(e)) from None


# ---------------------------------------------------------------------------
# maps and multimaps


def _table_to_json(f: DigitalMap) -> list:
    return [[list(x), list(y)] for x, y in zip(f.domain.points, f.values)]


def _table_from_json(doc, where) -> dict:
    table = {}
    for i, row in enumerate(_list(doc, where)):
        w = f"{where}[{i}]"
        row = _list(row, w)
        if len(row) != 2:
            raise SchemaError(w, "expected [x, y]")
        x = _point(row[0], f"{w}[0]")
        if x in table:
            raise SchemaError(w, f"point {x} listed twice")
        table[x] = _point(row[1], f"{w}[1]")
    return table


def _ends(doc, where, base):
    X = image_from_json(_field(doc, "domain", where), f"{where}.domain", base)
    Y = image_from_json(_field(doc, "codomain", where), f"{where}.codomain", base)
    return X, Y


def _make_map(X, Y, table, where) -> DigitalMap:
    try:
        return DigitalMap(X, Y, table)
    except ValueError as e:
        raise SchemaError(where, str(e)) from None


def map_to_json(f: DigitalMap) -> dict:
    return {"domain": image_to_json(f.domain), "codomain": image_to_json(f.codomain),
            "table": _table_to_json(f)}


def map_from_json(doc, where: str = "$", base: Path | None = None) -> DigitalMap:
    doc = _obj(doc, where)
    X, Y = _ends(doc, where, base)
    return _make_map(X, Y, _table_from_json(_field(doc, "table", where), f"{where}.table"),
                     f"{where}.table")


def multimap_to_json(F: MultiMap) -> dict:
    return {"domain": image_to_json(F.domain), "codomain": image_to_json(F.codomain),
            "table": [[list(x), [list(y) for y in sorted(F.table[x])]] for x in F.domain.points]}


def multimap_from_json(doc, where: str = "$", base: Path | None = None) -> MultiMap:
    doc = _obj(doc, where)
    X, Y = _ends(doc, where, base)
    table = {}
    for i, row in enumerate(_list(_field(doc, "table", where), f"{where}.table")):
        w = f"{where}.table[{i}]"
        row = _list(row, w)
        if len(row) != 2:
            raise SchemaError(w, "expected [x, [y, ...]]")
        x = _point(row[0], f"{w}[0]")
        table[x] = [_point(y, f"{w}[1][{j}]") for j, y in enumerate(_list(row[1], f"{w}[1]"))]
    try:
        return MultiMap(X, Y, table)
    except ValueError as e:
        raise SchemaError(f"{where}.table", str(e)) from None


# ---------------------------------------------------------------------------
# homotopies


def _fixed_to_json(fixed) -> list | None:
    return None if fixed is None else [list(p) for p in sorted(fixed)]


def _fixed_from_json(doc, where):
    v = doc.get("fixed_points")
    if v is None:
        return None
    return [_point(p, f"{where}.fixed_points[{i}]") for i, p in enumerate(_list(v, f"{where}.fixed_points"))]


def _frames_from_json(doc, key, X, Y, where) -> tuple[DigitalMap, ...]:
    frames = []
    for i, t in enumerate(_list(_field(doc, key, where), f"{where}.{key}")):
        w = f"{where}.{key}[{i}]"
        frames.append(_make_map(X, Y, _table_from_json(t, w), w))
    return tuple(frames)


def homotopy_to_json(H: Homotopy) -> dict:
    doc = {"domain": image_to_json(H.domain), "codomain": image_to_json(H.codomain),
           "frames": [_table_to_json(F) for F in H.frames]}
    if H.fixed_points is not None:
        doc["fixed_points"] = _fixed_to_json(H.fixed_points)
    return doc


def homotopy_from_json(doc, where: str = "$", base: Path | None = None) -> Homotopy:
    doc = _obj(doc, where)
    X, Y = _ends(doc, where, base)
    frames = _frames_from_json(doc, "frames", X, Y, where)
    if not frames:
        raise SchemaError(f"{where}.frames", "a homotopy needs at least one frame")
    return Homotopy(frames, _fixed_from_json(doc, where))


def long_homotopy_to_json(L: LongHomotopy) -> dict:
    doc = {"kind": "long", "domain": image_to_json(L.f.domain), "codomain": image_to_json(L.f.codomain),
           "N": L.N, "frames": [_table_to_json(F) for F in L.frames]}
    if L.fixed_points is not None:
        doc["fixed_points"] = _fixed_to_json(L.fixed_points)
    return doc


def long_homotopy_from_json(doc, where: str = "$", base: Path | None = None) -> LongHomotopy:
    doc = _obj(doc, where)
    X, Y = _ends(doc, where, base)
    N = _int(_field(doc, "N", where), f"{where}.N")
    frames = _frames_from_json(doc, "frames", X, Y, where)
    if len(frames) != 2 * N + 1:
        raise SchemaError(f"{where}.frames", f"expected {2 * N + 1} frames for N={N}")
    return LongHomotopy(frames[0], frames[-1], N, frames, _fixed_from_json(doc, where))


def real_homotopy_to_json(R: RealHomotopy) -> dict:
    doc = {"kind": "real", "domain": image_to_json(R.domain), "codomain": image_to_json(R.codomain),
           "breakpoints": [[t.numerator, t.denominator] for t in R.breakpoints],
           "interval_frames": [_table_to_json(F) for F in R.interval_frames],
           "breakpoint_frames": [_table_to_json(F) for F in R.breakpoint_frames]}
    if R.fixed_points is not None:
        doc["fixed_points"] = _fixed_to_json(R.fixed_points)
    return doc


def real_homotopy_from_json(doc, where: str = "$", base: Path | None = None) -> RealHomotopy:
    doc = _obj(doc, where)
    X, Y = _ends(doc, where, base)
    bps = [_rational(t, f"{where}.breakpoints[{i}]")
           for i, t in enumerate(_list(_field(doc, "breakpoints", where), f"{where}.breakpoints"))]
    intervals = _frames_from_json(doc, "interval_frames", X, Y, where)
    points = _frames_from_json(doc, "breakpoint_frames", X, Y, where)
    try:
        return RealHomotopy(tuple(bps), intervals, points, _fixed_from_json(doc, where))
    except ValueError as e:
        raise SchemaError(where, str(e)) from None


# ---------------------------------------------------------------------------
# dispatch

ENCODERS = {
    DigitalImage: image_to_json, DigitalMap: map_to_json, MultiMap: multimap_to_json,
    Homotopy: homotopy_to_json, LongHomotopy: long_homotopy_to_json, RealHomotopy: real_homotopy_to_json,
}
DECODERS = {
    "image": image_from_json, "map": map_from_json, "multimap": multimap_from_json,
    "homotopy": homotopy_from_json, "long": long_homotopy_from_json, "real": real_homotopy_from_json,
}


def to_json(obj) -> dict:
    for cls, enc in ENCODERS.items():
        if isinstance(obj, cls):
            return enc(obj)
    raise TypeError(f"no JSON encoding for {type(obj).__name__}")


def load(path: str | Path, kind: str):
    """Read a file and decode it as ``kind`` (one of :data:`DECODERS`)."""
    path = Path(path)
    return DECODERS[kind](read_json(path), f"{path}:$", path.parent)


def dumps(obj) -> str:
    return json.dumps(to_json(obj))
