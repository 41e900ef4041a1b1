import json
from fractions import Fraction

import pytest

from digitop.exthomotopy import RealHomotopy, homotopy_to_long
from digitop.homotopy import Homotopy, are_homotopic
from digitop.io import (DECODERS, SchemaError, dumps, image_from_json, image_to_json, load, read_json,
                        to_json)
from digitop.lattice import CU, Explicit, image, interval, product_image
from digitop.maps import DigitalMap, constant, identity
from digitop.multimap import MultiMap, subdivide

KIND = {"DigitalImage": "image", "DigitalMap": "map", "MultiMap": "multimap", "Homotopy": "homotopy",
        "LongHomotopy": "long", "RealHomotopy": "real"}


def roundtrip(obj):
    doc = json.loads(dumps(obj))
    back = DECODERS[KIND[type(obj).__name__]](doc)
    assert to_json(back) == doc
    return back


def samples():
    X = interval(0, 2)
    A = interval(0, 1)
    H = are_homotopic(identity(X), constant(X, X, (0,)))
    to0 = constant(A, A, (0,))
    return [
        X,
        image([(0, 0), (1, 1)], u=2),
        product_image([interval(0, 1), image([(0, 0), (1, 1)], u=2)], u=1),
        subdivide(interval(0, 1), 3),
        image([(0,), (5,)], Explicit.from_pairs(1, [((0,), (5,))])),
        identity(X),
        MultiMap(A, X, {(0,): [(0,), (1,)], (1,): [(2,)]}),
        H,
        Homotopy((identity(A), to0), fixed_points=[(0,)]),
        homotopy_to_long(H),
        RealHomotopy((0, Fraction(1, 3), 1), (identity(A), to0), (identity(A), to0, to0), fixed_points=[(0,)]),
    ]


@pytest.mark.parametrize("obj", samples(), ids=lambda o: type(o).__name__)
def test_roundtrip(obj):
    back = roundtrip(obj)
    if hasattr(obj, "frames"):
        assert back.frames == obj.frames
    elif isinstance(obj, RealHomotopy):
        assert back.breakpoints == obj.breakpoints
    else:
        assert back == obj


def test_product_factors_survive():
    P = product_image([interval(0, 1), interval(0, 2)], u=2)
    back = image_from_json(image_to_json(P))
    assert back.factors == P.factors


def test_file_reference(tmp_path):
    (tmp_path / "sub").mkdir()
    (tmp_path / "sub" / "x.json").write_text(json.dumps(image_to_json(interval(0, 1))))
    doc = {"domain": "sub/x.json", "codomain": "sub/x.json", "table": [[[0], [1]], [[1], [0]]]}
    (tmp_path / "f.json").write_text(json.dumps(doc))
    f = load(tmp_path / "f.json", "map")
    assert f.values == ((1,), (0,))


def test_default_denominator_and_cu_dim():
    X = image_from_json({"dim": 2, "points": [[0, 0]], "adjacency": {"kind": "cu", "u": 2}})
    assert X.denom == 1 and X.adjacency == CU(2, 2)


def err(doc, decode=image_from_json):
    with pytest.raises(SchemaError) as e:
        decode(doc)
    return e.value.where, str(e.value)


class TestErrors:
    def test_missing_field(self):
        where, msg = err({"dim": 1, "points": [[0]], "adjacency": {"kind": "cu"}})
        assert where == "$.adjacency" and "'u'" in msg

    def test_bad_coordinate(self):
        where, _ = err({"dim": 1, "points": [[0], ["a"]], "adjacency": {"kind": "cu", "u": 1}})
        assert where == "$.points[1][0]"

    def test_bool_is_not_int(self):
        where, _ = err({"dim": True, "points": [[0]], "adjacency": {"kind": "cu", "u": 1}})
        assert where == "$.dim"

    def test_unknown_kind(self):
        where, _ = err({"dim": 1, "points": [[0]], "adjacency": {"kind": "hex"}})
        assert where == "$.adjacency.kind"

    def test_invalid_image(self):
        where, _ = err({"dim": 1, "points": [[0], [0]], "adjacency": {"kind": "cu", "u": 1}})
        assert where == "$"

    def test_map_not_total(self):
        X = image_to_json(interval(0, 1))
        where, _ = err({"domain": X, "codomain": X, "table": [[[0], [0]]]}, DECODERS["map"])
        assert where == "$.table"

    def test_duplicate_row(self):
        X = image_to_json(interval(0, 1))
        where, _ = err({"domain": X, "codomain": X, "table": [[[0], [0]], [[0], [1]]]}, DECODERS["map"])
        assert where == "$.table[1]"

    def test_empty_frames(self):
        X = image_to_json(interval(0, 1))
        where, _ = err({"domain": X, "codomain": X, "frames": []}, DECODERS["homotopy"])
        assert where == "$.frames"

    def test_long_frame_count(self):
        X = image_to_json(interval(0, 0))
        row = [[[0], [0]]]
        where, _ = err({"domain": X, "codomain": X, "N": 1, "frames": [row]}, DECODERS["long"])
        assert where == "$.frames"

    def test_zero_denominator(self):
        X = image_to_json(interval(0, 0))
        row = [[[0], [0]]]
        doc = {"domain": X, "codomain": X, "breakpoints": [0, [1, 0], 1],
               "interval_frames": [row, row], "breakpoint_frames": [row, row, row]}
        where, _ = err(doc, DECODERS["real"])
        assert where == "$.breakpoints[1]"

    def test_syntax_error_location(self, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text('{"dim": 1,\n  "points": [[0],, ]}')
        with pytest.raises(SchemaError) as e:
            read_json(p)
        assert e.value.where.endswith("broken.json:2:18")

    def test_missing_file(self, tmp_path):
        with pytest.raises(SchemaError):
            read_json(tmp_path / "nope.json")

    def test_unencodable(self):
        with pytest.raises(TypeError):
            to_json(3)


def test_map_from_constant_roundtrip():
    f = constant(interval(0, 2), interval(0, 1), (1,))
    assert roundtrip(f) == f
    assert roundtrip(DigitalMap(interval(0, 1), interval(0, 1), [(1,), (0,)])).values == ((1,), (0,))
