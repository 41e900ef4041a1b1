"""Named worked examples with their expected outcomes.

Each fixture builds its images and maps from scratch, evaluates a set
of named properties and compares them with the recorded expectations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .analysis import (approximate_fixed_points, cycle_cover, find_afpp_counterexample,
                       is_covering_map, is_radius_n_local_iso, is_shy)
from .connectivity import cut_points, is_connected
from .homotopy import are_homotopic, homotopy_equivalent, is_contractible
from .lattice import CU, NP, DigitalImage, adjacent, image, interval, product_image
from .maps import (DigitalMap, constant, find_isomorphism, identity, is_continuous, is_isomorphism,
                   projection, product_map)
from .multimap import (MultiMap, containment, has_strong_continuity, has_weak_continuity,
                       is_connectivity_preserving, is_continuous_multimap, subdivide)


@dataclass(frozen=True)
class FixtureResult:
    name: str
    outcomes: dict[str, bool]
    expected: Mapping[str, bool]
    report: str
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.outcomes.get(k) == v for k, v in self.expected.items())


@dataclass(frozen=True)
class Fixture:
    name: str
    summary: str
    expected: Mapping[str, bool]
    compute: Callable[[], tuple[dict, str, dict]]

    def run(self) -> FixtureResult:
        outcomes, report, witnesses = self.compute()
        return FixtureResult(self.name, outcomes, self.expected, report, witnesses)


def yes(b: bool) -> str:
    return "yes" if b else "no"


def square_curve(k: int) -> tuple[DigitalImage, list[tuple[int, int]]]:
    """Boundary of [0,k]^2 with c_1, plus its points in cyclic order."""
    cyc = ([(i, 0) for i in range(k)] + [(k, j) for j in range(k)]
           + [(k - i, k) for i in range(k)] + [(0, k - j) for j in range(k)])
    return image(cyc, u=1), cyc


def _isomorphic(X: DigitalImage, Y: DigitalImage) -> bool:
    return find_isomorphism(X, Y) is not None


def _with_zero(X: DigitalImage, spec) -> DigitalImage:
    return DigitalImage(tuple(p + (0,) for p in X.points), spec)


# ---------------------------------------------------------------------------


def _factors_not_prod():
    X = image([(0, 0), (1, 0)], u=2)
    Y = image([(0, 0), (1, 1)], u=2)
    f = DigitalMap(X, Y, {(0, 0): (0, 0), (1, 0): (1, 1)})
    zero = image([(0,)], u=1)
    np_map = product_map([f, identity(zero)])
    c1 = CU(3, 1)
    c1_map = DigitalMap(_with_zero(X, c1), _with_zero(Y, c1), np_map.values)
    out = {"factor_iso": is_isomorphism(f), "continuous_np": is_continuous(np_map),
           "continuous_c1": is_continuous(c1_map)}
    return out, f"continuous under NP: {yes(out['continuous_np'])}; under c1: {yes(out['continuous_c1'])}", {}


def _prod_map_exl():
    X = image([(0, 0), (1, 1)], u=2)
    Y = image([(0, 0), (1, 0)], u=2)
    c1 = CU(3, 1)
    Xp, Yp = _with_zero(X, c1), _with_zero(Y, c1)
    zero = image([(0,)], u=1)
    out = {"factors_isomorphic": _isomorphic(X, Y),
           "np_products_isomorphic": _isomorphic(product_image([X, zero]), product_image([Y, zero])),
           "c1_products_isomorphic": _isomorphic(Xp, Yp),
           "x_prime_c1_connected": is_connected(Xp), "y_prime_c1_connected": is_connected(Yp)}
    return out, (f"factors isomorphic: {yes(out['factors_isomorphic'])}; "
                 f"c1 products isomorphic: {yes(out['c1_products_isomorphic'])}"), {}


def _c3_projection():
    X = interval(0, 1)
    Y2 = image([(0, 0), (1, 1)], u=2)
    Y1 = Y2.with_adjacency(CU(2, 1))
    P = product_image([X, Y2])
    p_np = projection(P, 1)
    P3 = P.with_adjacency(CU(3, 3))
    p_c3 = DigitalMap(P3, Y1, [p[1:] for p in P3.points])
    out = {"np_projection_continuous": is_continuous(p_np), "c3_product_connected": is_connected(P3),
           "y_c1_connected": is_connected(Y1), "c3_projection_continuous": is_continuous(p_c3)}
    return out, f"p_2 continuous under NP: {yes(out['np_projection_continuous'])}; from c3 to c1: {yes(out['c3_projection_continuous'])}", {}


def _prod_connected_counterexample():
    X = interval(0, 1)
    pts = [(x, a, b) for x in (0, 1) for a, b in ((0, 0), (1, 1))]
    out = {"product_c2_connected": is_connected(image(pts, u=2)),
           "y_c1_connected": is_connected(image([(0, 0), (1, 1)], u=1)),
           "x_c1_connected": is_connected(X),
           "y_c2_connected": is_connected(image([(0, 0), (1, 1)], u=2)),
           "product_c1_connected": is_connected(image(pts, u=1)),
           "np_product_connected": is_connected(product_image([X, image([(0, 0), (1, 1)], u=2)]))}
    return out, (f"X x Y c2-connected: {yes(out['product_c2_connected'])}; "
                 f"X x Y c1-connected: {yes(out['product_c1_connected'])}"), {}


def _htpy_type_counterexample():
    X = image([(0, 0), (1, 1)], u=2)
    Y = image([(0, 0), (1, 0)], u=1)
    f = DigitalMap(Y, X, {(0, 0): (0, 0), (1, 0): (1, 1)})
    const = constant(Y, X, (0, 0))
    zero = image([(0,)], u=1)
    c1 = CU(3, 1)
    Xp, Yp = _with_zero(X, c1), _with_zero(Y, c1)
    fp = DigitalMap(Yp, Xp, [x + (0,) for x in f.values])
    np_f = product_map([f, identity(zero)])
    np_c = product_map([const, identity(zero)])
    out = {"factor_homotopic_to_constant": are_homotopic(f, const) is not None,
           "factors_homotopy_equivalent": homotopy_equivalent(X, Y) is not None,
           "np_product_homotopic": are_homotopic(np_f, np_c) is not None,
           "c1_product_continuous": is_continuous(fp),
           "c1_products_homotopy_equivalent": homotopy_equivalent(Xp, Yp) is not None}
    return out, (f"f ~ const: {yes(out['factor_homotopic_to_constant'])}; "
                 f"c1 products homotopy equivalent: {yes(out['c1_products_homotopy_equivalent'])}"), {}


def _np2_vs_np1_recursion():
    c1 = CU(1, 1)
    flat = NP(2, ((c1, 1), (c1, 1), (c1, 1)))
    nested_np1 = NP(2, ((NP(1, ((c1, 1), (c1, 1))), 2), (c1, 1)))
    nested_np2 = NP(2, ((NP(2, ((c1, 1), (c1, 1))), 2), (c1, 1)))
    p, q = (0, 0, 0), (1, 1, 0)
    out = {"np2_flat_adjacent": adjacent(p, q, flat),
           "np1_prefix_adjacent": adjacent(p[:2], q[:2], NP(1, ((c1, 1), (c1, 1)))),
           "np2_over_np1_adjacent": adjacent(p, q, nested_np1),
           "np2_over_np2_adjacent": adjacent(p, q, nested_np2)}
    return out, (f"NP_2(k1,k2,k3): {yes(out['np2_flat_adjacent'])}; "
                 f"NP_2(NP_1(k1,k2),k3): {yes(out['np2_over_np1_adjacent'])}"), {"pair": [p, q]}


def _pt_images_discon():
    F = MultiMap(interval(0, 1), interval(0, 2), {(0,): [(0,), (2,)], (1,): [(1,)]})
    out = {"weak": has_weak_continuity(F), "strong": has_strong_continuity(F),
           "connectivity_preserving": is_connectivity_preserving(F),
           "continuous": is_continuous_multimap(F, 3) is not None}
    return out, _multi_report(out), {}


def _cont_not_strong():
    F = MultiMap(interval(0, 1), interval(0, 2), {(0,): [(0,), (1,)], (1,): [(2,)]})
    found = is_continuous_multimap(F, 3)
    out = {"continuous": found is not None, "weak": has_weak_continuity(F),
           "strong": has_strong_continuity(F)}
    wit = {"r": found[0], "map": found[1]} if found else {}
    return out, _multi_report(out), wit


def _const_to_disconnected():
    F = MultiMap(image([(0,)], u=1), image([(0,), (2,)], u=1), {(0,): [(0,), (2,)]})
    out = {"weak": has_weak_continuity(F), "strong": has_strong_continuity(F),
           "connectivity_preserving": is_connectivity_preserving(F)}
    return out, _multi_report(out), {}


def _cp_not_continuous():
    X, _ = square_curve(1)
    Y, cyc = square_curve(2)
    F = MultiMap(X, Y, {(0, 0): [cyc[0]], (1, 0): cyc[1:4], (1, 1): [cyc[4]], (0, 1): cyc[5:8]})
    out = {"connectivity_preserving": is_connectivity_preserving(F),
           "continuous_r_le_4": is_continuous_multimap(F, 4) is not None}
    return out, _multi_report(out), {}


def _multi_report(out: dict) -> str:
    return "; ".join(f"{k}: {yes(v)}" for k, v in out.items())


def _subdiv_fig():
    X = image([(1, 0), (0, 1)], u=2)
    Y = image([(0, 0), (0, 1)], u=2)
    SX, SY = subdivide(X, 2), subdivide(Y, 2)
    cx, cy = cut_points(SX), cut_points(SY)
    out = {"images_isomorphic": _isomorphic(X, Y),
           "sx_connected": is_connected(SX), "sy_connected": is_connected(SY),
           "sx_has_cut_point": bool(cx), "sy_has_cut_point": bool(cy),
           "subdivisions_isomorphic": _isomorphic(SX, SY)}
    return out, (f"X ~ Y: {yes(out['images_isomorphic'])}; cut points of S(X,2): {cx}; "
                 f"cut points of S(Y,2): {cy}"), {"cut_points_sx": cx}


def _shy_prod_counterexample():
    X = image([(0, 0), (1, 0)], u=1)
    Y = image([(0, 0), (1, 1)], u=2)
    f = DigitalMap(X, Y, {(0, 0): (0, 0), (1, 0): (1, 1)})
    zero = image([(0,)], u=1)
    c1 = CU(3, 1)
    fp = DigitalMap(_with_zero(X, c1), _with_zero(Y, c1), [y + (0,) for y in f.values])
    out = {"factor_shy": is_shy(f), "identity_shy": is_shy(identity(zero)),
           "np_product_shy": is_shy(product_map([f, identity(zero)])), "c1_product_shy": is_shy(fp)}
    return out, f"factors shy: {yes(out['factor_shy'])}; c1 product shy: {yes(out['c1_product_shy'])}", {}


def _curve(k: int):
    def compute():
        S, _ = square_curve(k)
        c = is_contractible(S)
        return {"contractible": c}, f"{len(S)}-point closed curve contractible: {yes(c)}", {}
    return compute


def _cover_8_to_4():
    E, ecyc = square_curve(2)
    B, bcyc = square_curve(1)
    g = cycle_cover(ecyc, bcyc, E, B)
    out = {"covering": is_covering_map(g), "radius_1": is_radius_n_local_iso(g, 1),
           "radius_2": is_radius_n_local_iso(g, 2)}
    return out, _multi_report(out), {}


def _afpp_interval():
    X = interval(0, 2)
    w = find_afpp_counterexample(X)
    return {"afpp": w is None}, f"[0,2] has AFPP: {yes(w is None)}", {}


def _afpp_two_points():
    X = image([(0,), (2,)], u=1)
    w = find_afpp_counterexample(X)
    swap = DigitalMap(X, X, {(0,): (2,), (2,): (0,)})
    out = {"afpp": w is None, "swap_has_no_approx_fixed_point": not approximate_fixed_points(swap)}
    return out, f"{{0,2}} has AFPP: {yes(w is None)}; witness {w}", {"witness": w}


def _refine_anchor():
    got = containment((7, 4), 3)
    return {"anchor_matches": got == (2, 1)}, f"I((7,4)/6) = {got}/2", {}


FIXTURES: dict[str, Fixture] = {fx.name: fx for fx in [
    Fixture("factors-not-prod", "isomorphic factors whose c_1 product map is discontinuous",
            {"factor_iso": True, "continuous_np": True, "continuous_c1": False}, _factors_not_prod),
    Fixture("prod-map-exl", "isomorphic factors with non-isomorphic c_1 products",
            {"factors_isomorphic": True, "np_products_isomorphic": True, "c1_products_isomorphic": False,
             "x_prime_c1_connected": False, "y_prime_c1_connected": True}, _prod_map_exl),
    Fixture("c3-projection", "second projection from a c_3 product is discontinuous",
            {"np_projection_continuous": True, "c3_product_connected": True, "y_c1_connected": False,
             "c3_projection_continuous": False}, _c3_projection),
    Fixture("prod-connected-counterexample", "c_u products do not track factor connectedness",
            {"product_c2_connected": True, "y_c1_connected": False, "x_c1_connected": True,
             "y_c2_connected": True, "product_c1_connected": False, "np_product_connected": True},
            _prod_connected_counterexample),
    Fixture("htpy-type-counterexample", "homotopy relations lost under c_1 products",
            {"factor_homotopic_to_constant": True, "factors_homotopy_equivalent": True,
             "np_product_homotopic": True, "c1_product_continuous": False,
             "c1_products_homotopy_equivalent": False}, _htpy_type_counterexample),
    Fixture("np2-vs-np1-recursion", "NP_2 over three factors is not NP_2 of NP_1 and a factor",
            {"np2_flat_adjacent": True, "np1_prefix_adjacent": False, "np2_over_np1_adjacent": False,
             "np2_over_np2_adjacent": True}, _np2_vs_np1_recursion),
    Fixture("pt-images-discon", "weak and strong continuity with a disconnected point image",
            {"weak": True, "strong": True, "connectivity_preserving": False, "continuous": False},
            _pt_images_discon),
    Fixture("cont-not-strong", "continuous multimap without strong continuity",
            {"continuous": True, "weak": True, "strong": False}, _cont_not_strong),
    Fixture("const-to-disconnected", "point mapped onto a disconnected image",
            {"weak": True, "strong": True, "connectivity_preserving": False}, _const_to_disconnected),
    Fixture("cp-not-continuous", "connectivity preserving multimap with no subdivision witness",
            {"connectivity_preserving": True, "continuous_r_le_4": False}, _cp_not_continuous),
    Fixture("subdiv-fig", "isomorphic images with non-isomorphic second subdivisions",
            {"images_isomorphic": True, "sx_connected": True, "sy_connected": True,
             "sx_has_cut_point": True, "sy_has_cut_point": False, "subdivisions_isomorphic": False},
            _subdiv_fig),
    Fixture("shy-prod-counterexample", "shy factors whose c_1 product is not shy",
            {"factor_shy": True, "identity_shy": True, "np_product_shy": True, "c1_product_shy": False},
            _shy_prod_counterexample),
    Fixture("curve-4-contractible", "4-point closed curve", {"contractible": True}, _curve(1)),
    Fixture("curve-8-not-contractible", "8-point closed curve", {"contractible": False}, _curve(2)),
    Fixture("cover-8-to-4", "8-cycle wrapped twice around the 4-cycle",
            {"covering": True, "radius_1": True, "radius_2": False}, _cover_8_to_4),
    Fixture("afpp-interval", "[0,2] with c_1", {"afpp": True}, _afpp_interval),
    Fixture("afpp-two-points", "{0,2} with c_1",
            {"afpp": False, "swap_has_no_approx_fixed_point": True}, _afpp_two_points),
    Fixture("refine-anchor", "containment map on a subdivision numerator",
            {"anchor_matches": True}, _refine_anchor),
]}


def run(name: str) -> FixtureResult:
    try:
        fx = FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}") from None
    return fx.run()
