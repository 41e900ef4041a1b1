import itertools
import random

import pytest

from digitop.analysis import (approximate_fixed_points, box, bu_witness, covering_failure, cycle_cover,
                              default_box_radius, find_afpp_counterexample, find_bu_counterexample,
                              has_afpp, has_bu_property, inverse_multimap, is_covering_map,
                              is_radius_n_local_iso, is_shy, shy_characterizations, shy_failure)
from digitop.fixtures import square_curve
from digitop.lattice import CU, NP, image, interval, product_image
from digitop.maps import (DigitalMap, all_functions, constant, enumerate_continuous_maps, find_retraction,
                          identity, is_continuous, product_map)
from digitop.search import BudgetExceeded

from gen import POOL, translate


def surjections(X, Y):
    return [f for f in enumerate_continuous_maps(X, Y) if len(set(f.values)) == len(Y)]


class TestShy:
    def test_isomorphism(self):
        X = POOL[7]
        Y, t = translate(X, (3, -1))
        assert is_shy(t)
        assert shy_characterizations(t) == (True, True, True, True)

    def test_constant(self):
        pt = image([(0,)], u=1)
        assert is_shy(constant(interval(0, 2), pt, (0,)))
        assert shy_failure(constant(POOL[2], pt, (0,))) == "fiber over (0,) is disconnected"

    def test_not_surjective_or_continuous(self):
        assert shy_failure(constant(interval(0, 1), interval(0, 1), (0,))) == "not surjective"
        X = interval(0, 2)
        assert shy_failure(DigitalMap(X, X, [(2,), (1,), (0,)])) is None
        assert shy_failure(DigitalMap(X, X, [(0,), (2,), (1,)])) == "not continuous"

    def test_folded_interval(self):
        X, Y = interval(0, 2), interval(0, 1)
        f = DigitalMap(X, Y, [(0,), (1,), (0,)])
        assert not is_shy(f)
        assert shy_characterizations(f) == (False, False, False, False)

    def test_pair_preimage_disconnected(self):
        # fibers connected, but the preimage of an edge is not
        X = image([(0,), (1,), (3,), (4,)], u=1)
        Y = image([(0,), (1,)], u=1)
        f = DigitalMap(X, Y, [(0,), (0,), (1,), (1,)])
        assert is_continuous(f)
        assert shy_failure(f) is not None and shy_failure(f).startswith("preimage of")

    def test_characterizations_need_continuous_surjection(self):
        with pytest.raises(ValueError):
            shy_characterizations(constant(interval(0, 1), interval(0, 1), (0,)))

    def test_characterizations_agree_on_pool(self):
        for X, Y in itertools.product(POOL, POOL):
            for f in surjections(X, Y):
                assert shy_characterizations(f).agree()


class TestInverseMultimap:
    def test_partition(self):
        rng = random.Random(2)
        for X, Y in itertools.product(POOL[:8], POOL[:8]):
            fs = surjections(X, Y)
            if not fs:
                continue
            f = rng.choice(fs)
            F = inverse_multimap(f)
            fibers = [F(y) for y in Y.points]
            assert sum(map(len, fibers)) == len(X)
            assert frozenset().union(*fibers) == set(X.points)

    def test_constant(self):
        pt = image([(0,)], u=1)
        assert inverse_multimap(constant(interval(0, 2), pt, (0,)))((0,)) == set(interval(0, 2).points)

    def test_needs_surjection(self):
        with pytest.raises(ValueError):
            inverse_multimap(constant(interval(0, 1), interval(0, 1), (0,)))


def brute_afpp(X):
    return all(approximate_fixed_points(f) for f in all_functions(X, X) if is_continuous(f))


class TestAFPP:
    def test_singleton(self):
        assert has_afpp(image([(0, 0)], u=1))

    def test_two_points_swap(self):
        X = image([(0,), (2,)], u=1)
        w = find_afpp_counterexample(X)
        assert w is not None and w.values == ((2,), (0,))
        assert approximate_fixed_points(w) == frozenset()

    def test_interval(self):
        assert has_afpp(interval(0, 2))

    def test_self_map_required(self):
        with pytest.raises(ValueError):
            approximate_fixed_points(DigitalMap(interval(0, 1), interval(0, 2), [(0,), (1,)]))

    def test_matches_brute_force(self):
        for X in POOL + [interval(0, 4), image([(0,), (1,), (3,)], u=1)]:
            assert has_afpp(X) == brute_afpp(X)

    def test_curves_lack_afpp(self):
        for k in (1, 2):
            S, _ = square_curve(k)
            w = find_afpp_counterexample(S)
            assert w is not None and is_continuous(w) and not approximate_fixed_points(w)

    def test_c1_grid_witness(self):
        G = product_image([interval(0, 2)] * 2, u=1)
        w = find_afpp_counterexample(G)
        assert w is not None and is_continuous(w) and not approximate_fixed_points(w)
        assert has_afpp(product_image([interval(0, 2)] * 2, u=2))

    def test_parallel_agrees(self):
        for X in (image([(0,), (2,)], u=1), square_curve(2)[0], interval(0, 3)):
            assert find_afpp_counterexample(X, workers=2) == find_afpp_counterexample(X)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            has_afpp(interval(0, 39))

    def test_invariant_under_iso_and_retract(self):
        for X in POOL:
            h = has_afpp(X)
            assert has_afpp(translate(X, (5,) * X.dim)[0]) == h
            if not h:
                continue
            for k in range(1, len(X)):
                for A in itertools.combinations(X.points, k):
                    if find_retraction(X, A) is not None:
                        assert has_afpp(X.subimage(A))

    def test_product_inherits_failure(self):
        small = [X for X in POOL if len(X) <= 3]
        for A, B in itertools.product(small, small):
            for u in (1, 2):
                P = product_image([A, B], u)
                w = find_afpp_counterexample(A)
                if w is None:
                    continue
                g = product_map([w, identity(B)], u)
                assert is_continuous(g) and not approximate_fixed_points(g)
                assert not has_afpp(P)


DIAMOND = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def brute_bu(S, m, b, spec):
    B = box(m, b, spec)
    return all(bu_witness(f, spec) is not None for f in all_functions(S, B) if is_continuous(f))


class TestBorsukUlam:
    def test_constant_has_witness(self):
        S = image(DIAMOND, u=2)
        assert bu_witness(constant(S, interval(0, 1), (0,))) == S.points[0]

    def test_asymmetric(self):
        with pytest.raises(ValueError):
            bu_witness(identity(interval(0, 1)))
        with pytest.raises(ValueError):
            has_bu_property(interval(0, 1), 1, 1, CU(1, 1))

    def test_box(self):
        assert len(box(2, 1, CU(2, 2))) == 9
        with pytest.raises(ValueError):
            box(2, 1, CU(1, 1))

    def test_default_radius(self):
        assert default_box_radius(image(DIAMOND, u=2)) == 4
        assert default_box_radius(image([(0,)], u=1)) == 1

    def test_diamond_c2_holds(self):
        S = image(DIAMOND, u=2)
        assert has_bu_property(S, 1, 2, CU(1, 1)) == brute_bu(S, 1, 2, CU(1, 1)) is True

    def test_diamond_c1_fails(self):
        S = image(DIAMOND, u=1)
        w = find_bu_counterexample(S, 1, 1, CU(1, 1))
        assert w is not None and bu_witness(w, CU(1, 1)) is None
        assert brute_bu(S, 1, 1, CU(1, 1)) is False

    def test_origin_forces_witness(self):
        S = image([(-1,), (0,), (1,)], u=1)
        assert has_bu_property(S, 1, 2, CU(1, 1))

    def test_matches_brute_force_on_symmetric_sets(self):
        cands = [[(-1,), (1,)], [(-2,), (2,)], [(-1,), (0,), (1,)], DIAMOND,
                 [(1, 1), (-1, -1)], [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)]]
        for pts in cands:
            d = len(pts[0])
            for u in range(1, d + 1):
                S = image(pts, u=u)
                for m, spec in ((1, CU(1, 1)), (2, CU(2, 1)), (2, CU(2, 2))):
                    if 5 ** (m * len(S)) > 2 * 10 ** 5 and m == 2:
                        continue
                    assert has_bu_property(S, m, 1, spec) == brute_bu(S, m, 1, spec)

    def test_product_direction(self):
        # a factor counterexample times a constant map is a product counterexample
        S1 = image(DIAMOND, u=1)
        S2 = image([(-1,), (0,), (1,)], u=1)
        f1 = find_bu_counterexample(S1, 1, 1, CU(1, 1))
        B2 = box(1, 1, CU(1, 1))
        g = product_map([f1, constant(S2, B2, (0,))])
        spec = NP(2, ((CU(1, 1), 1), (CU(1, 1), 1)))
        assert is_continuous(g) and bu_witness(g, spec) is None
        assert not has_bu_property(product_image([S1, S2]), 2, 1, spec, budget=None)


def eight_to_four():
    E, ecyc = square_curve(2)
    B, bcyc = square_curve(1)
    return cycle_cover(ecyc, bcyc, E, B)


class TestCovering:
    def test_isomorphism(self):
        X = POOL[9]
        _, t = translate(X, (1, 1))
        assert is_covering_map(t) and is_radius_n_local_iso(t, 3)

    def test_double_cover(self):
        g = eight_to_four()
        assert is_covering_map(g)
        assert is_radius_n_local_iso(g, 1) and not is_radius_n_local_iso(g, 2)

    def test_failures(self):
        X = interval(0, 2)
        assert covering_failure(constant(X, X, (0,))) == "not surjective"
        assert covering_failure(DigitalMap(X, interval(0, 1), [(0,), (1,), (0,)])) is not None
        B, bcyc = square_curve(1)
        E = interval(0, 3)
        wrap = cycle_cover([(0,), (1,), (2,), (3,)], bcyc, E, B)
        assert not is_covering_map(wrap)
        with pytest.raises(ValueError):
            is_radius_n_local_iso(wrap, 1)

    def test_product_of_covers(self):
        g = eight_to_four()
        for u in (1, 2):
            P = product_map([g, g], u)
            assert is_covering_map(P)
            assert is_radius_n_local_iso(P, 1)
        P = product_map([g, identity(interval(0, 2))])
        assert is_covering_map(P)

    def test_radius_n_products(self):
        rng = random.Random(9)
        for _ in range(20):
            X = rng.choice(POOL)
            Y, t = translate(X, (2,) * X.dim)
            P = product_map([t, eight_to_four()])
            assert is_radius_n_local_iso(P, 1)
            assert not is_radius_n_local_iso(P, 2)

