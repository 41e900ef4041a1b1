"""Shy maps, approximate fixed points, Borsuk-Ulam checks and covering maps."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple, Sequence

from .connectivity import is_connected_subset, neighborhood
from .lattice import AdjacencySpec, DigitalImage, Point, _adj, as_point, is_symmetric_origin, negate
from .maps import DigitalMap, connected_subsets, is_continuous, is_isomorphism
from .multimap import MultiMap, has_weak_continuity, is_connectivity_preserving
from .search import DEFAULT_BUDGET, BudgetExceeded, Counter, map_space_bound, solve


def is_surjective(f: DigitalMap) -> bool:
    return len(set(f._idx)) == len(f.codomain)


# ---------------------------------------------------------------------------
# shy maps


def shy_failure(f: DigitalMap) -> str | None:
    """Why ``f`` is not shy, or None if it is."""
    if not is_continuous(f):
        return "not continuous"
    if not is_surjective(f):
        return "not surjective"
    X, Y = f.domain, f.codomain
    for y in Y.points:
        if not is_connected_subset(X, f.preimage([y])):
            return f"fiber over {y} is disconnected"
    for y0, y1 in Y.edges():
        if not is_connected_subset(X, f.preimage([y0, y1])):
            return f"preimage of {{{y0}, {y1}}} is disconnected"
    return None


def is_shy(f: DigitalMap) -> bool:
    return shy_failure(f) is None


def inverse_multimap(f: DigitalMap) -> MultiMap:
    """y -> f^{-1}(y); requires a surjection."""
    if not is_surjective(f):
        raise ValueError("inverse multimap needs a surjective map")
    fibers: dict[Point, list[Point]] = {y: [] for y in f.codomain.points}
    for x, y in zip(f.domain.points, f.values):
        fibers[y].append(x)
    return MultiMap(f.codomain, f.domain, fibers)


class ShyCharacterizations(NamedTuple):
    definition: bool
    connected_preimages: bool
    inverse_connectivity_preserving: bool
    inverse_weak_with_connected_fibers: bool

    def agree(self) -> bool:
        return len(set(self)) == 1


def shy_characterizations(f: DigitalMap) -> ShyCharacterizations:
    """Evaluate four equivalent descriptions of shyness independently."""
    if not (is_continuous(f) and is_surjective(f)):
        raise ValueError("shy characterizations need a continuous surjection")
    X, Y = f.domain, f.codomain
    inv = inverse_multimap(f)
    return ShyCharacterizations(
        is_shy(f),
        all(is_connected_subset(X, f.preimage(Y0)) for Y0 in connected_subsets(Y)),
        is_connectivity_preserving(inv),
        has_weak_continuity(inv) and all(is_connected_subset(X, f.preimage([y])) for y in Y.points),
    )


# ---------------------------------------------------------------------------
# approximate fixed points


def approximate_fixed_points(f: DigitalMap) -> frozenset[Point]:
    if f.domain != f.codomain:
        raise ValueError("approximate fixed points need a self-map")
    X = f.domain
    masks = X._closed_masks
    return frozenset(X.points[i] for i, j in enumerate(f._idx) if (masks[i] >> j) & 1)


def _check_bound(X: DigitalImage, Y: DigitalImage, budget: int | None, domains=None):
    if budget is not None and map_space_bound(X, Y, domains) > budget:
        raise BudgetExceeded(f"search space {len(X)} -> {len(Y)} points may exceed budget {budget}")


def _moving_domains(X: DigitalImage) -> list[int]:
    # a self-map without approximate fixed points sends x outside N*(x)
    full = (1 << len(X)) - 1
    return [full & ~m for m in X._closed_masks]


def _afpp_branch(X: DigitalImage, first: int, budget: int | None):
    domains = _moving_domains(X)
    if not (domains[0] >> first) & 1:
        return None
    domains[0] = 1 << first
    for idx in solve(X, X, domains, counter=Counter(budget)):
        return idx
    return None


def find_afpp_counterexample(X: DigitalImage, *, budget: int | None = DEFAULT_BUDGET,
                             workers: int = 1) -> DigitalMap | None:
    """The lexicographically first continuous self-map with no approximate
    fixed point, or None.

    Every continuous self-map is accounted for: the search only prunes
    maps that send some point into its own closed neighborhood.  Raises
    :class:`BudgetExceeded` when the remaining search space may be larger
    than ``budget`` (checked up front) or the search visits more nodes.
    """
    domains = _moving_domains(X)
    _check_bound(X, X, budget, domains)
    if workers <= 1:
        for idx in solve(X, X, domains, counter=Counter(budget)):
            return DigitalMap._from_indices(X, X, idx)
        return None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_afpp_branch, X, j, budget) for j in range(len(X))]
        # first branch in canonical order wins, so the answer is schedule-independent
        for fut in futures:
            idx = fut.result()
            if idx is not None:
                for other in futures:
                    other.cancel()
                return DigitalMap._from_indices(X, X, idx)
    return None


def has_afpp(X: DigitalImage, *, budget: int | None = DEFAULT_BUDGET, workers: int = 1) -> bool:
    return find_afpp_counterexample(X, budget=budget, workers=workers) is None


# ---------------------------------------------------------------------------
# Borsuk-Ulam


def bu_witness(f: DigitalMap, codomain_spec: AdjacencySpec | None = None) -> Point | None:
    """Some x with f(x), f(-x) equal or adjacent, else None."""
    S = f.domain
    if not is_symmetric_origin(S):
        raise ValueError("domain is not symmetric about the origin")
    spec = codomain_spec or f.codomain.adjacency
    for x in S.points:
        a, b = f(x), f(negate(x))
        if a == b or _adj(a, b, spec):
            return x
    return None


def box(m: int, b: int, adjacency: AdjacencySpec) -> DigitalImage:
    """[-b, b]^m with the given adjacency."""
    if adjacency.dim != m:
        raise ValueError("adjacency dimension must equal m")
    pts = tuple(itertools.product(range(-b, b + 1), repeat=m))
    return DigitalImage(pts, adjacency)


def default_box_radius(S: DigitalImage) -> int:
    spread = max(max(p[i] for p in S.points) - min(p[i] for p in S.points) for i in range(S.dim))
    return max(1, 2 * spread)


def find_bu_counterexample(S: DigitalImage, m: int, b: int, adjacency: AdjacencySpec, *,
                           budget: int | None = DEFAULT_BUDGET) -> DigitalMap | None:
    """A continuous S -> [-b, b]^m with no antipodal near-coincidence, or None."""
    if not is_symmetric_origin(S):
        raise ValueError("domain is not symmetric about the origin")
    B = box(m, b, adjacency)
    _check_bound(S, B, budget)
    apart = [(i, S.index(negate(p))) for i, p in enumerate(S.points)]
    apart = [(i, j) for i, j in apart if i <= j]
    for idx in solve(S, B, apart=apart, counter=Counter(budget)):
        return DigitalMap._from_indices(S, B, idx)
    return None


def has_bu_property(S: DigitalImage, m: int, b: int, adjacency: AdjacencySpec, *,
                    budget: int | None = DEFAULT_BUDGET) -> bool:
    """Borsuk-Ulam property tested against maps into the box [-b, b]^m.

    A False answer is exact; True only covers maps into the box.
    """
    return find_bu_counterexample(S, m, b, adjacency, budget=budget) is None


# ---------------------------------------------------------------------------
# covering maps


def _restriction_iso(g: DigitalMap, src: frozenset, dst: frozenset) -> bool:
    E, B = g.domain, g.codomain
    if len(src) != len(dst):
        return False
    sub_e = E.subimage(src)
    sub_b = B.subimage(dst)
    try:
        r = DigitalMap(sub_e, sub_b, [g(x) for x in sub_e.points])
    except ValueError:
        return False
    return is_isomorphism(r)


def covering_failure(g: DigitalMap) -> str | None:
    if not is_continuous(g):
        return "not continuous"
    if not is_surjective(g):
        return "not surjective"
    E, B = g.domain, g.codomain
    for b in B.points:
        fiber = sorted(g.preimage([b]))
        nb = neighborhood(B, b, 1)
        hoods = [neighborhood(E, e, 1) for e in fiber]
        if g.preimage(nb) != frozenset().union(*hoods):
            return f"preimage of N*({b}) is not the union of fiber neighborhoods"
        for h1, h2 in itertools.combinations(hoods, 2):
            if h1 & h2:
                return f"fiber neighborhoods over {b} overlap"
        for e, h in zip(fiber, hoods):
            if not _restriction_iso(g, h, nb):
                return f"restriction to N*({e}) is not an isomorphism onto N*({b})"
    return None


def is_covering_map(g: DigitalMap) -> bool:
    return covering_failure(g) is None


def is_radius_n_local_iso(g: DigitalMap, n: int) -> bool:
    if not is_covering_map(g):
        raise ValueError("not a covering map")
    E, B = g.domain, g.codomain
    for e in E.points:
        b = g(e)
        if not _restriction_iso(g, neighborhood(E, e, n), neighborhood(B, b, n)):
            return False
    return True


def cycle_cover(E_cycle: Sequence[Sequence[int]], B_cycle: Sequence[Sequence[int]],
                E: DigitalImage, B: DigitalImage) -> DigitalMap:
    """Wrap a cyclically listed curve around another: e_k -> b_(k mod m)."""
    m = len(B_cycle)
    return DigitalMap(E, B, {as_point(e): as_point(B_cycle[k % m]) for k, e in enumerate(E_cycle)})
