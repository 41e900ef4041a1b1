"""Multivalued functions between digital images and subdivision-based
continuity.

Subdivided images keep integer numerators; the denominator lives on the
image (``DigitalImage.denom``).
"""

from __future__ import annotations

import itertools
from math import lcm
from typing import Iterable, Mapping, Sequence

from .connectivity import is_connected_subset, sets_adjacent
from .lattice import DigitalImage, Explicit, Point, as_point, product_image
from .maps import DigitalMap, connected_subsets, product_map
from .search import Counter, solve


class MultiMap:
    """A total multivalued function: each domain point gets a nonempty
    set of codomain points."""

    __slots__ = ("domain", "codomain", "table")

    def __init__(self, domain: DigitalImage, codomain: DigitalImage,
                 table: Mapping[Sequence[int], Iterable[Sequence[int]]]):
        tab = {as_point(k): frozenset(as_point(y) for y in v) for k, v in table.items()}
        if set(tab) != set(domain.points):
            raise ValueError("multimap table must cover the domain exactly")
        for x, ys in tab.items():
            if not ys:
                raise ValueError(f"F({x}) is empty")
            for y in ys:
                if y not in codomain:
                    raise ValueError(f"F({x}) contains {y}, which is not in the codomain")
        self.domain = domain
        self.codomain = codomain
        self.table = tab

    def __call__(self, x) -> frozenset[Point]:
        return self.table[as_point(x)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiMap):
            return NotImplemented
        return self.domain == other.domain and self.codomain == other.codomain and self.table == other.table

    def __hash__(self):
        return hash((self.domain, self.codomain, frozenset(self.table.items())))

    def __repr__(self) -> str:
        items = ", ".join(f"{x}->{sorted(ys)}" for x, ys in list(sorted(self.table.items()))[:4])
        return f"MultiMap({items}{', ...' if len(self.table) > 4 else ''})"


def from_map(f: DigitalMap) -> MultiMap:
    return MultiMap(f.domain, f.codomain, {x: [y] for x, y in f.table.items()})


def constant_multimap(X: DigitalImage, Y: DigitalImage) -> MultiMap:
    """x -> Y for every x."""
    return MultiMap(X, Y, {x: Y.points for x in X.points})


def image_of_set(F: MultiMap, A: Iterable[Sequence[int]]) -> frozenset[Point]:
    A = [as_point(a) for a in A]
    for a in A:
        if a not in F.domain:
            raise ValueError(f"{a} is not in the domain")
    out: set[Point] = set()
    for a in A:
        out |= F.table[a]
    return frozenset(out)


def has_weak_continuity(F: MultiMap) -> bool:
    spec = F.codomain.adjacency
    return all(sets_adjacent(F.table[x], F.table[y], spec) for x, y in F.domain.edges())


def _covers(Y: DigitalImage, A, B) -> bool:
    """Every point of A is equal or adjacent to some point of B."""
    return all(any(a == b or Y.is_adjacent(a, b) for b in B) for a in A)


def has_strong_continuity(F: MultiMap) -> bool:
    Y = F.codomain
    return all(_covers(Y, F.table[x], F.table[y]) and _covers(Y, F.table[y], F.table[x])
               for x, y in F.domain.edges())


def point_images_connected(F: MultiMap) -> bool:
    return all(is_connected_subset(F.codomain, ys) for ys in F.table.values())


def is_connectivity_preserving(F: MultiMap) -> bool:
    """Connected point images, and adjacent points have adjacent images."""
    return point_images_connected(F) and has_weak_continuity(F)


def is_connectivity_preserving_by_definition(F: MultiMap) -> bool:
    """Slow check: the image of every connected subset is connected."""
    return all(is_connected_subset(F.codomain, image_of_set(F, A))
               for A in connected_subsets(F.domain))


# ---------------------------------------------------------------------------
# subdivisions


def subdivide(X: DigitalImage, r: int) -> DigitalImage:
    """S(X, r): each point spawns the r^n cells of its unit cube."""
    if r < 1:
        raise ValueError("subdivision factor must be at least 1")
    if X.denom != 1:
        raise ValueError("only undivided images (denominator 1) can be subdivided")
    if isinstance(X.adjacency, Explicit):
        raise ValueError("subdivision needs a lattice adjacency, not an explicit edge set")
    if r == 1:
        return X
    offsets = list(itertools.product(range(r), repeat=X.dim))
    pts = tuple(tuple(r * c + o for c, o in zip(x, off)) for x in X.points for off in offsets)
    factors = None
    if X.factors is not None:
        factors = tuple(subdivide(F, r) for F in X.factors)
    return DigitalImage(pts, X.adjacency, r, factors)


def base_of(S: DigitalImage) -> DigitalImage:
    """The image X with S == S(X, S.denom)."""
    r = S.denom
    if r == 1:
        return S
    pts = sorted({tuple(c // r for c in p) for p in S.points})
    factors = None if S.factors is None else tuple(base_of(F) for F in S.factors)
    X = DigitalImage(tuple(pts), S.adjacency, 1, factors)
    if subdivide(X, r) != S:
        raise ValueError("image is not a full subdivision of an integer image")
    return X


def er_map(S: DigitalImage, X: DigitalImage) -> DigitalMap:
    """The natural map S(X, r) -> X (floor of each coordinate)."""
    r = S.denom
    return DigitalMap(S, X, [tuple(c // r for c in p) for p in S.points])


def induce(f: DigitalMap, X: DigitalImage | None = None) -> MultiMap:
    """F(x) = f(E_r^{-1}(x)) for f defined on a subdivision."""
    S = f.domain
    if X is None:
        X = base_of(S)
    elif subdivide(X, S.denom) != S:
        raise ValueError("domain of f is not a subdivision of X")
    r = S.denom
    table: dict[Point, set[Point]] = {x: set() for x in X.points}
    for p, y in zip(S.points, f.values):
        table[tuple(c // r for c in p)].add(y)
    return MultiMap(X, f.codomain, table)


def containment(p: Sequence[int], s: int) -> Point:
    """Numerators over r*s -> numerators over r of the containing cell."""
    return tuple(c // s for c in p)


def refine(f: DigitalMap, s: int) -> DigitalMap:
    """Pull ``f`` on S(X, r) back to S(X, r*s) through the containment map."""
    if s < 1:
        raise ValueError("refinement factor must be at least 1")
    if s == 1:
        return f
    S = f.domain
    X = base_of(S)
    fine = subdivide(X, S.denom * s)
    return DigitalMap(fine, f.codomain, [f(containment(p, s)) for p in fine.points])


def refine_to(f: DigitalMap, r: int) -> DigitalMap:
    if r % f.domain.denom:
        raise ValueError(f"{r} is not a multiple of {f.domain.denom}")
    return refine(f, r // f.domain.denom)


def find_inducing_map(F: MultiMap, r: int, counter: Counter | None = None) -> DigitalMap | None:
    """A continuous f on S(X, r) inducing F exactly, or None."""
    X, Y = F.domain, F.codomain
    S = subdivide(X, r)
    required = {x: sum(1 << Y.index(y) for y in ys) for x, ys in F.table.items()}
    domains = []
    members: dict[Point, list[int]] = {x: [] for x in X.points}
    for i, p in enumerate(S.points):
        x = tuple(c // r for c in p)
        domains.append(required[x])
        members[x].append(i)
    groups = [(members[x], required[x]) for x in X.points]
    for idx in solve(S, Y, domains, groups=groups, mrv=True, counter=counter):
        return DigitalMap._from_indices(S, Y, idx)
    return None


def is_continuous_multimap(F: MultiMap, r_max: int, counter: Counter | None = None):
    """Search r = 1..r_max for a continuous single-valued map inducing F.

    Returns ``(r, f)`` for the first witness, or None.  None only means
    no witness exists up to ``r_max``.
    """
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    for r in range(1, r_max + 1):
        f = find_inducing_map(F, r, counter)
        if f is not None:
            return r, f
    return None


# ---------------------------------------------------------------------------
# products and retractions


def product_multimap(Fs: Sequence[MultiMap], u: int | None = None) -> MultiMap:
    Fs = list(Fs)
    if not Fs:
        raise ValueError("product of an empty list of multimaps")
    if len(Fs) == 1:
        return Fs[0]
    X = product_image([F.domain for F in Fs], u)
    Y = product_image([F.codomain for F in Fs], u)
    table = {}
    for combo in itertools.product(*(sorted(F.table.items()) for F in Fs)):
        x = tuple(itertools.chain.from_iterable(c[0] for c in combo))
        ys = [tuple(itertools.chain.from_iterable(t)) for t in itertools.product(*(c[1] for c in combo))]
        table[x] = ys
    return MultiMap(X, Y, table)


def product_witness(witnesses: Sequence[DigitalMap], u: int | None = None) -> DigitalMap:
    """Combine inducing maps on S(X_i, r_i) into one on the product at the lcm."""
    r = lcm(*(w.domain.denom for w in witnesses))
    return product_map([refine_to(w, r) for w in witnesses], u)


NOTIONS = ("continuous", "cp")


def is_multivalued_retraction(F: MultiMap, A: Iterable[Sequence[int]], notion: str = "continuous",
                              r_max: int = 3, counter: Counter | None = None) -> bool:
    """F: X -o A fixes A pointwise and is continuous in the requested sense.

    ``notion="continuous"`` asks for a subdivision witness with r <= r_max;
    ``notion="cp"`` only asks for connectivity preservation.
    """
    if notion not in NOTIONS:
        raise ValueError(f"unknown continuity notion {notion!r}")
    A = {as_point(a) for a in A}
    if set(F.codomain.points) != A or not A <= set(F.domain.points):
        return False
    if F.codomain.adjacency != F.domain.adjacency:
        return False
    if any(F.table[a] != {a} for a in A):
        return False
    if notion == "cp":
        return is_connectivity_preserving(F)
    return is_continuous_multimap(F, r_max, counter) is not None


def is_N_retraction(F: MultiMap, A: Iterable[Sequence[int]], notion: str = "continuous",
                    r_max: int = 3, counter: Counter | None = None) -> bool:
    """A multivalued retraction with F(x) inside the c_n unit neighborhood of x."""
    A = {as_point(a) for a in A}
    X = F.domain
    if not is_multivalued_retraction(F, A, notion, r_max, counter):
        return False
    # N*_{c_n}(x) in Z^n is the closed unit cube around x
    return all(max(abs(a - b) for a, b in zip(x, y)) <= 1
               for x in X.points if x not in A for y in F.table[x])
