"""Single-valued maps between digital images."""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .connectivity import is_connected_subset
from .lattice import DigitalImage, Point, as_point, product_image, split_point
from .search import Counter, solve


class DigitalMap:
    """A total function between two digital images, stored as a table.

    ``values[i]`` is the image of ``domain.points[i]``.
    """

    __slots__ = ("domain", "codomain", "values", "_idx")

    def __init__(self, domain: DigitalImage, codomain: DigitalImage,
                 table: Mapping[Sequence[int], Sequence[int]] | Sequence[Sequence[int]]):
        if isinstance(table, Mapping):
            table = {as_point(k): as_point(v) for k, v in table.items()}
            if set(table) != set(domain.points):
                missing = set(domain.points) - set(table)
                extra = set(table) - set(domain.points)
                raise ValueError(f"table must cover the domain exactly (missing {sorted(missing)[:3]}, "
                                 f"extra {sorted(extra)[:3]})")
            values = tuple(table[p] for p in domain.points)
        else:
            values = tuple(as_point(v) for v in table)
            if len(values) != len(domain):
                raise ValueError("table length does not match the domain")
        idx = tuple(codomain.index(v) for v in values)
        self.domain = domain
        self.codomain = codomain
        self.values = values
        self._idx = idx

    @classmethod
    def _from_indices(cls, domain, codomain, idx: Sequence[int]) -> "DigitalMap":
        f = object.__new__(cls)
        f.domain = domain
        f.codomain = codomain
        f._idx = tuple(idx)
        f.values = tuple(codomain.points[i] for i in f._idx)
        return f

    @classmethod
    def from_function(cls, domain, codomain, fn: Callable[[Point], Sequence[int]]) -> "DigitalMap":
        return cls(domain, codomain, [fn(p) for p in domain.points])

    def __call__(self, x: Sequence[int]) -> Point:
        return self.values[self.domain.index(x)]

    @property
    def table(self) -> dict[Point, Point]:
        return dict(zip(self.domain.points, self.values))

    def image(self) -> frozenset[Point]:
        return frozenset(self.values)

    def preimage(self, ys: Iterable[Sequence[int]]) -> frozenset[Point]:
        ys = {as_point(y) for y in ys}
        return frozenset(x for x, y in zip(self.domain.points, self.values) if y in ys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DigitalMap):
            return NotImplemented
        return (self.values == other.values and self.domain == other.domain
                and self.codomain == other.codomain)

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.values))

    def __repr__(self) -> str:
        body = ", ".join(f"{x}->{y}" for x, y in list(zip(self.domain.points, self.values))[:6])
        more = ", ..." if len(self.values) > 6 else ""
        return f"DigitalMap({body}{more})"


def is_continuous(f: DigitalMap) -> bool:
    """Adjacent points go to equal or adjacent points."""
    masks = f.codomain._closed_masks
    idx = f._idx
    for i, nb in enumerate(f.domain._nbrs):
        m = masks[idx[i]]
        for j in nb:
            if j > i and not (m >> idx[j]) & 1:
                return False
    return True


def connected_subsets(X: DigitalImage, limit: int = 16) -> Iterator[frozenset[Point]]:
    """Every nonempty connected subset of a small image."""
    if len(X) > limit:
        raise ValueError(f"refusing to enumerate subsets of a {len(X)}-point image")
    pts = X.points
    for r in range(1, len(pts) + 1):
        for combo in itertools.combinations(pts, r):
            if is_connected_subset(X, combo):
                yield frozenset(combo)


def is_continuous_by_connected_sets(f: DigitalMap) -> bool:
    """Continuity checked the slow way: images of connected sets are connected."""
    return all(is_connected_subset(f.codomain, {f(x) for x in A})
               for A in connected_subsets(f.domain))


def identity(X: DigitalImage) -> DigitalMap:
    return DigitalMap._from_indices(X, X, range(len(X)))


def constant(X: DigitalImage, Y: DigitalImage, y: Sequence[int]) -> DigitalMap:
    j = Y.index(y)
    return DigitalMap._from_indices(X, Y, [j] * len(X))


def compose(g: DigitalMap, f: DigitalMap) -> DigitalMap:
    """g after f."""
    if f.codomain.adjacency != g.domain.adjacency or not set(f.values) <= set(g.domain.points):
        raise ValueError("cannot compose: f's values do not lie in g's domain")
    return DigitalMap(f.domain, g.codomain, [g(y) for y in f.values])


def restrict(f: DigitalMap, domain: DigitalImage, codomain: DigitalImage | None = None) -> DigitalMap:
    """Restriction of ``f`` to a subimage, optionally shrinking the codomain."""
    return DigitalMap(domain, codomain or f.codomain, [f(x) for x in domain.points])


def _factors(P: DigitalImage) -> tuple[DigitalImage, ...]:
    if P.factors is None:
        raise ValueError("image carries no product block structure")
    return P.factors


def projection(P: DigitalImage, i: int) -> DigitalMap:
    """The i-th coordinate projection (0-based) of a product image."""
    factors = _factors(P)
    if not 0 <= i < len(factors):
        raise ValueError(f"block index {i} out of range for {len(factors)} factors")
    return DigitalMap(P, factors[i], [split_point(p, factors)[i] for p in P.points])


def inclusion(images: Sequence[DigitalImage], i: int, basepoints: Sequence[Sequence[int]],
              u: int | None = None) -> DigitalMap:
    """Embed factor ``i`` into the product, holding the other blocks at ``basepoints``."""
    if not 0 <= i < len(images):
        raise ValueError(f"block index {i} out of range for {len(images)} factors")
    P = product_image(images, u)
    base = [as_point(b) for b in basepoints]

    def put(x):
        blocks = list(base)
        blocks[i] = x
        return tuple(itertools.chain.from_iterable(blocks))

    return DigitalMap(images[i], P, [put(x) for x in images[i].points])


def product_map(fs: Sequence[DigitalMap], u: int | None = None) -> DigitalMap:
    """(x_1, ..., x_v) -> (f_1(x_1), ..., f_v(x_v)) between NP_u products."""
    fs = list(fs)
    if not fs:
        raise ValueError("product of an empty list of maps")
    if len(fs) == 1:
        return fs[0]
    X = product_image([f.domain for f in fs], u)
    Y = product_image([f.codomain for f in fs], u)
    values = [tuple(itertools.chain.from_iterable(combo))
              for combo in itertools.product(*(f.values for f in fs))]
    return DigitalMap(X, Y, values)


def is_bijection(f: DigitalMap) -> bool:
    return len(set(f._idx)) == len(f.codomain) == len(f.domain)


def inverse(f: DigitalMap) -> DigitalMap:
    if not is_bijection(f):
        raise ValueError("map is not a bijection")
    return DigitalMap(f.codomain, f.domain, {y: x for x, y in f.table.items()})


def is_isomorphism(f: DigitalMap) -> bool:
    return is_bijection(f) and is_continuous(f) and is_continuous(inverse(f))


def is_retraction(r: DigitalMap, A: Iterable[Sequence[int]]) -> bool:
    """``r`` is continuous, lands in ``A`` and fixes ``A`` pointwise.

    ``r``'s codomain must be ``A`` with the domain's adjacency restricted.
    """
    A = {as_point(a) for a in A}
    if not A <= set(r.domain.points):
        return False
    if set(r.codomain.points) != A or r.codomain.adjacency != r.domain.adjacency:
        return False
    if not r.image() <= A or any(r(a) != a for a in A):
        return False
    return is_continuous(r)


def enumerate_continuous_maps(X: DigitalImage, Y: DigitalImage,
                              predicate_filter: Callable[[DigitalMap], bool] | None = None,
                              counter: Counter | None = None) -> Iterator[DigitalMap]:
    """Every continuous map X -> Y, once each, in lexicographic table order."""
    for idx in solve(X, Y, counter=counter):
        f = DigitalMap._from_indices(X, Y, idx)
        if predicate_filter is None or predicate_filter(f):
            yield f


def find_retraction(X: DigitalImage, A: Iterable[Sequence[int]],
                    counter: Counter | None = None) -> DigitalMap | None:
    """Some retraction of ``X`` onto the subimage ``A``, or None."""
    sub = X.subimage(A)
    domains = []
    for p in X.points:
        domains.append(1 << sub.index(p) if p in sub else (1 << len(sub)) - 1)
    for idx in solve(X, sub, domains, mrv=True, counter=counter):
        return DigitalMap._from_indices(X, sub, idx)
    return None


def all_functions(X: DigitalImage, Y: DigitalImage) -> Iterator[DigitalMap]:
    """Every function X -> Y, continuous or not (tiny images only)."""
    for idx in itertools.product(range(len(Y)), repeat=len(X)):
        yield DigitalMap._from_indices(X, Y, idx)



def find_isomorphism(X: DigitalImage, Y: DigitalImage) -> DigitalMap | None:
    """Some isomorphism X -> Y, found by degree-pruned backtracking, or None."""
    n = len(X)
    if n != len(Y) or len(X.edges()) != len(Y.edges()):
        return None
    deg_x = [len(nb) for nb in X._nbrs]
    deg_y = [len(nb) for nb in Y._nbrs]
    if sorted(deg_x) != sorted(deg_y):
        return None
    nbr_y = [set(nb) for nb in Y._nbrs]
    order = sorted(range(n), key=lambda i: -deg_x[i])
    assign = [-1] * n
    used = [False] * n

    def rec(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used[j] or deg_y[j] != deg_x[i]:
                continue
            # adjacency to already-placed points must match exactly
            ok = all((assign[i2] in nbr_y[j]) == (i2 in X._nbrs[i])
                     for i2 in order[:k])
            if not ok:
                continue
            assign[i], used[j] = j, True
            if rec(k + 1):
                return True
            assign[i], used[j] = -1, False
        return False

    return DigitalMap._from_indices(X, Y, assign) if rec(0) else None
