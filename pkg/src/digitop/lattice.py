"""Points, adjacency relations and finite digital images.

A point is a plain tuple of ints.  Adjacencies are small immutable
descriptions (:class:`CU`, :class:`NP`, :class:`Explicit`) evaluated
intensionally; every :class:`DigitalImage` materializes its own
neighbor lists once, at construction.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Sequence, Tuple, Union

Point = Tuple[int, ...]


def as_point(coords: Iterable[int]) -> Point:
    return tuple(int(c) for c in coords)


def negate(x: Point) -> Point:
    return tuple(-c for c in x)


# ---------------------------------------------------------------------------
# adjacency specifications


@dataclass(frozen=True)
class CU:
    """c_u adjacency on Z^dim."""

    dim: int
    u: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        if not 1 <= self.u <= self.dim:
            raise ValueError(f"c_u needs 1 <= u <= {self.dim}, got u={self.u}")

    def max_degree(self) -> int:
        return sum(comb(self.dim, k) * 2**k for k in range(1, self.u + 1))


@dataclass(frozen=True)
class NP:
    """Generalized normal product adjacency NP_u over factor blocks.

    ``factors`` is a tuple of ``(spec, block_dim)`` pairs.
    """

    u: int
    factors: Tuple[Tuple["AdjacencySpec", int], ...]

    def __post_init__(self):
        factors = tuple((spec, int(d)) for spec, d in self.factors)
        object.__setattr__(self, "factors", factors)
        if len(factors) < 2:
            raise ValueError("NP adjacency needs at least two factors")
        if not 1 <= self.u <= len(factors):
            raise ValueError(f"NP_u needs 1 <= u <= {len(factors)}, got u={self.u}")
        for spec, d in factors:
            if spec.dim != d:
                raise ValueError(f"factor spec has dimension {spec.dim}, block says {d}")

    @property
    def dim(self) -> int:
        return sum(d for _, d in self.factors)

    @property
    def blocks(self) -> list[tuple[int, int]]:
        out, start = [], 0
        for _, d in self.factors:
            out.append((start, start + d))
            start += d
        return out

    def max_degree(self) -> int:
        total = 1
        for spec, _ in self.factors:
            total *= spec.max_degree() + 1
        return total - 1


@dataclass(frozen=True)
class Explicit:
    """Adjacency given by a finite edge set (no lattice geometry)."""

    dim: int
    edges: frozenset
    _nbrs: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        edges = frozenset(frozenset(as_point(p) for p in e) for e in self.edges)
        nbrs: dict[Point, set[Point]] = {}
        for e in edges:
            if len(e) != 2:
                raise ValueError("explicit edges must join two distinct points")
            a, b = sorted(e)
            if len(a) != self.dim or len(b) != self.dim:
                raise ValueError(f"edge {a}-{b} does not live in Z^{self.dim}")
            nbrs.setdefault(a, set()).add(b)
            nbrs.setdefault(b, set()).add(a)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_nbrs", {k: frozenset(v) for k, v in nbrs.items()})

    @classmethod
    def from_pairs(cls, dim: int, pairs: Iterable[tuple[Sequence[int], Sequence[int]]]) -> "Explicit":
        return cls(dim, frozenset(frozenset((as_point(a), as_point(b))) for a, b in pairs))

    def max_degree(self) -> int:
        return max((len(v) for v in self._nbrs.values()), default=0)


AdjacencySpec = Union[CU, NP, Explicit]


def cu_adjacent(x: Sequence[int], y: Sequence[int], n: int, u: int) -> bool:
    if len(x) != n or len(y) != n:
        raise ValueError(f"points {tuple(x)}, {tuple(y)} are not in Z^{n}")
    if not 1 <= u <= n:
        raise ValueError(f"c_u needs 1 <= u <= {n}, got u={u}")
    return _cu(x, y, u)


def _cu(x, y, u) -> bool:
    changed = 0
    for a, b in zip(x, y):
        d = a - b
        if d == 0:
            continue
        if d != 1 and d != -1:
            return False
        changed += 1
    return 1 <= changed <= u


def _adj(x, y, spec) -> bool:
    if isinstance(spec, CU):
        return _cu(x, y, spec.u)
    if isinstance(spec, NP):
        count = 0
        start = 0
        for sub, d in spec.factors:
            bx, by = x[start:start + d], y[start:start + d]
            start += d
            if bx == by:
                continue
            if not _adj(bx, by, sub):
                return False
            count += 1
        return 1 <= count <= spec.u
    return tuple(y) in spec._nbrs.get(tuple(x), ())


def adjacent(x: Sequence[int], y: Sequence[int], spec: AdjacencySpec) -> bool:
    """Return True iff ``x`` and ``y`` are adjacent under ``spec``."""
    if len(x) != spec.dim or len(y) != spec.dim:
        raise ValueError(f"points {tuple(x)}, {tuple(y)} do not match dimension {spec.dim}")
    return _adj(tuple(x), tuple(y), spec)


def ambient_neighbors(x: Point, spec: AdjacencySpec) -> Iterator[Point]:
    """All points of Z^dim adjacent to ``x`` (for explicit specs: edge partners)."""
    if isinstance(spec, Explicit):
        yield from sorted(spec._nbrs.get(x, ()))
        return
    if isinstance(spec, CU):
        for delta in itertools.product((-1, 0, 1), repeat=spec.dim):
            nz = sum(1 for d in delta if d)
            if 1 <= nz <= spec.u:
                yield tuple(a + d for a, d in zip(x, delta))
        return
    choices = []
    for (sub, _), (lo, hi) in zip(spec.factors, spec.blocks):
        block = x[lo:hi]
        choices.append([block] + list(ambient_neighbors(block, sub)))
    for combo in itertools.product(*choices):
        changed = sum(1 for c, (lo, hi) in zip(combo, spec.blocks) if c != x[lo:hi])
        if 1 <= changed <= spec.u:
            yield tuple(itertools.chain.from_iterable(combo))


# ---------------------------------------------------------------------------
# images


@functools.lru_cache(maxsize=512)
def _neighbor_table(pts: Tuple[Point, ...], spec: AdjacencySpec):
    """Neighbor index lists and closed-neighborhood bitmasks, shared by equal images."""
    index = {p: i for i, p in enumerate(pts)}
    if isinstance(spec, Explicit) or spec.max_degree() < len(pts):
        nbrs = []
        for p in pts:
            found = (index.get(q) for q in ambient_neighbors(p, spec))
            nbrs.append(tuple(sorted(j for j in found if j is not None)))
    else:
        lists: list[list[int]] = [[] for _ in pts]
        for i, j in itertools.combinations(range(len(pts)), 2):
            if _adj(pts[i], pts[j], spec):
                lists[i].append(j)
                lists[j].append(i)
        nbrs = [tuple(sorted(nb)) for nb in lists]
    masks = tuple((1 << i) | sum(1 << j for j in nb) for i, nb in enumerate(nbrs))
    return tuple(nbrs), masks


@dataclass(frozen=True, eq=False)
class DigitalImage:
    """A finite set of lattice points together with an adjacency.

    ``denom`` > 1 marks a subdivision whose coordinates are numerators
    over ``denom``.  ``factors`` records the block structure of product
    images and is not part of equality.
    """

    points: Tuple[Point, ...]
    adjacency: AdjacencySpec
    denom: int = 1
    factors: Tuple["DigitalImage", ...] | None = None

    def __post_init__(self):
        pts = tuple(sorted({as_point(p) for p in self.points}))
        if len(pts) != len(tuple(self.points)):
            raise ValueError("image points must be distinct")
        if not pts:
            raise ValueError("an image needs at least one point")
        dim = self.adjacency.dim
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"point {p} does not live in Z^{dim}")
        if self.denom < 1:
            raise ValueError("denominator must be positive")
        object.__setattr__(self, "points", pts)
        index = {p: i for i, p in enumerate(pts)}
        object.__setattr__(self, "_index", index)
        nbrs, masks = _neighbor_table(pts, self.adjacency)
        object.__setattr__(self, "_nbrs", nbrs)
        object.__setattr__(self, "_closed_masks", masks)

    # -- basic protocol -----------------------------------------------------

    @property
    def dim(self) -> int:
        return self.adjacency.dim

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, DigitalImage):
            return NotImplemented
        return (self.points == other.points and self.adjacency == other.adjacency
                and self.denom == other.denom)

    def __hash__(self) -> int:
        return hash((self.points, self.adjacency, self.denom))

    def __repr__(self) -> str:
        return f"DigitalImage({len(self.points)} points, {self.adjacency!r}, denom={self.denom})"

    def index(self, p: Sequence[int]) -> int:
        try:
            return self._index[tuple(p)]
        except KeyError:
            raise ValueError(f"{tuple(p)} is not a point of the image") from None

    def neighbors(self, p: Sequence[int]) -> list[Point]:
        return [self.points[j] for j in self._nbrs[self.index(p)]]

    def is_adjacent(self, p, q) -> bool:
        return _adj(tuple(p), tuple(q), self.adjacency)

    def edges(self) -> list[tuple[Point, Point]]:
        return [(self.points[i], self.points[j])
                for i, nb in enumerate(self._nbrs) for j in nb if i < j]

    def subimage(self, points: Iterable[Sequence[int]]) -> "DigitalImage":
        pts = [as_point(p) for p in points]
        for p in pts:
            if p not in self:
                raise ValueError(f"{p} is not a point of the image")
        return DigitalImage(tuple(pts), self.adjacency, self.denom)

    def with_adjacency(self, spec: AdjacencySpec) -> "DigitalImage":
        return DigitalImage(self.points, spec, self.denom)


def image(points: Iterable[Sequence[int]], adjacency: AdjacencySpec | None = None, *,
          u: int | None = None, denom: int = 1) -> DigitalImage:
    """Convenience constructor; ``u`` builds a c_u adjacency from the point length."""
    pts = tuple(as_point(p) if not isinstance(p, int) else (p,) for p in points)
    if adjacency is None:
        if not pts:
            raise ValueError("an image needs at least one point")
        n = len(pts[0])
        adjacency = CU(n, n if u is None else u)
    return DigitalImage(pts, adjacency, denom)


def interval(a: int, b: int) -> DigitalImage:
    """[a, b]_Z with c_1 adjacency."""
    return DigitalImage(tuple((t,) for t in range(a, b + 1)), CU(1, 1))


def product_image(images: Sequence[DigitalImage], u: int | None = None) -> DigitalImage:
    """Cartesian product with NP_u adjacency (``u`` defaults to the number of factors)."""
    images = list(images)
    if not images:
        raise ValueError("product of an empty list of images")
    v = len(images)
    u = v if u is None else u
    if not 1 <= u <= v:
        raise ValueError(f"NP_u needs 1 <= u <= {v}, got u={u}")
    denoms = {im.denom for im in images}
    if len(denoms) != 1:
        raise ValueError("cannot mix subdivision denominators in a product")
    if v == 1:
        return images[0]
    spec = NP(u, tuple((im.adjacency, im.dim) for im in images))
    pts = tuple(tuple(itertools.chain.from_iterable(combo))
                for combo in itertools.product(*(im.points for im in images)))
    return DigitalImage(pts, spec, denoms.pop(), factors=tuple(images))


def split_point(p: Point, images: Sequence[DigitalImage]) -> list[Point]:
    out, start = [], 0
    for im in images:
        out.append(p[start:start + im.dim])
        start += im.dim
    return out


def is_symmetric_origin(X: DigitalImage | Iterable[Sequence[int]]) -> bool:
    pts = set(X.points) if isinstance(X, DigitalImage) else {as_point(p) for p in X}
    return all(negate(p) in pts for p in pts)
