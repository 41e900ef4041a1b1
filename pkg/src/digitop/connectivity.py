"""Connectedness, components, paths, set adjacency and neighborhoods."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .lattice import AdjacencySpec, DigitalImage, Point, _adj, ambient_neighbors, as_point


def _bfs_indices(X: DigitalImage, start: int, allowed: set[int] | None = None) -> dict[int, int]:
    """BFS over neighbor lists; returns ``{index: parent index}``."""
    parent = {start: start}
    queue = deque([start])
    nbrs = X._nbrs
    while queue:
        i = queue.popleft()
        for j in nbrs[i]:
            if j not in parent and (allowed is None or j in allowed):
                parent[j] = i
                queue.append(j)
    return parent


def components(X: DigitalImage, subset: Iterable[Sequence[int]] | None = None) -> list[frozenset[Point]]:
    """Connected components of ``X`` (or of ``subset`` with the induced adjacency).

    Components are listed in order of their least point.
    """
    if subset is None:
        remaining = set(range(len(X)))
    else:
        remaining = {X.index(p) for p in subset}
    allowed = set(remaining)
    out = []
    while remaining:
        start = min(remaining)
        reached = _bfs_indices(X, start, allowed)
        remaining.difference_update(reached)
        out.append(frozenset(X.points[i] for i in reached))
    return out


def is_connected(X: DigitalImage) -> bool:
    return len(components(X)) == 1


def is_connected_subset(X: DigitalImage, subset: Iterable[Sequence[int]]) -> bool:
    """Connectedness of ``subset`` under the adjacency of ``X``; the empty set counts as connected."""
    idx = {X.index(p) for p in subset}
    if not idx:
        return True
    return len(_bfs_indices(X, min(idx), idx)) == len(idx)


def find_path(X: DigitalImage, a: Sequence[int], b: Sequence[int]) -> list[Point] | None:
    """A shortest path from ``a`` to ``b`` inside ``X``, or None."""
    ia, ib = X.index(a), X.index(b)
    parent = _bfs_indices(X, ia)
    if ib not in parent:
        return None
    path = [ib]
    while path[-1] != ia:
        path.append(parent[path[-1]])
    return [X.points[i] for i in reversed(path)]


def sets_adjacent(A: Iterable[Sequence[int]], B: Iterable[Sequence[int]], spec: AdjacencySpec) -> bool:
    A = {as_point(p) for p in A}
    B = {as_point(p) for p in B}
    if not A or not B:
        raise ValueError("set adjacency is only defined for nonempty sets")
    if A & B:
        return True
    return any(_adj(a, b, spec) for a in A for b in B)


def neighborhood(X: DigitalImage, x: Sequence[int], n: int = 1, ambient: bool = False) -> frozenset[Point]:
    """Points reachable from ``x`` by a path of length at most ``n``.

    With ``ambient=True`` the radius-1 neighborhood is taken in the whole
    lattice rather than inside ``X``.
    """
    x = as_point(x)
    if n < 0:
        raise ValueError("radius must be nonnegative")
    if ambient:
        if n > 1:
            raise ValueError("ambient neighborhoods are only supported for radius <= 1")
        if len(x) != X.dim:
            raise ValueError(f"{x} does not live in Z^{X.dim}")
        if n == 0:
            return frozenset([x])
        return frozenset([x, *ambient_neighbors(x, X.adjacency)])
    start = X.index(x)
    seen = {start}
    frontier = [start]
    for _ in range(n):
        nxt = []
        for i in frontier:
            for j in X._nbrs[i]:
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return frozenset(X.points[i] for i in seen)


def cut_points(X: DigitalImage) -> list[Point]:
    """Points whose removal disconnects a connected image."""
    if len(X) < 3 or not is_connected(X):
        return []
    everything = set(X.points)
    return [p for p in X.points if not is_connected_subset(X, everything - {p})]
