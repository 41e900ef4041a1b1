"""Backtracking search for continuous maps between finite images.

Values are codomain indices; candidate sets are int bitmasks.  The
solver does forward checking on the domain's neighbor lists, so every
partial assignment it extends is already continuous.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .lattice import DigitalImage

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """A search hit its configured resource cap; no answer was produced."""


class Counter:
    """Shared node counter so several searches can draw on one budget."""

    def __init__(self, budget: int | None = DEFAULT_BUDGET):
        self.budget = budget
        self.used = 0

    def tick(self, n: int = 1):
        self.used += n
        if self.budget is not None and self.used > self.budget:
            raise BudgetExceeded(f"search budget of {self.budget} exhausted")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def solve(X: DigitalImage, Y: DigitalImage, domains: Sequence[int] | None = None, *,
          groups: Sequence[tuple[Sequence[int], int]] = (),
          apart: Sequence[tuple[int, int]] = (), mrv: bool = False,
          counter: Counter | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every continuous map X -> Y as a tuple of codomain indices.

    ``domains[i]`` restricts the values allowed at domain point ``i``.
    Each ``(members, required)`` group demands that the values taken on
    ``members`` cover exactly the bitmask ``required``.  Each ``(i, j)``
    in ``apart`` demands that points i and j land neither equal nor
    adjacent.

    With ``mrv=False`` variables are assigned in canonical point order and
    values ascending, so maps come out in lexicographic table order.
    """
    n = len(X)
    full = (1 << len(Y)) - 1
    dom = [full] * n if domains is None else [d & full for d in domains]
    if any(d == 0 for d in dom):
        return
    nbrs = X._nbrs
    masks = Y._closed_masks
    assign = [-1] * n
    far: list[list[int]] = [[] for _ in range(n)]
    for i, j in apart:
        if i == j:
            return
        far[i].append(j)
        far[j].append(i)
    group_of: list[list[int]] = [[] for _ in range(n)]
    for g, (members, _) in enumerate(groups):
        for i in members:
            group_of[i].append(g)

    def group_ok(g: int) -> bool:
        members, required = groups[g]
        covered = 0
        reachable = 0
        free = 0
        for i in members:
            if assign[i] >= 0:
                covered |= 1 << assign[i]
            else:
                reachable |= dom[i]
                free += 1
        if (covered | reachable) & required != required:
            return False
        return bin(required & ~covered).count("1") <= free

    def pick() -> int:
        if not mrv:
            for i in range(n):
                if assign[i] < 0:
                    return i
            return -1
        best, best_size = -1, None
        for i in range(n):
            if assign[i] < 0:
                size = bin(dom[i]).count("1")
                if best_size is None or size < best_size:
                    best, best_size = i, size
                    if size <= 1:
                        break
        return best

    def rec(depth: int):
        if depth == n:
            yield tuple(assign)
            return
        i = pick()
        for val in _bits(dom[i]):
            if counter is not None:
                counter.tick()
            assign[i] = val
            trail = []
            ok = True
            allowed = masks[val]
            touched = set(group_of[i])
            for j in nbrs[i]:
                if assign[j] < 0:
                    new = dom[j] & allowed
                    if new != dom[j]:
                        trail.append((j, dom[j]))
                        dom[j] = new
                        if not new:
                            ok = False
                            break
                        touched.update(group_of[j])
            if ok:
                for j in far[i]:
                    if assign[j] < 0:
                        new = dom[j] & ~allowed
                        if new != dom[j]:
                            trail.append((j, dom[j]))
                            dom[j] = new
                            if not new:
                                ok = False
                                break
                            touched.update(group_of[j])
            if ok and touched:
                ok = all(group_ok(g) for g in touched)
            if ok:
                saved = dom[i]
                dom[i] = 1 << val
                yield from rec(depth + 1)
                dom[i] = saved
            for j, old in reversed(trail):
                dom[j] = old
            assign[i] = -1

    yield from rec(0)


def map_space_bound(X: DigitalImage, Y: DigitalImage, domains: Sequence[int] | None = None) -> int:
    """Upper bound on the number of continuous maps X -> Y (within ``domains``).

    Points with an earlier neighbor (canonical order) take at most
    ``max closed degree of Y`` values; the others take any allowed value.
    """
    width = max(bin(m).count("1") for m in Y._closed_masks)
    bound = 1
    for i, nb in enumerate(X._nbrs):
        size = len(Y) if domains is None else bin(domains[i]).count("1")
        bound *= min(size, width) if any(j < i for j in nb) else size
    return bound
