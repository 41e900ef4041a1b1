"""Digital homotopies stored as explicit frame sequences, and exact
homotopy decisions by search over the graph of continuous maps."""

from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

from .connectivity import components
from .lattice import DigitalImage, NP, as_point, interval, product_image
from .maps import (DigitalMap, compose, enumerate_continuous_maps, find_retraction, identity,
                   is_continuous, is_retraction, product_map)
from .search import DEFAULT_BUDGET, BudgetExceeded, Counter, solve


@dataclass(frozen=True)
class Homotopy:
    """Frames F_0, ..., F_m sharing one domain and codomain."""

    frames: tuple[DigitalMap, ...]
    fixed_points: frozenset | None = None

    def __post_init__(self):
        frames = tuple(self.frames)
        if not frames:
            raise ValueError("a homotopy needs at least one frame")
        X, Y = frames[0].domain, frames[0].codomain
        for F in frames[1:]:
            if (F.domain is not X and F.domain != X) or (F.codomain is not Y and F.codomain != Y):
                raise ValueError("all frames must share domain and codomain")
        object.__setattr__(self, "frames", frames)
        if self.fixed_points is not None:
            object.__setattr__(self, "fixed_points", frozenset(as_point(p) for p in self.fixed_points))

    @property
    def length(self) -> int:
        return len(self.frames) - 1

    @property
    def domain(self) -> DigitalImage:
        return self.frames[0].domain

    @property
    def codomain(self) -> DigitalImage:
        return self.frames[0].codomain

    @property
    def start(self) -> DigitalMap:
        return self.frames[0]

    @property
    def end(self) -> DigitalMap:
        return self.frames[-1]

    def __call__(self, x, t: int):
        return self.frames[t](x)


def _steps_ok(a: DigitalMap, b: DigitalMap) -> bool:
    """Pointwise equal-or-adjacent."""
    masks = a.codomain._closed_masks
    return all((masks[i] >> j) & 1 for i, j in zip(a._idx, b._idx))


def is_homotopy(H: Homotopy, f: DigitalMap | None = None, g: DigitalMap | None = None) -> bool:
    """Check every frame is continuous, every point traces a path, and
    the ends are ``f`` and ``g`` (when given).  Fixed points, if declared,
    must never move."""
    if f is not None and H.start != f:
        return False
    if g is not None and H.end != g:
        return False
    if not all(is_continuous(F) for F in H.frames):
        return False
    if not all(_steps_ok(a, b) for a, b in zip(H.frames, H.frames[1:])):
        return False
    if H.fixed_points:
        first = H.start
        for x in H.fixed_points:
            if any(F(x) != first(x) for F in H.frames):
                return False
    return True


@functools.lru_cache(maxsize=128)
def _time_product(X: DigitalImage, m: int) -> DigitalImage:
    T = interval(0, m)
    if X.denom != 1:
        T = DigitalImage(T.points, T.adjacency, X.denom)
    return product_image([X, T], u=1)


def flatten_np1(H: Homotopy) -> DigitalMap:
    """View H as one map on X x [0, m]_Z carrying NP_1(kappa, c_1)."""
    P = _time_product(H.domain, H.length)
    # points of P sort as (x, t), so x_i at time t sits at index i * (m + 1) + t
    idx = [F._idx[i] for i in range(len(H.domain)) for F in H.frames]
    return DigitalMap._from_indices(P, H.codomain, idx)


def unflatten_np1(F: DigitalMap) -> Homotopy:
    """Inverse of :func:`flatten_np1`."""
    P = F.domain
    if not isinstance(P.adjacency, NP) or P.factors is None or len(P.factors) != 2:
        raise ValueError("domain is not a product X x [0,m]_Z")
    X, T = P.factors
    frames = []
    for (t,) in T.points:
        frames.append(DigitalMap(X, F.codomain, [F(x + (t,)) for x in X.points]))
    return Homotopy(tuple(frames))


def constant_homotopy(f: DigitalMap, fixed_points=None) -> Homotopy:
    return Homotopy((f,), fixed_points)


def concat(H: Homotopy, K: Homotopy) -> Homotopy:
    if H.end != K.start:
        raise ValueError("homotopies do not meet")
    return Homotopy(H.frames + K.frames[1:])


def reverse(H: Homotopy) -> Homotopy:
    return Homotopy(tuple(reversed(H.frames)), H.fixed_points)


# ---------------------------------------------------------------------------
# exact decision by BFS over the graph of continuous maps


def one_step_neighbors(h: DigitalMap, fixed: Iterable | None = None,
                       counter: Counter | None = None):
    """Continuous maps pointwise equal-or-adjacent to ``h`` (lexicographic)."""
    X, Y = h.domain, h.codomain
    masks = Y._closed_masks
    domains = [masks[j] for j in h._idx]
    if fixed:
        for x in fixed:
            i = X.index(x)
            domains[i] = 1 << h._idx[i]
    for idx in solve(X, Y, domains, counter=counter):
        yield idx


def _one_step_into(h: DigitalMap, goal_masks: list[int], fixed=None, counter: Counter | None = None):
    """First one-step neighbor of ``h`` whose values lie in ``goal_masks``, or None."""
    X, Y = h.domain, h.codomain
    masks = Y._closed_masks
    domains = [masks[j] & g for j, g in zip(h._idx, goal_masks)]
    if fixed:
        for x in fixed:
            i = X.index(x)
            domains[i] &= 1 << h._idx[i]
    if not all(domains):
        return None
    for idx in solve(X, Y, domains, counter=counter):
        return idx
    return None


def _bfs(f: DigitalMap, goal: Callable[[tuple], bool], *, fixed=None,
         budget: int | None = DEFAULT_BUDGET, max_length: int | None = None,
         jump: Callable[[DigitalMap], tuple | None] | None = None) -> Homotopy | None:
    """Breadth-first search over one-step moves from ``f``.

    ``jump(h)`` may return a goal map one step from ``h``; it lets the
    search reach a nearby goal without waiting for it in enumeration
    order.  Exhaustiveness is unaffected.
    """
    if not is_continuous(f):
        raise ValueError("homotopy search needs a continuous starting map")
    X, Y = f.domain, f.codomain
    counter = Counter(budget)
    start = f._idx
    parent = {start: None}
    depth = {start: 0}
    queue = deque([start])
    found = start if goal(start) else None
    while queue and found is None:
        cur = queue.popleft()
        if max_length is not None and depth[cur] >= max_length:
            continue
        if jump is not None:
            hit = jump(DigitalMap._from_indices(X, Y, cur))
            if hit is not None and goal(hit):
                parent.setdefault(hit, cur)
                found = hit
                break
        for nxt in one_step_neighbors(DigitalMap._from_indices(X, Y, cur), fixed, counter):
            if nxt in parent:
                continue
            parent[nxt] = cur
            depth[nxt] = depth[cur] + 1
            if len(parent) > (budget or float("inf")):
                raise BudgetExceeded(f"visited more than {budget} maps")
            if goal(nxt):
                found = nxt
                break
            queue.append(nxt)
    if found is None:
        return None
    chain = [found]
    while parent[chain[-1]] is not None:
        chain.append(parent[chain[-1]])
    frames = tuple(DigitalMap._from_indices(X, Y, idx) for idx in reversed(chain))
    return Homotopy(frames, frozenset(fixed) if fixed else None)


def are_homotopic(f: DigitalMap, g: DigitalMap, *, fixed=None,
                  budget: int | None = DEFAULT_BUDGET,
                  max_length: int | None = None) -> Homotopy | None:
    """A homotopy from ``f`` to ``g``, or None when none exists.

    The search is exhaustive over the maps reachable from ``f`` by
    one-step moves, so None is a proof (unless ``max_length`` cuts it
    short).  ``fixed`` restricts to homotopies holding those points.
    Exceeding ``budget`` raises :class:`BudgetExceeded`.
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValueError("maps must share domain and codomain")
    if not is_continuous(f) or not is_continuous(g):
        raise ValueError("homotopy is only defined between continuous maps")
    target = g._idx
    return _bfs(f, lambda idx: idx == target, fixed=fixed, budget=budget, max_length=max_length,
                jump=lambda h: _one_step_into(h, [1 << j for j in target], fixed, None))


def homotopy_class(f: DigitalMap, *, fixed=None, budget: int | None = DEFAULT_BUDGET) -> set[tuple]:
    """Index tables of every map homotopic to ``f``."""
    seen: set[tuple] = set()

    def goal(idx):
        seen.add(idx)
        return False

    _bfs(f, goal, fixed=fixed, budget=budget)
    return seen


def contraction(X: DigitalImage, *, budget: int | None = DEFAULT_BUDGET) -> Homotopy | None:
    """A homotopy from the identity of ``X`` to some constant map, or None."""
    masks = X._closed_masks

    def to_constant(h):
        common = -1
        for j in h._idx:
            common &= masks[j]
        if not common:
            return None
        c = (common & -common).bit_length() - 1
        return (c,) * len(X)

    return _bfs(identity(X), lambda idx: len(set(idx)) == 1, budget=budget, jump=to_constant)


def is_contractible(X: DigitalImage, *, budget: int | None = DEFAULT_BUDGET) -> bool:
    return contraction(X, budget=budget) is not None


class HomotopyEquivalence(NamedTuple):
    f: DigitalMap
    g: DigitalMap
    gf_to_id: Homotopy  # g.f ~ 1_X
    fg_to_id: Homotopy  # f.g ~ 1_Y


def homotopy_equivalent(X: DigitalImage, Y: DigitalImage, *,
                        budget: int | None = DEFAULT_BUDGET) -> HomotopyEquivalence | None:
    """Search all pairs of continuous maps for a homotopy equivalence."""
    counter = Counter(budget)
    class_x = homotopy_class(identity(X), budget=budget)
    class_y = homotopy_class(identity(Y), budget=budget)
    gs = list(enumerate_continuous_maps(Y, X, counter=counter))
    for f in enumerate_continuous_maps(X, Y, counter=counter):
        for g in gs:
            counter.tick()
            gf = compose(g, f)
            if gf._idx not in class_x:
                continue
            fg = compose(f, g)
            if fg._idx not in class_y:
                continue
            H1 = are_homotopic(gf, identity(X), budget=budget)
            H2 = are_homotopic(fg, identity(Y), budget=budget)
            return HomotopyEquivalence(f, g, H1, H2)
    return None


def is_homotopy_equivalence(eq: HomotopyEquivalence) -> bool:
    f, g = eq.f, eq.g
    X, Y = f.domain, f.codomain
    return (is_continuous(f) and is_continuous(g)
            and is_homotopy(eq.gf_to_id, compose(g, f), identity(X))
            and is_homotopy(eq.fg_to_id, compose(f, g), identity(Y)))


# ---------------------------------------------------------------------------
# products


def pad(H: Homotopy, length: int) -> Homotopy:
    """Extend by repeating the last frame up to ``length``."""
    if length < H.length:
        raise ValueError("cannot pad a homotopy to a shorter length")
    return Homotopy(H.frames + (H.end,) * (length - H.length), H.fixed_points)


def product_homotopy(Hs: Sequence[Homotopy], u: int | None = None) -> Homotopy:
    """Frame-wise product of homotopies padded to the longest one."""
    Hs = list(Hs)
    if not Hs:
        raise ValueError("product of an empty list of homotopies")
    M = max(H.length for H in Hs)
    padded = [pad(H, M) for H in Hs]
    frames = tuple(product_map([H.frames[t] for H in padded], u) for t in range(M + 1))
    fixed = None
    if all(H.fixed_points for H in Hs):
        fixed = frozenset(tuple(itertools.chain.from_iterable(c))
                          for c in itertools.product(*(sorted(H.fixed_points) for H in Hs)))
    return Homotopy(frames, fixed)


# ---------------------------------------------------------------------------
# deformation retracts


def is_deformation_retract(X: DigitalImage, A: Iterable, H: Homotopy, strong: bool = False) -> bool:
    """``H`` deforms the identity of ``X`` into a retraction onto ``A``.

    With ``strong=True`` every frame must also fix ``A`` pointwise.
    """
    A = {as_point(a) for a in A}
    if H.domain != X or H.codomain != X:
        return False
    if not is_homotopy(H, identity(X)):
        return False
    sub = X.subimage(A)
    end = H.end
    if not end.image() <= A:
        return False
    if not is_retraction(DigitalMap(X, sub, end.values), A):
        return False
    if strong:
        return all(F(a) == a for F in H.frames for a in A)
    return True


def _short_homotopy(f: DigitalMap, goal_masks: list[int], fixed, k: int,
                    counter: Counter) -> Homotopy | None:
    """A homotopy of length exactly ``k`` from ``f`` into ``goal_masks``,
    found as one continuous map on X x [0, k]_Z."""
    X, Y = f.domain, f.codomain
    T = interval(0, k)
    if X.denom != 1:
        T = DigitalImage(T.points, T.adjacency, X.denom)
    P = product_image([X, T], u=1)
    full = (1 << len(Y)) - 1
    held = {X.index(x) for x in fixed} if fixed else set()
    domains = []
    for p in P.points:
        i, t = X.index(p[:-1]), p[-1]
        d = 1 << f._idx[i] if t == 0 or i in held else full
        if t == k:
            d &= goal_masks[i]
        domains.append(d)
    for idx in solve(P, Y, domains, mrv=True, counter=counter):
        F = DigitalMap._from_indices(P, Y, idx)
        frames = tuple(DigitalMap(X, Y, [F(x + (t,)) for x in X.points]) for t in range(k + 1))
        return Homotopy(frames, frozenset(fixed) if fixed else None)
    return None


def _deform_connected(X: DigitalImage, A: list, strong: bool, budget: int | None) -> Homotopy | None:
    if find_retraction(X, A) is None:
        return None
    sub_idx = {X.index(a) for a in A}
    a_mask = sum(1 << i for i in sub_idx)
    goal_masks = [1 << i if i in sub_idx else a_mask for i in range(len(X))]
    fixed = A if strong else None
    # short deformations are found directly; the search below is the complete fallback
    for k in range(1, 4):
        try:
            H = _short_homotopy(identity(X), goal_masks, fixed, k, Counter(budget))
        except BudgetExceeded:
            break
        if H is not None:
            return H

    def is_ret(idx):
        return all(idx[i] in sub_idx for i in range(len(idx))) and all(idx[i] == i for i in sub_idx)

    return _bfs(identity(X), is_ret, fixed=fixed, budget=budget,
                jump=lambda h: _one_step_into(h, goal_masks, fixed, None))


def find_deformation_retraction(X: DigitalImage, A: Iterable, strong: bool = False, *,
                                budget: int | None = DEFAULT_BUDGET) -> Homotopy | None:
    """Search for a (strong) deformation of ``X`` onto ``A``.

    Homotopies move each component independently, so the search runs
    per component; every component must meet ``A``.
    """
    A = {as_point(a) for a in A}
    for a in A:
        X.index(a)
    parts = []
    for comp in components(X):
        AC = sorted(A & comp)
        if not AC:
            return None
        H = _deform_connected(X.subimage(comp), AC, strong, budget)
        if H is None:
            return None
        parts.append(H)
    m = max(H.length for H in parts)
    frames = []
    for t in range(m + 1):
        table = {}
        for H in parts:
            table.update(H.frames[min(t, H.length)].table)
        frames.append(DigitalMap(X, X, table))
    return Homotopy(tuple(frames), frozenset(A) if strong else None)


def retraction_of(H: Homotopy, A: Iterable) -> DigitalMap:
    """The end frame of a deformation, as a map onto ``A``."""
    sub = H.domain.subimage(A)
    return DigitalMap(H.domain, sub, H.end.values)


def is_pointed_at(H: Homotopy, x) -> bool:
    x = as_point(x)
    return all(F(x) == H.start(x) for F in H.frames)
