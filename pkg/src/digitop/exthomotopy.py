"""Long homotopies, real paths and homotopies, and finite prefixes of
homotopic similarity, together with their product constructions.

Breakpoints are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .lattice import DigitalImage, as_point, product_image
from .maps import DigitalMap, compose, identity, is_continuous, product_map, restrict
from .homotopy import Homotopy, constant_homotopy, is_homotopy, product_homotopy


def _near(Y: DigitalImage, a, b) -> bool:
    return a == b or Y.is_adjacent(a, b)


# ---------------------------------------------------------------------------
# long homotopies


@dataclass(frozen=True)
class LongHomotopy:
    """Frames indexed t = -N, ..., N; outside that window the family is
    constant at ``frames[0]`` (left) and ``frames[-1]`` (right)."""

    f: DigitalMap
    g: DigitalMap
    N: int
    frames: tuple[DigitalMap, ...]
    fixed_points: frozenset | None = None

    def __post_init__(self):
        object.__setattr__(self, "frames", tuple(self.frames))
        if self.N < 0:
            raise ValueError("N must be nonnegative")
        if len(self.frames) != 2 * self.N + 1:
            raise ValueError(f"expected {2 * self.N + 1} frames for N={self.N}, got {len(self.frames)}")
        if self.fixed_points is not None:
            object.__setattr__(self, "fixed_points", frozenset(as_point(p) for p in self.fixed_points))

    def at(self, t: int) -> DigitalMap:
        t = max(-self.N, min(self.N, t))
        return self.frames[t + self.N]


def is_long_homotopy(L: LongHomotopy, basepoint=None, base_value=None) -> bool:
    """Validate a long homotopy; optionally require F(x0, t) = y0 for all t."""
    if L.frames[0] != L.f or L.frames[-1] != L.g:
        return False
    H = Homotopy(L.frames, L.fixed_points)
    if not is_homotopy(H):
        return False
    if basepoint is not None:
        x0 = as_point(basepoint)
        y0 = as_point(base_value) if base_value is not None else L.f(x0)
        if any(F(x0) != y0 for F in L.frames):
            return False
    return True


def long_to_homotopy(L: LongHomotopy) -> Homotopy:
    """Reindex [-N, N] to [0, 2N]."""
    return Homotopy(L.frames, L.fixed_points)


def homotopy_to_long(H: Homotopy) -> LongHomotopy:
    """Center ``H`` in a symmetric window, padding with its end frames."""
    m = H.length
    N = (m + 1) // 2
    frames = H.frames + (H.end,) * (2 * N - m)
    return LongHomotopy(H.start, H.end, N, frames, H.fixed_points)


def pad_long(L: LongHomotopy, N: int) -> LongHomotopy:
    if N < L.N:
        raise ValueError("cannot shrink a long homotopy window")
    extra = N - L.N
    frames = (L.frames[0],) * extra + L.frames + (L.frames[-1],) * extra
    return LongHomotopy(L.f, L.g, N, frames, L.fixed_points)


def product_long_homotopy(Ls: Sequence[LongHomotopy], u: int | None = None) -> LongHomotopy:
    Ls = list(Ls)
    if not Ls:
        raise ValueError("product of an empty list of long homotopies")
    N = max(L.N for L in Ls)
    padded = [pad_long(L, N) for L in Ls]
    frames = tuple(product_map([L.frames[k] for L in padded], u) for k in range(2 * N + 1))
    fixed = _product_points([L.fixed_points for L in Ls])
    return LongHomotopy(product_map([L.f for L in Ls], u), product_map([L.g for L in Ls], u),
                        N, frames, fixed)


def _product_points(sets):
    if not all(sets):
        return None
    return frozenset(tuple(itertools.chain.from_iterable(c))
                     for c in itertools.product(*(sorted(s) for s in sets)))


# ---------------------------------------------------------------------------
# real paths


def _as_fraction(t) -> Fraction:
    if isinstance(t, (list, tuple)):
        return Fraction(int(t[0]), int(t[1]))
    return Fraction(t)


def _check_breakpoints(bps: Sequence[Fraction]):
    if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1:
        raise ValueError("breakpoints must run from 0 to 1")
    if any(a >= b for a, b in zip(bps, bps[1:])):
        raise ValueError("breakpoints must be strictly increasing")


@dataclass(frozen=True)
class RealPath:
    """A piecewise-constant path [0, 1] -> image.

    ``breakpoints`` are 0 = t_0 < ... < t_k = 1; ``intervals[j]`` is the
    value on (t_j, t_{j+1}) and ``points[j]`` the value at t_j.
    """

    image: DigitalImage
    breakpoints: tuple[Fraction, ...]
    intervals: tuple
    points: tuple

    def __post_init__(self):
        bps = tuple(_as_fraction(t) for t in self.breakpoints)
        _check_breakpoints(bps)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "intervals", tuple(as_point(p) for p in self.intervals))
        object.__setattr__(self, "points", tuple(as_point(p) for p in self.points))
        if len(self.intervals) != len(bps) - 1 or len(self.points) != len(bps):
            raise ValueError("need one value per open interval and one per breakpoint")

    def __call__(self, t) -> tuple:
        t = _as_fraction(t)
        for j, b in enumerate(self.breakpoints):
            if t == b:
                return self.points[j]
            if t < b:
                return self.intervals[j - 1]
        raise ValueError("t outside [0, 1]")


def is_real_path(p: RealPath) -> bool:
    Y = p.image
    if any(v not in Y for v in p.intervals + p.points):
        return False
    if not _near(Y, p.points[0], p.intervals[0]):
        return False
    if not _near(Y, p.points[-1], p.intervals[-1]):
        return False
    for j in range(1, len(p.breakpoints) - 1):
        left, right, here = p.intervals[j - 1], p.intervals[j], p.points[j]
        if not _near(Y, left, right):
            return False
        if here != left and here != right:
            return False
    return True


def jump_points(p: RealPath) -> list[Fraction]:
    jumps = []
    k = len(p.breakpoints) - 1
    if p.points[0] != p.intervals[0]:
        jumps.append(p.breakpoints[0])
    for j in range(1, k):
        if p.intervals[j - 1] != p.intervals[j]:
            jumps.append(p.breakpoints[j])
    if p.points[k] != p.intervals[k - 1]:
        jumps.append(p.breakpoints[k])
    return jumps


# ---------------------------------------------------------------------------
# real homotopies


@dataclass(frozen=True)
class RealHomotopy:
    breakpoints: tuple[Fraction, ...]
    interval_frames: tuple[DigitalMap, ...]
    breakpoint_frames: tuple[DigitalMap, ...]
    fixed_points: frozenset | None = None

    def __post_init__(self):
        bps = tuple(_as_fraction(t) for t in self.breakpoints)
        _check_breakpoints(bps)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "interval_frames", tuple(self.interval_frames))
        object.__setattr__(self, "breakpoint_frames", tuple(self.breakpoint_frames))
        if len(self.interval_frames) != len(bps) - 1 or len(self.breakpoint_frames) != len(bps):
            raise ValueError("need one frame per open interval and one per breakpoint")
        if self.fixed_points is not None:
            object.__setattr__(self, "fixed_points", frozenset(as_point(p) for p in self.fixed_points))

    @property
    def domain(self) -> DigitalImage:
        return self.breakpoint_frames[0].domain

    @property
    def codomain(self) -> DigitalImage:
        return self.breakpoint_frames[0].codomain

    def frame_at(self, t) -> DigitalMap:
        t = _as_fraction(t)
        for j, b in enumerate(self.breakpoints):
            if t == b:
                return self.breakpoint_frames[j]
            if t < b:
                return self.interval_frames[j - 1]
        raise ValueError("t outside [0, 1]")

    def trace(self, x) -> RealPath:
        return RealPath(self.codomain, self.breakpoints,
                        tuple(F(x) for F in self.interval_frames),
                        tuple(F(x) for F in self.breakpoint_frames))


def is_real_homotopy(R: RealHomotopy, f: DigitalMap | None = None, g: DigitalMap | None = None) -> bool:
    frames = R.interval_frames + R.breakpoint_frames
    X, Y = R.domain, R.codomain
    if any(F.domain != X or F.codomain != Y for F in frames):
        return False
    if f is not None and R.breakpoint_frames[0] != f:
        return False
    if g is not None and R.breakpoint_frames[-1] != g:
        return False
    if not all(is_continuous(F) for F in frames):
        return False
    if not all(is_real_path(R.trace(x)) for x in X.points):
        return False
    if R.fixed_points:
        for x in R.fixed_points:
            y0 = R.breakpoint_frames[0](x)
            if any(F(x) != y0 for F in frames):
                return False
    return True


def product_real_homotopy(Rs: Sequence[RealHomotopy], u: int | None = None) -> RealHomotopy:
    """Frame-wise product over the merged breakpoint set."""
    Rs = list(Rs)
    if not Rs:
        raise ValueError("product of an empty list of real homotopies")
    if len(Rs) == 1:
        return Rs[0]
    bps = tuple(sorted(set().union(*(R.breakpoints for R in Rs))))
    mids = [(a + b) / 2 for a, b in zip(bps, bps[1:])]
    interval_frames = tuple(product_map([R.frame_at(t) for R in Rs], u) for t in mids)
    breakpoint_frames = tuple(product_map([R.frame_at(t) for R in Rs], u) for t in bps)
    fixed = _product_points([R.fixed_points for R in Rs])
    return RealHomotopy(bps, interval_frames, breakpoint_frames, fixed)


def homotopy_to_real(H: Homotopy) -> RealHomotopy:
    """Spread the frames of a discrete homotopy over [0, 1].

    Frame t sits at the breakpoint t/m; the open interval after it
    carries frame t+1, so each point steps to its next value right
    after the breakpoint.
    """
    m = H.length
    if m == 0:
        return RealHomotopy((0, 1), (H.start,), (H.start, H.start), H.fixed_points)
    bps = tuple(Fraction(t, m) for t in range(m + 1))
    intervals = tuple(H.frames[t + 1] for t in range(m))
    return RealHomotopy(bps, intervals, H.frames, H.fixed_points)


# ---------------------------------------------------------------------------
# homotopic similarity, finite prefixes


@dataclass(frozen=True)
class SimilarityStage:
    X: DigitalImage
    Y: DigitalImage
    f: DigitalMap
    g: DigitalMap
    gf_to_id: Homotopy
    fg_to_id: Homotopy


@dataclass(frozen=True)
class SimilarityPrefix:
    """Stages 1..k of a homotopic similarity between ``X`` and ``Y``.

    ``compat[(m, n)]`` for m < n holds homotopies
    (f_n restricted to X_m ~ f_m in Y_m, g_n restricted to Y_m ~ g_m in X_m).
    """

    X: DigitalImage
    Y: DigitalImage
    stages: tuple[SimilarityStage, ...]
    compat: Mapping[tuple[int, int], tuple[Homotopy, Homotopy]] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.stages)


def _is_subimage(small: DigitalImage, big: DigitalImage) -> bool:
    return small.adjacency == big.adjacency and set(small.points) <= set(big.points)


def verify_similarity_prefix(S: SimilarityPrefix, covers: bool = False) -> bool:
    """Check the stage conditions on the supplied prefix.

    Stages are numbered from 1.  With ``covers=True`` the last stage must
    exhaust ``X`` and ``Y`` (finite images stabilize).
    """
    if not S.stages:
        return False
    for st in S.stages:
        if not (_is_subimage(st.X, S.X) and _is_subimage(st.Y, S.Y)):
            return False
    for a, b in zip(S.stages, S.stages[1:]):
        if not (_is_subimage(a.X, b.X) and _is_subimage(a.Y, b.Y)):
            raise ValueError("stage images are not nested")
    if covers and (set(S.stages[-1].X.points) != set(S.X.points)
                   or set(S.stages[-1].Y.points) != set(S.Y.points)):
        return False
    for st in S.stages:
        if st.f.domain != st.X or st.f.codomain != st.Y or st.g.domain != st.Y or st.g.codomain != st.X:
            return False
        if not (is_continuous(st.f) and is_continuous(st.g)):
            return False
        if not is_homotopy(st.gf_to_id, compose(st.g, st.f), identity(st.X)):
            return False
        if not is_homotopy(st.fg_to_id, compose(st.f, st.g), identity(st.Y)):
            return False
    for m in range(1, S.k + 1):
        for n in range(m + 1, S.k + 1):
            if (m, n) not in S.compat:
                return False
            hf, hg = S.compat[(m, n)]
            sm, sn = S.stages[m - 1], S.stages[n - 1]
            if not set(sn.f(x) for x in sm.X.points) <= set(sm.Y.points):
                return False
            if not set(sn.g(y) for y in sm.Y.points) <= set(sm.X.points):
                return False
            fn_m = restrict(sn.f, sm.X, sm.Y)
            gn_m = restrict(sn.g, sm.Y, sm.X)
            if not is_homotopy(hf, fn_m, sm.f) or not is_homotopy(hg, gn_m, sm.g):
                return False
    return True


def _padded_stages(S: SimilarityPrefix, k: int):
    stages = list(S.stages) + [S.stages[-1]] * (k - S.k)

    def compat(m, n):
        m2, n2 = min(m, S.k), min(n, S.k)
        if m2 == n2:
            st = S.stages[m2 - 1]
            return constant_homotopy(st.f), constant_homotopy(st.g)
        return S.compat[(m2, n2)]

    return stages, compat


def product_similarity_prefix(Ss: Sequence[SimilarityPrefix], u: int | None = None) -> SimilarityPrefix:
    """Stage-wise products; shorter prefixes repeat their last stage."""
    Ss = list(Ss)
    if not Ss:
        raise ValueError("product of an empty list of similarity prefixes")
    k = max(S.k for S in Ss)
    padded = [_padded_stages(S, k) for S in Ss]
    stages = []
    for j in range(k):
        parts = [p[0][j] for p in padded]
        stages.append(SimilarityStage(
            product_image([s.X for s in parts], u),
            product_image([s.Y for s in parts], u),
            product_map([s.f for s in parts], u),
            product_map([s.g for s in parts], u),
            product_homotopy([s.gf_to_id for s in parts], u),
            product_homotopy([s.fg_to_id for s in parts], u),
        ))
    compat = {}
    for m in range(1, k + 1):
        for n in range(m + 1, k + 1):
            pairs = [p[1](m, n) for p in padded]
            compat[(m, n)] = (product_homotopy([hf for hf, _ in pairs], u),
                              product_homotopy([hg for _, hg in pairs], u))
    return SimilarityPrefix(product_image([S.X for S in Ss], u), product_image([S.Y for S in Ss], u),
                            tuple(stages), compat)
