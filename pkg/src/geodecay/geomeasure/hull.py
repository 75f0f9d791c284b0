"""Greatest convex minorant of a sampled curve on an interval."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .. import _kernels
from ..errors import DomainError


@dataclass(frozen=True)
class Segment:
    """Straight piece of the envelope replacing a nonconvex stretch."""

    x_left: float
    x_right: float
    y_left: float
    y_right: float

    @property
    def slope(self):
        return (self.y_right - self.y_left) / (self.x_right - self.x_left)

    def __call__(self, x):
        return self.y_left + self.slope * (x - self.x_left)

    def contains(self, x):
        return self.x_left <= x <= self.x_right


@dataclass(frozen=True, eq=False)
class HullEnvelope:
    """Lower convex envelope; follows ``func`` (or the hull vertices) off the segments."""

    xs: np.ndarray
    ys: np.ndarray
    vertices: np.ndarray
    segments: tuple = ()
    func: object = field(default=None, repr=False)

    @property
    def breakpoints(self):
        lo, hi = self.xs[0], self.xs[-1]
        pts = []
        for seg in self.segments:
            pts += [p for p in (seg.x_left, seg.x_right) if lo < p < hi]
        return tuple(pts)

    @property
    def branch_point(self):
        bp = self.breakpoints
        return bp[0] if bp else None

    def segment_at(self, x):
        for seg in self.segments:
            if seg.contains(x):
                return seg
        return None

    def __call__(self, x):
        if not self.xs[0] <= x <= self.xs[-1]:
            raise DomainError(f"{x} outside [{self.xs[0]}, {self.xs[-1]}]")
        seg = self.segment_at(x)
        if seg is not None:
            return seg(x)
        if self.func is not None:
            return float(self.func(x))
        v = self.vertices
        return float(np.interp(x, self.xs[v], self.ys[v]))


def _polish(func, x, anchor_x, anchor_y, lo, hi, h=1e-6):
    """Root of the tangency condition near ``x``; ``x`` itself if none is bracketed.

    The chord-slope extremum is flat, so the optimizer alone only pins the
    tangency point to about ``sqrt(eps)``.
    """

    def cond(t):
        slope = (func(t + h) - func(t - h)) / (2 * h)
        return func(t) + slope * (anchor_x - t) - anchor_y

    a, b = max(lo + h, x - 1e-6), min(hi - h, x + 1e-6)
    if not a < b:
        return x
    ca, cb = cond(a), cond(b)
    if ca == 0.0 or cb == 0.0 or (ca > 0) == (cb > 0):
        return x
    return float(brentq(cond, a, b, xtol=1e-15))


def _refine_left(func, x_right, y_right, lo, hi):
    # tangency seen from (x_right, y_right): steepest chord from the left
    res = minimize_scalar(lambda x: -(y_right - func(x)) / (x_right - x), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-12})
    return _polish(func, float(res.x), x_right, y_right, lo, hi)


def _refine_right(func, x_left, y_left, lo, hi):
    res = minimize_scalar(lambda x: (func(x) - y_left) / (x - x_left), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-12})
    return _polish(func, float(res.x), x_left, y_left, lo, hi)


def convex_hull_envelope(xs, ys, func=None, *, rel_tol=1e-12, refine_tol=1e-13):
    """Lower convex envelope of the samples ``(xs, ys)``.

    Stretches where samples lie above the chord between consecutive hull
    vertices by more than ``rel_tol`` become :class:`Segment` objects. With a
    callable ``func`` (the curve the samples came from) the interior ends of
    each segment are moved to the exact tangency points.
    """
    xs = np.ascontiguousarray(xs, dtype=float)
    ys = np.ascontiguousarray(ys, dtype=float)
    if xs.ndim != 1 or xs.shape != ys.shape:
        raise DomainError("xs and ys must be 1-D arrays of equal length")
    if xs.shape[0] < 3:
        raise DomainError("need at least 3 samples")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise DomainError("samples must be finite")
    if np.any(np.diff(xs) <= 0):
        raise DomainError("xs must be strictly increasing")

    vertices = np.array(_kernels.lower_hull(xs, ys), dtype=int)
    scale = 1.0 + float(np.max(np.abs(ys)))
    segments = []
    for i, j in zip(vertices[:-1], vertices[1:]):
        if j - i < 2:
            continue
        chord = ys[i] + (ys[j] - ys[i]) * (xs[i + 1:j] - xs[i]) / (xs[j] - xs[i])
        if np.max(ys[i + 1:j] - chord) <= rel_tol * scale:
            continue
        xl, xr = xs[i], xs[j]
        if func is not None:
            left_free = i > 0
            right_free = j < xs.shape[0] - 1
            for _ in range(50):
                old = (xl, xr)
                if left_free:
                    xl = _refine_left(func, xr, func(xr), xs[i - 1], min(xs[i + 1], xr))
                if right_free:
                    xr = _refine_right(func, xl, func(xl), max(xs[j - 1], xl), xs[j + 1])
                if abs(xl - old[0]) < refine_tol and abs(xr - old[1]) < refine_tol:
                    break
            segments.append(Segment(xl, xr, float(func(xl)), float(func(xr))))
        else:
            segments.append(Segment(float(xl), float(xr), float(ys[i]), float(ys[j])))
    xs.flags.writeable = False
    ys.flags.writeable = False
    return HullEnvelope(xs, ys, vertices, tuple(segments), func)
