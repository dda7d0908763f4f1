"""Pure-NumPy ray casting kernel: rays against the z=0 ground plane and a
set of axis-aligned boxes.

This is the import-time fallback for the compiled Cython kernel in
`_raycast.pyx`. The two are kept arithmetically identical, operation for
operation (same divisions, same comparison order, same box order), so
their outputs agree bit for bit.

Rays are parameterized as origin + s * dir with `dir` scaled so that its
camera-frame z component is 1; the returned parameter s is therefore the
camera z-depth directly.
"""

from __future__ import annotations

import numpy as np

T_MIN = 1e-12

BACKEND = "python"


def cast_scene(origin: np.ndarray, dirs: np.ndarray,
               boxes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest-hit depths for a bundle of rays from one origin.

    origin -- (3,) world-frame ray origin
    dirs   -- (P, 3) world-frame ray directions (camera-z-normalized)
    boxes  -- (M, 6) rows of cx, cy, cz, ex, ey, ez (half-extents)

    Returns (depth (P,), obstacle_mask (P,) uint8); misses get +inf / 0.
    """
    origin = np.asarray(origin, dtype=np.float64)
    dirs = np.asarray(dirs, dtype=np.float64)
    ox, oy, oz = float(origin[0]), float(origin[1]), float(origin[2])
    dx, dy, dz = dirs[:, 0], dirs[:, 1], dirs[:, 2]

    # ground plane z = 0: s = (-oz) / dz, valid only for downward rays
    with np.errstate(divide="ignore", invalid="ignore"):
        depth = np.where(dz < 0.0, (-oz) / dz, np.inf)
    mask = np.zeros(dirs.shape[0], dtype=np.uint8)

    for b in np.asarray(boxes, dtype=np.float64):
        enter, exit_ = _slab(ox, oy, oz, dx, dy, dz, b)
        hit = (enter <= exit_) & (enter > T_MIN) & (enter < depth)
        depth = np.where(hit, enter, depth)
        mask = np.where(hit, np.uint8(1), mask)
    return depth, mask


def _axis_interval(o: float, d: np.ndarray, lo: float, hi: float):
    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = (lo - o) / d
        t2 = (hi - o) / d
    tmin = np.minimum(t1, t2)
    tmax = np.maximum(t1, t2)
    # parallel rays: inside the slab -> always inside; outside -> never
    zero = d == 0.0
    if np.any(zero):
        inside = (o >= lo) & (o <= hi)
        tmin = np.where(zero, np.where(inside, -np.inf, np.inf), tmin)
        tmax = np.where(zero, np.where(inside, np.inf, -np.inf), tmax)
    return tmin, tmax


def _slab(ox, oy, oz, dx, dy, dz, box):
    cx, cy, cz, ex, ey, ez = box
    txmin, txmax = _axis_interval(ox, dx, cx - ex, cx + ex)
    tymin, tymax = _axis_interval(oy, dy, cy - ey, cy + ey)
    tzmin, tzmax = _axis_interval(oz, dz, cz - ez, cz + ez)
    enter = np.maximum(np.maximum(txmin, tymin), tzmin)
    exit_ = np.minimum(np.minimum(txmax, tymax), tzmax)
    return enter, exit_
