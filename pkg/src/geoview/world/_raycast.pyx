# cython: language_level=3
"""Compiled ray casting kernel; arithmetic mirrors `_raycast_py` exactly
(same divisions, same comparison order, same box order) so the two
backends return bit-identical depths."""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()

cdef double T_MIN = 1e-12

BACKEND = "compiled"


cdef inline void _axis_interval(double o, double d, double lo, double hi,
                                double* tmin, double* tmax) nogil:
    cdef double t1, t2
    if d == 0.0:
        if lo <= o <= hi:
            tmin[0] = -INFINITY
            tmax[0] = INFINITY
        else:
            tmin[0] = INFINITY
            tmax[0] = -INFINITY
        return
    t1 = (lo - o) / d
    t2 = (hi - o) / d
    if t1 < t2:
        tmin[0] = t1
        tmax[0] = t2
    else:
        tmin[0] = t2
        tmax[0] = t1


def cast_scene(origin, dirs, boxes):
    """Same contract as `_raycast_py.cast_scene`."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] origin_arr = np.ascontiguousarray(origin, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] dirs_arr = np.ascontiguousarray(dirs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] boxes_arr = np.ascontiguousarray(
        np.asarray(boxes, dtype=np.float64).reshape(-1, 6))

    cdef Py_ssize_t n = dirs_arr.shape[0]
    cdef Py_ssize_t m = boxes_arr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] depth_arr = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask_arr = np.zeros(n, dtype=np.uint8)

    cdef double[::1] depth = depth_arr
    cdef unsigned char[::1] mask = mask_arr
    cdef double[:, ::1] d = dirs_arr
    cdef double[:, ::1] bx = boxes_arr

    cdef double ox = origin_arr[0]
    cdef double oy = origin_arr[1]
    cdef double oz = origin_arr[2]

    cdef Py_ssize_t i, j
    cdef double dx, dy, dz, s, enter, exit_
    cdef double txmin, txmax, tymin, tymax, tzmin, tzmax
    cdef double cx, cy, cz, ex, ey, ez
    cdef unsigned char hit_box

    with nogil:
        for i in range(n):
            dx = d[i, 0]
            dy = d[i, 1]
            dz = d[i, 2]
            if dz < 0.0:
                s = (-oz) / dz
            else:
                s = INFINITY
            hit_box = 0
            for j in range(m):
                cx = bx[j, 0]
                cy = bx[j, 1]
                cz = bx[j, 2]
                ex = bx[j, 3]
                ey = bx[j, 4]
                ez = bx[j, 5]
                _axis_interval(ox, dx, cx - ex, cx + ex, &txmin, &txmax)
                _axis_interval(oy, dy, cy - ey, cy + ey, &tymin, &tymax)
                _axis_interval(oz, dz, cz - ez, cz + ez, &tzmin, &tzmax)
                enter = txmin
                if tymin > enter:
                    enter = tymin
                if tzmin > enter:
                    enter = tzmin
                exit_ = txmax
                if tymax < exit_:
                    exit_ = tymax
                if tzmax < exit_:
                    exit_ = tzmax
                if enter <= exit_ and enter > T_MIN and enter < s:
                    s = enter
                    hit_box = 1
            depth[i] = s
            mask[i] = hit_box

    return depth_arr, mask_arr
