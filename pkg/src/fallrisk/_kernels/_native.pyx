# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled versions of the hot kernels; must match _pure.py exactly
(formulas and tie-breaking; only summation order may differ)."""

import numpy as np

cimport cython
cimport numpy as cnp
from libc.math cimport sqrt, floor

cnp.import_array()

NAME = "native"


def nearest_segment_distance(double[:, ::1] points not None,
                             double[:, ::1] segments not None,
                             int[::1] owners not None,
                             int n_owners):
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t m = segments.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dist = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] owner = np.empty(n, dtype=np.int32)
    cdef double[::1] dist_v = dist
    cdef int[::1] owner_v = owner
    cdef Py_ssize_t i, k
    cdef double px, py, ax, ay, dx, dy, L2, t, ddx, ddy, d, best
    cdef int best_owner
    for i in range(n):
        px = points[i, 0]
        py = points[i, 1]
        best = -1.0
        best_owner = -1
        for k in range(m):
            ax = segments[k, 0]
            ay = segments[k, 1]
            dx = segments[k, 2] - ax
            dy = segments[k, 3] - ay
            L2 = dx * dx + dy * dy
            if L2 > 0.0:
                t = ((px - ax) * dx + (py - ay) * dy) / L2
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
            else:
                t = 0.0
            ddx = px - (ax + t * dx)
            ddy = py - (ay + t * dy)
            d = sqrt(ddx * ddx + ddy * ddy)
            if best < 0.0 or d < best:
                best = d
                best_owner = owners[k]
        dist_v[i] = best
        owner_v[i] = best_owner
    return dist, owner


cdef inline double _sdf_point(double x, double y, double[:, ::1] grid,
                              double res, double width, double depth,
                              Py_ssize_t rows, Py_ssize_t cols,
                              double* gx_out, double* gy_out) nogil:
    cdef double cx, cy, dx, dy, dist
    cdef double gx, gy, fx, fy, v00, v01, v10, v11, vx0, vx1
    cdef Py_ssize_t i, j, i1, j1
    if x < 0.0 or x > width or y < 0.0 or y > depth:
        cx = x
        if cx < 0.0:
            cx = 0.0
        elif cx > width:
            cx = width
        cy = y
        if cy < 0.0:
            cy = 0.0
        elif cy > depth:
            cy = depth
        dx = cx - x
        dy = cy - y
        dist = sqrt(dx * dx + dy * dy)
        gx_out[0] = dx / dist
        gy_out[0] = dy / dist
        return -dist
    gx = x / res - 0.5
    gy = y / res - 0.5
    j = <Py_ssize_t>floor(gx)
    i = <Py_ssize_t>floor(gy)
    if j < 0:
        j = 0
    elif j > cols - 2 and cols >= 2:
        j = cols - 2
    elif cols < 2:
        j = 0
    if i < 0:
        i = 0
    elif i > rows - 2 and rows >= 2:
        i = rows - 2
    elif rows < 2:
        i = 0
    fx = gx - j
    if fx < 0.0:
        fx = 0.0
    elif fx > 1.0:
        fx = 1.0
    fy = gy - i
    if fy < 0.0:
        fy = 0.0
    elif fy > 1.0:
        fy = 1.0
    j1 = j + 1
    if j1 > cols - 1:
        j1 = cols - 1
    i1 = i + 1
    if i1 > rows - 1:
        i1 = rows - 1
    v00 = grid[i, j]
    v01 = grid[i, j1]
    v10 = grid[i1, j]
    v11 = grid[i1, j1]
    vx0 = v00 + (v01 - v00) * fx
    vx1 = v10 + (v11 - v10) * fx
    gx_out[0] = ((v01 - v00) * (1.0 - fy) + (v11 - v10) * fy) / res
    gy_out[0] = (vx1 - vx0) / res
    return vx0 + (vx1 - vx0) * fy


def sdf_sample(double[:, ::1] points not None, double[:, ::1] grid not None,
               double res, double width, double depth):
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t rows = grid.shape[0]
    cdef Py_ssize_t cols = grid.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vals = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] grads = np.zeros((n, 2), dtype=np.float64)
    cdef double[::1] vals_v = vals
    cdef double[:, ::1] grads_v = grads
    cdef Py_ssize_t i
    cdef double gx, gy
    for i in range(n):
        vals_v[i] = _sdf_point(points[i, 0], points[i, 1], grid, res,
                               width, depth, rows, cols, &gx, &gy)
        grads_v[i, 0] = gx
        grads_v[i, 1] = gy
    return vals, grads


def planner_objective_grad(double[:, ::1] pts not None, double[::1] goal not None,
                           double[:, ::1] esps not None, double lam, double d2,
                           double[:, ::1] grid not None, double res,
                           double width, double depth,
                           double clearance, double w_obs):
    cdef Py_ssize_t T = pts.shape[0]
    cdef Py_ssize_t L = esps.shape[0]
    cdef Py_ssize_t rows = grid.shape[0]
    cdef Py_ssize_t cols = grid.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] grad = np.zeros((T, 2), dtype=np.float64)
    cdef double[:, ::1] grad_v = grad
    cdef double obj = 0.0, penalty = 0.0
    cdef double gx = goal[0], gy = goal[1]
    cdef double d2sq = d2 * d2
    cdef Py_ssize_t t, k, best_k
    cdef double px, py, dxg, dyg, ex, ey, sq, best_sq
    cdef double sval, hinge, sgx, sgy, a
    for t in range(1, T):
        px = pts[t, 0]
        py = pts[t, 1]
        dxg = px - gx
        dyg = py - gy
        obj += lam * (dxg * dxg + dyg * dyg)
        grad_v[t, 0] += 2.0 * lam * dxg
        grad_v[t, 1] += 2.0 * lam * dyg
        if L > 0:
            best_sq = -1.0
            best_k = 0
            for k in range(L):
                ex = px - esps[k, 0]
                ey = py - esps[k, 1]
                sq = ex * ex + ey * ey
                if best_sq < 0.0 or sq < best_sq:
                    best_sq = sq
                    best_k = k
            if best_sq > d2sq:
                obj += d2sq
            else:
                obj += best_sq
                grad_v[t, 0] += 2.0 * (px - esps[best_k, 0])
                grad_v[t, 1] += 2.0 * (py - esps[best_k, 1])
    for t in range(T):
        sval = _sdf_point(pts[t, 0], pts[t, 1], grid, res, width, depth,
                          rows, cols, &sgx, &sgy)
        hinge = clearance - sval
        if hinge > 0.0:
            penalty += hinge * hinge
            grad_v[t, 0] -= 2.0 * w_obs * hinge * sgx
            grad_v[t, 1] -= 2.0 * w_obs * hinge * sgy
    # interior segment samples keep a full-speed step from hopping a wall
    for t in range(T - 1):
        for k in range(3):
            a = 0.25 * (k + 1)
            px = pts[t, 0] + a * (pts[t + 1, 0] - pts[t, 0])
            py = pts[t, 1] + a * (pts[t + 1, 1] - pts[t, 1])
            sval = _sdf_point(px, py, grid, res, width, depth,
                              rows, cols, &sgx, &sgy)
            hinge = clearance - sval
            if hinge > 0.0:
                penalty += hinge * hinge
                grad_v[t, 0] -= 2.0 * w_obs * hinge * sgx * (1.0 - a)
                grad_v[t, 1] -= 2.0 * w_obs * hinge * sgy * (1.0 - a)
                grad_v[t + 1, 0] -= 2.0 * w_obs * hinge * sgx * a
                grad_v[t + 1, 1] -= 2.0 * w_obs * hinge * sgy * a
    grad_v[0, 0] = 0.0
    grad_v[0, 1] = 0.0
    grad_v[T - 1, 0] = 0.0
    grad_v[T - 1, 1] = 0.0
    return obj, penalty, grad
