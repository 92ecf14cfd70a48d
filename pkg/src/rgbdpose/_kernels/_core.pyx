# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled per-pixel kernels; semantics mirror _numpy_ref exactly."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, floor, fmod, log

cnp.import_array()

BACKEND_NAME = "native"

cdef double _BEHIND_EPS = 1e-9
cdef double _PARALLEL_EPS = 1e-12


cdef inline double _reflect(double x, double n) nogil:
    cdef double period, m
    if n <= 0.0:
        return 0.0
    period = 2.0 * n
    m = fmod(fabs(x), period)
    if m > n:
        m = period - m
    return m


cdef inline Py_ssize_t _clampi(Py_ssize_t x, Py_ssize_t lo, Py_ssize_t hi) nogil:
    if x < lo:
        return lo
    if x > hi:
        return hi
    return x


def warp_rotation_rgbd(double[:, :, ::1] rgb, double[:, ::1] depth,
                       cnp.uint8_t[:, ::1] valid, double[:, ::1] rot_to_src,
                       double fx, double fy, double cx, double cy):
    cdef Py_ssize_t height = depth.shape[0]
    cdef Py_ssize_t width = depth.shape[1]
    rgb_out_arr = np.zeros((height, width, 3), dtype=np.float64)
    depth_out_arr = np.zeros((height, width), dtype=np.float64)
    valid_out_arr = np.zeros((height, width), dtype=np.uint8)
    cdef double[:, :, ::1] rgb_out = rgb_out_arr
    cdef double[:, ::1] depth_out = depth_out_arr
    cdef cnp.uint8_t[:, ::1] valid_out = valid_out_arr

    cdef double m00 = rot_to_src[0, 0], m01 = rot_to_src[0, 1], m02 = rot_to_src[0, 2]
    cdef double m10 = rot_to_src[1, 0], m11 = rot_to_src[1, 1], m12 = rot_to_src[1, 2]
    cdef double m20 = rot_to_src[2, 0], m21 = rot_to_src[2, 1], m22 = rot_to_src[2, 2]

    cdef Py_ssize_t i, j, c, i0, i1, j0, j1
    cdef double a, b, sx, sy, sz, u, v, w, ur, vr, uc, vc
    cdef double fu, fv, w00, w01, w10, w11

    with nogil:
        for i in range(height):
            b = (i - cy) / fy
            for j in range(width):
                a = (j - cx) / fx
                sx = m00 * a + m01 * b + m02
                sy = m10 * a + m11 * b + m12
                sz = m20 * a + m21 * b + m22
                if sz <= _BEHIND_EPS:
                    continue
                u = fx * (sx / sz) + cx
                v = fy * (sy / sz) + cy
                w = 1.0 / sz

                ur = _reflect(u, width - 1.0)
                vr = _reflect(v, height - 1.0)
                j0 = _clampi(<Py_ssize_t>floor(ur), 0, width - 2 if width > 1 else 0)
                i0 = _clampi(<Py_ssize_t>floor(vr), 0, height - 2 if height > 1 else 0)
                j1 = j0 + 1 if j0 + 1 < width else width - 1
                i1 = i0 + 1 if i0 + 1 < height else height - 1
                fu = ur - j0
                fv = vr - i0
                w00 = (1.0 - fv) * (1.0 - fu)
                w01 = (1.0 - fv) * fu
                w10 = fv * (1.0 - fu)
                w11 = fv * fu
                for c in range(3):
                    rgb_out[i, j, c] = (w00 * rgb[i0, j0, c] + w01 * rgb[i0, j1, c]
                                        + w10 * rgb[i1, j0, c] + w11 * rgb[i1, j1, c])

                if u < 0.0 or u > width - 1.0 or v < 0.0 or v > height - 1.0:
                    continue
                uc = u if u > 0.0 else 0.0
                if uc > width - 1.0:
                    uc = width - 1.0
                vc = v if v > 0.0 else 0.0
                if vc > height - 1.0:
                    vc = height - 1.0
                j0 = _clampi(<Py_ssize_t>floor(uc), 0, width - 2 if width > 1 else 0)
                i0 = _clampi(<Py_ssize_t>floor(vc), 0, height - 2 if height > 1 else 0)
                j1 = j0 + 1 if j0 + 1 < width else width - 1
                i1 = i0 + 1 if i0 + 1 < height else height - 1
                if not (valid[i0, j0] and valid[i0, j1] and valid[i1, j0] and valid[i1, j1]):
                    continue
                fu = uc - j0
                fv = vc - i0
                w00 = (1.0 - fv) * (1.0 - fu)
                w01 = (1.0 - fv) * fu
                w10 = fv * (1.0 - fu)
                w11 = fv * fu
                depth_out[i, j] = (w00 * depth[i0, j0] + w01 * depth[i0, j1]
                                   + w10 * depth[i1, j0] + w11 * depth[i1, j1]) * w
                valid_out[i, j] = 1
    return rgb_out_arr, depth_out_arr, valid_out_arr


def plane_depth(double r20, double r21, double r22, double height_m, double ceiling,
                double fx, double fy, double cx, double cy, Py_ssize_t out_h, Py_ssize_t out_w):
    out_arr = np.empty((out_h, out_w), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double a, b, dz
    cdef double inf = float("inf")
    with nogil:
        for i in range(out_h):
            b = (i - cy) / fy
            for j in range(out_w):
                a = (j - cx) / fx
                dz = r20 * a + r21 * b + r22
                if fabs(dz) < _PARALLEL_EPS:
                    out[i, j] = inf
                elif dz < 0.0:
                    out[i, j] = -height_m / dz
                else:
                    out[i, j] = (ceiling - height_m) / dz
    return out_arr


def metric_sums(double[::1] pred, double[::1] gt, cnp.uint8_t[::1] eligible,
                double thr1, double thr2):
    cdef Py_ssize_t k, n = 0
    cdef double p, g, diff, lg, ratio
    cdef double s_abs = 0.0, s_sq = 0.0, s_log2 = 0.0
    cdef Py_ssize_t n1 = 0, n2 = 0
    with nogil:
        for k in range(pred.shape[0]):
            if not eligible[k]:
                continue
            p = pred[k]
            g = gt[k]
            n += 1
            diff = p - g
            s_abs += fabs(diff / g)
            s_sq += diff * diff / g
            lg = log(p) - log(g)
            s_log2 += lg * lg
            ratio = p / g if p > g else g / p
            if ratio < thr1:
                n1 += 1
            if ratio < thr2:
                n2 += 1
    return n, s_abs, s_sq, s_log2, n1, n2
