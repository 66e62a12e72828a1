# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled numerical kernels.

Same signatures and arithmetic as ``_kernels_py``; that module is the
readable reference.
"""

from libc.math cimport cos, cosh, sin, sqrt

import numpy as np


cdef double _SQRT2 = sqrt(2.0)


cdef inline double _drive(int mode, double p0, double p1, double p2, double t) noexcept nogil:
    if mode == 0:
        return p0
    return p0 / cosh((t - p2) / p1)


def rk4_schrodinger3(double omega_b, int mode, double p0, double p1, double p2,
                     double t0, double h, int n_steps, y0):
    out = np.empty((n_steps + 1, 3), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double complex c0 = y0[0], c1 = y0[1], c2 = y0[2]
    cdef double complex ga, gm, gb
    cdef double complex k1_0, k1_1, k1_2, k2_0, k2_1, k2_2
    cdef double complex k3_0, k3_1, k3_2, k4_0, k4_1, k4_2
    cdef double complex y0_, y1_, y2_
    cdef double complex iwb = 2j * omega_b
    cdef double t
    cdef Py_ssize_t i
    o[0, 0] = c0
    o[0, 1] = c1
    o[0, 2] = c2
    with nogil:
        for i in range(n_steps):
            t = t0 + i * h
            ga = 0.5j * _drive(mode, p0, p1, p2, t)
            gm = 0.5j * _drive(mode, p0, p1, p2, t + 0.5 * h)
            gb = 0.5j * _drive(mode, p0, p1, p2, t + h)

            k1_0 = ga * c1
            k1_1 = ga * (c0 + c2) + iwb * c1
            k1_2 = ga * c1

            y0_ = c0 + 0.5 * h * k1_0
            y1_ = c1 + 0.5 * h * k1_1
            y2_ = c2 + 0.5 * h * k1_2
            k2_0 = gm * y1_
            k2_1 = gm * (y0_ + y2_) + iwb * y1_
            k2_2 = gm * y1_

            y0_ = c0 + 0.5 * h * k2_0
            y1_ = c1 + 0.5 * h * k2_1
            y2_ = c2 + 0.5 * h * k2_2
            k3_0 = gm * y1_
            k3_1 = gm * (y0_ + y2_) + iwb * y1_
            k3_2 = gm * y1_

            y0_ = c0 + h * k3_0
            y1_ = c1 + h * k3_1
            y2_ = c2 + h * k3_2
            k4_0 = gb * y1_
            k4_1 = gb * (y0_ + y2_) + iwb * y1_
            k4_2 = gb * y1_

            c0 = c0 + h / 6.0 * (k1_0 + 2.0 * k2_0 + 2.0 * k3_0 + k4_0)
            c1 = c1 + h / 6.0 * (k1_1 + 2.0 * k2_1 + 2.0 * k3_1 + k4_1)
            c2 = c2 + h / 6.0 * (k1_2 + 2.0 * k2_2 + 2.0 * k3_2 + k4_2)
            o[i + 1, 0] = c0
            o[i + 1, 1] = c1
            o[i + 1, 2] = c2
    return out


def rk4_schrodinger2(double omega_b, int mode, double p0, double p1, double p2,
                     double t0, double h, int n_steps, y0):
    out = np.empty((n_steps + 1, 2), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double complex a = y0[0], b = y0[1]
    cdef double complex ga, gm, gb
    cdef double complex k1_a, k1_b, k2_a, k2_b, k3_a, k3_b, k4_a, k4_b
    cdef double complex a_, b_
    cdef double complex iwb = 2j * omega_b
    cdef double t
    cdef Py_ssize_t i
    o[0, 0] = a
    o[0, 1] = b
    with nogil:
        for i in range(n_steps):
            t = t0 + i * h
            ga = 1j * _drive(mode, p0, p1, p2, t) / _SQRT2
            gm = 1j * _drive(mode, p0, p1, p2, t + 0.5 * h) / _SQRT2
            gb = 1j * _drive(mode, p0, p1, p2, t + h) / _SQRT2

            k1_a = ga * b
            k1_b = ga * a + iwb * b

            a_ = a + 0.5 * h * k1_a
            b_ = b + 0.5 * h * k1_b
            k2_a = gm * b_
            k2_b = gm * a_ + iwb * b_

            a_ = a + 0.5 * h * k2_a
            b_ = b + 0.5 * h * k2_b
            k3_a = gm * b_
            k3_b = gm * a_ + iwb * b_

            a_ = a + h * k3_a
            b_ = b + h * k3_b
            k4_a = gb * b_
            k4_b = gb * a_ + iwb * b_

            a = a + h / 6.0 * (k1_a + 2.0 * k2_a + 2.0 * k3_a + k4_a)
            b = b + h / 6.0 * (k1_b + 2.0 * k2_b + 2.0 * k3_b + k4_b)
            o[i + 1, 0] = a
            o[i + 1, 1] = b
    return out


cdef inline void _density_rhs(double omega_b, double g11, double g22,
                              double gd01, double gd02, double gd12,
                              double om, double complex* s,
                              double complex* d) noexcept nogil:
    cdef double complex half = 0.5j * om
    cdef double complex i2wb = 2j * omega_b
    d[0] = g11 * s[1] + half * (s[3].conjugate() - s[3])
    d[2] = -g22 * s[2] + half * (s[5] - s[5].conjugate())
    d[3] = -(i2wb + gd01) * s[3] + half * (s[1] - s[0]) - half * s[4]
    d[4] = -gd02 * s[4] + half * (s[5] - s[3])
    d[5] = (i2wb - gd12) * s[5] + half * (s[2] - s[1]) + half * s[4]
    # exciton population closed by trace conservation (cascade decay)
    d[1] = -d[0] - d[2]


def rk4_density(double omega_b, double g11, double g22, double gd01,
                double gd02, double gd12, int mode, double p0, double p1,
                double p2, double t0, double h, int n_steps, y0):
    out = np.empty((n_steps + 1, 6), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double complex s[6]
    cdef double complex s_[6]
    cdef double complex k1[6]
    cdef double complex k2[6]
    cdef double complex k3[6]
    cdef double complex k4[6]
    cdef double om_a, om_m, om_b, t
    cdef Py_ssize_t i, j
    for j in range(6):
        s[j] = y0[j]
        o[0, j] = s[j]
    with nogil:
        for i in range(n_steps):
            t = t0 + i * h
            om_a = _drive(mode, p0, p1, p2, t)
            om_m = _drive(mode, p0, p1, p2, t + 0.5 * h)
            om_b = _drive(mode, p0, p1, p2, t + h)

            _density_rhs(omega_b, g11, g22, gd01, gd02, gd12, om_a, s, k1)
            for j in range(6):
                s_[j] = s[j] + 0.5 * h * k1[j]
            _density_rhs(omega_b, g11, g22, gd01, gd02, gd12, om_m, s_, k2)
            for j in range(6):
                s_[j] = s[j] + 0.5 * h * k2[j]
            _density_rhs(omega_b, g11, g22, gd01, gd02, gd12, om_m, s_, k3)
            for j in range(6):
                s_[j] = s[j] + h * k3[j]
            _density_rhs(omega_b, g11, g22, gd01, gd02, gd12, om_b, s_, k4)

            for j in range(6):
                s[j] = s[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
                o[i + 1, j] = s[j]
    return out


def chain_objective_gradient(double omega_b, double delta, values):
    cdef double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    buf = np.empty((10, n + 1), dtype=np.complex128)
    cdef double complex[:, ::1] w = buf
    # rows: 0 a, 1 b, 2 d, 3 da, 4 db, 5 dd, 6 colx, 7 coly, 8 rowx, 9 rowy
    grad = np.empty(n, dtype=np.float64)
    cdef double[::1] g = grad
    cdef double om, wfreq, nx, nz, th, c, s, dth, dnx, dnz, dc, ds, pe
    cdef double complex ph, gg, gm1, w_c, du00
    cdef Py_ssize_t k
    with nogil:
        for k in range(n):
            om = v[k]
            wfreq = sqrt(omega_b * omega_b + 0.5 * om * om)
            nx = -om / (_SQRT2 * wfreq)
            nz = omega_b / wfreq
            th = wfreq * delta
            c = cos(th)
            s = sin(th)
            w[0, k] = c - 1j * nz * s
            w[1, k] = -1j * nx * s
            w[2, k] = c + 1j * nz * s
            dth = delta * om / (2.0 * wfreq)
            dnx = -omega_b * omega_b / (_SQRT2 * wfreq * wfreq * wfreq)
            dnz = -omega_b * om / (2.0 * wfreq * wfreq * wfreq)
            dc = -s * dth
            ds = c * dth
            w[3, k] = dc - 1j * (dnz * s + nz * ds)
            w[4, k] = -1j * (dnx * s + nx * ds)
            w[5, k] = dc + 1j * (dnz * s + nz * ds)

        w[6, 0] = 1.0
        w[7, 0] = 0.0
        for k in range(n):
            w[6, k + 1] = w[0, k] * w[6, k] + w[1, k] * w[7, k]
            w[7, k + 1] = w[1, k] * w[6, k] + w[2, k] * w[7, k]

        if n > 0:
            w[8, n - 1] = 1.0
            w[9, n - 1] = 0.0
            for k in range(n - 2, -1, -1):
                w[8, k] = w[8, k + 1] * w[0, k + 1] + w[9, k + 1] * w[1, k + 1]
                w[9, k] = w[8, k + 1] * w[1, k + 1] + w[9, k + 1] * w[2, k + 1]

        ph = cos(omega_b * delta * n) + 1j * sin(omega_b * delta * n)
        gg = ph * w[6, n]
        gm1 = gg - 1.0
        pe = 1.0 - (gm1.real * gm1.real + gm1.imag * gm1.imag) / 4.0

        w_c = gm1.conjugate() * ph
        for k in range(n):
            du00 = (w[8, k] * w[3, k] + w[9, k] * w[4, k]) * w[6, k] + (
                w[8, k] * w[4, k] + w[9, k] * w[5, k]
            ) * w[7, k]
            g[k] = -0.5 * (w_c * du00).real
    return pe, grad
