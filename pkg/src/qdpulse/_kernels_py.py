"""Pure-Python numerical kernels.

Reference implementation of the hot loops; the compiled extension in
``_kernels.pyx`` mirrors these signatures and arithmetic exactly.  Written
with scalar complex locals (faster in CPython than small numpy arrays and
trivially portable to C).

Drive modes: ``mode == 0`` is constant at ``p0``; ``mode == 1`` is
``p0 / cosh((t - p2) / p1)``.
"""

import math

import numpy as np

_SQRT2 = math.sqrt(2.0)


def _drive(mode, p0, p1, p2, t):
    if mode == 0:
        return p0
    return p0 / math.cosh((t - p2) / p1)


def rk4_schrodinger3(omega_b, mode, p0, p1, p2, t0, h, n_steps, y0):
    """Fixed-step RK4 for the rotating-frame three-level amplitudes.

    Returns an ``(n_steps + 1, 3)`` complex array including the initial
    state.
    """
    out = np.empty((n_steps + 1, 3), dtype=np.complex128)
    c0 = complex(y0[0])
    c1 = complex(y0[1])
    c2 = complex(y0[2])
    out[0, 0], out[0, 1], out[0, 2] = c0, c1, c2
    two_wb = 2.0 * omega_b
    for i in range(n_steps):
        t = t0 + i * h
        ga = 0.5j * _drive(mode, p0, p1, p2, t)
        gm = 0.5j * _drive(mode, p0, p1, p2, t + 0.5 * h)
        gb = 0.5j * _drive(mode, p0, p1, p2, t + h)

        k1_0 = ga * c1
        k1_1 = ga * (c0 + c2) + 1j * two_wb * c1
        k1_2 = ga * c1

        y0_ = c0 + 0.5 * h * k1_0
        y1_ = c1 + 0.5 * h * k1_1
        y2_ = c2 + 0.5 * h * k1_2
        k2_0 = gm * y1_
        k2_1 = gm * (y0_ + y2_) + 1j * two_wb * y1_
        k2_2 = gm * y1_

        y0_ = c0 + 0.5 * h * k2_0
        y1_ = c1 + 0.5 * h * k2_1
        y2_ = c2 + 0.5 * h * k2_2
        k3_0 = gm * y1_
        k3_1 = gm * (y0_ + y2_) + 1j * two_wb * y1_
        k3_2 = gm * y1_

        y0_ = c0 + h * k3_0
        y1_ = c1 + h * k3_1
        y2_ = c2 + h * k3_2
        k4_0 = gb * y1_
        k4_1 = gb * (y0_ + y2_) + 1j * two_wb * y1_
        k4_2 = gb * y1_

        c0 += h / 6.0 * (k1_0 + 2.0 * k2_0 + 2.0 * k3_0 + k4_0)
        c1 += h / 6.0 * (k1_1 + 2.0 * k2_1 + 2.0 * k3_1 + k4_1)
        c2 += h / 6.0 * (k1_2 + 2.0 * k2_2 + 2.0 * k3_2 + k4_2)
        out[i + 1, 0], out[i + 1, 1], out[i + 1, 2] = c0, c1, c2
    return out


def rk4_schrodinger2(omega_b, mode, p0, p1, p2, t0, h, n_steps, y0):
    """Fixed-step RK4 for the reduced (bright, exciton) pair.

    Integrates the physical two-level system including the ``-2 omega_b``
    exciton entry (no scalar phase split off).
    """
    out = np.empty((n_steps + 1, 2), dtype=np.complex128)
    a = complex(y0[0])
    b = complex(y0[1])
    out[0, 0], out[0, 1] = a, b
    two_wb = 2.0 * omega_b
    for i in range(n_steps):
        t = t0 + i * h
        ga = 1j * _drive(mode, p0, p1, p2, t) / _SQRT2
        gm = 1j * _drive(mode, p0, p1, p2, t + 0.5 * h) / _SQRT2
        gb = 1j * _drive(mode, p0, p1, p2, t + h) / _SQRT2

        k1_a = ga * b
        k1_b = ga * a + 1j * two_wb * b

        a_ = a + 0.5 * h * k1_a
        b_ = b + 0.5 * h * k1_b
        k2_a = gm * b_
        k2_b = gm * a_ + 1j * two_wb * b_

        a_ = a + 0.5 * h * k2_a
        b_ = b + 0.5 * h * k2_b
        k3_a = gm * b_
        k3_b = gm * a_ + 1j * two_wb * b_

        a_ = a + h * k3_a
        b_ = b + h * k3_b
        k4_a = gb * b_
        k4_b = gb * a_ + 1j * two_wb * b_

        a += h / 6.0 * (k1_a + 2.0 * k2_a + 2.0 * k3_a + k4_a)
        b += h / 6.0 * (k1_b + 2.0 * k2_b + 2.0 * k3_b + k4_b)
        out[i + 1, 0], out[i + 1, 1] = a, b
    return out


def _density_rhs(omega_b, g11, g22, gd01, gd02, gd12, om, s):
    s00, s11, s22, s01, s02, s12 = s
    half = 0.5j * om
    d00 = g11 * s11 + half * (s01.conjugate() - s01)
    d22 = -g22 * s22 + half * (s12 - s12.conjugate())
    d01 = -(2j * omega_b + gd01) * s01 + half * (s11 - s00) - half * s02
    d02 = -gd02 * s02 + half * (s12 - s01)
    d12 = (2j * omega_b - gd12) * s12 + half * (s22 - s11) + half * s02
    # exciton population closed by trace conservation (cascade decay)
    d11 = -d00 - d22
    return (d00, d11, d22, d01, d02, d12)


def rk4_density(omega_b, g11, g22, gd01, gd02, gd12, mode, p0, p1, p2,
                t0, h, n_steps, y0):
    """Fixed-step RK4 for the density-matrix envelopes.

    State layout: ``(s00, s11, s22, s01, s02, s12)`` complex; populations
    stay real by construction.  Returns ``(n_steps + 1, 6)``.
    """
    out = np.empty((n_steps + 1, 6), dtype=np.complex128)
    s = tuple(complex(v) for v in y0)
    out[0] = s
    for i in range(n_steps):
        t = t0 + i * h
        om_a = _drive(mode, p0, p1, p2, t)
        om_m = _drive(mode, p0, p1, p2, t + 0.5 * h)
        om_b = _drive(mode, p0, p1, p2, t + h)

        k1 = _density_rhs(omega_b, g11, g22, gd01, gd02, gd12, om_a, s)
        s1 = tuple(v + 0.5 * h * k for v, k in zip(s, k1))
        k2 = _density_rhs(omega_b, g11, g22, gd01, gd02, gd12, om_m, s1)
        s2 = tuple(v + 0.5 * h * k for v, k in zip(s, k2))
        k3 = _density_rhs(omega_b, g11, g22, gd01, gd02, gd12, om_m, s2)
        s3 = tuple(v + h * k for v, k in zip(s, k3))
        k4 = _density_rhs(omega_b, g11, g22, gd01, gd02, gd12, om_b, s3)

        s = tuple(
            v + h / 6.0 * (a + 2.0 * b + 2.0 * c + d)
            for v, a, b, c, d in zip(s, k1, k2, k3, k4)
        )
        out[i + 1] = s
    return out


def chain_objective_gradient(omega_b, delta, values):
    """Final error and its gradient for a piecewise-constant control grid.

    ``values`` are the slice amplitudes, each held for ``delta``.  The
    error is ``1 - |exp(i omega_b T) U00 - 1|^2 / 4`` with ``U`` the
    product of exact per-slice propagators; the gradient differentiates
    each slice propagator in closed form and contracts it between prefix
    and suffix products, so one call costs O(n).

    Returns ``(pe, grad)`` with ``grad`` a float array of length ``n``.
    """
    n = len(values)
    a = [0j] * n
    b = [0j] * n
    d = [0j] * n
    da = [0j] * n
    db = [0j] * n
    dd = [0j] * n
    for k in range(n):
        om = values[k]
        w = math.sqrt(omega_b * omega_b + 0.5 * om * om)
        nx = -om / (_SQRT2 * w)
        nz = omega_b / w
        th = w * delta
        c = math.cos(th)
        s = math.sin(th)
        a[k] = c - 1j * nz * s
        b[k] = -1j * nx * s
        d[k] = c + 1j * nz * s
        dth = delta * om / (2.0 * w)
        dnx = -omega_b * omega_b / (_SQRT2 * w * w * w)
        dnz = -omega_b * om / (2.0 * w * w * w)
        dc = -s * dth
        ds = c * dth
        da[k] = dc - 1j * (dnz * s + nz * ds)
        db[k] = -1j * (dnx * s + nx * ds)
        dd[k] = dc + 1j * (dnz * s + nz * ds)

    # first column of the prefix products U_{k-1}...U_0
    colx = [0j] * (n + 1)
    coly = [0j] * (n + 1)
    colx[0] = 1.0 + 0j
    for k in range(n):
        colx[k + 1] = a[k] * colx[k] + b[k] * coly[k]
        coly[k + 1] = b[k] * colx[k] + d[k] * coly[k]

    # first row of the suffix products U_{n-1}...U_{k+1}
    rowx = [0j] * n
    rowy = [0j] * n
    if n > 0:
        rowx[n - 1] = 1.0 + 0j
        for k in range(n - 2, -1, -1):
            rowx[k] = rowx[k + 1] * a[k + 1] + rowy[k + 1] * b[k + 1]
            rowy[k] = rowx[k + 1] * b[k + 1] + rowy[k + 1] * d[k + 1]

    ph = complex(math.cos(omega_b * delta * n), math.sin(omega_b * delta * n))
    g = ph * colx[n]
    gm1 = g - 1.0
    pe = 1.0 - (gm1.real * gm1.real + gm1.imag * gm1.imag) / 4.0

    grad = np.empty(n, dtype=np.float64)
    w_c = gm1.conjugate() * ph
    for k in range(n):
        du00 = (rowx[k] * da[k] + rowy[k] * db[k]) * colx[k] + (
            rowx[k] * db[k] + rowy[k] * dd[k]
        ) * coly[k]
        grad[k] = -0.5 * (w_c * du00).real
    return pe, grad
