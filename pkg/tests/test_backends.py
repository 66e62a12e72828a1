"""Compiled and pure-Python kernels must agree to machine precision."""

import subprocess
import sys

import numpy as np
import pytest

from qdpulse._backend import BACKEND, load_backend

try:
    compiled = load_backend("compiled")
    HAVE_COMPILED = True
except ImportError:
    compiled = None
    HAVE_COMPILED = False

pure = load_backend("pure")

needs_compiled = pytest.mark.skipif(
    not HAVE_COMPILED, reason="compiled kernels not built"
)


def test_active_backend_is_known():
    assert BACKEND in ("compiled", "pure")


@needs_compiled
def test_rk4_three_level_agree():
    y0 = np.array([1.0, 0.0, 0.0], dtype=complex)
    args = (1.0, 1, 3.266, 0.866, 0.0, -5.0, 1e-3, 10_000, y0)
    np.testing.assert_allclose(
        compiled.rk4_schrodinger3(*args), pure.rk4_schrodinger3(*args), atol=1e-13
    )


@needs_compiled
def test_rk4_two_level_agree():
    y0 = np.array([2.0 ** -0.5, 0.0], dtype=complex)
    args = (1.0, 0, 3.266, 0.0, 0.0, 0.0, 1e-3, 2756, y0)
    np.testing.assert_allclose(
        compiled.rk4_schrodinger2(*args), pure.rk4_schrodinger2(*args), atol=1e-13
    )


@needs_compiled
def test_rk4_density_agree():
    y0 = np.array([1.0, 0, 0, 0, 0, 0], dtype=complex)
    args = (1.0, 2e-4, 2e-4, 1.4e-3, 1.4e-3, 1.4e-3,
            0, 3.266, 0.0, 0.0, 0.0, 1e-3, 2756, y0)
    np.testing.assert_allclose(
        compiled.rk4_density(*args), pure.rk4_density(*args), atol=1e-13
    )


@needs_compiled
def test_chain_objective_gradient_agree():
    rng = np.random.default_rng(4)
    for n in (2, 37, 200):
        vals = rng.uniform(0.0, 3.266, n)
        pe_c, g_c = compiled.chain_objective_gradient(1.0, 2.7 / n, vals)
        pe_p, g_p = pure.chain_objective_gradient(1.0, 2.7 / n, vals)
        assert abs(pe_c - pe_p) < 1e-14
        np.testing.assert_allclose(g_c, g_p, atol=1e-14)


@pytest.mark.parametrize("backend", ["pure"] + (["compiled"] if HAVE_COMPILED else []))
def test_env_var_selection(backend):
    code = (
        "import qdpulse; print(qdpulse.BACKEND)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True, text=True, check=True,
        env={"QDPULSE_BACKEND": backend, "PATH": "/usr/bin:/bin"},
    )
    assert out.stdout.strip() == backend
