"""Both kernel backends must agree with each other and with plain loops."""
import numpy as np
import pytest

from triplexp import kernels
from triplexp.modular import PrimeContext, root_table

from conftest import brute_energy


def test_backend_selected():
    assert kernels.BACKEND in kernels.available()
    assert "numpy" in kernels.available()
    with pytest.raises(ValueError):
        kernels.load("fortran")


@pytest.mark.parametrize("p, g, K", [(7, 2, 3), (13, 2, 4), (101, 3, 17), (97, 5, 30)])
def test_energy_kernels(backend, p, g, K):
    res = np.array([pow(g, x, p) for x in range(1, K + 1)], dtype=np.int64)
    expected = brute_energy(p, g, range(1, K + 1)) if K <= 17 else None
    naive, fast = backend.energy_naive(res, p), backend.energy_fast(res, p)
    assert naive == fast
    if expected is not None:
        assert naive == expected


def test_bilinear(backend):
    rng = np.random.default_rng(3)
    p = 101
    rows = rng.integers(0, p, 40).astype(np.int64)
    cols = rng.integers(0, p, 25).astype(np.int64)
    c = rng.standard_normal(25) + 1j * rng.standard_normal(25)
    ep = root_table(p)
    out = backend.bilinear(rows, cols, c, ep)
    ref = [sum(c[j] * ep[(rows[i] * cols[j]) % p] for j in range(25)) for i in range(40)]
    assert np.allclose(out, ref, rtol=0, atol=1e-12)
    assert len(backend.bilinear(rows, cols[:0], c[:0], ep)) == 40


def test_triple_direct(backend):
    p, ctx = 31, PrimeContext.create(31, 3)
    rng = np.random.default_rng(5)
    alpha = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    m_res = rng.integers(0, p, 7).astype(np.int64)
    xs = np.arange(1, 9, dtype=np.int64)
    gx = np.ascontiguousarray(ctx.powers()[1:9])
    n_res = rng.integers(0, ctx.T, 5).astype(np.int64)
    ep, eT = root_table(p), root_table(ctx.T)
    ref = sum(alpha[i] * ep[(m_res[i] * gx[j]) % p] * eT[(n_res[k] * xs[j]) % ctx.T]
              for i in range(7) for j in range(8) for k in range(5))
    assert abs(backend.triple_direct(alpha, m_res, gx, xs, n_res, ep, eT) - ref) < 1e-12


def test_backends_agree_on_large_inputs():
    names = kernels.available()
    if len(names) < 2:
        pytest.skip("compiled backend not built")
    c, n = (kernels.load(x) for x in names)
    p = 1009
    res = np.array([pow(11, x, p) for x in range(1, 61)], dtype=np.int64)
    assert c.energy_naive(res, p) == n.energy_naive(res, p)
    assert c.energy_fast(res, p) == n.energy_fast(res, p)


def test_falls_back_when_extension_missing():
    import os
    import subprocess
    import sys
    code = ("import sys; sys.modules['triplexp._ckernels'] = None; "
            "import triplexp; print(triplexp.BACKEND)")
    env = {k: v for k, v in os.environ.items() if k != "TRIPLEXP_BACKEND"}
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env=env, check=True)
    assert out.stdout.strip() == "numpy"
