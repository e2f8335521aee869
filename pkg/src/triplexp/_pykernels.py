"""NumPy implementations of the counting and summation kernels.

Used when the compiled ``_ckernels`` extension is unavailable, and as the
reference side of the backend benchmark.  Signatures match ``_ckernels.pyx``
exactly; callers pass int64 residue arrays and complex128 root tables.
"""
import numpy as np

NAME = "numpy"

_CHUNK = 1 << 20


def energy_naive(res, p):
    """Quadruple count by triple loop plus membership lookup of the fourth residue."""
    res = np.asarray(res, dtype=np.int64)
    member = np.zeros(p, dtype=np.int64)
    member[res] = 1
    k = len(res)
    total = 0
    pair = (res[:, None] + res[None, :]) % p
    for x3 in range(k):
        total += int(member[(pair - res[x3]) % p].sum())
    return total


def energy_fast(res, p):
    """Sum of squared representation counts of pairwise sums."""
    res = np.asarray(res, dtype=np.int64)
    r = np.zeros(p, dtype=np.int64)
    step = max(1, _CHUNK // max(1, len(res)))
    for s in range(0, len(res), step):
        sums = (res[s:s + step, None] + res[None, :]) % p
        r += np.bincount(sums.ravel(), minlength=p)
    return int(np.dot(r, r))


def triple_direct(alpha, m_res, gx, xs, n_res, ep, eT):
    alpha = np.asarray(alpha, dtype=np.complex128)
    m_res = np.asarray(m_res, dtype=np.int64)
    n_res = np.asarray(n_res, dtype=np.int64)
    p, T = len(ep), len(eT)
    rows = max(1, _CHUNK // max(1, len(n_res)))
    total = 0j
    for j in range(len(xs)):
        b = eT[(n_res * int(xs[j])) % T]
        for s in range(0, len(m_res), rows):
            a = alpha[s:s + rows] * ep[(m_res[s:s + rows] * int(gx[j])) % p]
            total += complex(np.outer(a, b).sum())
    return total


def bilinear(rows, cols, coeffs, ep):
    """``out[i] = sum_j coeffs[j] * ep[rows[i] * cols[j] mod p]``."""
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    p = len(ep)
    out = np.zeros(len(rows), dtype=np.complex128)
    if len(cols) == 0:
        return out
    step = max(1, _CHUNK // len(cols))
    for s in range(0, len(rows), step):
        idx = np.outer(rows[s:s + step], cols) % p
        out[s:s + step] = ep[idx] @ coeffs
    return out
