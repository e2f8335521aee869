# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting and summation kernels.

Residues are int64 and moduli are below 2**31, so ``r1 * r2`` never
overflows.  All reductions run in a fixed loop order.
"""
import numpy as np
cimport numpy as cnp

NAME = "cython"

ctypedef cnp.int64_t i64


def energy_naive(const i64[:] res, i64 p):
    cdef Py_ssize_t k = res.shape[0], i, j, l
    cdef i64 s, t
    cdef long long total = 0
    cdef unsigned char[:] member = np.zeros(p, dtype=np.uint8)
    for i in range(k):
        member[res[i]] = 1
    for i in range(k):
        for j in range(k):
            s = (res[i] + res[j]) % p
            for l in range(k):
                t = s - res[l]
                if t < 0:
                    t += p
                total += member[t]
    return total


def energy_fast(const i64[:] res, i64 p):
    cdef Py_ssize_t k = res.shape[0], i, j
    cdef i64 s
    cdef long long total = 0
    cdef i64[:] r = np.zeros(p, dtype=np.int64)
    for i in range(k):
        for j in range(k):
            s = res[i] + res[j]
            if s >= p:
                s -= p
            r[s] += 1
    for i in range(p):
        total += r[i] * r[i]
    return total


def triple_direct(const double complex[:] alpha, const i64[:] m_res,
                  const i64[:] gx, const i64[:] xs, const i64[:] n_res,
                  const double complex[:] ep, const double complex[:] eT):
    cdef Py_ssize_t M = m_res.shape[0], N = n_res.shape[0], H = xs.shape[0]
    cdef Py_ssize_t i, j, k
    cdef i64 p = ep.shape[0], T = eT.shape[0], gj, xj
    cdef double complex a
    cdef double are, aim, re, im, total_re = 0, total_im = 0
    # row of e_T(n x) for the current x, split into re/im
    cdef double[:] b_re = np.empty(N, dtype=np.float64)
    cdef double[:] b_im = np.empty(N, dtype=np.float64)
    for j in range(H):
        gj = gx[j]
        xj = xs[j]
        for k in range(N):
            a = eT[(n_res[k] * xj) % T]
            b_re[k] = a.real
            b_im[k] = a.imag
        re = 0
        im = 0
        for i in range(M):
            a = alpha[i] * ep[(m_res[i] * gj) % p]
            are = a.real
            aim = a.imag
            for k in range(N):
                re += are * b_re[k] - aim * b_im[k]
                im += are * b_im[k] + aim * b_re[k]
        total_re += re
        total_im += im
    return complex(total_re, total_im)


def bilinear(const i64[:] rows, const i64[:] cols, const double complex[:] coeffs,
             const double complex[:] ep):
    cdef Py_ssize_t R = rows.shape[0], C = cols.shape[0], i, j
    cdef i64 p = ep.shape[0], r
    cdef double complex acc
    out = np.zeros(R, dtype=np.complex128)
    cdef double complex[:] o = out
    for i in range(R):
        r = rows[i]
        acc = 0
        for j in range(C):
            acc = acc + coeffs[j] * ep[(r * cols[j]) % p]
        o[i] = acc
    return out
