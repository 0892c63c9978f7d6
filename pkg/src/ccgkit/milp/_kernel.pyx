# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled simplex pivot kernel.

Mirror of ``_kernel_py.py``: identical selection rules (first index
attaining the extremum) and the same elementwise floating-point operations,
so results are bit-identical between the two kernels.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BASIC = 0
AT_LOWER = 1
AT_UPPER = 2
FREE = 3

COMPILED = True

DEF C_BASIC = 0
DEF C_AT_LOWER = 1
DEF C_AT_UPPER = 2
DEF C_FREE = 3

cdef extern from "math.h":
    double fabs(double x) nogil
    double HUGE_VAL


def choose_entering(double[::1] d, long[::1] status, double tol, bint bland):
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t j, best_j = -1
    cdef double best = -1.0
    cdef double dj, mag
    cdef long st
    cdef bint elig
    for j in range(n):
        st = status[j]
        if st == C_BASIC:
            continue
        dj = d[j]
        elig = ((st == C_AT_LOWER or st == C_FREE) and dj < -tol) or \
               ((st == C_AT_UPPER or st == C_FREE) and dj > tol)
        if not elig:
            continue
        if bland:
            return j
        mag = fabs(dj)
        if mag > best:
            best = mag
            best_j = j
    return best_j


def ratio_test(double[::1] col, double[::1] xb, double[::1] lb,
               double[::1] ub, double direction, double tol):
    cdef Py_ssize_t m = col.shape[0]
    cdef Py_ssize_t i, best_r = -1
    cdef double t_best = HUGE_VAL
    cdef double delta, ti
    for i in range(m):
        delta = -direction * col[i]
        if delta < -tol:
            ti = (xb[i] - lb[i]) / (-delta)
        elif delta > tol:
            ti = (ub[i] - xb[i]) / delta
        else:
            continue
        if ti < t_best:
            t_best = ti
            best_r = i
    if best_r == -1 or t_best == HUGE_VAL:
        return np.inf, -1
    return t_best, best_r


def do_pivot(double[:, ::1] M, Py_ssize_t r, Py_ssize_t j):
    cdef Py_ssize_t m = M.shape[0]
    cdef Py_ssize_t n = M.shape[1]
    cdef Py_ssize_t i, k
    cdef double piv = M[r, j]
    cdef double factor
    for k in range(n):
        M[r, k] = M[r, k] / piv
    for i in range(m):
        if i == r:
            continue
        factor = M[i, j]
        if factor == 0.0:
            continue
        for k in range(n):
            M[i, k] = M[i, k] - factor * M[r, k]
    for i in range(m):
        M[i, j] = 0.0
    M[r, j] = 1.0
