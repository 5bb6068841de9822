# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gaussian-integer kernels (int64 with overflow detection).

Same interface as ``ginv._pykernels``. Every arithmetic step is checked;
on overflow an ``OverflowError`` is raised and the caller falls back to
the arbitrary-precision path.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef extern from *:
    """
    static inline int ck_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int ck_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int ck_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int ck_mul(long long a, long long b, long long *r) nogil
    int ck_add(long long a, long long b, long long *r) nogil
    int ck_sub(long long a, long long b, long long *r) nogil


cdef inline cnp.ndarray _as_i64(x):
    # raises OverflowError for Python ints outside int64
    return np.ascontiguousarray(np.asarray(x, dtype=np.int64))


def gi_matmul(ar, ai, br, bi):
    cdef long long[:, ::1] Ar = _as_i64(ar)
    cdef long long[:, ::1] Ai = _as_i64(ai)
    cdef long long[:, ::1] Br = _as_i64(br)
    cdef long long[:, ::1] Bi = _as_i64(bi)
    cdef Py_ssize_t m = Ar.shape[0], q = Ar.shape[1], n = Br.shape[1]
    if Br.shape[0] != q:
        raise ValueError("shape mismatch in gi_matmul")
    cr = np.zeros((m, n), dtype=np.int64)
    ci = np.zeros((m, n), dtype=np.int64)
    cdef long long[:, ::1] Cr = cr
    cdef long long[:, ::1] Ci = ci
    cdef Py_ssize_t i, j, l
    cdef long long sr, si, t1, t2
    cdef int bad = 0
    with nogil:
        for i in range(m):
            for j in range(n):
                sr = 0
                si = 0
                for l in range(q):
                    bad |= ck_mul(Ar[i, l], Br[l, j], &t1)
                    bad |= ck_mul(Ai[i, l], Bi[l, j], &t2)
                    bad |= ck_sub(t1, t2, &t1)
                    bad |= ck_add(sr, t1, &sr)
                    bad |= ck_mul(Ar[i, l], Bi[l, j], &t1)
                    bad |= ck_mul(Ai[i, l], Br[l, j], &t2)
                    bad |= ck_add(t1, t2, &t1)
                    bad |= ck_add(si, t1, &si)
                Cr[i, j] = sr
                Ci[i, j] = si
    if bad:
        raise OverflowError("int64 overflow in gi_matmul")
    return cr.astype(object), ci.astype(object)


cdef int _gdiv(long long a, long long b, long long c, long long d,
               long long *qr, long long *qi) nogil:
    # exact (a + bi) / (c + di); returns 1 on overflow, 2 on inexact
    cdef long long nrm, t1, t2, x, y
    cdef int bad = 0
    bad |= ck_mul(c, c, &t1)
    bad |= ck_mul(d, d, &t2)
    bad |= ck_add(t1, t2, &nrm)
    bad |= ck_mul(a, c, &t1)
    bad |= ck_mul(b, d, &t2)
    bad |= ck_add(t1, t2, &x)
    bad |= ck_mul(b, c, &t1)
    bad |= ck_mul(a, d, &t2)
    bad |= ck_sub(t1, t2, &y)
    if bad:
        return 1
    if x % nrm != 0 or y % nrm != 0:
        return 2
    qr[0] = x // nrm
    qi[0] = y // nrm
    return 0


def gi_gauss_jordan(re, im):
    R_arr = _as_i64(re).copy()
    I_arr = _as_i64(im).copy()
    cdef long long[:, ::1] R = R_arr
    cdef long long[:, ::1] I = I_arr
    cdef Py_ssize_t m = R.shape[0], n = R.shape[1]
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef long long pr = 1, pi = 0, vr, vi, fr, fi, ar, ai, br, bi
    cdef long long t1, t2, tr, ti, qr, qi, tmp
    cdef int bad = 0, st
    pivots = []
    for c in range(n):
        if r == m:
            break
        p = r
        while p < m and R[p, c] == 0 and I[p, c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            for j in range(n):
                tmp = R[p, j]; R[p, j] = R[r, j]; R[r, j] = tmp
                tmp = I[p, j]; I[p, j] = I[r, j]; I[r, j] = tmp
        vr = R[r, c]
        vi = I[r, c]
        with nogil:
            for i in range(m):
                if i == r:
                    continue
                fr = R[i, c]
                fi = I[i, c]
                for j in range(n):
                    ar = R[i, j]; ai = I[i, j]
                    br = R[r, j]; bi = I[r, j]
                    # v*a - f*b
                    bad |= ck_mul(vr, ar, &t1)
                    bad |= ck_mul(vi, ai, &t2)
                    bad |= ck_sub(t1, t2, &tr)
                    bad |= ck_mul(fr, br, &t1)
                    bad |= ck_mul(fi, bi, &t2)
                    bad |= ck_sub(t1, t2, &t1)
                    bad |= ck_sub(tr, t1, &tr)
                    bad |= ck_mul(vr, ai, &t1)
                    bad |= ck_mul(vi, ar, &t2)
                    bad |= ck_add(t1, t2, &ti)
                    bad |= ck_mul(fr, bi, &t1)
                    bad |= ck_mul(fi, br, &t2)
                    bad |= ck_add(t1, t2, &t1)
                    bad |= ck_sub(ti, t1, &ti)
                    if bad:
                        break
                    if pi == 0:
                        if tr % pr != 0 or ti % pr != 0:
                            bad = 2
                            break
                        R[i, j] = tr // pr
                        I[i, j] = ti // pr
                    else:
                        st = _gdiv(tr, ti, pr, pi, &qr, &qi)
                        if st:
                            bad = st
                            break
                        R[i, j] = qr
                        I[i, j] = qi
                if bad:
                    break
        if bad == 2:
            raise ArithmeticError("inexact Gaussian-integer division")
        if bad:
            raise OverflowError("int64 overflow in gi_gauss_jordan")
        pr = vr
        pi = vi
        pivots.append(c)
        r += 1
    return pivots, R_arr.astype(object), I_arr.astype(object), (int(pr), int(pi))
