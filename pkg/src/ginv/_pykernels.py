"""Pure-Python Gaussian-integer kernels.

Matrices are passed as pairs of 2-D numpy object arrays holding Python
ints (real part, imaginary part). These routines never overflow; the
compiled module in ``_ckernels`` mirrors their interface with an int64
fast path.
"""

import numpy as np


def gi_matmul(ar, ai, br, bi):
    """Product of two Gaussian-integer matrices, returned as (re, im)."""
    # Gauss's three-multiplication trick: fewer bigint products.
    k1 = (ar + ai).dot(br)
    k2 = ar.dot(bi - br)
    k3 = ai.dot(br + bi)
    return k1 - k3, k1 + k2


def _gdiv(a, b, c, d):
    # (a + bi) / (c + di), division known to be exact
    n = c * c + d * d
    re, r1 = divmod(a * c + b * d, n)
    im, r2 = divmod(b * c - a * d, n)
    if r1 or r2:
        raise ArithmeticError("inexact Gaussian-integer division")
    return re, im


def gi_gauss_jordan(re, im):
    """Fraction-free Gauss-Jordan elimination over the Gaussian integers.

    Returns ``(pivots, mre, mim, (dre, dim))``. Row ``i < rank`` of the
    result has the value ``d`` in column ``pivots[i]`` and zeros in every
    other pivot column; rows ``>= rank`` vanish. Dividing by ``d`` gives
    the reduced row-echelon form.
    """
    m, n = re.shape
    R = [[int(x) for x in row] for row in re]
    I = [[int(x) for x in row] for row in im]
    pr, pi = 1, 0
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        p = r
        while p < m and R[p][c] == 0 and I[p][c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            R[p], R[r] = R[r], R[p]
            I[p], I[r] = I[r], I[p]
        vr, vi = R[r][c], I[r][c]
        rowr, rowi = R[r], I[r]
        for i in range(m):
            if i == r:
                continue
            fr, fi = R[i][c], I[i][c]
            xr, xi = R[i], I[i]
            for j in range(n):
                ar, ai = xr[j], xi[j]
                br, bi = rowr[j], rowi[j]
                tr = vr * ar - vi * ai - (fr * br - fi * bi)
                ti = vr * ai + vi * ar - (fr * bi + fi * br)
                if pi == 0:
                    if pr == 1:
                        xr[j], xi[j] = tr, ti
                    else:
                        qr, r1 = divmod(tr, pr)
                        qi, r2 = divmod(ti, pr)
                        if r1 or r2:
                            raise ArithmeticError("inexact Gaussian-integer division")
                        xr[j], xi[j] = qr, qi
                else:
                    xr[j], xi[j] = _gdiv(tr, ti, pr, pi)
        pr, pi = vr, vi
        pivots.append(c)
        r += 1
    mre = np.empty((m, n), dtype=object)
    mim = np.empty((m, n), dtype=object)
    for i in range(m):
        mre[i, :] = R[i]
        mim[i, :] = I[i]
    return pivots, mre, mim, (pr, pi)
