"""Scalar backends, dense matrices, and rank/equality primitives.

Two backends share one functional interface:

* float: 2-D ``numpy`` arrays of ``complex128``;
* exact: :class:`ExactMatrix`, dense matrices of Gaussian rationals.

Mixing the two in one operation raises ``TypeError``.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels

__all__ = [
    "Tolerance", "DEFAULT_TOL", "GaussianRational", "ExactMatrix",
    "NotInvertibleError", "BackendMismatchError",
    "is_exact", "as_float", "adjoint", "mat_pow", "rank", "approx_equal",
    "inverse_nonsingular", "pinv", "nullspace", "identity_like", "zeros_like",
    "block", "hstack", "vstack", "is_zero", "max_abs", "opnorm", "range_subset",
    "same_range", "to_float", "check_backends",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds for the float backend (ignored by the exact one).

    Singular values at or below ``rank_rel_tol * sigma_max * max(rows, cols)``
    count as zero; two matrices are equal when their largest entrywise
    difference is at most ``eq_abs_tol``.
    """

    rank_rel_tol: float = 1e-12
    eq_abs_tol: float = 1e-10

    def __post_init__(self):
        if self.rank_rel_tol < 0 or self.eq_abs_tol < 0:
            raise ValueError("tolerances must be nonnegative")


DEFAULT_TOL = Tolerance()


class NotInvertibleError(ValueError):
    """Raised when a matrix that must be nonsingular is not."""


class BackendMismatchError(TypeError):
    """Raised when float and exact matrices meet in one operation."""


# ---------------------------------------------------------------------------
# exact scalar


def _fraction(x) -> Fraction:
    if isinstance(x, str):
        x = x.strip()
        if not x:
            raise ValueError("empty rational string")
    return Fraction(x)


class GaussianRational:
    """Exact complex scalar with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _fraction(re)
        self.im = _fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return cls(x[0], x[1])
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, (numbers.Rational, str)):
            return cls(x, 0)
        if isinstance(x, numbers.Real):
            return cls(Fraction(float(x)), 0)
        if isinstance(x, numbers.Complex):
            return cls(Fraction(float(x.real)), Fraction(float(x.imag)))
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


# ---------------------------------------------------------------------------
# exact matrix


def _obj_zeros(shape):
    return np.zeros(shape, dtype=object)


def _as_int_array(a) -> np.ndarray:
    arr = np.array(a, dtype=object)
    if arr.ndim != 2:
        raise ValueError("matrix data must be two-dimensional")
    return arr


class ExactMatrix:
    """Immutable dense matrix of Gaussian rationals.

    Stored as two integer numerator arrays and one positive common
    denominator, reduced so that gcd(numerators, denominator) = 1. Equal
    matrices therefore have identical representations.
    """

    __slots__ = ("_re", "_im", "_den", "_hash")
    __array_ufunc__ = None  # keep numpy from coercing us into object arrays

    def __init__(self, re, im=None, den=1):
        re = _as_int_array(re)
        im = _obj_zeros(re.shape) if im is None else _as_int_array(im)
        if re.shape != im.shape:
            raise ValueError("real and imaginary parts differ in shape")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            re, im, den = -re, -im, -den
        g = math.gcd(den, *re.flat, *im.flat)
        if g > 1:
            re = re // g
            im = im // g
            den //= g
        self._re = re
        self._im = im
        self._den = den
        self._hash = None

    # construction -----------------------------------------------------------

    @classmethod
    def from_entries(cls, rows) -> "ExactMatrix":
        """Build from a nested sequence of scalars (ints, Fractions,
        ``"p/q"`` strings, ``(re, im)`` pairs, complex numbers)."""
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("matrix needs at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        vals = [[GaussianRational.coerce(x) for x in r] for r in rows]
        den = 1
        for r in vals:
            for z in r:
                den = math.lcm(den, z.re.denominator, z.im.denominator)
        re = _obj_zeros((len(rows), ncols))
        im = _obj_zeros((len(rows), ncols))
        for i, r in enumerate(vals):
            for j, z in enumerate(r):
                re[i, j] = z.re.numerator * (den // z.re.denominator)
                im[i, j] = z.im.numerator * (den // z.im.denominator)
        return cls(re, im, den)

    @classmethod
    def from_float(cls, a) -> "ExactMatrix":
        """Exact image of a float matrix (every double is a dyadic rational)."""
        a = np.asarray(a, dtype=complex)
        return cls.from_entries([[complex(x) for x in row] for row in a])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        re = _obj_zeros((n, n))
        for i in range(n):
            re[i, i] = 1
        return cls(re)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(_obj_zeros((rows, cols)))

    # accessors --------------------------------------------------------------

    @property
    def shape(self):
        return self._re.shape

    @property
    def numerators(self):
        return self._re, self._im

    @property
    def denominator(self) -> int:
        return self._den

    def __getitem__(self, key):
        r, c = key
        if isinstance(r, numbers.Integral) and isinstance(c, numbers.Integral):
            d = self._den
            return GaussianRational(Fraction(self._re[r, c], d), Fraction(self._im[r, c], d))
        r = _keep_dim(r)
        c = _keep_dim(c)
        return ExactMatrix(self._re[r, c], self._im[r, c], self._den)

    def take(self, rows, cols) -> "ExactMatrix":
        ix = np.ix_(list(rows), list(cols))
        return ExactMatrix(self._re[ix], self._im[ix], self._den)

    def entries(self):
        return [[self[i, j] for j in range(self.shape[1])] for i in range(self.shape[0])]

    def to_numpy(self) -> np.ndarray:
        d = self._den
        out = np.empty(self.shape, dtype=complex)
        for (i, j), x in np.ndenumerate(self._re):
            out[i, j] = complex(float(Fraction(x, d)), float(Fraction(self._im[i, j], d)))
        return out

    def is_zero(self) -> bool:
        return not any(self._re.flat) and not any(self._im.flat)

    def max_abs(self) -> float:
        """Largest entry modulus, from the integer numerators."""
        if not self._re.size:
            return 0.0
        m2 = max(int(a) * int(a) + int(b) * int(b) for a, b in zip(self._re.flat, self._im.flat))
        return float(Fraction(m2, self._den * self._den)) ** 0.5

    def is_real(self) -> bool:
        return not any(self._im.flat)

    # arithmetic -------------------------------------------------------------

    def adjoint(self) -> "ExactMatrix":
        return ExactMatrix(self._re.T.copy(), -self._im.T, self._den)

    @property
    def H(self) -> "ExactMatrix":
        return self.adjoint()

    def _check(self, other):
        if not isinstance(other, ExactMatrix):
            if isinstance(other, np.ndarray):
                raise BackendMismatchError("cannot mix exact and float matrices")
            return False
        return True

    def __matmul__(self, other):
        if not self._check(other):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        re, im = kernels.gi_matmul(self._re, self._im, other._re, other._im)
        return ExactMatrix(re, im, self._den * other._den)

    def __rmatmul__(self, other):
        if isinstance(other, np.ndarray):
            raise BackendMismatchError("cannot mix exact and float matrices")
        return NotImplemented

    def _aligned(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        L = math.lcm(self._den, other._den)
        a, b = L // self._den, L // other._den
        return a, b, L

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        a, b, L = self._aligned(other)
        return ExactMatrix(self._re * a + other._re * b, self._im * a + other._im * b, L)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        a, b, L = self._aligned(other)
        return ExactMatrix(self._re * a - other._re * b, self._im * a - other._im * b, L)

    def __neg__(self):
        return ExactMatrix(-self._re, -self._im, self._den)

    def __mul__(self, scalar):
        if isinstance(scalar, (ExactMatrix, np.ndarray)):
            return NotImplemented
        try:
            s = GaussianRational.coerce(scalar)
        except TypeError:
            return NotImplemented
        sd = math.lcm(s.re.denominator, s.im.denominator)
        sr = s.re.numerator * (sd // s.re.denominator)
        si = s.im.numerator * (sd // s.im.denominator)
        return ExactMatrix(self._re * sr - self._im * si, self._re * si + self._im * sr,
                           self._den * sd)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (GaussianRational(1) / GaussianRational.coerce(scalar))

    # value semantics --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.shape == other.shape and self._den == other._den
                and bool(np.all(self._re == other._re))
                and bool(np.all(self._im == other._im)))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self._den, tuple(self._re.flat), tuple(self._im.flat)))
        return self._hash

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(z) for z in row) + "]" for row in self.entries())
        return f"ExactMatrix([{rows}])"


def _keep_dim(k):
    if isinstance(k, numbers.Integral):
        return slice(k, k + 1) if k != -1 else slice(k, None)
    return k


# ---------------------------------------------------------------------------
# exact elimination helpers


def _gauss_jordan(A: ExactMatrix):
    """Pivot columns and reduced row-echelon form of an exact matrix."""
    re, im = A.numerators
    pivots, mre, mim, (dr, di) = kernels.gi_gauss_jordan(re, im)
    # divide by the Gaussian integer d = dr + i*di
    R = ExactMatrix(mre * dr + mim * di, mim * dr - mre * di, dr * dr + di * di)
    return pivots, R


def _exact_inverse(A: ExactMatrix) -> ExactMatrix:
    n, m = A.shape
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return A
    pivots, R = _gauss_jordan(block([[A, ExactMatrix.identity(n)]]))
    if pivots[:n] != list(range(n)):
        raise NotInvertibleError("matrix is singular")
    return R[:, n:]


def _exact_pinv(A: ExactMatrix) -> ExactMatrix:
    # full-rank factorization A = F G, A^+ = G^*(G G^*)^{-1}(F^* F)^{-1} F^*
    m, n = A.shape
    pivots, R = _gauss_jordan(A)
    r = len(pivots)
    if r == 0:
        return ExactMatrix.zeros(n, m)
    F = A.take(range(m), pivots)
    G = R[:r, :]
    Fh, Gh = F.adjoint(), G.adjoint()
    return Gh @ _exact_inverse(G @ Gh) @ _exact_inverse(Fh @ F) @ Fh


# ---------------------------------------------------------------------------
# backend-generic operations


def is_exact(A) -> bool:
    return isinstance(A, ExactMatrix)


def as_float(A) -> np.ndarray:
    """Coerce array-like input to a 2-D complex128 array."""
    if isinstance(A, ExactMatrix):
        raise BackendMismatchError("exact matrix where a float matrix was expected")
    a = np.asarray(A, dtype=complex)
    if a.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    return a


def to_float(A) -> np.ndarray:
    """Lift an exact matrix to the float backend (float input passes through)."""
    return A.to_numpy() if isinstance(A, ExactMatrix) else as_float(A)


def check_backends(*mats):
    kinds = {isinstance(M, ExactMatrix) for M in mats}
    if len(kinds) > 1:
        raise BackendMismatchError("cannot mix exact and float matrices")


def adjoint(A):
    """Conjugate transpose."""
    if isinstance(A, ExactMatrix):
        return A.adjoint()
    return as_float(A).conj().T


def identity_like(A, n: int | None = None):
    n = A.shape[0] if n is None else n
    return ExactMatrix.identity(n) if isinstance(A, ExactMatrix) else np.eye(n, dtype=complex)


def zeros_like(A, rows: int, cols: int):
    if isinstance(A, ExactMatrix):
        return ExactMatrix.zeros(rows, cols)
    return np.zeros((rows, cols), dtype=complex)


def mat_pow(A, m: int):
    """``A**m`` for square ``A`` and integer ``m >= 0`` (``A**0`` is the identity)."""
    if A.shape[0] != A.shape[1]:
        raise ValueError("matrix power of a non-square matrix")
    if m < 0:
        raise ValueError("negative matrix power")
    if not isinstance(A, ExactMatrix):
        A = as_float(A)
    P = identity_like(A)
    for _ in range(m):
        P = P @ A
    return P


def _singular_values(a: np.ndarray) -> np.ndarray:
    if a.size == 0:
        return np.zeros(0)
    return np.linalg.svd(a, compute_uv=False)


def _rank_threshold(s: np.ndarray, shape, tol: Tolerance, scale=None) -> float:
    if s.size == 0:
        return 0.0
    ref = s[0] if scale is None else max(s[0], scale)
    return tol.rank_rel_tol * ref * max(shape)


def rank(A, tol: Tolerance = DEFAULT_TOL, scale: float | None = None) -> int:
    """Pivot count (exact) or numerical rank from the SVD (float).

    ``scale`` replaces ``sigma_max`` as the reference magnitude when it is
    larger; use it for computed products (e.g. matrix powers) whose true
    value may be zero.
    """
    if isinstance(A, ExactMatrix):
        if 0 in A.shape:
            return 0
        return len(_gauss_jordan(A)[0])
    a = as_float(A)
    s = _singular_values(a)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > _rank_threshold(s, a.shape, tol, scale)))


def approx_equal(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Exact identity, or max entrywise difference within ``tol.eq_abs_tol``."""
    check_backends(A, B)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    if isinstance(A, ExactMatrix):
        return A == B
    if A.size == 0:
        return True
    return float(np.max(np.abs(as_float(A) - as_float(B)))) <= tol.eq_abs_tol


def opnorm(A) -> float:
    """Spectral norm (as a float, for either backend)."""
    a = to_float(A)
    return float(np.linalg.norm(a, 2)) if a.size else 0.0


def max_abs(A) -> float:
    """Largest entry modulus (as a float, for either backend)."""
    if isinstance(A, ExactMatrix):
        return A.max_abs()
    a = to_float(A)
    return float(np.max(np.abs(a))) if a.size else 0.0


def is_zero(A, tol: Tolerance = DEFAULT_TOL, scale: float = 1.0) -> bool:
    """Zero test; float entries may reach ``eq_abs_tol * max(scale, 1)``."""
    if isinstance(A, ExactMatrix):
        return A.is_zero()
    return max_abs(A) <= tol.eq_abs_tol * max(scale, 1.0)


def inverse_nonsingular(A, tol: Tolerance = DEFAULT_TOL):
    """Inverse of a nonsingular square matrix.

    Raises
    ------
    NotInvertibleError
        If ``A`` is singular (exactly, or numerically at ``tol``).
    """
    if A.shape[0] != A.shape[1]:
        raise ValueError("inverse of a non-square matrix")
    if isinstance(A, ExactMatrix):
        return _exact_inverse(A)
    a = as_float(A)
    if a.shape[0] == 0:
        return a.copy()
    if rank(a, tol) < a.shape[0]:
        raise NotInvertibleError("matrix is numerically singular")
    return np.linalg.inv(a)


def pinv(A, tol: Tolerance = DEFAULT_TOL, scale: float | None = None):
    """Moore-Penrose inverse.

    Exact matrices go through a full-rank factorization; float matrices
    through a thresholded SVD using the same cutoff as :func:`rank`.
    """
    if isinstance(A, ExactMatrix):
        return _exact_pinv(A)
    a = as_float(A)
    if a.size == 0:
        return np.zeros(a.shape[::-1], dtype=complex)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    if s[0] == 0:
        return np.zeros(a.shape[::-1], dtype=complex)
    keep = s > _rank_threshold(s, a.shape, tol, scale)
    return (vh[keep].conj().T / s[keep]) @ u[:, keep].conj().T


def nullspace(A, tol: Tolerance = DEFAULT_TOL):
    """Matrix whose columns form a basis of the null space of ``A``."""
    m, n = A.shape
    if isinstance(A, ExactMatrix):
        if m == 0:
            return ExactMatrix.identity(n)
        pivots, R = _gauss_jordan(A)
        free = [j for j in range(n) if j not in set(pivots)]
        cols = []
        for f in free:
            v = [GaussianRational(0)] * n
            v[f] = GaussianRational(1)
            for i, p in enumerate(pivots):
                v[p] = -R[i, f]
            cols.append(v)
        if not cols:
            return ExactMatrix.zeros(n, 0)
        return ExactMatrix.from_entries([[cols[c][i] for c in range(len(cols))] for i in range(n)])
    a = as_float(A)
    if m == 0:
        return np.eye(n, dtype=complex)
    r = rank(a, tol)
    _, _, vh = np.linalg.svd(a)
    return vh[r:].conj().T


def block(rows):
    """Assemble a block matrix from a nested list of same-backend blocks."""
    flat = [B for row in rows for B in row]
    check_backends(*flat)
    if isinstance(flat[0], ExactMatrix):
        L = 1
        for B in flat:
            L = math.lcm(L, B.denominator)
        re = np.block([[B.numerators[0] * (L // B.denominator) for B in row] for row in rows])
        im = np.block([[B.numerators[1] * (L // B.denominator) for B in row] for row in rows])
        return ExactMatrix(np.asarray(re, dtype=object), np.asarray(im, dtype=object), L)
    return np.block([[as_float(B) for B in row] for row in rows])


def hstack(mats):
    return block([list(mats)])


def vstack(mats):
    return block([[M] for M in mats])


def range_subset(X, Y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether the column space of ``X`` lies inside that of ``Y``."""
    return rank(hstack([Y, X]), tol) == rank(Y, tol)


def same_range(X, Y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Column-space equality via rank([X | Y]) = rank(X) = rank(Y)."""
    r = rank(hstack([X, Y]), tol)
    return r == rank(X, tol) == rank(Y, tol)
