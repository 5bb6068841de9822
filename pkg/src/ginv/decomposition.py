"""Matrix index, core-EP decomposition, and the orthogonal projectors.

A square matrix of index ``k >= 1`` is unitarily similar to a block
upper-triangular matrix ``[[T, S], [0, N]]`` with ``T`` nonsingular of
order ``t = rank(A**k)`` and ``N`` nilpotent of index ``k``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .numeric import (
    DEFAULT_TOL, ExactMatrix, NotInvertibleError, Tolerance, adjoint, as_float,
    block, identity_like, inverse_nonsingular, is_exact, is_zero, mat_pow,
    max_abs, opnorm, pinv, rank, to_float, zeros_like,
)

__all__ = [
    "CoreEPForm", "ProjectorKind", "DecompositionError", "NonsingularMatrixError",
    "ExactDecompositionUnavailable", "rank_sequence", "index_of",
    "core_ep_decompose", "decompose_with_fallback", "assemble", "t_tilde", "delta_of", "projector",
]


class DecompositionError(ValueError):
    pass


class NonsingularMatrixError(DecompositionError):
    """Index-0 input: the decomposition would have ``t = n``."""


class ExactDecompositionUnavailable(DecompositionError):
    """No exact unitary is available for this exact matrix.

    The exact backend only handles matrices whose core-EP subspace
    ``R(A**k)`` is spanned by coordinate vectors, where a permutation
    serves as the unitary factor.
    """


class ProjectorKind(Enum):
    P_A = "P_A"     # A A^+
    Q_A = "Q_A"     # A^+ A
    P_N = "P_N"     # N N^+ (argument is a nilpotent block)
    Q_N = "Q_N"     # N^+ N
    P_AK = "P_Ak"   # A^k (A^k)^+


def rank_sequence(A, tol: Tolerance = DEFAULT_TOL) -> list[int]:
    """Ranks of ``A**0, A**1, ...`` up to the first repeated value (inclusive)."""
    n = A.shape[0]
    if n != A.shape[1]:
        raise ValueError("rank sequence of a non-square matrix")
    # float powers are ranked against |A|^j so that roundoff in a
    # vanishing power is not mistaken for a nonzero singular value
    nrm = opnorm(A)
    ranks = [n]
    P = identity_like(A)
    for j in range(1, n + 2):
        P = P @ A
        ranks.append(rank(P, tol, scale=nrm ** j))
        if ranks[-1] == ranks[-2]:
            break
    return ranks


def index_of(A, tol: Tolerance = DEFAULT_TOL) -> int:
    """Smallest ``k >= 0`` with ``rank(A**k) == rank(A**(k+1))``."""
    return len(rank_sequence(A, tol)) - 2


@dataclass(frozen=True, eq=False)
class CoreEPForm:
    """``A = U [[T, S], [0, N]] U^*`` with ``t = rank(A^k)`` and ``k = Ind(A)``."""

    U: object
    T: object
    S: object
    N: object
    t: int
    k: int

    @property
    def n(self) -> int:
        return self.U.shape[0]

    @property
    def exact(self) -> bool:
        return is_exact(self.U)

    @property
    def scale(self) -> float | None:
        """Reference magnitude for float thresholds on the blocks (None if exact)."""
        if self.exact:
            return None
        return max(opnorm(self.T), opnorm(self.S), opnorm(self.N))

    def n_pinv(self, tol: Tolerance = DEFAULT_TOL):
        """``N^+``, thresholded against the whole form rather than ``N`` alone."""
        return pinv(self.N, tol, scale=self.scale)

    def validate(self, tol: Tolerance = DEFAULT_TOL, A=None) -> None:
        """Check the structural invariants; raise ``DecompositionError`` if any fails."""
        n, t, k = self.n, self.t, self.k
        if self.T.shape != (t, t) or self.S.shape != (t, n - t) or self.N.shape != (n - t, n - t):
            raise DecompositionError("block shapes are inconsistent")
        I = identity_like(self.U)
        if not is_zero(self.U @ adjoint(self.U) - I, tol):
            raise DecompositionError("U is not unitary")
        if t and rank(self.T, tol) < t:
            raise DecompositionError("T is singular")
        scale = max(opnorm(self.N), 1.0) ** k
        if not is_zero(mat_pow(self.N, k), tol, scale):
            raise DecompositionError("N^k is not zero")
        if k > 1 and is_zero(mat_pow(self.N, k - 1), tol, scale):
            raise DecompositionError("N has nilpotency index below k")
        if A is not None:
            R = assemble(self)
            if not is_zero(R - A, tol, max_abs(A)):
                raise DecompositionError("U [[T, S], [0, N]] U^* does not reconstruct A")


def assemble(D: CoreEPForm):
    """``U [[T, S], [0, N]] U^*``."""
    t, n = D.T.shape[0], D.U.shape[0]
    if D.S.shape != (t, n - t) or D.N.shape != (n - t, n - t):
        raise ValueError("block shapes are inconsistent")
    M = block([[D.T, D.S], [zeros_like(D.U, n - t, t), D.N]])
    return D.U @ M @ adjoint(D.U)


def t_tilde(D: CoreEPForm, m: int):
    """``sum_{i=0}^{m-1} T^i S N^{m-1-i}`` (a ``t x (n-t)`` matrix)."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    tp = [identity_like(D.T)]
    npw = [identity_like(D.N)]
    for _ in range(m - 1):
        tp.append(tp[-1] @ D.T)
        npw.append(npw[-1] @ D.N)
    out = zeros_like(D.S, *D.S.shape)
    for i in range(m):
        out = out + tp[i] @ D.S @ npw[m - 1 - i]
    return out


def delta_of(D: CoreEPForm, tol: Tolerance = DEFAULT_TOL):
    """``(T T^* + S (I - Q_N) S^*)^{-1}``."""
    QN = D.n_pinv(tol) @ D.N
    M = D.T @ adjoint(D.T) + D.S @ (identity_like(D.N) - QN) @ adjoint(D.S)
    try:
        return inverse_nonsingular(M, tol)
    except NotInvertibleError as exc:
        raise DecompositionError("malformed core-EP form: Delta^{-1} is singular") from exc


def projector(A, which: ProjectorKind, tol: Tolerance = DEFAULT_TOL, k: int | None = None):
    """Orthogonal projector of the requested kind.

    For ``P_N``/``Q_N`` pass the nilpotent block as ``A``. ``P_Ak`` uses the
    index of ``A`` unless ``k`` is given.
    """
    which = ProjectorKind(which)
    if which in (ProjectorKind.P_A, ProjectorKind.P_N):
        return A @ pinv(A, tol)
    if which in (ProjectorKind.Q_A, ProjectorKind.Q_N):
        return pinv(A, tol) @ A
    k = index_of(A, tol) if k is None else k
    Ak = mat_pow(A, k)
    return Ak @ pinv(Ak, tol, scale=None if is_exact(A) else opnorm(A) ** k)


# ---------------------------------------------------------------------------
# constructions


def core_ep_decompose(A, tol: Tolerance = DEFAULT_TOL) -> CoreEPForm:
    """Core-EP decomposition of a square matrix of index ``k >= 1``.

    Raises
    ------
    NonsingularMatrixError
        For index-0 input (``t = n``).
    ExactDecompositionUnavailable
        For exact input whose core-EP subspace is not coordinate-aligned.
    """
    if A.shape[0] != A.shape[1]:
        raise ValueError("core-EP decomposition of a non-square matrix")
    k = index_of(A, tol)
    if k == 0:
        raise NonsingularMatrixError("nonsingular matrix: decomposition degenerate (t = n)")
    if is_exact(A):
        return _exact_decompose(A, k)
    return _float_decompose(as_float(A), k, tol)


def decompose_with_fallback(A, tol: Tolerance = DEFAULT_TOL):
    """``(form, backend)``; exact input without an exact unitary is decomposed in floats."""
    try:
        return core_ep_decompose(A, tol), ("exact" if is_exact(A) else "float")
    except ExactDecompositionUnavailable:
        return core_ep_decompose(to_float(A), tol), "float"


def _triangular_order(A: ExactMatrix, idx: list[int]) -> list[int]:
    # order idx so that A restricted to idx is upper triangular, if possible
    re, im = A.numerators
    succ = {a: [] for a in idx}
    indeg = {a: 0 for a in idx}
    for a in idx:
        for b in idx:
            if a != b and (re[a, b] or im[a, b]):
                succ[a].append(b)
                indeg[b] += 1
    heap = [a for a in idx if indeg[a] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        a = heapq.heappop(heap)
        out.append(a)
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, b)
    return out if len(out) == len(idx) else list(idx)


def _exact_decompose(A: ExactMatrix, k: int) -> CoreEPForm:
    n = A.shape[0]
    Ak = mat_pow(A, k)
    t = rank(Ak)
    re, im = Ak.numerators
    lead = [i for i in range(n) if any(re[i, :]) or any(im[i, :])]
    if len(lead) != t:
        raise ExactDecompositionUnavailable(
            "R(A^k) is not spanned by coordinate vectors; no exact unitary available")
    rest = [i for i in range(n) if i not in set(lead)]
    order = _triangular_order(A, lead) + _triangular_order(A, rest)
    pre = np.zeros((n, n), dtype=object)
    for j, i in enumerate(order):
        pre[i, j] = 1
    P = ExactMatrix(pre)
    B = A.take(order, order)
    if not B[t:, :t].is_zero():
        raise DecompositionError("R(A^k) is not invariant; internal error")
    return CoreEPForm(U=P, T=B[:t, :t], S=B[:t, t:], N=B[t:, t:], t=t, k=k)


def _kernel_flag_basis(N0: np.ndarray, k: int, tol: Tolerance) -> np.ndarray:
    # Orthonormal basis adapted to ker N0 < ker N0^2 < ... < ker N0^k.
    # N0 maps each layer into the previous ones, so it is strictly upper
    # triangular in this basis.
    m = N0.shape[0]
    basis = np.zeros((m, 0), dtype=complex)
    nrm = max(opnorm(N0), 1e-300)
    P = np.eye(m, dtype=complex)
    for j in range(1, k + 1):
        P = P @ N0
        r = rank(P, tol, scale=nrm ** j) if j < k else 0
        K = np.eye(m, dtype=complex) if r == 0 else _nullspace_rank(P, r)
        need = K.shape[1] - basis.shape[1]
        if need <= 0:
            continue
        R = K - basis @ (basis.conj().T @ K)
        u, _, _ = np.linalg.svd(R)
        basis = np.hstack([basis, u[:, :need]])
    if basis.shape[1] != m:
        raise DecompositionError("could not build a kernel flag for the nilpotent block")
    return basis


def _nullspace_rank(a: np.ndarray, r: int) -> np.ndarray:
    _, _, vh = np.linalg.svd(a)
    return vh[r:].conj().T


def _float_decompose(a: np.ndarray, k: int, tol: Tolerance) -> CoreEPForm:
    n = a.shape[0]
    ak = mat_pow(a, k)
    t = rank(ak, tol, scale=opnorm(a) ** k)
    u, _, _ = np.linalg.svd(ak)
    U1, U2 = u[:, :t], u[:, t:]
    if t:
        _, Q = scipy.linalg.schur(U1.conj().T @ a @ U1, output="complex")
        U1 = U1 @ Q
    if n - t:
        U2 = U2 @ _kernel_flag_basis(U2.conj().T @ a @ U2, k, tol)
    U = np.hstack([U1, U2])
    B = U.conj().T @ a @ U
    # index one means N = 0; keep it exactly zero rather than roundoff
    N = np.triu(B[t:, t:], 1) if k > 1 else np.zeros((n - t, n - t), dtype=complex)
    return CoreEPForm(U=U, T=np.triu(B[:t, :t]), S=B[:t, t:].copy(), N=N, t=t, k=k)
