"""Generalized inverses by two independent routes.

The definitional route composes Moore-Penrose inverses, powers and the
projectors ``P_A``/``Q_A`` and never touches a decomposition. The block
route assembles each inverse from a :class:`CoreEPForm`. Agreement of the
two is one of the package's main self-checks.
"""

from __future__ import annotations

from enum import Enum

from .decomposition import (
    CoreEPForm, core_ep_decompose, delta_of, index_of, t_tilde,
)
from .numeric import (
    DEFAULT_TOL, Tolerance, adjoint, block, identity_like, inverse_nonsingular,
    is_exact, mat_pow, opnorm, pinv, zeros_like,
)

__all__ = [
    "GInverseKind", "GroupInverseError", "InverseContext", "moore_penrose",
    "drazin", "group_inverse", "core_ep_inverse", "composite_inverse",
    "definitional_inverse", "table4_form", "compute_inverse", "COMPOSITE_KINDS",
    "COMMUTING_KINDS",
]


class GInverseKind(Enum):
    MOORE_PENROSE = "moore-penrose"
    DRAZIN = "drazin"
    GROUP = "group"
    CORE_EP = "core-ep"
    DMP = "dmp"
    DUAL_DMP = "dual-dmp"
    CMP = "cmp"
    WG = "wg"
    MPCEP = "mpcep"
    WC = "wc"
    DUAL_WC = "dual-wc"


K = GInverseKind


class GroupInverseError(ValueError):
    """The group inverse exists only for matrices of index at most one."""


# Recipes for the composite inverses: a product of factors read left to
# right. A factor is either another kind or one of "A", "P_A", "Q_A".
# This is the only place where the defining products appear.
RECIPES: dict[GInverseKind, tuple] = {
    K.DMP: (K.DRAZIN, "P_A"),
    K.DUAL_DMP: ("Q_A", K.DRAZIN),
    K.CMP: ("Q_A", K.DMP),
    K.WG: (K.CORE_EP, K.CORE_EP, "A"),
    K.MPCEP: ("Q_A", K.CORE_EP),
    K.WC: (K.WG, "P_A"),
    K.DUAL_WC: ("Q_A", K.WG),
}

COMPOSITE_KINDS = tuple(RECIPES)

# the eight outer inverses with range R(A^k) that may or may not commute with A^m
COMMUTING_KINDS = (K.CORE_EP, K.DMP, K.WG, K.WC, K.DUAL_DMP, K.CMP, K.MPCEP, K.DUAL_WC)


class InverseContext:
    """Per-matrix cache of powers, ``A^+``, projectors and inverses.

    Everything here follows the definitional route: Drazin comes from
    ``A^k (A^{2k+1})^+ A^k`` and core-EP from ``A^k (A^{k+1})^+``.
    """

    def __init__(self, A, tol: Tolerance = DEFAULT_TOL, k: int | None = None):
        if A.shape[0] != A.shape[1]:
            raise ValueError("generalized inverses of a non-square matrix")
        self.A = A
        self.tol = tol
        self.k = index_of(A, tol) if k is None else k
        self._norm = None if is_exact(A) else opnorm(A)
        self._pow = {0: identity_like(A), 1: A}
        self._cache: dict = {}

    def power(self, m: int):
        if m not in self._pow:
            h = m // 2
            self._pow[m] = self.power(h) @ self.power(m - h)
        return self._pow[m]

    def pinv_power(self, m: int):
        key = ("pinv", m)
        if key not in self._cache:
            scale = None if self._norm is None else self._norm ** m
            self._cache[key] = pinv(self.power(m), self.tol, scale=scale)
        return self._cache[key]

    @property
    def mp(self):
        return self.pinv_power(1)

    def factor(self, token):
        if token == "A":
            return self.A
        if token == "P_A":
            return self._memo("P_A", lambda: self.A @ self.mp)
        if token == "Q_A":
            return self._memo("Q_A", lambda: self.mp @ self.A)
        return self.inverse(token)

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def inverse(self, kind: GInverseKind):
        kind = GInverseKind(kind)
        return self._memo(kind, lambda: self._compute(kind))

    def _compute(self, kind: GInverseKind):
        k = self.k
        if kind is K.MOORE_PENROSE:
            return self.mp
        if kind is K.GROUP:
            if k > 1:
                raise GroupInverseError(f"group inverse does not exist (index {k})")
            return self.inverse(K.DRAZIN)
        if kind is K.DRAZIN:
            Ak = self.power(k)
            return Ak @ self.pinv_power(2 * k + 1) @ Ak
        if kind is K.CORE_EP:
            return self.power(k) @ self.pinv_power(k + 1)
        out = None
        for tok in RECIPES[kind]:
            f = self.factor(tok)
            out = f if out is None else out @ f
        return out


def _context(A, tol, ctx):
    return ctx if ctx is not None else InverseContext(A, tol)


def moore_penrose(A, tol: Tolerance = DEFAULT_TOL):
    """Moore-Penrose inverse (any shape)."""
    if A.shape[0] != A.shape[1]:
        return pinv(A, tol)
    return InverseContext(A, tol, k=0).mp


def drazin(A, tol: Tolerance = DEFAULT_TOL, method: str = "auto"):
    """Drazin inverse.

    ``method`` is ``"pinv"`` for ``A^k (A^{2k+1})^+ A^k``, ``"table4"`` for the
    block assembly from the core-EP decomposition, or ``"auto"``: block
    assembly on the float backend, the pinv identity on the exact one.
    """
    if method not in ("auto", "pinv", "table4"):
        raise ValueError(f"unknown Drazin method {method!r}")
    if method == "auto":
        method = "pinv" if is_exact(A) else "table4"
    if method == "table4":
        k = index_of(A, tol)
        if k == 0:
            return inverse_nonsingular(A, tol)
        return table4_form(core_ep_decompose(A, tol), K.DRAZIN, tol)
    return InverseContext(A, tol).inverse(K.DRAZIN)


def group_inverse(A, tol: Tolerance = DEFAULT_TOL):
    """Group inverse; raises :class:`GroupInverseError` when the index exceeds one."""
    return InverseContext(A, tol).inverse(K.GROUP)


def core_ep_inverse(A, tol: Tolerance = DEFAULT_TOL):
    """``A^k (A^{k+1})^+``."""
    return InverseContext(A, tol).inverse(K.CORE_EP)


def composite_inverse(A, kind: GInverseKind, tol: Tolerance = DEFAULT_TOL, ctx=None):
    """One of the composite inverses, computed as its defining product."""
    kind = GInverseKind(kind)
    if kind not in RECIPES:
        raise ValueError(f"{kind.value} is not a composite inverse")
    return _context(A, tol, ctx).inverse(kind)


def definitional_inverse(A, kind: GInverseKind, tol: Tolerance = DEFAULT_TOL, ctx=None):
    """Any kind by the decomposition-free route."""
    return _context(A, tol, ctx).inverse(GInverseKind(kind))


# ---------------------------------------------------------------------------
# block route


class _Blocks:
    # lazily evaluated pieces shared by the block formulas
    def __init__(self, D: CoreEPForm, tol: Tolerance):
        self.D, self.tol = D, tol
        self.t, self.m = D.t, D.n - D.t
        self._c = {}

    def get(self, name):
        if name not in self._c:
            self._c[name] = getattr(self, "_" + name)()
        return self._c[name]

    def _Ti(self):
        return inverse_nonsingular(self.D.T, self.tol)

    def _Np(self):
        return self.D.n_pinv(self.tol)

    def _PN(self):
        return self.D.N @ self.get("Np")

    def _IQN(self):
        return identity_like(self.D.N) - self.get("Np") @ self.D.N

    def _Delta(self):
        return delta_of(self.D, self.tol)

    def _Tk(self):
        return t_tilde(self.D, self.D.k)

    def Tpow(self, j):
        return mat_pow(self.get("Ti"), j)

    # left column of the Q_A-prefixed family: [[T* Δ], [(I - Q_N) S* Δ]]
    def _top(self):
        return adjoint(self.D.T) @ self.get("Delta")

    def _bot(self):
        return self.get("IQN") @ adjoint(self.D.S) @ self.get("Delta")

    def zeros(self, r, c):
        return zeros_like(self.D.U, r, c)


def _upper(b: _Blocks, X1, X2):
    t, m = b.t, b.m
    return block([[X1, X2], [b.zeros(m, t), b.zeros(m, m)]])


def _qa_family(b: _Blocks, W):
    # [[T* Δ, T* Δ W], [(I-Q_N) S* Δ, (I-Q_N) S* Δ W]]
    top, bot = b.get("top"), b.get("bot")
    return block([[top, top @ W], [bot, bot @ W]])


def _tdrazin(b):
    return b.Tpow(b.D.k + 1) @ b.get("Tk")


def _t4_mp(b):
    D = b.D
    top, bot = b.get("top"), b.get("bot")
    X2 = -(top @ D.S @ b.get("Np"))
    X4 = b.get("Np") - bot @ D.S @ b.get("Np")
    return block([[top, X2], [bot, X4]])


TABLE4 = {
    K.MOORE_PENROSE: _t4_mp,
    K.DRAZIN: lambda b: _upper(b, b.get("Ti"), _tdrazin(b)),
    K.CORE_EP: lambda b: _upper(b, b.get("Ti"), b.zeros(b.t, b.m)),
    K.DMP: lambda b: _upper(b, b.get("Ti"), _tdrazin(b) @ b.get("PN")),
    K.DUAL_DMP: lambda b: _qa_family(b, b.Tpow(b.D.k) @ b.get("Tk")),
    K.CMP: lambda b: _qa_family(b, b.Tpow(b.D.k) @ b.get("Tk") @ b.get("PN")),
    K.WG: lambda b: _upper(b, b.get("Ti"), b.Tpow(2) @ b.D.S),
    K.MPCEP: lambda b: block([[b.get("top"), b.zeros(b.t, b.m)],
                              [b.get("bot"), b.zeros(b.m, b.m)]]),
    # T^{-2} S P_N: this is what W P_A gives for W = [[T^-1, T^-2 S], [0, 0]]
    K.WC: lambda b: _upper(b, b.get("Ti"), b.Tpow(2) @ b.D.S @ b.get("PN")),
    K.DUAL_WC: lambda b: _qa_family(b, b.get("Ti") @ b.D.S),
}
TABLE4[K.GROUP] = TABLE4[K.DRAZIN]


def table4_form(D: CoreEPForm, kind: GInverseKind, tol: Tolerance = DEFAULT_TOL):
    """Inverse of ``assemble(D)`` built from its core-EP blocks."""
    kind = GInverseKind(kind)
    if kind is K.GROUP and D.k > 1:
        raise GroupInverseError(f"group inverse does not exist (index {D.k})")
    M = TABLE4[kind](_Blocks(D, tol))
    return D.U @ M @ adjoint(D.U)


def compute_inverse(A, kind: GInverseKind, tol: Tolerance = DEFAULT_TOL):
    """Entry point used by the command line: default route per kind and backend."""
    kind = GInverseKind(kind)
    if kind is K.DRAZIN:
        return drazin(A, tol)
    return definitional_inverse(A, kind, tol)
