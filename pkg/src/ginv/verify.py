"""Instance-level checks of the equivalence theorems.

Each suite evaluates every clause of a theorem independently on one
matrix and records it in a :class:`VerificationReport`. Clauses that a
theorem declares equivalent share a ``group``; the verdict passes when
every group is uniformly true or uniformly false and every clause with an
``expect`` value matches it.

"For all m" clauses are swept over ``m = 1, ..., 2k + 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .classes import (
    ClassLabel as L, _member, _Struct, _structural, _wc_aux_member,
    _wc_aux_structural, classify_all,
)
from .decomposition import CoreEPForm, decompose_with_fallback
from .ginverse import (
    COMMUTING_KINDS, GInverseKind as K, InverseContext, drazin,
)
from .numeric import (
    DEFAULT_TOL, ExactMatrix, Tolerance, adjoint, hstack, inverse_nonsingular, is_exact,
    max_abs, opnorm, range_subset, rank, to_float,
)

__all__ = [
    "TheoremId", "Clause", "VerificationReport", "PremiseError", "Variant",
    "check_outer_with_range", "outer_inverse_report", "drazin_by_commutation",
    "commutation_propositions_suite", "commuting_inverse_suite",
    "drazin_characterization_check", "drazin_characterization_suite",
    "class_theorem_suites", "cross_backend_audit", "run_suites", "SUITES",
]


class TheoremId(Enum):
    OUTER_INVERSE_FORM = "outer-inverse-form"
    QA_PREFIXED = "qa-prefixed-commutation"
    PLAIN = "plain-commutation"
    PA_SUFFIXED = "pa-suffixed-commutation"
    COMMUTING_INVERSES = "commuting-inverses"
    DRAZIN_CHARACTERIZATION = "drazin-characterization"
    GROUP_CHARACTERIZATION = "group-characterization"
    K_DMP = "k-dmp"
    DUAL_K_DMP = "dual-k-dmp"
    K_EP = "k-ep"
    WG = "wg"
    K_WC = "k-wc"
    DUAL_K_WC = "dual-k-wc"
    LOW_INDEX_DMP_WC = "low-index-dmp-wc"
    K_INDEX_EP = "k-index-ep"
    EP_ALL_INVERSES = "ep-all-inverses"
    CROSS_BACKEND = "cross-backend-audit"  # not a theorem: exact vs float agreement


T = TheoremId


class PremiseError(ValueError):
    """premise unmet; proposition not applicable"""


class Variant(Enum):
    PLAIN = "plain"
    QA_PREFIXED = "QA_prefixed"
    PA_SUFFIXED = "PA_suffixed"


@dataclass(frozen=True)
class Clause:
    group: str
    label: str
    holds: bool
    residual: float = 0.0
    expect: bool | None = None


@dataclass
class VerificationReport:
    theorem: TheoremId
    matrix_id: str = ""
    clauses: list = field(default_factory=list)
    note: str = ""

    def add(self, group, label, holds, residual=0.0, expect=None):
        self.clauses.append(Clause(group, label, bool(holds), float(residual), expect))

    def failures(self) -> list[str]:
        out = []
        groups: dict = {}
        for c in self.clauses:
            groups.setdefault(c.group, []).append(c)
            if c.expect is not None and c.holds != c.expect:
                out.append(f"{c.group}/{c.label}: got {c.holds}, expected {c.expect}")
        for g, cs in groups.items():
            if len({c.holds for c in cs}) > 1:
                vals = ", ".join(f"{c.label}={c.holds}" for c in cs)
                out.append(f"{g}: clauses disagree ({vals})")
        return out

    @property
    def verdict(self) -> bool:
        return not self.failures()

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "matrix_id": self.matrix_id,
            "verdict": "pass" if self.verdict else "fail",
            "failures": self.failures(),
            "clauses": [
                {"group": c.group, "label": c.label, "holds": c.holds,
                 "residual": c.residual, "expect": c.expect}
                for c in self.clauses
            ],
            "note": self.note,
        }


# ---------------------------------------------------------------------------
# shared helpers


class _Env:
    """Everything a suite may need for one matrix, computed once."""

    def __init__(self, A, tol: Tolerance = DEFAULT_TOL, ctx: InverseContext | None = None):
        self.A, self.tol = A, tol
        self.ctx = ctx if ctx is not None else InverseContext(A, tol)
        self.k = self.ctx.k
        self.exact = is_exact(A)
        self._D = None
        self._st = None

    @property
    def D(self) -> CoreEPForm:
        if self._D is None:
            self._D, _ = decompose_with_fallback(self.A, self.tol)
        return self._D

    @property
    def st(self) -> _Struct:
        if self._st is None:
            self._st = _Struct(self.D, self.tol)
        return self._st

    def inv(self, kind):
        return self.ctx.inverse(kind)

    def P(self, m):
        return self.ctx.power(m)

    def eq(self, X, Y, scale: float | None = None):
        """(equal, residual) for two matrices of this backend."""
        R = X - Y
        if self.exact:
            z = R.is_zero()
            return z, 0.0 if z else max_abs(R)
        res = max_abs(R)
        if scale is None:
            scale = max(max_abs(X), max_abs(Y))
        return res <= self.tol.eq_abs_tol * max(1.0, scale), res

    def commutes(self, m, X):
        P = self.P(m)
        if self.exact:
            return self.eq(P @ X, X @ P)
        return self.eq(P @ X, X @ P, max_abs(P) * max_abs(X))

    def sweep(self, X):
        """Commutation with A^m for m = 1..2k+2: (all, some, worst residual, per-m list)."""
        res = [self.commutes(m, X) for m in range(1, 2 * self.k + 3)]
        flags = [r[0] for r in res]
        return all(flags), any(flags), max(r[1] for r in res), flags

    def rank(self, X, power: int = 1):
        return rank(X, self.tol, scale=None if self.exact else opnorm(self.A) ** power)


def _mid(matrix_id):
    return "" if matrix_id is None else str(matrix_id)


# ---------------------------------------------------------------------------
# outer inverses with prescribed range


def _range_in(env: _Env, X, Y) -> bool:
    """``R(X) ⊆ R(Y)``; on floats both sides are normalized first so ranks share a scale."""
    if env.exact:
        return range_subset(X, Y)
    X = X / max(opnorm(X), 1e-300)
    Y = Y / max(opnorm(Y), 1e-300)
    return rank(hstack([Y, X]), env.tol, scale=1.0) == rank(Y, env.tol, scale=1.0)


def _outer_range(env: _Env, Z):
    outer, r1 = env.eq(Z @ env.A @ Z, Z)
    Ak = env.P(env.k)
    return outer, _range_in(env, Z, Ak) and _range_in(env, Ak, Z), r1


def check_outer_with_range(A, Z, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``Z A Z = Z`` and ``R(Z) = R(A^k)``."""
    env = _Env(A, tol)
    outer, rng_ok, _ = _outer_range(env, Z)
    return outer and rng_ok


def _block_shape(env: _Env, Z):
    # U^* Z U = [[T^{-1}, *], [0, 0]]
    D = env.D
    Zf = Z if (is_exact(Z) == D.exact) else to_float(Z)
    B = adjoint(D.U) @ Zf @ D.U
    t = D.t
    Ti = inverse_nonsingular(D.T, env.tol)
    if D.exact:
        return (B[:t, :t] == Ti) and B[t:, :].is_zero()
    sc = max(1.0, max_abs(B))
    return (max_abs(B[:t, :t] - Ti) <= env.tol.eq_abs_tol * sc
            and max_abs(B[t:, :]) <= env.tol.eq_abs_tol * sc)


def outer_inverse_report(A, Zs: dict, tol: Tolerance = DEFAULT_TOL, matrix_id=None,
                         env: _Env | None = None) -> VerificationReport:
    """For each candidate ``Z``: outer inverse with range ``R(A^k)`` iff the block shape holds."""
    env = env if env is not None else _Env(A, tol)
    rep = VerificationReport(T.OUTER_INVERSE_FORM, _mid(matrix_id))
    if env.k == 0:
        rep.note = "index 0: not applicable"
        return rep
    for name, Z in Zs.items():
        outer, rng_ok, r = _outer_range(env, Z)
        rep.add(name, "Z in A{2} and R(Z) = R(A^k)", outer and rng_ok, r)
        rep.add(name, "U^* Z U = [[T^-1, Z2], [0, 0]]", _block_shape(env, Z))
    return rep


# ---------------------------------------------------------------------------
# commutation with A^m


def _variant_X(env: _Env, Z, variant: Variant):
    if variant is Variant.PLAIN:
        return Z
    if variant is Variant.QA_PREFIXED:
        return env.ctx.factor("Q_A") @ Z
    return Z @ env.ctx.factor("P_A")


def drazin_by_commutation(A, Z, m: int, variant="plain", tol: Tolerance = DEFAULT_TOL,
                          env: _Env | None = None) -> bool:
    """Whether ``A^m X = X A^m`` for ``X`` built from ``Z`` per ``variant``.

    Raises
    ------
    PremiseError
        If ``Z`` is not an outer inverse of ``A`` with range ``R(A^k)``.
    """
    env = env if env is not None else _Env(A, tol)
    variant = Variant(variant)
    if m < 1:
        raise ValueError("m must be a positive integer")
    outer, rng_ok, _ = _outer_range(env, Z)
    if not (outer and rng_ok):
        raise PremiseError("premise unmet; proposition not applicable")
    return env.commutes(m, _variant_X(env, Z, variant))[0]


_PROP_THEOREM = {Variant.PLAIN: T.PLAIN, Variant.QA_PREFIXED: T.QA_PREFIXED,
                 Variant.PA_SUFFIXED: T.PA_SUFFIXED}


def _monotone(env: _Env, X, flags):
    # A^m X = X A^m  =>  A^{sm} X = X A^{sm}, s <= 4
    ok = True
    for m, f in enumerate(flags, start=1):
        if f:
            ok = ok and all(env.commutes(s * m, X)[0] for s in range(2, 5))
    return ok


def commutation_propositions_suite(A, tol: Tolerance = DEFAULT_TOL, matrix_id=None,
                                   Zs: dict | None = None, env: _Env | None = None):
    """The three "some m => Drazin" propositions, one report per variant."""
    env = env if env is not None else _Env(A, tol)
    if env.k == 0:
        return []
    if Zs is None:
        Zs = {"Z=drazin": env.inv(K.DRAZIN), "Z=core-ep": env.inv(K.CORE_EP),
              "Z=wg": env.inv(K.WG)}
    Ad = env.inv(K.DRAZIN)
    out = []
    for variant in Variant:
        rep = VerificationReport(_PROP_THEOREM[variant], _mid(matrix_id))
        for name, Z in Zs.items():
            outer, rng_ok, _ = _outer_range(env, Z)
            rep.add(name + "/premise", "Z in A{2}, R(Z) = R(A^k)", outer and rng_ok, expect=True)
            X = _variant_X(env, Z, variant)
            a, ra = env.eq(X, Ad)
            b, c, rb, flags = env.sweep(X)
            rep.add(name, "(a) X = A^d", a, ra)
            rep.add(name, "(b) A^m X = X A^m for all m", b, rb)
            rep.add(name, "(c) A^m X = X A^m for some m", c, rb)
            rep.add(name + "/monotone", "A^m X = X A^m => A^{sm} X = X A^{sm}",
                    _monotone(env, X, flags), expect=True)
        out.append(rep)
    return out


def commuting_inverse_suite(A, tol: Tolerance = DEFAULT_TOL, matrix_id=None,
                            env: _Env | None = None) -> VerificationReport:
    """For each of the eight outer inverses: ``X = A^d`` iff it commutes with every / some ``A^m``."""
    env = env if env is not None else _Env(A, tol)
    rep = VerificationReport(T.COMMUTING_INVERSES, _mid(matrix_id))
    if env.k == 0:
        rep.note = "index 0: not applicable"
        return rep
    Ad = env.inv(K.DRAZIN)
    for kind in COMMUTING_KINDS:
        X = env.inv(kind)
        a, ra = env.eq(X, Ad)
        b, c, rb, _ = env.sweep(X)
        rep.add(kind.value, "(a) X = A^d", a, ra)
        rep.add(kind.value, "(b) for all m", b, rb)
        rep.add(kind.value, "(c) for some m", c, rb)
    return rep


# ---------------------------------------------------------------------------
# Drazin characterization by AX^2 = X


def _drazin_clauses(env: _Env, X, k: int):
    A = env.A
    c1, r1 = env.eq(A @ X @ X, X)
    c2, r2 = env.commutes(k, X) if k >= 1 else (True, 0.0)
    c3 = _range_in(env, env.P(k), X)
    return c1, c2, c3, max(r1, r2)


def drazin_characterization_check(A, X, tol: Tolerance = DEFAULT_TOL, env: _Env | None = None) -> bool:
    """``A X^2 = X``, ``A^k X = X A^k`` and ``R(A^k) ⊆ R(X)`` all hold."""
    env = env if env is not None else _Env(A, tol)
    c1, c2, c3, _ = _drazin_clauses(env, X, env.k)
    return c1 and c2 and c3


def _perturbation_coords(D: CoreEPForm, limit: int | None):
    t = D.t
    coords = [(i, j) for i in range(t) for j in range(t)]
    if limit is not None and len(coords) > limit:
        coords = [(i, i) for i in range(t)] + [(0, j) for j in range(1, t)]
    return coords


def drazin_characterization_suite(A, tol: Tolerance = DEFAULT_TOL, matrix_id=None,
                                  env: _Env | None = None, eps=None,
                                  max_perturbations: int | None = None):
    """Drazin characterization (and its index-one case) on a family of candidates.

    Candidates are ``A^d``, the eight outer inverses, ``A^+``, and ``A^d``
    perturbed by ``eps`` (default 1/2) at single coordinates of the
    leading block in core-EP coordinates; each perturbation must break
    the conjunction.
    """
    env = env if env is not None else _Env(A, tol)
    reports = []
    Ad = env.inv(K.DRAZIN)
    k = env.k
    cands = {"drazin": Ad, "moore-penrose": env.inv(K.MOORE_PENROSE)}
    if k >= 1:
        for kind in COMMUTING_KINDS:
            cands[kind.value] = env.inv(kind)
    if k >= 1:
        rep = VerificationReport(T.DRAZIN_CHARACTERIZATION, _mid(matrix_id))
        for name, X in cands.items():
            c1, c2, c3, r = _drazin_clauses(env, X, k)
            is_d, rd = env.eq(X, Ad)
            rep.add(name, "X = A^d", is_d, rd)
            rep.add(name, "AX^2 = X, A^kX = XA^k, R(A^k) in R(X)", c1 and c2 and c3, r)
        D = env.D
        if eps is None:
            eps = Fraction(1, 2) if env.exact else 0.5
        for (i, j) in _perturbation_coords(D, max_perturbations):
            E = _unit(D, i, j) * eps
            Xp = Ad + (E if is_exact(E) == env.exact else to_float(E))
            c1, c2, c3, r = _drazin_clauses(env, Xp, k)
            rep.add(f"perturbed({i},{j})", "conditions hold", c1 and c2 and c3, r, expect=False)
        reports.append(rep)
    if k <= 1:
        rep = VerificationReport(T.GROUP_CHARACTERIZATION, _mid(matrix_id))
        for name, X in cands.items():
            c1, c2, c3, r = _drazin_clauses(env, X, 1)
            is_g, rg = env.eq(X, Ad)
            rep.add(name, "X = A^#", is_g, rg)
            rep.add(name, "AX^2 = X, AX = XA, R(A) in R(X)", c1 and c2 and c3, r)
        reports.append(rep)
    return reports


def _unit(D: CoreEPForm, i, j):
    # U E_ij U^*: a single coordinate of the leading block in core-EP coordinates
    n = D.n
    if D.exact:
        re = ExactMatrix.zeros(n, n).numerators[0].copy()
        re[i, j] = 1
        E = ExactMatrix(re)
    else:
        E = np.zeros((n, n), dtype=complex)
        E[i, j] = 1
    return D.U @ E @ adjoint(D.U)


# ---------------------------------------------------------------------------
# class theorems


def _mem(env, label, m=None):
    return _member(env.ctx, label, m)


def _struct(env, label, m=None):
    return _structural(env.st, label, m)


def class_theorem_suites(A, tol: Tolerance = DEFAULT_TOL, matrix_id=None,
                         env: _Env | None = None) -> list[VerificationReport]:
    """Every clause of the DMP, dual DMP, k-EP, WG, WC, dual WC and
    k-index EP characterizations, the low-index remark, and the EP corollary."""
    env = env if env is not None else _Env(A, tol)
    mid = _mid(matrix_id)
    out = []
    if env.k >= 1:
        out += [_k_dmp(env, mid), _dual_k_dmp(env, mid), _k_ep(env, mid), _wg(env, mid),
                _k_wc(env, mid), _dual_k_wc(env, mid), _low_index(env, mid),
                _k_index_ep(env, mid)]
    out.append(_ep_corollary(env, mid))
    return out


def _std_commuting(rep, env, g, X, Ad):
    b, c, rb, _ = env.sweep(X)
    d, rd = env.eq(X, Ad)
    rep.add(g, "(b) for all m", b, rb)
    rep.add(g, "(c) for some m", c, rb)
    rep.add(g, "(d) X = A^d", d, rd)


def _k_dmp(env, mid):
    rep = VerificationReport(T.K_DMP, mid)
    k = env.k
    Ad, Mp = env.inv(K.DRAZIN), env.inv(K.MOORE_PENROSE)
    h, r = _mem(env, L.K_DMP)
    rep.add("main", "(a) k-DMP", h, r)
    _std_commuting(rep, env, "main", env.inv(K.DMP), Ad)
    rep.add("main", "(e) A^{k+1} A^+ = A^k", *env.eq(env.P(k + 1) @ Mp, env.P(k)))
    rep.add("main", "CMP = dual DMP", *env.eq(env.inv(K.CMP), env.inv(K.DUAL_DMP)))
    rep.add("main", "N(N^*) in N(T~_k)", _struct(env, L.K_DMP))
    return rep


def _dual_k_dmp(env, mid):
    rep = VerificationReport(T.DUAL_K_DMP, mid)
    k = env.k
    Ad, Mp = env.inv(K.DRAZIN), env.inv(K.MOORE_PENROSE)
    h, r = _mem(env, L.DUAL_K_DMP)
    rep.add("main", "(a) dual k-DMP", h, r)
    _std_commuting(rep, env, "main", env.inv(K.DUAL_DMP), Ad)
    rep.add("main", "(e) A^+ A^{k+1} = A^k", *env.eq(Mp @ env.P(k + 1), env.P(k)))
    rep.add("main", "CMP = DMP", *env.eq(env.inv(K.CMP), env.inv(K.DMP)))
    rep.add("main", "N(N) in N(S)", _struct(env, L.DUAL_K_DMP))
    return rep


def _k_ep(env, mid):
    rep = VerificationReport(T.K_EP, mid)
    k = env.k
    Ad, Mp = env.inv(K.DRAZIN), env.inv(K.MOORE_PENROSE)
    rep.add("main", "(a) k-EP", *_mem(env, L.K_EP))
    rep.add("main", "k-CMP", *_mem(env, L.K_CMP))
    sw = [env.sweep(env.inv(x)) for x in (K.DMP, K.DUAL_DMP)]
    rep.add("main", "(b) for all m, both X", all(s[0] for s in sw), max(s[2] for s in sw))
    rep.add("main", "(c) for some m, both X", all(s[1] for s in sw))
    eqs = [env.eq(env.inv(x), Ad) for x in (K.DMP, K.DUAL_DMP)]
    rep.add("main", "(d) X = A^d, both X", all(e[0] for e in eqs), max(e[1] for e in eqs))
    Ak1 = env.P(k + 1)
    e1, r1 = env.eq(Ak1 @ Mp, env.P(k))
    e2, r2 = env.eq(Mp @ Ak1, env.P(k))
    rep.add("main", "(e) A^{k+1}A^+ = A^+A^{k+1} = A^k", e1 and e2, max(r1, r2))
    rep.add("main", "k-DMP and dual k-DMP (structural)",
            _struct(env, L.K_DMP) and _struct(env, L.DUAL_K_DMP))
    return rep


def _wg(env, mid):
    rep = VerificationReport(T.WG, mid)
    A, k = env.A, env.k
    W, C, Ad = env.inv(K.WG), env.inv(K.CORE_EP), env.inv(K.DRAZIN)
    rep.add("main", "(a) WG matrix: A A^w = A^w A", *_mem(env, L.WG_MATRIX))
    rep.add("main", "(b) DMP = core-EP", *env.eq(env.inv(K.DMP), C))
    rep.add("main", "(c) MPCEP = CMP", *env.eq(env.inv(K.MPCEP), env.inv(K.CMP)))
    CA2 = C @ env.P(2)
    rep.add("main", "(d) C A^2 = C A^2 C A", *env.eq(CA2, CA2 @ C @ A))
    rep.add("main", "(e) R(N) in N(T~_k)", _struct(env, L.K_WG))
    rep.add("main", "k-WG", *_mem(env, L.K_WG))
    rep.add("main", "A^w = A^d", *env.eq(W, Ad))
    rep.add("main", "S N = 0", _struct(env, L.WG_MATRIX))
    W2 = InverseContext(env.P(2), env.tol).inverse(K.WG)
    rep.add("main", "(A^2)^w = (A^w)^2", *env.eq(W2, W @ W))
    b, c, rb, _ = env.sweep(W)
    rep.add("main", "A^m A^w = A^w A^m for all m", b, rb)
    st = env.st
    rep.add("main", "T~_m N = 0 for all m",
            all(st.zero(st.Tt(m) @ env.D.N, m + 1) for m in range(1, 2 * k + 3)))
    return rep


def _k_wc(env, mid):
    rep = VerificationReport(T.K_WC, mid)
    Ad = env.inv(K.DRAZIN)
    rep.add("main", "(a) k-WC", *_mem(env, L.K_WC))
    _std_commuting(rep, env, "main", env.inv(K.WC), Ad)
    wc, _ = _wc_aux_member(env.ctx)
    rep.add("main", "(e) WC and k-DMP", wc and _mem(env, L.K_DMP)[0])
    rep.add("main", "(f) R(N^2) in N(S) and N(N^*) in N(T~_k)",
            _wc_aux_structural(env.st) and _struct(env, L.K_DMP))
    rep.add("main", "(g) SN + TS(I - P_N) = 0", _struct(env, L.K_WC))
    rep.add("aux", "WC: A A^w A = A^w A^2", wc)
    rep.add("aux", "WC: S N^2 = 0", _wc_aux_structural(env.st))
    return rep


def _dual_k_wc(env, mid):
    rep = VerificationReport(T.DUAL_K_WC, mid)
    Ad = env.inv(K.DRAZIN)
    rep.add("main", "(a) dual k-WC", *_mem(env, L.DUAL_K_WC))
    _std_commuting(rep, env, "main", env.inv(K.DUAL_WC), Ad)
    rep.add("main", "(e) k-WG and dual k-DMP",
            _mem(env, L.K_WG)[0] and _mem(env, L.DUAL_K_DMP)[0])
    rep.add("main", "(f) R(N) in N(S) and N(N) in N(S)",
            _struct(env, L.WG_MATRIX) and _struct(env, L.DUAL_K_DMP))
    rep.add("main", "(g) SN + TS(I - Q_N) = 0", _struct(env, L.DUAL_K_WC))
    return rep


def _low_index(env, mid):
    rep = VerificationReport(T.LOW_INDEX_DMP_WC, mid)
    if env.k > 2:
        rep.note = "index above 2: not applicable"
        return rep
    Ad = env.inv(K.DRAZIN)
    rep.add("main", "k-DMP", *_mem(env, L.K_DMP))
    rep.add("main", "k-WC", *_mem(env, L.K_WC))
    rep.add("main", "DMP = A^d", *env.eq(env.inv(K.DMP), Ad))
    rep.add("main", "WC = A^d", *env.eq(env.inv(K.WC), Ad))
    rep.add("main", "CMP = dual DMP", *env.eq(env.inv(K.CMP), env.inv(K.DUAL_DMP)))
    rep.add("always", "S N^2 = 0", _wc_aux_structural(env.st), expect=True)
    return rep


def _k_index_ep(env, mid):
    rep = VerificationReport(T.K_INDEX_EP, mid)
    k = env.k
    Ad, C, MC = env.inv(K.DRAZIN), env.inv(K.CORE_EP), env.inv(K.MPCEP)
    g = "main"
    rep.add(g, "(a) k-core EP", *_mem(env, L.K_CORE_EP))
    rep.add(g, "(b) k-index EP", *_mem(env, L.K_INDEX_EP))
    for m in range(1, 2 * k + 1):
        rep.add(g, f"(c) {{m,k}}-core EP, m={m}", *_mem(env, L.MK_CORE_EP, m))
    rep.add(g, "(d) k-MPCEP", *_mem(env, L.K_MPCEP))
    rep.add(g, "(e) k-WC and dual k-WC", _mem(env, L.K_WC)[0] and _mem(env, L.DUAL_K_WC)[0])
    b, c, rb, _ = env.sweep(C)
    rep.add(g, "(f) core-EP commutes for all m", b, rb)
    rep.add(g, "(g) core-EP commutes for some m", c, rb)
    rep.add(g, "(h) core-EP = A^d", *env.eq(C, Ad))
    b, c, rb, _ = env.sweep(MC)
    rep.add(g, "(i) MPCEP commutes for all m", b, rb)
    rep.add(g, "(j) MPCEP commutes for some m", c, rb)
    rep.add(g, "(k) MPCEP = A^d", *env.eq(MC, Ad))
    rep.add(g, "(l) S = 0", _struct(env, L.K_INDEX_EP))
    rep.add(g, "(m) T~_k = 0", _struct(env, L.K_CORE_EP))
    for m in range(1, 2 * k + 3):
        rep.add(g, f"(n) T~_m = 0, m={m}", _struct(env, L.MK_CORE_EP, m))
    eqs = [env.eq(env.inv(x), Ad) for x in COMMUTING_KINDS]
    rep.add(g, "(o) all eight coincide with A^d", all(e[0] for e in eqs), max(e[1] for e in eqs))
    return rep


def _ep_corollary(env, mid):
    rep = VerificationReport(T.EP_ALL_INVERSES, mid)
    Mp = env.inv(K.MOORE_PENROSE)
    rep.add("main", "EP", *_mem(env, L.EP))
    kinds = (K.DRAZIN,) + COMMUTING_KINDS + ((K.GROUP,) if env.k <= 1 else ())
    # at index one CMP and MPCEP both reduce to A^+ for every matrix, so
    # "X = A^+ => EP" cannot hold for them there
    index_one = (K.CMP, K.MPCEP) if env.k == 1 else ()
    for kind in kinds:
        if kind in index_one:
            rep.add("index-one", f"{kind.value} = A^+", *env.eq(env.inv(kind), Mp), expect=True)
        else:
            rep.add("main", f"{kind.value} = A^+", *env.eq(env.inv(kind), Mp))
    if env.k >= 1:
        rep.add("main", "S = 0 and N = 0", _struct(env, L.EP))
    return rep


# ---------------------------------------------------------------------------
# cross-backend audit


def cross_backend_audit(A_exact, tol: Tolerance = DEFAULT_TOL, matrix_id=None) -> VerificationReport:
    """Every inverse and predicate on both backends; float must match the exact lift."""
    if not is_exact(A_exact):
        raise TypeError("cross_backend_audit needs an exact matrix")
    rep = VerificationReport(T.CROSS_BACKEND, _mid(matrix_id))
    Af = to_float(A_exact)
    ce, cf = InverseContext(A_exact, tol), InverseContext(Af, tol)
    rep.add("index", "exact == float", ce.k == cf.k, abs(ce.k - cf.k), expect=True)
    if ce.k != cf.k:
        return rep
    kinds = [x for x in K if not (x is K.GROUP and ce.k > 1)]
    for kind in kinds:
        Xe, Xf = ce.inverse(kind), cf.inverse(kind)
        r = max_abs(to_float(Xe) - Xf)
        rep.add(f"inverse:{kind.value}", "definitional", r <= tol.eq_abs_tol, r, expect=True)
    if ce.k >= 1:
        r = max_abs(to_float(drazin(A_exact, tol, "pinv")) - drazin(Af, tol, "table4"))
        rep.add("inverse:drazin", "exact pinv vs float block form", r <= tol.eq_abs_tol, r, expect=True)
    re_, rf = classify_all(A_exact, tol, ctx=ce), classify_all(Af, tol, ctx=cf)
    for key, v in re_.memberships.items():
        rep.add(f"class:{key}", "exact == float", v == rf.memberships.get(key), expect=True)
    for key, v in re_.aux.items():
        rep.add(f"class:{key}", "exact == float", v == rf.aux.get(key), expect=True)
    return rep


# ---------------------------------------------------------------------------
# suite runner


SUITES = ("all", "s3", "s4", "s5")


def run_suites(A, suite: str = "all", tol: Tolerance = DEFAULT_TOL, matrix_id=None,
               perturbation_limit: int | None = None) -> list[VerificationReport]:
    """Run a named group of suites on one matrix.

    ``s3``: outer-inverse form, commutation propositions, commuting
    inverses, Drazin characterization. ``s4``: the DMP / k-EP / WG / WC
    characterizations and the low-index remark. ``s5``: the k-index EP
    battery and the EP corollary. ``all``: everything.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    env = _Env(A, tol)
    mid = _mid(matrix_id)
    out = []
    if suite in ("all", "s3"):
        if env.k >= 1:
            Zs = {"drazin": env.inv(K.DRAZIN), "core-ep": env.inv(K.CORE_EP), "wg": env.inv(K.WG),
                  "moore-penrose": env.inv(K.MOORE_PENROSE)}
            rep = outer_inverse_report(A, Zs, tol, mid, env=env)
            out.append(rep)
        out += commutation_propositions_suite(A, tol, mid, env=env)
        out.append(commuting_inverse_suite(A, tol, mid, env=env))
        out += drazin_characterization_suite(A, tol, mid, env=env,
                                             max_perturbations=perturbation_limit)
    if suite in ("all", "s4", "s5"):
        reps = class_theorem_suites(A, tol, mid, env=env)
        s5 = {T.K_INDEX_EP, T.EP_ALL_INVERSES}
        out += [r for r in reps if (r.theorem in s5) == (suite == "s5") or suite == "all"]
    return out
