"""Membership in the EP-extending matrix classes.

Every label is decided twice: by its defining commutation identity
(:func:`is_member`) and by a condition on the blocks of the core-EP
decomposition (:func:`structural_member`). :func:`classify_all` runs both
and treats any disagreement as an internal error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .decomposition import (
    CoreEPForm, decompose_with_fallback, t_tilde,
)
from .ginverse import GInverseKind as K, InverseContext
from .numeric import (
    DEFAULT_TOL, Tolerance, adjoint, hstack, identity_like, is_exact, is_zero,
    max_abs, opnorm, rank, vstack,
)

__all__ = [
    "ClassLabel", "ClassificationReport", "IndexZeroError", "PredicateInconsistency",
    "is_member", "structural_member", "classify_all", "hierarchy_check",
    "label_key", "WC_AUX",
]


class ClassLabel(Enum):
    EP = "EP"
    GM = "GM"
    K_INDEX_EP = "kIndexEP"
    K_EP = "kEP"
    K_DMP = "kDMP"
    DUAL_K_DMP = "dualKDMP"
    K_CMP = "kCMP"
    K_CORE_EP = "kCoreEP"
    WG_MATRIX = "WGmatrix"
    MK_CORE_EP = "mkCoreEP"
    K_WG = "kWG"
    K_MPCEP = "kMPCEP"
    K_WC = "kWC"
    DUAL_K_WC = "dualKWC"


L = ClassLabel

# auxiliary class needed by the hierarchy: S N^2 = 0, i.e. A A^w A = A^w A^2
WC_AUX = "WC"

# label -> inverse whose commutator with A^k defines it
_COMMUTING = {
    L.K_DMP: K.DMP, L.DUAL_K_DMP: K.DUAL_DMP, L.K_CMP: K.CMP, L.K_CORE_EP: K.CORE_EP,
    L.K_WG: K.WG, L.K_MPCEP: K.MPCEP, L.K_WC: K.WC, L.DUAL_K_WC: K.DUAL_WC,
}


class IndexZeroError(ValueError):
    """k-indexed classes are undefined for nonsingular input (which is EP)."""


class PredicateInconsistency(RuntimeError):
    """Commutation and structural predicates disagree on some label."""


def label_key(label: ClassLabel, m: int | None = None) -> str:
    label = ClassLabel(label)
    if label is L.MK_CORE_EP:
        return f"mkCoreEP(m={m})"
    return label.value


def _commutator_residual(P, X, tol: Tolerance):
    """(holds, residual) for ``P X = X P``; float threshold scales with the operands."""
    C = P @ X - X @ P
    if is_exact(C):
        z = C.is_zero()
        return z, 0.0 if z else max_abs(C)
    res = max_abs(C)
    return res <= tol.eq_abs_tol * max(1.0, max_abs(P) * max_abs(X)), res


def _eq_residual(L_, R, tol: Tolerance, scale: float = 1.0):
    D = L_ - R
    if is_exact(D):
        z = D.is_zero()
        return z, 0.0 if z else max_abs(D)
    res = max_abs(D)
    return res <= tol.eq_abs_tol * max(1.0, scale), res


def _member(ctx: InverseContext, label: ClassLabel, m: int | None):
    A, tol, k = ctx.A, ctx.tol, ctx.k
    if label is L.EP:
        return _commutator_residual(A, ctx.mp, tol)
    if label is L.GM:
        r1 = rank(A, tol)
        r2 = rank(ctx.power(2), tol, scale=None if is_exact(A) else opnorm(A) ** 2)
        return r1 == r2, float(abs(r1 - r2))
    if k == 0:
        raise IndexZeroError("index-0: class undefined, matrix is EP")
    if label is L.K_INDEX_EP:
        Ak = ctx.power(k)
        return _commutator_residual(Ak, ctx.pinv_power(k), tol)
    if label is L.K_EP:
        return _commutator_residual(ctx.power(k), ctx.mp, tol)
    if label is L.WG_MATRIX:
        return _commutator_residual(A, ctx.inverse(K.WG), tol)
    if label is L.MK_CORE_EP:
        if m is None or m < 1:
            raise ValueError("mkCoreEP needs a positive integer m")
        return _commutator_residual(ctx.power(m), ctx.inverse(K.CORE_EP), tol)
    return _commutator_residual(ctx.power(k), ctx.inverse(_COMMUTING[label]), tol)


def is_member(A, label: ClassLabel, tol: Tolerance = DEFAULT_TOL, m: int | None = None,
              ctx: InverseContext | None = None) -> bool:
    """Membership by the defining commutation identity, with ``k = index_of(A)``.

    Raises
    ------
    IndexZeroError
        For a k-indexed label on nonsingular input.
    """
    ctx = ctx if ctx is not None else InverseContext(A, tol)
    return _member(ctx, ClassLabel(label), m)[0]


def _wc_aux_member(ctx: InverseContext):
    W = ctx.inverse(K.WG)
    A = ctx.A
    return _eq_residual(A @ W @ A, W @ ctx.power(2), ctx.tol, max_abs(W) * max_abs(A) ** 2)


# ---------------------------------------------------------------------------
# structural side


class _Struct:
    def __init__(self, D: CoreEPForm, tol: Tolerance):
        self.D, self.tol = D, tol
        self.sc = 1.0 if D.exact else max(1.0, D.scale)
        self._Tk = {}

    def zero(self, X, deg: int) -> bool:
        return is_zero(X, self.tol, self.sc ** deg)

    def rank(self, X, deg: int) -> int:
        return rank(X, self.tol, scale=None if self.D.exact else self.sc ** deg)

    def Tt(self, m):
        if m not in self._Tk:
            self._Tk[m] = t_tilde(self.D, m)
        return self._Tk[m]

    @property
    def PN(self):
        return self.D.N @ self.D.n_pinv(self.tol)

    @property
    def QN(self):
        return self.D.n_pinv(self.tol) @ self.D.N


def _structural(st: _Struct, label: ClassLabel, m: int | None) -> bool:
    D = st.D
    k = D.k
    S, T, N = D.S, D.T, D.N
    I = identity_like(N)
    if label is L.EP:
        return st.zero(S, 1) and st.zero(N, 1)
    if label is L.GM:
        return st.zero(N, 1)
    if label in (L.K_INDEX_EP, L.K_MPCEP):
        return st.zero(S, 1)
    if label is L.K_CORE_EP:
        return st.zero(st.Tt(k), k)
    if label is L.MK_CORE_EP:
        return st.zero(st.Tt(m), m)
    if label is L.WG_MATRIX:
        return st.zero(S @ N, 2)
    if label is L.K_WG:
        return st.zero(st.Tt(k) @ N, k + 1)
    if label is L.K_DMP:
        # N(N^*) in N(T~_k)  <=>  R(T~_k^*) in R(N)
        return st.rank(hstack([N, adjoint(st.Tt(k))]), k) == st.rank(N, 1)
    if label is L.DUAL_K_DMP:
        # N(N) in N(S)  <=>  rank [N; S] = rank N
        return st.rank(vstack([N, S]), 1) == st.rank(N, 1)
    if label is L.K_WC:
        return st.zero(S @ N + T @ S @ (I - st.PN), 2)
    if label is L.DUAL_K_WC:
        return st.zero(S @ N + T @ S @ (I - st.QN), 2)
    if label in (L.K_EP, L.K_CMP):
        return _structural(st, L.K_DMP, None) and _structural(st, L.DUAL_K_DMP, None)
    raise ValueError(f"unknown label {label}")


def structural_member(D: CoreEPForm, label: ClassLabel, tol: Tolerance = DEFAULT_TOL,
                      m: int | None = None) -> bool:
    """Membership read off the blocks ``T``, ``S``, ``N`` of a core-EP form."""
    label = ClassLabel(label)
    if label is L.MK_CORE_EP and (m is None or m < 1):
        raise ValueError("mkCoreEP needs a positive integer m")
    return _structural(_Struct(D, tol), label, m)


def _wc_aux_structural(st: _Struct) -> bool:
    N = st.D.N
    return st.zero(st.D.S @ N @ N, 3)


# ---------------------------------------------------------------------------
# aggregation


@dataclass
class ClassificationReport:
    """Result of :func:`classify_all`.

    ``memberships`` maps label keys (``ClassLabel`` values, with
    ``mkCoreEP(m=...)`` for the parametrized class) to booleans, or to
    ``None`` when the class is undefined (nonsingular input).
    """

    index: int
    memberships: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    structural: dict = field(default_factory=dict)
    aux: dict = field(default_factory=dict)
    structural_backend: str | None = None

    def __getitem__(self, key):
        if isinstance(key, ClassLabel):
            key = key.value
        return self.memberships[key]

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "memberships": dict(self.memberships),
            "aux": dict(self.aux),
            "witnesses": {k: float(v) for k, v in self.witnesses.items()},
            "structural_backend": self.structural_backend,
        }


def _all_labels(k: int):
    for label in ClassLabel:
        if label is L.MK_CORE_EP:
            for m in range(1, 2 * k + 1):
                yield label, m
        else:
            yield label, None


def classify_all(A, tol: Tolerance = DEFAULT_TOL, cross_check: bool = True,
                 ctx: InverseContext | None = None) -> ClassificationReport:
    """Evaluate every label; ``mkCoreEP`` for ``m = 1, ..., 2k``.

    With ``cross_check`` the structural predicate is evaluated as well and
    any disagreement raises :class:`PredicateInconsistency`.
    """
    ctx = ctx if ctx is not None else InverseContext(A, tol)
    k = ctx.k
    rep = ClassificationReport(index=k)
    if k == 0:
        for label, m in _all_labels(1):
            if label is L.MK_CORE_EP:
                continue
            rep.memberships[label.value] = None
        for label in (L.EP, L.GM):
            holds, res = _member(ctx, label, None)
            rep.memberships[label.value] = holds
            rep.witnesses[label.value] = res
        rep.aux[WC_AUX] = None
        return rep
    for label, m in _all_labels(k):
        key = label_key(label, m)
        holds, res = _member(ctx, label, m)
        rep.memberships[key] = bool(holds)
        rep.witnesses[key] = float(res)
    holds, res = _wc_aux_member(ctx)
    rep.aux[WC_AUX] = bool(holds)
    rep.witnesses[WC_AUX] = float(res)
    if cross_check:
        D, rep.structural_backend = decompose_with_fallback(A, tol)
        st = _Struct(D, tol)
        bad = []
        for label, m in _all_labels(k):
            key = label_key(label, m)
            rep.structural[key] = _structural(st, label, m)
            if rep.structural[key] != rep.memberships[key]:
                bad.append(key)
        rep.structural[WC_AUX] = _wc_aux_structural(st)
        if rep.structural[WC_AUX] != rep.aux[WC_AUX]:
            bad.append(WC_AUX)
        if bad:
            raise PredicateInconsistency(
                "commutation and structural predicates disagree on: " + ", ".join(bad))
    return rep


# ---------------------------------------------------------------------------
# lattice


def _implications(rep: ClassificationReport):
    """Yield (description, premise labels, conclusion labels, kind) tuples.

    kind "imp": all(premise) => all(conclusion); "iff": all(premise) <=> all(conclusion).
    """
    mk = sorted(key for key in rep.memberships if key.startswith("mkCoreEP("))
    others = [l.value for l in ClassLabel if l not in (L.EP, L.GM, L.MK_CORE_EP, L.K_INDEX_EP)]
    for c in others + mk:
        yield f"kIndexEP => {c}", ("kIndexEP",), (c,), "imp"
    for c in ["kCoreEP", "kMPCEP"] + mk:
        yield f"kIndexEP <=> {c}", ("kIndexEP",), (c,), "iff"
    yield "kIndexEP <=> kWC and dualKWC", ("kIndexEP",), ("kWC", "dualKWC"), "iff"
    yield "kWC <=> WC and kDMP", ("kWC",), (WC_AUX, "kDMP"), "iff"
    yield "dualKWC <=> kWG and dualKDMP", ("dualKWC",), ("kWG", "dualKDMP"), "iff"
    yield "kWG <=> WGmatrix", ("kWG",), ("WGmatrix",), "iff"
    yield "kEP <=> kDMP and dualKDMP", ("kEP",), ("kDMP", "dualKDMP"), "iff"
    yield "kCMP <=> kEP", ("kCMP",), ("kEP",), "iff"
    yield "EP => GM", ("EP",), ("GM",), "imp"
    yield "EP => kIndexEP", ("EP",), ("kIndexEP",), "imp"
    if rep.index is not None and 1 <= rep.index <= 2:
        yield "k <= 2: kDMP <=> kWC", ("kDMP",), ("kWC",), "iff"


def hierarchy_check(report: ClassificationReport) -> list[str]:
    """Implications among the classes that fail in ``report``.

    Implications that mention a label absent from the report (or recorded
    as ``None``) are skipped.
    """
    vals = dict(report.memberships)
    vals.update(report.aux)
    out = []
    for desc, prem, concl, kind in _implications(report):
        if any(vals.get(x) is None for x in prem + concl):
            continue
        p = all(vals[x] for x in prem)
        c = all(vals[x] for x in concl)
        if (kind == "imp" and p and not c) or (kind == "iff" and p != c):
            out.append(desc)
    return out
