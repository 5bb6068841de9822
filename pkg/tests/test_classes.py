import numpy as np
import pytest

from ginv.classes import (
    ClassificationReport, ClassLabel as L, IndexZeroError, WC_AUX, classify_all,
    hierarchy_check, is_member, label_key, structural_member,
)
from ginv.decomposition import CoreEPForm, core_ep_decompose, index_of
from ginv.ginverse import InverseContext
from ginv.numeric import ExactMatrix, mat_pow

from matrices import A1, A2, E, FIXTURES, I4

EXPECTED = {
    # anchored memberships; the rest frozen from the exact evaluation
    "A1": {L.K_WC: True, L.K_DMP: True, L.K_INDEX_EP: False, L.WG_MATRIX: False},
    "A2": {L.DUAL_K_WC: True, L.K_INDEX_EP: False, L.WG_MATRIX: True, L.K_DMP: False},
    "A3": {L.K_DMP: True, L.K_WC: False, L.DUAL_K_DMP: False},
    "A4": {L.DUAL_K_DMP: True, L.DUAL_K_WC: False, L.K_DMP: True},
}


@pytest.mark.parametrize("name", list(EXPECTED))
def test_fixture_memberships(name):
    A = FIXTURES[name]
    rep = classify_all(A)
    for label, v in EXPECTED[name].items():
        assert rep[label] is v, label
        assert is_member(A, label) is v
    assert rep.structural_backend == "exact"
    assert hierarchy_check(rep) == []


@pytest.mark.parametrize("name", list(EXPECTED))
def test_fixture_memberships_float(name):
    A = FIXTURES[name]
    assert classify_all(A.to_numpy()).memberships == classify_all(A).memberships


def test_identity():
    rep = classify_all(I4)
    assert rep.index == 0
    assert rep[L.EP] is True and rep[L.GM] is True
    assert all(v is None for k, v in rep.memberships.items() if k not in ("EP", "GM"))
    assert is_member(I4, L.EP)
    with pytest.raises(IndexZeroError, match="index-0"):
        is_member(I4, L.K_WC)


def test_structural_examples():
    D1, D2 = core_ep_decompose(A1), core_ep_decompose(A2)
    assert structural_member(D1, L.K_WC)
    assert D1.S @ D1.N == E([[0, 0, -1]])
    assert structural_member(D2, L.DUAL_K_WC)
    D0 = CoreEPForm(U=ExactMatrix.identity(4), T=E([[2]]), S=E([[0, 0, 0]]), N=D1.N, t=1, k=3)
    assert structural_member(D0, L.K_INDEX_EP)
    with pytest.raises(ValueError):
        structural_member(D1, L.MK_CORE_EP)


def test_label_key():
    assert label_key(L.MK_CORE_EP, 2) == "mkCoreEP(m=2)"
    assert label_key(L.K_WC) == "kWC"


def test_report_keys_cover_mk_sweep():
    rep = classify_all(A1)
    assert [k for k in rep.memberships if k.startswith("mkCoreEP")] == [
        f"mkCoreEP(m={m})" for m in range(1, 7)]
    assert set(rep.aux) == {WC_AUX}
    assert set(rep.to_dict()) >= {"index", "memberships", "witnesses", "aux"}


def test_hierarchy_violation_detected():
    rep = ClassificationReport(index=3, memberships={"kIndexEP": True, "kWC": False})
    assert len(hierarchy_check(rep)) == 1


def _pred_checks(A):
    ctx = InverseContext(A)
    k = ctx.k
    Ak, Ak1, Mp = mat_pow(A, k), mat_pow(A, k + 1), ctx.mp
    return {
        L.K_DMP: Ak1 @ Mp == Ak,
        L.DUAL_K_DMP: Mp @ Ak1 == Ak,
        L.K_EP: Ak1 @ Mp == Ak and Mp @ Ak1 == Ak,
    }


def test_exact_corpus_predicates(exact_corpus):
    for spec, A in exact_corpus[:200]:
        rep = classify_all(A)
        assert hierarchy_check(rep) == [], spec
        for label, v in _pred_checks(A).items():
            assert rep[label] is v, (spec, label)
        assert rep[L.K_CMP] is rep[L.K_EP]
        if rep.index <= 2:
            assert rep[L.K_DMP] is rep[L.K_WC]
        if rep[L.EP]:
            assert rep[L.GM]


def test_float_corpus_predicates(float_corpus):
    for spec, A in float_corpus:
        rep = classify_all(A)
        assert hierarchy_check(rep) == [], spec
        if spec.target_class is not None:
            m = 1 if spec.target_class is L.MK_CORE_EP else None
            assert rep[label_key(spec.target_class, m)] is True, spec


def test_ep_implies_gm():
    rng = np.random.default_rng(3)
    for _ in range(10):
        Q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        A = Q @ np.diag([1.0, 2.0, 0.0, 0.0]) @ Q.T
        rep = classify_all(A)
        assert rep[L.EP] and rep[L.GM] and index_of(A) == 1
