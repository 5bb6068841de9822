import numpy as np
import pytest

from ginv.generate import GeneratorSpec, generate
from ginv.ginverse import GInverseKind as K, InverseContext, core_ep_inverse, drazin, group_inverse
from ginv.ginverse import moore_penrose
from ginv.numeric import ExactMatrix
from ginv.verify import (
    PremiseError, TheoremId as T, VerificationReport, _Env, check_outer_with_range,
    class_theorem_suites, commutation_propositions_suite, commuting_inverse_suite,
    cross_backend_audit, drazin_by_commutation, drazin_characterization_check,
    drazin_characterization_suite, outer_inverse_report, run_suites,
)

from matrices import A1, A2, A3, A4, E, FIXTURES, I4


def _by_theorem(reports):
    return {r.theorem: r for r in reports}


def _group(rep, group):
    return {c.label: c.holds for c in rep.clauses if c.group == group}


def test_verdict_logic():
    rep = VerificationReport(T.K_DMP)
    rep.add("g", "a", True)
    rep.add("g", "b", True)
    assert rep.verdict
    rep.add("g", "c", False)
    assert not rep.verdict and "disagree" in rep.failures()[0]
    rep2 = VerificationReport(T.K_DMP)
    rep2.add("h", "x", False, expect=True)
    assert not rep2.verdict
    assert rep2.to_dict()["verdict"] == "fail"


def test_outer_with_range_examples():
    assert check_outer_with_range(A1, core_ep_inverse(A1))
    assert not check_outer_with_range(A1, moore_penrose(A1))
    I = ExactMatrix.identity(3)
    assert check_outer_with_range(I, I)


def test_outer_inverse_report_block_shape():
    Zs = {"core-ep": core_ep_inverse(A1), "drazin": drazin(A1), "mp": moore_penrose(A1)}
    rep = outer_inverse_report(A1, Zs, matrix_id="A1")
    assert rep.verdict
    assert set(_group(rep, "core-ep").values()) == {True}
    assert set(_group(rep, "mp").values()) == {False}


def test_drazin_by_commutation_examples():
    C = core_ep_inverse(A1)
    assert drazin_by_commutation(A1, C, 1, "plain") is False
    assert C != drazin(A1)
    A = generate(GeneratorSpec(5, 2, 3, "kIndexEP", seed=2, backend="exact"))
    Z = core_ep_inverse(A)
    for m in range(1, 6):
        assert drazin_by_commutation(A, Z, m, "plain")
    assert Z == drazin(A)
    I = ExactMatrix.identity(3)
    for variant in ("plain", "QA_prefixed", "PA_suffixed"):
        assert drazin_by_commutation(I, I, 5, variant)


def test_drazin_by_commutation_premise():
    with pytest.raises(PremiseError, match="premise unmet"):
        drazin_by_commutation(A1, moore_penrose(A1), 1)
    with pytest.raises(ValueError):
        drazin_by_commutation(A1, drazin(A1), 0)


def test_commuting_inverse_suite_examples():
    rep = commuting_inverse_suite(A3)
    assert rep.verdict
    assert set(_group(rep, "dmp").values()) == {True}
    rep1 = commuting_inverse_suite(A1)
    assert rep1.verdict
    assert set(_group(rep1, "core-ep").values()) == {False}
    A = generate(GeneratorSpec(6, 3, 2, "kIndexEP", seed=8, backend="exact"))
    rep0 = commuting_inverse_suite(A)
    assert rep0.verdict and all(c.holds for c in rep0.clauses)


def test_drazin_characterization_examples():
    assert drazin_characterization_check(A3, drazin(A3))
    C = core_ep_inverse(A1)
    assert not drazin_characterization_check(A1, C)
    assert A1 @ C @ C == C
    A3c = A1 @ A1 @ A1
    assert A3c @ C != C @ A3c
    G = E([[2, 0], [0, 0]])
    assert drazin_characterization_check(G, group_inverse(G))


@pytest.mark.parametrize("name", list(FIXTURES))
def test_perturbations_break_characterization(name):
    reps = _by_theorem(drazin_characterization_suite(FIXTURES[name], matrix_id=name))
    rep = reps[T.DRAZIN_CHARACTERIZATION]
    pert = [c for c in rep.clauses if c.group.startswith("perturbed")]
    assert pert and all(c.expect is False and c.holds is False for c in pert)
    assert rep.verdict


def test_group_characterization_for_index_one():
    A = generate(GeneratorSpec(5, 3, 1, seed=4, backend="exact"))
    reps = _by_theorem(drazin_characterization_suite(A))
    assert T.GROUP_CHARACTERIZATION in reps and reps[T.GROUP_CHARACTERIZATION].verdict


def test_propositions_suite_has_monotone_clauses():
    reps = commutation_propositions_suite(A2)
    assert {r.theorem for r in reps} == {T.PLAIN, T.QA_PREFIXED, T.PA_SUFFIXED}
    for r in reps:
        assert r.verdict
        assert any(c.group.endswith("/monotone") for c in r.clauses)


def test_class_suites_examples():
    reps = _by_theorem(class_theorem_suites(A2))
    assert reps[T.DUAL_K_WC].verdict
    assert all(c.holds for c in reps[T.DUAL_K_WC].clauses)
    reps4 = _by_theorem(class_theorem_suites(A4))
    assert reps4[T.DUAL_K_WC].verdict
    assert not any(c.holds for c in reps4[T.DUAL_K_WC].clauses)


def test_ep_corollary_on_conjugated_diag():
    rng = np.random.default_rng(0)
    Q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    A = Q @ np.diag([1.0, 1.0, 0.0]) @ Q.conj().T
    reps = _by_theorem(class_theorem_suites(A))
    rep = reps[T.EP_ALL_INVERSES]
    assert rep.verdict and all(c.holds for c in rep.clauses)
    ctx = InverseContext(A)
    for kind in K:
        assert np.abs(ctx.inverse(kind) - ctx.mp).max() <= 1e-10


def test_index_one_cmp_mpcep_equal_mp_without_ep():
    A = E([[1, 1], [0, 0]])
    rep = _by_theorem(class_theorem_suites(A))[T.EP_ALL_INVERSES]
    assert rep.verdict
    assert _group(rep, "main")["EP"] is False
    assert set(_group(rep, "index-one").values()) == {True}


@pytest.mark.parametrize("A", [A1, A3, ExactMatrix.identity(6), A2, A4])
def test_cross_backend_audit(A):
    rep = cross_backend_audit(A)
    assert rep.verdict, rep.failures()


def test_cross_backend_audit_needs_exact():
    with pytest.raises(TypeError):
        cross_backend_audit(A1.to_numpy())


def test_identity_suites():
    reps = run_suites(I4, "all")
    assert all(r.verdict for r in reps)
    assert T.EP_ALL_INVERSES in {r.theorem for r in reps}


def test_suite_selection():
    s3 = {r.theorem for r in run_suites(A1, "s3")}
    s4 = {r.theorem for r in run_suites(A1, "s4")}
    s5 = {r.theorem for r in run_suites(A1, "s5")}
    assert T.COMMUTING_INVERSES in s3 and T.K_DMP not in s3
    assert T.K_WC in s4 and T.K_INDEX_EP not in s4
    assert s5 == {T.K_INDEX_EP, T.EP_ALL_INVERSES}
    with pytest.raises(ValueError):
        run_suites(A1, "s9")


def test_float_corpus_suites(float_corpus):
    for spec, A in float_corpus[:100]:
        bad = [r.theorem for r in run_suites(A, "all", perturbation_limit=8) if not r.verdict]
        assert not bad, (spec, bad)


def test_sweep_bound():
    env = _Env(A1)
    _, _, _, flags = env.sweep(drazin(A1))
    assert len(flags) == 2 * 3 + 2
