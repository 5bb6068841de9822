import warnings

import numpy as np
import pytest

from ginv.classes import ClassLabel as L, classify_all, hierarchy_check, label_key
from ginv.decomposition import core_ep_decompose, index_of
from ginv.generate import (
    GeneratorSpec, InfeasibleClassWarning, generate, generate_form, random_corpus,
)
from ginv.io import dumps
from ginv.numeric import is_exact, rank, mat_pow


def test_spec_validation():
    with pytest.raises(ValueError):
        GeneratorSpec(3, 3, 1)
    with pytest.raises(ValueError):
        GeneratorSpec(4, 2, 3)
    with pytest.raises(ValueError):
        GeneratorSpec(4, 1, 1, seed=-1)
    with pytest.raises(ValueError):
        GeneratorSpec(4, 1, 2, L.EP)
    with pytest.raises(ValueError):
        GeneratorSpec(4, 1, 1, backend="mpmath")
    assert GeneratorSpec(4, 1, 1, "kWC").target_class is L.K_WC


def test_kwc_example():
    A = generate(GeneratorSpec(4, 1, 3, L.K_WC, seed=7))
    assert classify_all(A)[L.K_WC] is True


def test_kindexep_example_has_zero_S():
    for backend in ("float", "exact"):
        A = generate(GeneratorSpec(4, 1, 2, L.K_INDEX_EP, seed=1, backend=backend))
        D = core_ep_decompose(A)
        assert np.allclose(np.asarray(D.S.to_numpy() if is_exact(D.S) else D.S), 0)


@pytest.mark.parametrize("backend", ["float", "exact"])
def test_deterministic(backend):
    spec = GeneratorSpec(6, 2, 3, L.DUAL_K_DMP, seed=99, backend=backend)
    assert dumps(generate(spec)) == dumps(generate(spec))
    other = GeneratorSpec(6, 2, 3, L.DUAL_K_DMP, seed=100, backend=backend)
    assert dumps(generate(other)) != dumps(generate(spec))


@pytest.mark.filterwarnings("ignore::ginv.generate.InfeasibleClassWarning")
@pytest.mark.parametrize("backend", ["float", "exact"])
def test_shape_index_and_nilpotency(backend):
    for spec, A in random_corpus(40, seed=5, backend=backend):
        assert index_of(A) == spec.k
        assert rank(mat_pow(A, spec.k)) == spec.t
        D = generate_form(spec)
        assert D.N.shape == (spec.n - spec.t,) * 2


def _labels_with_shape():
    for label in L:
        if label in (L.EP, L.GM):
            yield label, (5, 3, 1)
        else:
            yield label, (6, 2, 3)


@pytest.mark.parametrize("label,shape", list(_labels_with_shape()), ids=lambda x: str(x))
def test_target_class_50_seeds(label, shape):
    n, t, k = shape
    m = 1 if label is L.MK_CORE_EP else None
    for seed in range(50):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", InfeasibleClassWarning)
            A = generate(GeneratorSpec(n, t, k, label, seed=seed))
        rep = classify_all(A)
        assert rep[label_key(label, m)] is True, seed
        assert hierarchy_check(rep) == []


@pytest.mark.filterwarnings("ignore::ginv.generate.InfeasibleClassWarning")
@pytest.mark.parametrize("label", [l for l in L if l not in (L.EP, L.GM)])
def test_target_class_exact(label):
    m = 1 if label is L.MK_CORE_EP else None
    for seed in range(8):
        A = generate(GeneratorSpec(6, 3, 2, label, seed=seed, backend="exact"))
        assert classify_all(A)[label_key(label, m)] is True


def test_nonzero_S_when_feasible():
    with warnings.catch_warnings():
        warnings.simplefilter("error", InfeasibleClassWarning)
        D = generate_form(GeneratorSpec(6, 2, 3, L.K_WC, seed=4))
    assert np.abs(D.S).max() > 0.1


def test_infeasible_warns_and_uses_zero_S():
    # k = 1 means N = 0: SN + TS(I - P_N) = TS forces S = 0
    with pytest.warns(InfeasibleClassWarning):
        D = generate_form(GeneratorSpec(4, 2, 1, L.K_WC, seed=0))
    assert np.abs(D.S).max() == 0
