"""Hypothesis properties over exact and float matrices."""

import warnings

import numpy as np
from hypothesis import HealthCheck, given, settings, strategies as st

from ginv.classes import ClassLabel, classify_all, label_key
from ginv.decomposition import assemble, core_ep_decompose, index_of, t_tilde
from ginv.generate import GeneratorSpec, InfeasibleClassWarning, generate, generate_form
from ginv.ginverse import GInverseKind as K, InverseContext, core_ep_inverse, drazin, moore_penrose
from ginv.io import dumps, loads
from ginv.numeric import ExactMatrix, adjoint, is_zero, mat_pow, rank
from ginv.verify import check_outer_with_range

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

gint = st.integers(-3, 3)


@st.composite
def exact_square(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    re = draw(st.lists(st.lists(gint, min_size=n, max_size=n), min_size=n, max_size=n))
    im = draw(st.lists(st.lists(st.sampled_from([0, 0, 0, 1, -1]), min_size=n, max_size=n),
                       min_size=n, max_size=n))
    return ExactMatrix(np.array(re, dtype=object), np.array(im, dtype=object))


@st.composite
def specs(draw, backend="exact", classes=True):
    n = draw(st.integers(2, 6))
    t = draw(st.integers(1, n - 1))
    k = draw(st.integers(1, n - t))
    label = None
    if classes:
        opts = [None] + [c for c in ClassLabel if c not in (ClassLabel.EP, ClassLabel.GM)]
        label = draw(st.sampled_from(opts))
    seed = draw(st.integers(0, 2 ** 32))
    return GeneratorSpec(n, t, k, label, seed=seed, backend=backend)


def _gen(spec, form=False):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InfeasibleClassWarning)
        return generate_form(spec) if form else generate(spec)


@SETTINGS
@given(exact_square(), exact_square())
def test_adjoint_involution_and_product(A, B):
    assert adjoint(adjoint(A)) == A
    if A.shape == B.shape:
        assert adjoint(A @ B) == adjoint(B) @ adjoint(A)


@SETTINGS
@given(exact_square(), st.integers(0, 4), st.integers(0, 4))
def test_mat_pow_additive(A, a, b):
    assert mat_pow(A, a + b) == mat_pow(A, a) @ mat_pow(A, b)


@SETTINGS
@given(exact_square())
def test_rank_of_adjoint(A):
    assert rank(A) == rank(adjoint(A))
    assert rank(A) == np.linalg.matrix_rank(A.to_numpy())


@SETTINGS
@given(exact_square())
def test_moore_penrose_equations(A):
    X = moore_penrose(A)
    assert A @ X @ A == A and X @ A @ X == X
    assert adjoint(A @ X) == A @ X and adjoint(X @ A) == X @ A


@SETTINGS
@given(exact_square())
def test_drazin_and_core_ep(A):
    k = index_of(A)
    X = drazin(A)
    Ak = mat_pow(A, k)
    assert Ak @ A @ X == Ak and X @ A @ X == X and A @ X == X @ A
    C = core_ep_inverse(A)
    assert check_outer_with_range(A, C)


@SETTINGS
@given(specs())
def test_generated_structure(spec):
    D = _gen(spec, form=True)
    A = assemble(D)
    assert index_of(A) == spec.k
    assert rank(mat_pow(A, spec.k)) == spec.t
    assert is_zero(mat_pow(D.N, spec.k)) and not is_zero(mat_pow(D.N, spec.k - 1))


@SETTINGS
@given(specs(classes=False), st.integers(1, 6))
def test_t_tilde_recursion(spec, m):
    D = _gen(spec, form=True)
    lhs = t_tilde(D, m + 1)
    rhs = D.T @ t_tilde(D, m) + D.S @ mat_pow(D.N, m)
    assert lhs == rhs
    # top-right block of the m-th power (the exact generator uses U = I)
    Am = mat_pow(assemble(D), m)
    assert Am[:D.t, D.t:] == t_tilde(D, m)


@SETTINGS
@given(specs())
def test_decompose_assemble_round_trip(spec):
    A = _gen(spec)
    D = core_ep_decompose(A)
    assert (D.t, D.k) == (spec.t, spec.k)
    assert assemble(D) == A


@SETTINGS
@given(specs())
def test_generated_class_is_member(spec):
    A = _gen(spec)
    rep = classify_all(A)
    if spec.target_class is not None:
        assert rep.memberships[label_key(spec.target_class, 1)]


@SETTINGS
@given(specs(backend="float"))
def test_float_inverse_residuals(spec):
    A = _gen(spec)
    ctx = InverseContext(A)
    X, Y = ctx.mp, ctx.inverse(K.DRAZIN)
    k = spec.k
    Ak = np.linalg.matrix_power(A, k)
    scale = max(1.0, np.abs(A).max()) ** (k + 1)
    assert np.abs(A @ X @ A - A).max() <= 1e-9 * scale
    assert np.abs(Ak @ A @ Y - Ak).max() <= 1e-9 * scale * max(1.0, np.abs(Y).max())
    assert np.abs(A @ Y - Y @ A).max() <= 1e-9 * scale * max(1.0, np.abs(Y).max())


@SETTINGS
@given(exact_square())
def test_io_round_trip(A):
    text = dumps(A)
    assert loads(text) == A and dumps(loads(text)) == text
    F = A.to_numpy() / 3
    assert dumps(loads(dumps(F))) == dumps(F)
