import os
import subprocess
import sys

import numpy as np
import pytest

from ginv import kernels, _pykernels


def _obj(a):
    return np.asarray(a, dtype=object)


def _rand(rng, shape, lo=-3, hi=3):
    return _obj(rng.integers(lo, hi + 1, size=shape)), _obj(rng.integers(lo, hi + 1, size=shape))


def _same(x, y):
    if isinstance(x, tuple):
        return len(x) == len(y) and all(_same(a, b) for a, b in zip(x, y))
    if isinstance(x, np.ndarray):
        return x.shape == np.asarray(y).shape and all(int(a) == int(b) for a, b in zip(x.ravel(), np.asarray(y).ravel()))
    if isinstance(x, list):
        return list(x) == list(y)
    return x == y


@pytest.mark.skipif(kernels._ckernels is None, reason="compiled kernels not built")
@pytest.mark.parametrize("seed", range(20))
def test_compiled_matches_python(seed):
    rng = np.random.default_rng(seed)
    m, q, n = rng.integers(1, 7, size=3)
    a, b = _rand(rng, (m, q)), _rand(rng, (q, n))
    assert _same(kernels._ckernels.gi_matmul(*a, *b), _pykernels.gi_matmul(*a, *b))
    re, im = _rand(rng, (m, n), -2, 2)
    assert _same(kernels._ckernels.gi_gauss_jordan(re, im), _pykernels.gi_gauss_jordan(re, im))


def test_matmul_is_complex_product():
    rng = np.random.default_rng(1)
    a, b = _rand(rng, (4, 3)), _rand(rng, (3, 5))
    cr, ci = kernels.gi_matmul(*a, *b)
    A = a[0].astype(complex) + 1j * a[1].astype(complex)
    B = b[0].astype(complex) + 1j * b[1].astype(complex)
    np.testing.assert_array_equal(cr.astype(complex) + 1j * ci.astype(complex), A @ B)


def test_overflow_falls_back_to_bigints():
    big = 2 ** 62
    a = (_obj([[big, big]]), _obj([[0, 0]]))
    b = (_obj([[big], [big]]), _obj([[0], [0]]))
    cr, ci = kernels.gi_matmul(*a, *b)
    assert int(cr[0, 0]) == 2 * big * big and int(ci[0, 0]) == 0
    re = _obj([[big, 3], [5, big]])
    im = _obj([[0, 0], [0, 0]])
    assert _same(kernels.gi_gauss_jordan(re, im), _pykernels.gi_gauss_jordan(re, im))


def test_pure_python_env_switch():
    code = "from ginv import kernels, KERNEL_BACKEND; print(KERNEL_BACKEND, kernels._ckernels is None)"
    env = dict(os.environ, GINV_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "True"]


def test_exact_results_independent_of_backend(monkeypatch):
    from ginv.ginverse import GInverseKind, compute_inverse
    from matrices import A1, A3
    with_c = {(name, k): compute_inverse(A, k) for name, A in (("A1", A1), ("A3", A3)) for k in GInverseKind if k.value != "group"}
    monkeypatch.setattr(kernels, "_ckernels", None)
    without = {(name, k): compute_inverse(A, k) for name, A in (("A1", A1), ("A3", A3)) for k in GInverseKind if k.value != "group"}
    assert with_c.keys() == without.keys()
    assert all(with_c[k] == without[k] for k in with_c)
