"""Seeded random matrices with a prescribed core-EP structure.

A form ``(U, T, S, N)`` is drawn directly and assembled, so ``t``, ``k``
and class membership are known by construction. Class targets are linear
constraints on ``S`` for fixed ``T`` and ``N``; ``S`` is drawn from the
solution space of those constraints.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.stats

from .classes import ClassLabel
from .decomposition import CoreEPForm, assemble, t_tilde
from .numeric import (
    ExactMatrix, GaussianRational, identity_like, inverse_nonsingular,
    is_exact, nullspace, pinv, zeros_like,
)

__all__ = [
    "GeneratorSpec", "generate", "generate_form", "random_corpus", "InfeasibleClassWarning",
]

L = ClassLabel


class InfeasibleClassWarning(UserWarning):
    """Only ``S = 0`` satisfies the class constraint for the drawn ``T`` and ``N``."""


@dataclass(frozen=True)
class GeneratorSpec:
    """Shape and class of a generated matrix.

    ``backend`` is ``"float"`` (random unitary ``U``) or ``"exact"``
    (``U = I``, small Gaussian-integer entries).
    """

    n: int
    t: int
    k: int
    target_class: ClassLabel | None = None
    seed: int = 0
    backend: str = "float"

    def __post_init__(self):
        if not 1 <= self.t < self.n:
            raise ValueError("need 1 <= t < n (t = n would give index 0)")
        if not 1 <= self.k <= self.n - self.t:
            raise ValueError("need 1 <= k <= n - t")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.backend not in ("float", "exact"):
            raise ValueError("backend must be 'float' or 'exact'")
        if self.target_class is not None:
            object.__setattr__(self, "target_class", ClassLabel(self.target_class))
            if self.target_class in (L.EP, L.GM) and self.k != 1:
                raise ValueError(f"{self.target_class.value} requires k = 1 (N = 0)")


# ---------------------------------------------------------------------------
# random blocks


def _jordan_sizes(rng, m: int, k: int) -> list[int]:
    sizes = [k]
    rest = m - k
    while rest > 0:
        s = int(rng.integers(1, min(k, rest) + 1))
        sizes.append(s)
        rest -= s
    return sizes


def _nilpotent_pattern(rng, m: int, k: int) -> np.ndarray:
    J = np.zeros((m, m), dtype=int)
    pos = 0
    for s in _jordan_sizes(rng, m, k):
        for i in range(pos, pos + s - 1):
            J[i, i + 1] = 1
        pos += s
    return J


def _float_blocks(rng, spec: GeneratorSpec):
    t, m, k = spec.t, spec.n - spec.t, spec.k
    cn = lambda *shape: rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    # moduli of the eigenvalues of T kept near one so high powers stay tame
    diag = rng.uniform(0.7, 1.4, t) * np.exp(2j * np.pi * rng.uniform(0, 1, t))
    T = np.diag(diag) + 0.3 * np.triu(cn(t, t), 1)
    Lm = np.eye(m) + 0.5 * np.triu(cn(m, m), 1)
    N = Lm @ _nilpotent_pattern(rng, m, k) @ np.linalg.inv(Lm)
    N = np.triu(N, 1)  # similarity by unit upper triangular keeps N strictly upper
    S = 0.5 * cn(t, m)
    U = scipy.stats.unitary_group.rvs(spec.n, random_state=rng) if spec.n > 1 else np.eye(1)
    return U, T, S, N


def _gauss_int(rng, shape, lo=-2, hi=2, p_imag=0.25):
    re = rng.integers(lo, hi + 1, size=shape)
    im = rng.integers(lo, hi + 1, size=shape) * (rng.uniform(size=shape) < p_imag)
    return re, im


def _exact_from(re, im) -> ExactMatrix:
    return ExactMatrix(np.asarray(re, dtype=object), np.asarray(im, dtype=object))


def _exact_blocks(rng, spec: GeneratorSpec):
    t, m, k = spec.t, spec.n - spec.t, spec.k
    choices = [(1, 0), (-1, 0), (2, 0), (-2, 0), (1, 1), (1, -1), (0, 1)]
    d = [choices[i] for i in rng.integers(0, len(choices), size=t)]
    re, im = _gauss_int(rng, (t, t), -1, 1)
    re, im = np.triu(re, 1), np.triu(im, 1)
    for i, (a, b) in enumerate(d):
        re[i, i], im[i, i] = a, b
    T = _exact_from(re, im)
    lr, _ = _gauss_int(rng, (m, m), -1, 1, p_imag=0.0)
    Lm = _exact_from(np.triu(lr, 1) + np.eye(m, dtype=int), np.zeros((m, m), dtype=int))
    J = _exact_from(_nilpotent_pattern(rng, m, k), np.zeros((m, m), dtype=int))
    N = Lm @ J @ inverse_nonsingular(Lm)
    S = _exact_from(*_gauss_int(rng, (t, m)))
    return ExactMatrix.identity(spec.n), T, S, N


# ---------------------------------------------------------------------------
# class constraints on S (all linear in S for fixed T, N)


def _constraints(label: ClassLabel, T, N, k: int):
    """Linear maps S -> matrix whose vanishing encodes the class, or None for S = 0."""
    I = identity_like(N)
    Np = pinv(N)
    PN, QN = N @ Np, Np @ N

    def tt(S, m):
        return t_tilde(CoreEPForm(U=None, T=T, S=S, N=N, t=T.shape[0], k=k), m)

    if label in (L.EP, L.GM, L.K_INDEX_EP, L.K_CORE_EP, L.MK_CORE_EP, L.K_MPCEP):
        return None
    if label in (L.WG_MATRIX, L.K_WG):
        return [lambda S: S @ N]
    if label is L.K_WC:
        return [lambda S: S @ N + T @ S @ (I - PN)]
    if label is L.DUAL_K_WC:
        return [lambda S: S @ N + T @ S @ (I - QN)]
    if label is L.K_DMP:
        return [lambda S: tt(S, k) @ (I - PN)]
    if label is L.DUAL_K_DMP:
        return [lambda S: S @ (I - QN)]
    if label in (L.K_EP, L.K_CMP):
        return [lambda S: tt(S, k) @ (I - PN), lambda S: S @ (I - QN)]
    raise ValueError(f"unknown label {label}")


def _flatten(X):
    if is_exact(X):
        return [X[i, j] for i in range(X.shape[0]) for j in range(X.shape[1])]
    return list(np.asarray(X).ravel())


def _solve_for_S(rng, maps, T, N, exact: bool):
    t, m = T.shape[0], N.shape[0]
    cols = []
    for idx in range(t * m):
        if exact:
            E = ExactMatrix.zeros(t, m).numerators[0].copy()
            E[idx // m, idx % m] = 1
            E = ExactMatrix(E)
        else:
            E = np.zeros((t, m), dtype=complex)
            E[idx // m, idx % m] = 1
        col = []
        for f in maps:
            col.extend(_flatten(f(E)))
        cols.append(col)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))]
    M = ExactMatrix.from_entries(rows) if exact else np.array(rows, dtype=complex)
    B = nullspace(M)
    dim = B.shape[1]
    if dim == 0:
        return None
    if exact:
        coef = ExactMatrix.from_entries([[GaussianRational(int(c))] for c in
                                         rng.integers(-2, 3, size=dim)])
        if coef.is_zero():
            coef = ExactMatrix.from_entries([[1]] + [[0]] * (dim - 1))
        v = B @ coef
        return ExactMatrix.from_entries([[v[i * m + j, 0] for j in range(m)] for i in range(t)])
    c = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v = np.asarray(B) @ c
    v = v / max(np.linalg.norm(v), 1e-300) * np.sqrt(t * m) * 0.5
    return v.reshape(t, m)


def generate_form(spec: GeneratorSpec) -> CoreEPForm:
    """Random core-EP form meeting ``spec`` (deterministic per seed)."""
    rng = np.random.default_rng(spec.seed)
    exact = spec.backend == "exact"
    U, T, S, N = (_exact_blocks if exact else _float_blocks)(rng, spec)
    label = spec.target_class
    if label is not None:
        maps = _constraints(label, T, N, spec.k)
        if maps is None:
            S = zeros_like(S, *S.shape)
        else:
            S_new = _solve_for_S(rng, maps, T, N, exact)
            if S_new is None:
                warnings.warn(f"no nonzero S satisfies {label.value} for this T, N; using S = 0",
                              InfeasibleClassWarning, stacklevel=2)
                S = zeros_like(S, *S.shape)
            else:
                S = S_new
    return CoreEPForm(U=U, T=T, S=S, N=N, t=spec.t, k=spec.k)


def generate(spec: GeneratorSpec):
    """``assemble(generate_form(spec))``."""
    return assemble(generate_form(spec))


def random_corpus(count: int, seed: int = 0, backend: str = "float", n_max: int = 8,
                  k_max: int = 4, labels=None):
    """``count`` seeded ``(spec, A)`` pairs with ``2 <= n <= n_max``, ``k <= k_max``.

    Class targets cycle through ``labels`` (default: no target plus every
    k-indexed class); shapes are drawn from a generator seeded by ``seed``.
    Infeasibility warnings are silenced here since the corpus only needs
    valid matrices, not guaranteed nonzero ``S``.
    """
    if labels is None:
        labels = [None] + [c for c in ClassLabel if c not in (L.EP, L.GM)]
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(2, n_max + 1))
        t = int(rng.integers(1, n))
        k = int(rng.integers(1, min(k_max, n - t) + 1))
        spec = GeneratorSpec(n, t, k, labels[i % len(labels)], seed=seed * 1_000_003 + i,
                             backend=backend)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", InfeasibleClassWarning)
            out.append((spec, generate(spec)))
    return out
