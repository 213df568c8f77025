"""Spiked covariance models, reference directions, and data samplers.

Conventions
-----------
- Data matrices are ``(p, n)``: columns are observations.
- Direction sets (true PC directions, reference directions, bases) are
  ``(p, k)``: columns are vectors in R^p.
- Samplers are pure functions of ``(spec, seed)``; the seed may be an int
  or a sequence of ints (a substream key), fed to ``numpy.random.SeedSequence``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "SpikedModelSpec",
    "ReferenceSet",
    "SampleDraw",
    "make_walsh_basis",
    "reference_single",
    "reference_two_spike",
    "references_from_weights",
    "sample_gaussian",
    "sample_student_t",
]

SeedLike = int | Sequence[int]

_ORTHO_TOL = 1e-10
_UNIT_TOL = 1e-10
_INDEP_TOL = 1e-8


@dataclass(frozen=True)
class SpikedModelSpec:
    """Ground-truth generative model with ``m`` eigenvalues of order ``p``.

    The population covariance is

        Sigma = sum_i sigma_sq[i] * p * u_i u_i^T + tau_sq * I_p,

    whose eigenvalues are ``sigma_sq[i] * p + tau_sq`` along the spike
    directions (the columns ``u_i`` of ``U_m``) and ``tau_sq`` elsewhere.

    Parameters
    ----------
    p : int
        Dimension.
    n : int
        Sample size (number of observation columns).
    m : int
        Number of spikes, ``1 <= m <= n - 2``.
    sigma_sq : tuple of float
        Spike strengths, nonincreasing and positive, length ``m``.
    tau_sq : float
        Noise variance, positive.
    U_m : (p, m) ndarray
        True spike directions, orthonormal columns.
    mu : (p,) ndarray, optional
        Mean vector; defaults to zero.
    """

    p: int
    n: int
    m: int
    sigma_sq: tuple[float, ...]
    tau_sq: float
    U_m: np.ndarray
    mu: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.p < 1 or self.n < 1:
            raise ValueError("p and n must be positive.")
        if not 1 <= self.m <= self.n - 2:
            raise ValueError(f"m must satisfy 1 <= m <= n - 2, got m={self.m}, n={self.n}.")
        sigma_sq = tuple(float(s) for s in np.atleast_1d(np.asarray(self.sigma_sq, dtype=float)))
        if len(sigma_sq) != self.m:
            raise ValueError(f"sigma_sq must have length m={self.m}, got {len(sigma_sq)}.")
        if any(s <= 0 for s in sigma_sq):
            raise ValueError("spike strengths must be positive.")
        if any(sigma_sq[i] < sigma_sq[i + 1] for i in range(len(sigma_sq) - 1)):
            raise ValueError("spike strengths must be nonincreasing.")
        if self.tau_sq <= 0:
            raise ValueError("tau_sq must be positive.")
        U = np.asarray(self.U_m, dtype=float)
        if U.shape != (self.p, self.m):
            raise ValueError(f"U_m must have shape ({self.p}, {self.m}), got {U.shape}.")
        gram_dev = np.abs(U.T @ U - np.eye(self.m)).max()
        if gram_dev > _ORTHO_TOL:
            raise ValueError(f"columns of U_m must be orthonormal (Gram deviation {gram_dev:.2e}).")
        mu = self.mu
        if mu is not None:
            mu = np.asarray(mu, dtype=float).reshape(-1)
            if mu.shape[0] != self.p:
                raise ValueError(f"mu must have length p={self.p}.")
        object.__setattr__(self, "sigma_sq", sigma_sq)
        object.__setattr__(self, "U_m", U)
        object.__setattr__(self, "mu", mu)

    @property
    def spike_eigenvalues(self) -> np.ndarray:
        """Population eigenvalues along the spike directions, ``(m,)``."""
        return np.asarray(self.sigma_sq) * self.p + self.tau_sq


@dataclass(frozen=True)
class ReferenceSet:
    """A set of unit-norm, linearly independent reference directions.

    Parameters
    ----------
    V : (p, r) ndarray
        Reference directions as columns; each has unit norm and the columns
        are linearly independent (smallest singular value above 1e-8).
    alignment : (m, r) ndarray, optional
        Inner products ``u_i^T v_j`` between true spike directions and the
        references, recorded when the references were synthesized from a
        known model. Entries lie in [-1, 1].
    """

    V: np.ndarray
    alignment: np.ndarray | None = None

    def __post_init__(self) -> None:
        V = np.asarray(self.V, dtype=float)
        if V.ndim != 2 or V.shape[1] < 1:
            raise ValueError("V must be a (p, r) matrix with r >= 1.")
        norms = np.linalg.norm(V, axis=0)
        if np.abs(norms - 1.0).max() > _UNIT_TOL:
            raise ValueError("reference columns must have unit norm.")
        smin = np.linalg.svd(V, compute_uv=False).min()
        if smin <= _INDEP_TOL:
            raise ValueError(
                f"reference columns must be linearly independent (smallest singular value {smin:.2e})."
            )
        A = self.alignment
        if A is not None:
            A = np.asarray(A, dtype=float)
            if A.ndim != 2 or A.shape[1] != V.shape[1]:
                raise ValueError("alignment must be an (m, r) matrix matching V's column count.")
            if np.abs(A).max() > 1.0 + 1e-12:
                raise ValueError("alignment coefficients must lie in [-1, 1].")
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "alignment", A)

    @property
    def r(self) -> int:
        return self.V.shape[1]


@dataclass(frozen=True)
class SampleDraw:
    """One sampled data set.

    Parameters
    ----------
    X : (p, n) ndarray
        Data matrix, columns are observations.
    latent_scores : (n, m) ndarray, optional
        Column ``i`` holds ``sigma_i * z_i`` where ``z_i`` are the
        standardized scores of the draw along the i-th spike direction,
        ``z_i = u_i^T (X - mu 1^T) / sqrt(lambda_i)``. Used by the
        large-p oracle checks.
    seed : int or tuple of int
        The substream key the draw was generated from.
    """

    X: np.ndarray
    latent_scores: np.ndarray | None
    seed: SeedLike

    def __post_init__(self) -> None:
        X = np.asarray(self.X, dtype=float)
        if not np.isfinite(X).all():
            raise ValueError("sample contains non-finite entries.")
        object.__setattr__(self, "X", X)


def make_walsh_basis(p: int) -> np.ndarray:
    """Return four orthonormal block-sign vectors e1..e4 as a ``(p, 4)`` matrix.

    Each vector has entries ``+-1/sqrt(p)`` in four equal blocks of length
    ``p/4`` with sign patterns ``(+ + + +)``, ``(+ + - -)``, ``(+ - - +)``
    and ``(+ - + -)``.

    Raises
    ------
    ValueError
        If ``p`` is not a positive multiple of 4.
    """
    if p < 4 or p % 4 != 0:
        raise ValueError(f"p must be a positive multiple of 4, got p={p}.")
    q = p // 4
    block = np.ones(q)
    s = 1.0 / np.sqrt(p)
    e1 = s * np.concatenate([block, block, block, block])
    e2 = s * np.concatenate([block, block, -block, -block])
    e3 = s * np.concatenate([block, -block, -block, block])
    e4 = s * np.concatenate([block, -block, block, -block])
    return np.column_stack([e1, e2, e3, e4])


def reference_single(a1: float, e1: np.ndarray, e2: np.ndarray) -> ReferenceSet:
    """Build the single reference ``v1 = a1 * e1 + sqrt(1 - a1^2) * e2``.

    ``e1`` and ``e2`` must be orthonormal; ``a1`` is the alignment of the
    reference with ``e1`` and must lie in [0, 1].
    """
    if not 0.0 <= a1 <= 1.0:
        raise ValueError(f"a1 must lie in [0, 1], got {a1}.")
    e1 = np.asarray(e1, dtype=float).reshape(-1)
    e2 = np.asarray(e2, dtype=float).reshape(-1)
    if e1.shape != e2.shape:
        raise ValueError("e1 and e2 must have the same length.")
    for name, e in (("e1", e1), ("e2", e2)):
        if abs(np.linalg.norm(e) - 1.0) > _UNIT_TOL:
            raise ValueError(f"{name} must have unit norm.")
    if abs(e1 @ e2) > _ORTHO_TOL:
        raise ValueError("e1 and e2 must be orthogonal.")
    v1 = a1 * e1 + np.sqrt(1.0 - a1 * a1) * e2
    return ReferenceSet(V=v1[:, None], alignment=np.array([[a1]]))


def reference_two_spike(E: np.ndarray) -> ReferenceSet:
    """Build the fixed reference pair used by the two-spike benchmark design.

    Given the ``(p, 4)`` orthonormal system ``E = [e1, e2, e3, e4]``:

        v1 = (e1 + e2 + e3 + e4) / 2,
        v2 = (e1 - e3) / sqrt(2).

    The recorded alignment with the true directions ``(e1, e2)`` is
    ``u1^T v1 = u2^T v1 = 1/2``, ``u1^T v2 = 1/sqrt(2)``, ``u2^T v2 = 0``.
    """
    E = np.asarray(E, dtype=float)
    if E.ndim != 2 or E.shape[1] != 4:
        raise ValueError("E must be a (p, 4) matrix of orthonormal columns.")
    if np.abs(E.T @ E - np.eye(4)).max() > _ORTHO_TOL:
        raise ValueError("columns of E must be orthonormal.")
    v1 = E.sum(axis=1) / 2.0
    v2 = (E[:, 0] - E[:, 2]) / np.sqrt(2.0)
    alignment = np.array([[0.5, 1.0 / np.sqrt(2.0)], [0.5, 0.0]])
    return ReferenceSet(V=np.column_stack([v1, v2]), alignment=alignment)


def references_from_weights(E: np.ndarray, weights: np.ndarray, m: int) -> ReferenceSet:
    """Build references as combinations of the Walsh system ``E``.

    ``weights`` is ``(r, 4)``; reference ``j`` is ``E @ weights[j]`` and must
    come out unit norm (rows of ``weights`` must have unit norm since ``E``
    is orthonormal). The recorded alignment with the first ``m`` columns of
    ``E`` (the true directions of the synthetic designs) is
    ``weights[:, :m].T``.
    """
    E = np.asarray(E, dtype=float)
    weights = np.atleast_2d(np.asarray(weights, dtype=float))
    if weights.shape[1] != 4:
        raise ValueError("weights must have shape (r, 4).")
    if not 1 <= m <= 4:
        raise ValueError("m must be between 1 and 4 for Walsh-based designs.")
    V = E @ weights.T
    return ReferenceSet(V=V, alignment=weights[:, :m].T.copy())


def _rng(seed: SeedLike) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def _latent_scores(spec: SpikedModelSpec, X: np.ndarray) -> np.ndarray:
    """Scores ``sigma_i * z_i`` of the realized draw, as an ``(n, m)`` matrix."""
    centered = X if spec.mu is None else X - spec.mu[:, None]
    proj = spec.U_m.T @ centered                      # (m, n), rows are sqrt(lambda_i) z_i
    z = proj / np.sqrt(spec.spike_eigenvalues)[:, None]
    return (z * np.sqrt(np.asarray(spec.sigma_sq))[:, None]).T


def _gaussian_core(spec: SpikedModelSpec, rng: np.random.Generator) -> np.ndarray:
    """Zero-mean Gaussian sample with covariance exactly
    ``sum_i sigma_sq[i] * p * u_i u_i^T + tau_sq * I_p``.

    Built from latent spike scores plus ambient noise, which keeps the cost
    at O(p n (m + 1)) and never forms a p-by-p factor:
    the spike part contributes ``sigma_i^2 p`` along ``u_i``, the ambient
    noise contributes ``tau_sq`` in every direction, and the two are
    independent, so the covariances add.
    """
    z_spike = rng.standard_normal((spec.m, spec.n))
    noise = rng.standard_normal((spec.p, spec.n))
    scale = np.sqrt(np.asarray(spec.sigma_sq) * spec.p)
    return spec.U_m @ (scale[:, None] * z_spike) + np.sqrt(spec.tau_sq) * noise


def sample_gaussian(spec: SpikedModelSpec, seed: SeedLike) -> SampleDraw:
    """Draw ``n`` Gaussian observations from the spiked model.

    Deterministic in ``(spec, seed)``; the same key always yields a
    bit-identical draw.
    """
    rng = _rng(seed)
    X = _gaussian_core(spec, rng)
    if spec.mu is not None:
        X = X + spec.mu[:, None]
    return SampleDraw(X=X, latent_scores=_latent_scores(spec, X), seed=seed)


def sample_student_t(spec: SpikedModelSpec, dof: float, seed: SeedLike) -> SampleDraw:
    """Draw from an elliptical multivariate t with scale matrix equal to the
    model covariance.

    Each observation column is a zero-mean Gaussian column divided by
    ``sqrt(chi2_j / dof)`` with one chi-square mixing draw per column
    (so the population covariance is the scale matrix times
    ``dof / (dof - 2)`` when ``dof > 2``). The location ``mu`` is added
    after mixing.
    """
    if dof <= 0:
        raise ValueError(f"dof must be positive, got {dof}.")
    rng = _rng(seed)
    G = _gaussian_core(spec, rng)
    chi2 = rng.chisquare(dof, size=spec.n)
    X = G * np.sqrt(dof / chi2)[None, :]
    if spec.mu is not None:
        X = X + spec.mu[:, None]
    return SampleDraw(X=X, latent_scores=_latent_scores(spec, X), seed=seed)
