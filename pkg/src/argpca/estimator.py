"""Negatively ridged discriminant vectors and the adaptive reference-guided
(ARG) subspace estimator.

Given the sample PC decomposition of p >> n data and a set of reference
directions, the negatively ridged discriminant vectors

    d_i = -lambda_tilde * (S_m - lambda_tilde I)^{-1} v_i

are computable from data alone yet asymptotically orthogonal to the true
spike subspace. The ARG estimator is the orthogonal complement of
span(d_1..d_r) within the signal subspace spanned by the leading sample
PC directions and the references; equivalently it is the span of
``(S_m - lambda_tilde I)(I - P_V) U_hat_m``, which is what this module
computes. The production path never materializes a p-by-p operator; the
direct solve exists only as a bounded-size test oracle.

The single-spike, single-reference closed form coincides with James-Stein
shrinkage of the leading sample PC direction toward the reference; only
this formulation is implemented.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DegenerateGeometryError, RidgeSingularityError
from .model import ReferenceSet
from .pca import SamplePca

__all__ = [
    "SubspaceBasis",
    "RidgeVectors",
    "ridge_vectors_expansion",
    "ridge_vectors_direct",
    "arg_subspace",
    "arg_vector_single",
    "orthonormalize",
]

_RANK_TOL = 1e-10
_RIDGE_TOL = 1e-10
_ORTHO_ASSERT_TOL = 1e-8
_DIRECT_MAX_P = 2000


@dataclass(frozen=True)
class SubspaceBasis:
    """A ``(p, k)`` matrix with orthonormal columns spanning a subspace."""

    B: np.ndarray

    def __post_init__(self) -> None:
        B = np.asarray(self.B, dtype=float)
        if B.ndim == 1:
            B = B[:, None]
        if not 1 <= B.shape[1] <= B.shape[0]:
            raise ValueError(f"need 1 <= k <= p, got shape {B.shape}.")
        dev = np.abs(B.T @ B - np.eye(B.shape[1])).max()
        if dev > _ORTHO_ASSERT_TOL:
            raise ValueError(f"columns must be orthonormal (Gram deviation {dev:.2e}).")
        object.__setattr__(self, "B", B)

    @property
    def p(self) -> int:
        return self.B.shape[0]

    @property
    def k(self) -> int:
        return self.B.shape[1]


@dataclass(frozen=True)
class RidgeVectors:
    """Negatively ridged discriminant vectors and the orthogonal residuals.

    ``D`` holds the unnormalized vectors ``d_1..d_r`` as columns;
    ``V_tilde`` holds the components of the references orthogonal to the
    sample PC subspace.
    """

    D: np.ndarray
    V_tilde: np.ndarray


def _check_ridge(pca: SamplePca) -> None:
    lam = pca.lambdas
    gap = np.abs(lam[: pca.m] - pca.lambda_tilde).min()
    if gap <= _RIDGE_TOL * lam[0]:
        raise RidgeSingularityError(
            "negative ridge is singular: a spiked sample eigenvalue equals the "
            f"average of the non-spiked ones (gap {gap:.3e} vs scale {lam[0]:.3e}). "
            "This happens only when the leading eigenvalues are all tied, a "
            "probability-zero event for continuous data."
        )


def _validate_rank(D: np.ndarray) -> None:
    norms = np.linalg.norm(D, axis=0)
    if norms.min() <= 0.0:
        raise DegenerateGeometryError("a discriminant vector vanished.")
    smin = np.linalg.svd(D / norms[None, :], compute_uv=False).min()
    if smin <= _RANK_TOL:
        raise DegenerateGeometryError(
            f"discriminant vectors are numerically dependent (smallest singular value {smin:.2e})."
        )


def ridge_vectors_expansion(pca: SamplePca, refs: ReferenceSet) -> RidgeVectors:
    """Discriminant vectors via the rank-m expansion, O(p m r).

    Uses the identity

        d_i = -sum_j [lambda_tilde (u_hat_j^T v_i) / (lambda_j - lambda_tilde)] u_hat_j
              + (I - U_hat_m U_hat_m^T) v_i,

    which never forms a p-by-p operator.
    """
    _check_ridge(pca)
    m = pca.m
    Um = pca.U_hat[:, :m]
    lam = pca.lambdas[:m]
    C = Um.T @ refs.V                                   # (m, r)
    V_tilde = refs.V - Um @ C
    coef = pca.lambda_tilde / (lam - pca.lambda_tilde)  # (m,)
    D = V_tilde - Um @ (coef[:, None] * C)
    _validate_rank(D)
    return RidgeVectors(D=D, V_tilde=V_tilde)


def ridge_vectors_direct(pca: SamplePca, refs: ReferenceSet) -> RidgeVectors:
    """Discriminant vectors by dense solve of the ridged system (test oracle).

    Solves ``(S_m - lambda_tilde I) d_i = -lambda_tilde v_i`` with the
    explicit ``p x p`` spiked covariance component. Guarded to ``p <= 2000``;
    use :func:`ridge_vectors_expansion` in production.
    """
    p = pca.p
    if p > _DIRECT_MAX_P:
        raise ValueError(f"direct solve is a test oracle, limited to p <= {_DIRECT_MAX_P}; got p={p}.")
    _check_ridge(pca)
    m = pca.m
    Um = pca.U_hat[:, :m]
    S_m = (Um * pca.lambdas[:m][None, :]) @ Um.T
    A = S_m - pca.lambda_tilde * np.eye(p)
    D = np.linalg.solve(A, -pca.lambda_tilde * refs.V)
    V_tilde = refs.V - Um @ (Um.T @ refs.V)
    _validate_rank(D)
    return RidgeVectors(D=D, V_tilde=V_tilde)


def orthonormalize(M: np.ndarray) -> SubspaceBasis:
    """Rank-revealing orthonormal basis of the column span of ``M``.

    Thin QR with column pivoting; the numerical rank is the number of
    singular values above ``1e-10`` times the largest, and the returned
    basis has exactly that many columns.

    Raises
    ------
    DegenerateGeometryError
        If ``M`` is numerically zero.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim == 1:
        M = M[:, None]
    if M.shape[1] > M.shape[0]:
        raise ValueError(f"need k <= p, got shape {M.shape}.")
    svals = np.linalg.svd(M, compute_uv=False)
    if svals[0] <= 0.0:
        raise DegenerateGeometryError("cannot orthonormalize a zero matrix.")
    rank = int((svals > _RANK_TOL * svals[0]).sum())
    if rank == 0:
        raise DegenerateGeometryError("cannot orthonormalize a zero matrix.")
    Q, _, _ = scipy.linalg.qr(M, mode="economic", pivoting=True)
    return SubspaceBasis(B=Q[:, :rank])


def arg_subspace(pca: SamplePca, refs: ReferenceSet) -> SubspaceBasis:
    """ARG estimate of the m-dimensional spike subspace.

    Computes an orthonormal basis of
    ``span((S_m - lambda_tilde I)(I - P_V) U_hat_m)`` without forming any
    p-by-p matrix, and verifies the defining property that the result is
    orthogonal to the discriminant vectors.

    Raises
    ------
    RidgeSingularityError
        If the negative ridge is singular.
    DegenerateGeometryError
        If the projected basis loses rank (for example a reference
        coinciding with a sample PC direction) or the reference Gram
        matrix is near-singular.
    """
    m, r = pca.m, refs.r
    if m + r > pca.p:
        raise ValueError(f"need m + r <= p, got m={m}, r={r}, p={pca.p}.")
    _check_ridge(pca)
    Um = pca.U_hat[:, :m]
    lam = pca.lambdas[:m]
    V = refs.V

    gram = V.T @ V
    try:
        sol = scipy.linalg.solve(gram, V.T @ Um, assume_a="pos")
    except scipy.linalg.LinAlgError as exc:
        raise DegenerateGeometryError("reference Gram matrix is near-singular.") from exc
    B0 = Um - V @ sol                                    # (I - P_V) U_hat_m
    M = Um @ (lam[:, None] * (Um.T @ B0)) - pca.lambda_tilde * B0

    svals = np.linalg.svd(M, compute_uv=False)
    if svals[0] <= 0.0 or svals[-1] <= _RANK_TOL * svals[0]:
        raise DegenerateGeometryError(
            "projected spike basis lost rank; a reference direction may coincide "
            "with a sample PC direction."
        )
    basis = orthonormalize(M)
    if basis.k != m:
        raise DegenerateGeometryError(f"expected rank {m}, got {basis.k}.")

    D = ridge_vectors_expansion(pca, refs).D
    D_unit = D / np.linalg.norm(D, axis=0)[None, :]
    dev = np.abs(D_unit.T @ basis.B).max()
    if dev > _ORTHO_ASSERT_TOL:
        raise DegenerateGeometryError(
            f"estimate failed its defining orthogonality to the discriminant vectors ({dev:.2e})."
        )
    return basis


def arg_vector_single(pca: SamplePca, v1: np.ndarray) -> np.ndarray:
    """Closed-form single-spike, single-reference ARG direction (unnormalized).

    Returns

        (lambda_1/lambda_tilde * (1 - c^2) - 1) * u_hat_1 + c * v1,

    with ``c = u_hat_1^T v1``. The caller normalizes. Identical in span to
    :func:`arg_subspace` with ``m = r = 1``, and equal to James-Stein
    shrinkage of ``u_hat_1`` toward ``v1``.
    """
    if pca.m != 1:
        raise ValueError(f"single-spike form requires m=1, got m={pca.m}.")
    if pca.lambda_tilde <= 0.0:
        raise ValueError("lambda_tilde must be positive.")
    v1 = np.asarray(v1, dtype=float).reshape(-1)
    if v1.shape[0] != pca.p:
        raise ValueError(f"v1 must have length p={pca.p}.")
    nv = np.linalg.norm(v1)
    if abs(nv - 1.0) > 1e-8:
        raise ValueError("v1 must have unit norm.")
    u1 = pca.U_hat[:, 0]
    c = float(u1 @ v1)
    coef = pca.lambdas[0] / pca.lambda_tilde * (1.0 - c * c) - 1.0
    w = coef * u1 + c * v1
    norm = np.linalg.norm(w)
    if norm <= 1e-12 * (abs(coef) + abs(c) + 1e-300):
        raise DegenerateGeometryError(
            "guided direction vanished: the reference coincides with the leading "
            "sample PC direction at a degenerate eigenvalue ratio."
        )
    return w
