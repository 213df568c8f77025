"""Principal angles, vector angles, and Gram diagnostics between subspaces."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "AngleReport",
    "principal_angles",
    "vector_angle",
    "projection_norm_sq",
    "gram_min_eig",
]

_GRAM_TOL = 1e-6


@dataclass(frozen=True)
class AngleReport:
    """Principal angles between two subspaces.

    ``angles`` are nondecreasing in [0, pi/2]; ``cosines`` are the
    corresponding singular values of the cross-Gram matrix (nonincreasing,
    clipped into [0, 1] before taking arccos). ``n_clamped`` counts
    singular values that had to be clipped.
    """

    angles: np.ndarray
    cosines: np.ndarray
    n_clamped: int = 0


def _as_matrix(basis) -> np.ndarray:
    """Accept a SubspaceBasis or a raw (p, k) array."""
    B = getattr(basis, "B", basis)
    B = np.asarray(B, dtype=float)
    if B.ndim == 1:
        B = B[:, None]
    return B


def _check_orthonormal(B: np.ndarray, name: str) -> None:
    dev = np.abs(B.T @ B - np.eye(B.shape[1])).max()
    if dev > _GRAM_TOL:
        raise ValueError(f"{name} is not orthonormal (Gram deviation {dev:.2e}).")


def principal_angles(A, B) -> AngleReport:
    """Principal angles between the spans of two orthonormal bases.

    The cosines are the singular values of ``A^T B``; the smallest angle
    (index 0) corresponds to the largest singular value.

    Raises
    ------
    ValueError
        If either input is not orthonormal to 1e-6 or the ambient
        dimensions differ.
    """
    A = _as_matrix(A)
    B = _as_matrix(B)
    if A.shape[0] != B.shape[0]:
        raise ValueError(f"ambient dimensions differ: {A.shape[0]} vs {B.shape[0]}.")
    _check_orthonormal(A, "first basis")
    _check_orthonormal(B, "second basis")
    svals = np.linalg.svd(A.T @ B, compute_uv=False)
    n_clamped = int(((svals < 0.0) | (svals > 1.0)).sum())
    cosines = np.clip(svals, 0.0, 1.0)
    return AngleReport(angles=np.arccos(cosines), cosines=cosines, n_clamped=n_clamped)


def vector_angle(u: np.ndarray, v: np.ndarray) -> float:
    """Sign-invariant angle between two nonzero vectors, in [0, pi/2]."""
    u = np.asarray(u, dtype=float).reshape(-1)
    v = np.asarray(v, dtype=float).reshape(-1)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("vectors must be nonzero.")
    c = min(abs(float(u @ v)) / (nu * nv), 1.0)
    return float(np.arccos(c))


def projection_norm_sq(x: np.ndarray, B) -> float:
    """Squared norm of the projection of ``x`` onto the span of ``B``."""
    B = _as_matrix(B)
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != B.shape[0]:
        raise ValueError(f"dimension mismatch: x has {x.shape[0]}, basis has {B.shape[0]}.")
    _check_orthonormal(B, "basis")
    return float(np.sum((B.T @ x) ** 2))


def gram_min_eig(M: np.ndarray) -> float:
    """Smallest eigenvalue of ``M^T M``, clamped to be nonnegative."""
    M = np.asarray(M, dtype=float)
    if M.ndim == 1:
        M = M[:, None]
    if M.shape[1] < 1:
        raise ValueError("M must have at least one column.")
    val = float(np.linalg.eigvalsh(M.T @ M)[0])
    return max(val, 0.0)
