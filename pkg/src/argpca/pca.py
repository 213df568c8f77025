"""Sample PCA for p >> n data through the n-by-n Gram matrix.

The sample covariance uses divisor ``n`` (not ``n - 1``); most library
defaults differ, so all eigenvalue contracts here are stated for
``S = X_c X_c^T / n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDataError

__all__ = ["SamplePca", "center", "gram_pca", "align_signs"]

_RANK_TOL = 1e-12
_RIDGE_TOL = 1e-10


@dataclass(frozen=True)
class SamplePca:
    """Eigenstructure of the divisor-n sample covariance of centered data.

    Parameters
    ----------
    lambdas : (n-1,) ndarray
        Sample eigenvalues, nonincreasing. The zero eigenvalue introduced
        by centering is discarded.
    U_hat : (p, n-1) ndarray
        Sample PC directions (orthonormal columns, arbitrary signs).
    lambda_tilde : float
        Average of the non-spiked sample eigenvalues,
        ``mean(lambdas[m:])``.
    m : int
        Spike count the decomposition was computed for.
    X_centered : (p, n) ndarray
        The centered data the decomposition came from.
    ridge_warning : bool
        True when ``lambdas[m-1]`` is within ``1e-10 * lambdas[0]`` of
        ``lambda_tilde``; downstream negative-ridge solves will refuse to
        run on such input.
    """

    lambdas: np.ndarray
    U_hat: np.ndarray
    lambda_tilde: float
    m: int
    X_centered: np.ndarray
    ridge_warning: bool = False

    @property
    def p(self) -> int:
        return self.U_hat.shape[0]

    @property
    def n(self) -> int:
        return self.X_centered.shape[1]


def center(X: np.ndarray) -> np.ndarray:
    """Subtract the mean observation: returns ``X - mean(X, axis=1) 1^T``."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] < 2:
        raise ValueError("X must be a (p, n) matrix with n >= 2.")
    return X - X.mean(axis=1, keepdims=True)


def gram_pca(X_centered: np.ndarray, m: int) -> SamplePca:
    """Eigendecompose ``S = X_c X_c^T / n`` via the ``n x n`` Gram matrix.

    Solves the ``n x n`` problem ``G = X_c^T X_c / n`` and maps its
    eigenvectors ``w_i`` back through ``u_i = X_c w_i / sqrt(n lambda_i)``,
    so no ``p x p`` matrix is ever formed. The smallest Gram eigenvalue
    (the null direction from centering) is discarded; the remaining
    ``n - 1`` eigenvalues must be strictly positive relative to the
    largest, otherwise the data are degenerate.

    Parameters
    ----------
    X_centered : (p, n) ndarray
        Centered data, ``p >= n``.
    m : int
        Spike count, ``1 <= m <= n - 2``.

    Raises
    ------
    DegenerateDataError
        If the data are rank deficient beyond the centering null.
    """
    X_c = np.asarray(X_centered, dtype=float)
    if X_c.ndim != 2:
        raise ValueError("X_centered must be a 2-D matrix.")
    p, n = X_c.shape
    if p < n:
        raise ValueError(f"requires p >= n, got p={p}, n={n}.")
    if not 1 <= m <= n - 2:
        raise ValueError(f"m must satisfy 1 <= m <= n - 2, got m={m}, n={n}.")

    G = (X_c.T @ X_c) / n
    evals, evecs = np.linalg.eigh(G)
    order = np.argsort(evals)[::-1]
    lambdas = evals[order][: n - 1]
    W = evecs[:, order][:, : n - 1]

    if lambdas[0] <= 0.0 or lambdas[-1] < _RANK_TOL * lambdas[0]:
        raise DegenerateDataError(
            f"data rank deficient: smallest retained eigenvalue {lambdas[-1]:.3e} "
            f"vs largest {lambdas[0]:.3e}."
        )

    U_hat = X_c @ (W / np.sqrt(n * lambdas)[None, :])
    lambda_tilde = float(lambdas[m:].mean())
    ridge_warning = bool(abs(lambdas[m - 1] - lambda_tilde) < _RIDGE_TOL * lambdas[0])

    return SamplePca(
        lambdas=lambdas,
        U_hat=U_hat,
        lambda_tilde=lambda_tilde,
        m=m,
        X_centered=X_c,
        ridge_warning=ridge_warning,
    )


def align_signs(U: np.ndarray, truth: np.ndarray) -> np.ndarray:
    """Flip columns of ``U`` so that ``u_i^T t_i >= 0`` against ``truth``.

    For vector-level reporting only; subspace metrics are sign-invariant.
    """
    U = np.asarray(U, dtype=float)
    truth = np.asarray(truth, dtype=float)
    k = min(U.shape[1], truth.shape[1])
    signs = np.ones(U.shape[1])
    signs[:k] = np.where(np.einsum("ij,ij->j", U[:, :k], truth[:, :k]) < 0, -1.0, 1.0)
    return U * signs[None, :]
