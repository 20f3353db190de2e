"""Cyclic Jacobi eigenvalues for small dense Hermitian matrices."""
from __future__ import annotations

import math

import numpy as np

JACOBI_TOL = 1e-12


def hermitian_eigvalsh(A, tol: float = JACOBI_TOL, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending.

    Cyclic-by-row Jacobi: each off-diagonal entry ``a_pq`` is first made real
    by a diagonal phase on column ``q``, then annihilated with a real plane
    rotation. Sweeps stop once the off-diagonal Frobenius norm is below
    ``tol * max(1, ||A||_F)``.
    """
    A = np.array(A, dtype=complex)
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if np.max(np.abs(A - A.conj().T)) > 1e-9:
        raise ValueError("matrix is not Hermitian")
    A = 0.5 * (A + A.conj().T)
    if n == 1:
        return A.real.diagonal().copy()

    scale = max(1.0, float(np.linalg.norm(A)))
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(A - np.diag(A.diagonal())))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                phase = apq / r
                A[:, q] *= phase.conjugate()
                A[q, :] *= phase
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(A.real.diagonal())
