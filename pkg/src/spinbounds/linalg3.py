"""Small fixed-size linear algebra: 3x3 symmetric spectral tools and
2x2/4x4 Hermitian helpers.

Real 3-vectors and 3x3 symmetric matrices are plain float64 numpy arrays;
complex Hermitian matrices are complex128 numpy arrays.
"""

from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-9

# Jacobi sweep termination: off-diagonal Frobenius norm relative to the
# matrix scale, with a hard sweep cap (a 3x3 converges in a handful).
_JACOBI_REL_TOL = 1e-14
_JACOBI_MAX_SWEEPS = 50


def as_vec3(v) -> np.ndarray:
    """Coerce to a finite float64 3-vector."""
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("vector has non-finite components")
    return a


def as_sym3(m) -> np.ndarray:
    """Coerce to a finite, exactly symmetric 3x3 float64 matrix.

    Off-diagonal pairs are averaged so downstream code can rely on exact
    symmetry regardless of how the input was assembled.
    """
    a = np.asarray(m, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return 0.5 * (a + a.T)


def sym3_traces(a: np.ndarray) -> tuple[float, float, float]:
    """Trace powers (tr A, tr A^2, tr A^3) of a symmetric 3x3 matrix.

    Computed directly from the entries, not via eigenvalues.
    """
    a = as_sym3(a)
    t1 = float(np.trace(a))
    a2 = a @ a
    t2 = float(np.trace(a2))
    t3 = float(np.trace(a2 @ a))
    return t1, t2, t3


def det_from_traces(traces: tuple[float, float, float]) -> float:
    """Determinant of a 3x3 matrix from its first three trace powers."""
    t1, t2, t3 = traces
    return (t1**3 + 2.0 * t3 - 3.0 * t1 * t2) / 6.0


def sym3_eigen_jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric 3x3 matrix by cyclic Jacobi sweeps.

    Returns (eigenvalues, eigenvectors) with eigenvalues sorted descending
    (stable on ties) and eigenvectors as orthonormal columns: a @ V[:, i]
    = w[i] * V[:, i].
    """
    a = as_sym3(a)
    m = a.copy()
    v = np.eye(3)
    scale = 1.0 + float(np.linalg.norm(a))
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = np.sqrt(2.0 * (m[0, 1] ** 2 + m[0, 2] ** 2 + m[1, 2] ** 2))
        if off <= _JACOBI_REL_TOL * scale:
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            apq = m[p, q]
            if apq == 0.0:
                continue
            theta = (m[q, q] - m[p, p]) / (2.0 * apq)
            t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
            if theta == 0.0:
                t = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(3)
            rot[p, p] = rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            m = rot.T @ m @ rot
            v = v @ rot
    w = np.diag(m).copy()
    # stable descending sort: by value, ties by original index
    order = sorted(range(3), key=lambda i: (-w[i], i))
    return w[order], v[:, order]


def pauli_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The Pauli matrices (sigma_x, sigma_y, sigma_z)."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return sx, sy, sz


def tensor_product(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 matrices, row-major index 2*i_A + i_B."""
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    if p.shape != (2, 2) or q.shape != (2, 2):
        raise ValueError("tensor_product expects two 2x2 matrices")
    return np.kron(p, q)


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def hermitian_psd_check(m: np.ndarray, tol: float = PSD_TOL) -> bool:
    """True iff the Hermitian matrix m has all eigenvalues >= -tol.

    Raises ValueError when m is not Hermitian within tol: a malformed
    input is a validation failure, not a "not PSD" verdict.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if not is_hermitian(m, tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    w = np.linalg.eigvalsh(m)
    return bool(w[0] >= -tol)
