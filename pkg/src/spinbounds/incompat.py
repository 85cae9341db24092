"""State-independent lower bound of additive variance sums for spin
observables ("incompatibility").

For directions n_1..n_N the minimum over all qubit states of
sum_i Var(n_i . sigma) equals tau1 - lambda_max(A), where
A = sum_i n_i n_i^T and tau1 = tr A. lambda_max has a closed form via the
trigonometric solution of the depressed characteristic cubic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import acos, cos, sqrt

import numpy as np

from .linalg3 import as_sym3, as_vec3, sym3_eigen_jacobi, sym3_traces

# alpha below this (relative) scale means a triple eigenvalue tau1/3; the
# trig ratio beta/alpha^3 is then numerically 0/0 and must be bypassed.
_ALPHA_DEGENERATE = 1e-12
_UNIT_TOL = 1e-9
_GRAM_PSD_TOL = 1e-9


@dataclass(frozen=True)
class CubicCoefficients:
    """Coefficients (alpha, beta) of the depressed cubic z^3 - 3a^2 z - 2b."""

    alpha: float
    beta: float


@dataclass(frozen=True)
class IncompatibilityResult:
    value: float
    lambda_max: float
    optimizer: np.ndarray  # unit Bloch vector achieving the bound
    coefficients: CubicCoefficients
    traces: tuple[float, float, float]
    method: str = "closed_form"


def validate_directions(directions) -> list[np.ndarray]:
    """Validate a direction list: each a finite nonzero 3-vector, N >= 1."""
    vecs = [as_vec3(d) for d in directions]
    if not vecs:
        raise ValueError("need at least one direction")
    for i, v in enumerate(vecs):
        if np.dot(v, v) == 0.0:
            raise ValueError(f"direction {i} has zero length")
    return vecs


def moment_matrix(directions) -> tuple[np.ndarray, tuple[float, float, float]]:
    """Second-moment matrix A = sum_i n_i n_i^T and its trace powers."""
    vecs = validate_directions(directions)
    a = np.zeros((3, 3))
    for v in vecs:
        a += np.outer(v, v)
    a = as_sym3(a)
    return a, sym3_traces(a)


def cubic_coefficients(traces: tuple[float, float, float]) -> CubicCoefficients:
    """(alpha, beta) of the depressed characteristic cubic, from the traces.

    alpha = sqrt((3 tau2 - tau1^2)/18); beta = tau1^3/27 + tau3/6
    - tau1 tau2 / 6. Valid for any traces coming from a real symmetric
    matrix; a slightly negative radicand (roundoff) clamps to zero.
    """
    t1, t2, t3 = traces
    radicand = (3.0 * t2 - t1 * t1) / 18.0
    if radicand < -1e-9:
        raise ValueError(f"inconsistent traces: 3*tau2 - tau1^2 = {18 * radicand:.3e} < 0")
    alpha = sqrt(max(radicand, 0.0))
    beta = t1**3 / 27.0 + t3 / 6.0 - t1 * t2 / 6.0
    return CubicCoefficients(alpha, beta)


def cubic_coefficients_unit(directions) -> CubicCoefficients:
    """(alpha, beta) from pairwise dot products of unit directions only.

    Cross-check path for the trace-based `cubic_coefficients`; requires
    every direction to be unit length.
    """
    vecs = validate_directions(directions)
    for i, v in enumerate(vecs):
        if abs(np.dot(v, v) - 1.0) > 2.0 * _UNIT_TOL:
            raise ValueError(f"direction {i} is not unit length")
    n = len(vecs)
    pair_sq = sum(np.dot(vecs[j], vecs[h]) ** 2 for j, h in combinations(range(n), 2))
    radicand = (pair_sq - n * (n - 3) / 6.0) / 3.0
    if radicand < -1e-9:
        raise ValueError("inconsistent pair sums for unit directions")
    alpha = sqrt(max(radicand, 0.0))
    triple = sum(
        np.dot(vecs[h], vecs[j]) * np.dot(vecs[t], vecs[h]) * np.dot(vecs[j], vecs[t])
        for h, j, t in combinations(range(n), 3)
    )
    # pair term: for unit directions tau3 = N + 6*pair_sq + 6*triple, which
    # makes the coefficient of pair_sq in beta -(N-3)/3
    beta = triple - (n - 3) / 3.0 * pair_sq + n * (2 * n - 3) * (n - 3) / 54.0
    return CubicCoefficients(alpha, float(beta))


def lambda_max_from_traces(traces: tuple[float, float, float]) -> float:
    """Largest eigenvalue of a 3x3 symmetric PSD matrix from its traces.

    tau1/3 + 2 alpha cos(acos(beta/alpha^3) / 3); the ratio is clamped to
    [-1, 1] because roundoff can push it marginally outside the
    all-real-roots region.
    """
    t1 = traces[0]
    coeff = cubic_coefficients(traces)
    if coeff.alpha <= _ALPHA_DEGENERATE * (1.0 + abs(t1)):
        return t1 / 3.0
    ratio = min(1.0, max(-1.0, coeff.beta / coeff.alpha**3))
    return t1 / 3.0 + 2.0 * coeff.alpha * cos(acos(ratio) / 3.0)


def optimal_bloch(directions) -> np.ndarray:
    """Unit Bloch vector of a pure state attaining the minimum variance sum.

    A top eigenvector of the moment matrix, sign-fixed so the first
    nonzero component is positive (both signs are physically equivalent).
    """
    a, _ = moment_matrix(directions)
    _, v = sym3_eigen_jacobi(a)
    top = v[:, 0]
    for comp in top:
        if comp != 0.0:
            if comp < 0.0:
                top = -top
            break
    return top / np.linalg.norm(top)


def incompatibility(directions) -> IncompatibilityResult:
    """Minimum over all qubit states of the summed variances of n_i . sigma.

    Closed-form spectral value, cross-checked against the Jacobi
    eigensolver; the two must agree to 1e-9.
    """
    a, traces = moment_matrix(directions)
    coeff = cubic_coefficients(traces)
    lam = lambda_max_from_traces(traces)
    w, _ = sym3_eigen_jacobi(a)
    if abs(lam - w[0]) > 1e-9 * (1.0 + abs(traces[0])):
        raise ArithmeticError(
            f"closed-form eigenvalue {lam!r} disagrees with Jacobi {w[0]!r}"
        )
    return IncompatibilityResult(
        value=traces[0] - lam,
        lambda_max=lam,
        optimizer=optimal_bloch(directions),
        coefficients=coeff,
        traces=traces,
    )


def incompatibility_pair(n1, n2) -> float:
    """Two-direction bound: n1^2 + n2^2 - lambda_max of the 2x2 Gram matrix.

    For unit directions this reduces to 1 - |n1 . n2|. Arbitrary nonzero
    lengths are allowed.
    """
    v1, v2 = validate_directions([n1, n2])
    s1 = float(np.dot(v1, v1))
    s2 = float(np.dot(v2, v2))
    dot = float(np.dot(v1, v2))
    lam = 0.5 * (s1 + s2 + sqrt((s1 - s2) ** 2 + 4.0 * dot * dot))
    return s1 + s2 - lam


def incompatibility_from_angles(theta1: float, theta2: float, theta3: float) -> float:
    """Bound for three unit directions given only their pairwise angles.

    The moment matrix and the Gram matrix share their nonzero spectrum, so
    tau2 and tau3 follow directly from the cosines without reconstructing
    vectors. Rejects angle triples not realizable by unit vectors in
    3-space (Gram matrix not PSD).
    """
    c1, c2, c3 = cos(theta1), cos(theta2), cos(theta3)
    gram = np.array([[1.0, c3, c2], [c3, 1.0, c1], [c2, c1, 1.0]])
    w, _ = sym3_eigen_jacobi(gram)
    if w[-1] < -_GRAM_PSD_TOL:
        raise ValueError(
            f"angle triple is not realizable by unit vectors: "
            f"Gram eigenvalue {w[-1]:.6g} < 0"
        )
    sq = c1 * c1 + c2 * c2 + c3 * c3
    tau2 = 3.0 + 2.0 * sq
    tau3 = 3.0 + 6.0 * sq + 6.0 * c1 * c2 * c3
    return 3.0 - lambda_max_from_traces((3.0, tau2, tau3))


def directions_from_angles(theta1: float, theta2: float, theta3: float) -> list[np.ndarray]:
    """Explicit unit vectors with the given pairwise angles (one choice).

    Raises for non-realizable triples, same condition as
    `incompatibility_from_angles`.
    """
    c1, c2, c3 = cos(theta1), cos(theta2), cos(theta3)
    gram = np.array([[1.0, c3, c2], [c3, 1.0, c1], [c2, c1, 1.0]])
    w, _ = sym3_eigen_jacobi(gram)
    if w[-1] < -_GRAM_PSD_TOL:
        raise ValueError(
            f"angle triple is not realizable by unit vectors: "
            f"Gram eigenvalue {w[-1]:.6g} < 0"
        )
    n1 = np.array([1.0, 0.0, 0.0])
    s3 = sqrt(max(1.0 - c3 * c3, 0.0))
    if s3 == 0.0:
        n2 = np.array([np.sign(c3) or 1.0, 0.0, 0.0])
    else:
        n2 = np.array([c3, s3, 0.0])
    x = c2
    y = (c1 - c3 * c2) / s3 if s3 > 0.0 else 0.0
    z = sqrt(max(1.0 - x * x - y * y, 0.0))
    n3 = np.array([x, y, z])
    return [n1, n2, n3]
