import math

import numpy as np
import pytest

from spinbounds.incompat import (
    cubic_coefficients,
    cubic_coefficients_unit,
    directions_from_angles,
    incompatibility,
    incompatibility_from_angles,
    incompatibility_pair,
    lambda_max_from_traces,
    moment_matrix,
    optimal_bloch,
)
from spinbounds.linalg3 import sym3_eigen_jacobi
from spinbounds.states import QubitState, uncertainty_sum

XYZ = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
EXAMPLE4 = [
    (1.0, 0.0, 0.0),
    (0.5, math.sqrt(3) / 2, 0.0),
    (0.5, 0.5, 1 / math.sqrt(2)),
    (1 / math.sqrt(3),) * 3,
]


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_set(rng, n, unit=False):
    dirs = [random_unit(rng) for _ in range(n)]
    if not unit:
        dirs = [d * rng.uniform(0.2, 2.0) for d in dirs]
    return dirs


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def test_moment_matrix_examples():
    a, t = moment_matrix(XYZ)
    assert np.allclose(a, np.eye(3))
    assert t == pytest.approx((3.0, 3.0, 3.0))

    a, t = moment_matrix([(1.0, 0.0, 0.0)])
    assert np.allclose(a, np.diag([1.0, 0.0, 0.0]))
    assert t == pytest.approx((1.0, 1.0, 1.0))

    n = np.array([0.6, 0.8, 0.0])
    a, t = moment_matrix([n, n])
    assert np.allclose(a, 2.0 * np.outer(n, n))
    assert t == pytest.approx((2.0, 4.0, 8.0))


def test_moment_matrix_rejects_zero_direction():
    with pytest.raises(ValueError, match="zero length"):
        moment_matrix([(1.0, 0.0, 0.0), (0.0, 0.0, 0.0)])


def test_cubic_coefficients_examples():
    c = cubic_coefficients((3.0, 3.0, 3.0))
    assert c.alpha == pytest.approx(0.0, abs=1e-14)
    assert c.beta == pytest.approx(0.0, abs=1e-14)

    c = cubic_coefficients((2.0, 4.0, 8.0))
    assert c.alpha == pytest.approx(2.0 / 3.0)
    assert c.beta == pytest.approx(8.0 / 27.0)

    # spectrum (1,0,0): shifted roots are (2/3, -1/3, -1/3)
    c = cubic_coefficients((1.0, 1.0, 1.0))
    assert c.alpha == pytest.approx(1.0 / 3.0)
    assert c.beta == pytest.approx(1.0 / 27.0)
    for z in (2.0 / 3.0, -1.0 / 3.0):
        assert z**3 - 3 * c.alpha**2 * z - 2 * c.beta == pytest.approx(0.0, abs=1e-15)


def test_cubic_coefficients_rejects_inconsistent_traces():
    with pytest.raises(ValueError, match="inconsistent"):
        cubic_coefficients((3.0, 1.0, 1.0))


def test_cubic_coefficients_unit_orthonormal():
    c = cubic_coefficients_unit(XYZ)
    assert c.alpha == pytest.approx(0.0, abs=1e-14)
    assert c.beta == pytest.approx(0.0, abs=1e-14)


def test_cubic_coefficients_unit_equal_overlaps():
    # three unit vectors with all pairwise dots c: alpha^2 = c^2, beta = c^3
    t1, t2, t3 = math.pi / 3, math.pi / 3, math.pi / 3
    dirs = directions_from_angles(t1, t2, t3)
    c = cubic_coefficients_unit(dirs)
    assert c.alpha**2 == pytest.approx(0.25, abs=1e-12)
    assert c.beta == pytest.approx(0.125, abs=1e-12)


def test_cubic_coefficients_unit_matches_trace_path():
    _, traces = moment_matrix(EXAMPLE4)
    via_traces = cubic_coefficients(traces)
    via_dots = cubic_coefficients_unit(EXAMPLE4)
    assert via_dots.alpha == pytest.approx(via_traces.alpha, abs=1e-10)
    assert via_dots.beta == pytest.approx(via_traces.beta, abs=1e-10)


def test_cubic_coefficients_unit_random_agreement():
    rng = np.random.default_rng(23)
    for _ in range(1000):
        dirs = random_set(rng, int(rng.integers(3, 7)), unit=True)
        _, traces = moment_matrix(dirs)
        a = cubic_coefficients(traces)
        b = cubic_coefficients_unit(dirs)
        assert b.alpha == pytest.approx(a.alpha, abs=1e-10)
        assert b.beta == pytest.approx(a.beta, abs=1e-10)


def test_cubic_coefficients_unit_rejects_non_unit():
    with pytest.raises(ValueError, match="direction 1"):
        cubic_coefficients_unit([(1.0, 0.0, 0.0), (0.0, 2.0, 0.0), (0.0, 0.0, 1.0)])


def test_lambda_max_examples():
    assert lambda_max_from_traces((3.0, 3.0, 3.0)) == pytest.approx(1.0)
    assert lambda_max_from_traces((2.0, 4.0, 8.0)) == pytest.approx(2.0)
    _, traces = moment_matrix(EXAMPLE4)
    assert traces[0] == pytest.approx(4.0)
    assert lambda_max_from_traces(traces) == pytest.approx(3.05045, abs=1e-5)


def test_incompatibility_examples():
    assert incompatibility(XYZ).value == pytest.approx(2.0, abs=1e-12)
    assert incompatibility(EXAMPLE4).value == pytest.approx(0.94955, abs=1e-5)
    pair = [(1.0, 0.0, 0.0), (0.5, math.sqrt(3) / 2, 0.0)]
    assert incompatibility(pair).value == pytest.approx(0.5, abs=1e-12)


def test_incompatibility_closed_form_matches_jacobi():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        dirs = random_set(rng, int(rng.integers(1, 7)))
        a, traces = moment_matrix(dirs)
        w, _ = sym3_eigen_jacobi(a)
        assert lambda_max_from_traces(traces) == pytest.approx(w[0], abs=1e-9)


def test_incompatibility_rotation_invariance():
    rng = np.random.default_rng(17)
    for _ in range(100):
        dirs = random_set(rng, 4)
        rot = random_rotation(rng)
        base = incompatibility(dirs).value
        rotated = incompatibility([rot @ d for d in dirs]).value
        assert rotated == pytest.approx(base, abs=1e-10)


def test_incompatibility_sign_and_permutation_invariance():
    rng = np.random.default_rng(29)
    for _ in range(100):
        dirs = random_set(rng, 4)
        base = incompatibility(dirs).value
        flipped = [d.copy() for d in dirs]
        flipped[1] = -flipped[1]
        assert incompatibility(flipped).value == pytest.approx(base, abs=1e-12)
        perm = [dirs[2], dirs[0], dirs[3], dirs[1]]
        assert incompatibility(perm).value == pytest.approx(base, abs=1e-12)


def test_incompatibility_range_for_unit_directions():
    rng = np.random.default_rng(41)
    for _ in range(200):
        n = int(rng.integers(1, 7))
        dirs = random_set(rng, n, unit=True)
        value = incompatibility(dirs).value
        assert -1e-12 <= value <= 2 * n / 3 + 1e-9
    # maximum is attained exactly when A = (N/3) * I
    assert incompatibility(XYZ).value == pytest.approx(2.0, abs=1e-12)


def test_single_direction_gives_zero():
    res = incompatibility([(0.0, 0.0, 1.5)])
    assert res.value == pytest.approx(0.0, abs=1e-12)


def test_result_invariants():
    rng = np.random.default_rng(131)
    for _ in range(200):
        res = incompatibility(random_set(rng, int(rng.integers(1, 7))))
        assert res.value == pytest.approx(res.traces[0] - res.lambda_max, abs=1e-12)
        assert np.linalg.norm(res.optimizer) == pytest.approx(1.0, abs=1e-10)
        assert res.value >= -1e-12


def test_incompatibility_pair_examples():
    assert incompatibility_pair((1, 0, 0), (0, 1, 0)) == pytest.approx(1.0)
    assert incompatibility_pair((0, 0, 1), (0, 0, 1)) == pytest.approx(0.0, abs=1e-14)
    # diag(1, 4, 0) spectrum: I = 5 - 4
    assert incompatibility_pair((1, 0, 0), (0, 2, 0)) == pytest.approx(1.0)


def test_incompatibility_pair_unit_closed_form():
    rng = np.random.default_rng(59)
    for _ in range(1000):
        n1, n2 = random_unit(rng), random_unit(rng)
        expected = 1.0 - abs(float(np.dot(n1, n2)))
        assert incompatibility_pair(n1, n2) == pytest.approx(expected, abs=1e-12)


def test_incompatibility_pair_rejects_zero_vector():
    with pytest.raises(ValueError):
        incompatibility_pair((0, 0, 0), (1, 0, 0))


def test_from_angles_orthonormal():
    val = incompatibility_from_angles(math.pi / 2, math.pi / 2, math.pi / 2)
    assert val == pytest.approx(2.0, abs=1e-12)


def test_from_angles_equilateral():
    # all pairwise angles pi/3: Gram spectrum (2, 1/2, 1/2), bound 3 - 2
    val = incompatibility_from_angles(math.pi / 3, math.pi / 3, math.pi / 3)
    assert val == pytest.approx(1.0, abs=1e-12)


def test_from_angles_rejects_unrealizable():
    with pytest.raises(ValueError, match="Gram eigenvalue"):
        incompatibility_from_angles(math.pi / 9, math.pi / 9, math.pi / 3)


def test_from_angles_matches_reconstruction():
    rng = np.random.default_rng(71)
    checked = 0
    while checked < 200:
        t1, t2, t3 = rng.uniform(0.1, math.pi, size=3)
        try:
            val = incompatibility_from_angles(t1, t2, t3)
        except ValueError:
            continue
        dirs = directions_from_angles(t1, t2, t3)
        gram = np.array([[float(np.dot(a, b)) for b in dirs] for a in dirs])
        assert gram[1, 2] == pytest.approx(math.cos(t1), abs=1e-9)
        assert gram[0, 2] == pytest.approx(math.cos(t2), abs=1e-9)
        assert gram[0, 1] == pytest.approx(math.cos(t3), abs=1e-9)
        assert incompatibility(dirs).value == pytest.approx(val, abs=1e-9)
        checked += 1


def test_optimal_bloch_examples():
    v = optimal_bloch([(1.0, 0.0, 0.0)])
    assert np.allclose(np.abs(v), [1.0, 0.0, 0.0], atol=1e-12)

    pair = [(1.0, 0.0, 0.0), (0.5, math.sqrt(3) / 2, 0.0)]
    v = optimal_bloch(pair)
    assert np.allclose(np.abs(v), [math.sqrt(3) / 2, 0.5, 0.0], atol=1e-10)

    # degenerate case: any unit vector is fine as long as it attains the bound
    v = optimal_bloch(XYZ)
    assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-10)
    assert uncertainty_sum(XYZ, QubitState(v)) == pytest.approx(2.0, abs=1e-9)


def test_optimal_bloch_achieves_bound():
    rng = np.random.default_rng(83)
    for _ in range(300):
        dirs = random_set(rng, int(rng.integers(1, 7)))
        res = incompatibility(dirs)
        achieved = uncertainty_sum(dirs, QubitState(res.optimizer))
        assert achieved == pytest.approx(res.value, abs=1e-9)
