import numpy as np
import pytest

from trafficadp.basis import (WeightMatrices, basis_partials, eval_d2v_dy2,
                              eval_dv_dy2, eval_grad_y, eval_value)
from trafficadp.config import ModelParams

P = ModelParams()
RNG = np.random.default_rng(42)


def random_weights(K=2, scale=1.0):
    return WeightMatrices(scale * RNG.standard_normal((K, K)),
                          scale * RNG.standard_normal((K, K)))


def random_points(n):
    return (RNG.uniform(0, P.road_length, n),
            RNG.uniform(0, P.s_max, n))


def test_zero_weights_zero_everywhere():
    W = WeightMatrices.zeros(2)
    y1, y2 = random_points(10)
    assert np.all(eval_value(W, y1, y2, P) == 0)
    assert np.all(eval_grad_y(W, y1, y2, P)[0] == 0)


def test_single_sine_mode():
    W = WeightMatrices.zeros(2)
    W.A[1, 0] = 1.0
    val = eval_value(W, P.road_length / 4, 0.123 * P.s_max, P)
    assert val == pytest.approx(1.0, abs=1e-14)


def test_periodicity_random_weights():
    W = random_weights()
    y1, y2 = random_points(100)
    a = eval_value(W, y1, y2, P)
    b = eval_value(W, y1 + P.road_length, y2, P)
    assert np.max(np.abs(a - b)) <= 1e-12


def test_neumann_boundaries_exact():
    W = random_weights(scale=3.0)
    y1 = RNG.uniform(0, P.road_length, 50)
    assert np.all(eval_dv_dy2(W, y1, np.zeros(50), P) == 0.0)
    assert np.all(eval_dv_dy2(W, y1, np.full(50, P.s_max), P) == 0.0)


def test_dy2_matches_finite_difference():
    W = random_weights()
    y1, y2 = random_points(50)
    y2 = np.clip(y2, 0.05 * P.s_max, 0.95 * P.s_max)
    h = 1e-6
    fd = (eval_value(W, y1, y2 + h, P) - eval_value(W, y1, y2 - h, P)) / (2 * h)
    an = eval_dv_dy2(W, y1, y2, P)
    assert np.allclose(an, fd, rtol=1e-5, atol=1e-8)


def test_d2y2_matches_finite_difference():
    W = random_weights()
    y1, y2 = random_points(50)
    y2 = np.clip(y2, 0.05 * P.s_max, 0.95 * P.s_max)
    h = 1e-5
    fd = (eval_value(W, y1, y2 + h, P) - 2 * eval_value(W, y1, y2, P)
          + eval_value(W, y1, y2 - h, P)) / h ** 2
    an = eval_d2v_dy2(W, y1, y2, P)
    assert np.allclose(an, fd, rtol=1e-4, atol=1e-6)


def test_d2y2_constant_mode_zero():
    W = WeightMatrices.zeros(3)
    W.A[:, 0] = 1.5   # j=0 modes are constant in y2
    W.B[:, 0] = -0.4
    y1, y2 = random_points(20)
    assert np.all(eval_d2v_dy2(W, y1, y2, P) == 0.0)


def test_grad_matches_finite_difference():
    W = random_weights()
    y1, y2 = random_points(50)
    y2 = np.clip(y2, 0.05 * P.s_max, 0.95 * P.s_max)
    h = 1e-6
    fd1 = (eval_value(W, y1 + h, y2, P) - eval_value(W, y1 - h, y2, P)) / (2 * h)
    g1, g2 = eval_grad_y(W, y1, y2, P)
    assert np.allclose(g1, fd1, rtol=1e-5, atol=1e-8)
    assert np.allclose(g2, eval_dv_dy2(W, y1, y2, P))


def test_grad_cosine_extremum():
    W = WeightMatrices.zeros(2)
    W.B[1, 0] = 1.0
    g1, _ = eval_grad_y(W, 0.0, 0.3 * P.s_max, P)
    assert g1 == pytest.approx(0.0, abs=1e-14)


def test_linearity_in_weights():
    W1, W2 = random_weights(), random_weights()
    Wsum = WeightMatrices(W1.A + W2.A, W1.B + W2.B)
    y1, y2 = random_points(30)
    assert np.allclose(eval_value(Wsum, y1, y2, P),
                       eval_value(W1, y1, y2, P) + eval_value(W2, y1, y2, P),
                       rtol=1e-12, atol=1e-12)


def test_six_nonzero_basis_functions_at_K2():
    # sine branch loses the i=0 column; 2*K*K - K = 6 functions survive
    y1, y2 = random_points(200)
    alive = 0
    for branch in ("sine", "cosine"):
        for i in range(2):
            for j in range(2):
                ps = basis_partials(i, j, branch, y1, y2, P)
                if np.max(np.abs(ps.value)) > 1e-14:
                    alive += 1
    assert alive == 6


def test_partials_sine_i0_degenerate():
    y1, y2 = random_points(20)
    ps = basis_partials(0, 1, "sine", y1, y2, P)
    assert np.all(ps.value == 0) and np.all(ps.dy2 == 0)
    assert np.all(ps.grad[0] == 0) and np.all(ps.d2y2 == 0)


def test_partials_sine_j0_instance():
    ps = basis_partials(1, 0, "sine", P.road_length / 4, 0.7 * P.s_max, P)
    assert ps.value == pytest.approx(1.0, abs=1e-14)
    assert ps.dy2 == 0.0


@pytest.mark.parametrize("branch", ["sine", "cosine"])
def test_partials_match_weight_finite_difference(branch):
    K = 2
    y1, y2 = random_points(25)
    y2 = np.clip(y2, 0.05 * P.s_max, 0.95 * P.s_max)
    h = 1e-6
    for i in range(K):
        for j in range(K):
            Wp, Wm = WeightMatrices.zeros(K), WeightMatrices.zeros(K)
            mat_p = Wp.A if branch == "sine" else Wp.B
            mat_m = Wm.A if branch == "sine" else Wm.B
            mat_p[i, j] = h
            mat_m[i, j] = -h
            ps = basis_partials(i, j, branch, y1, y2, P)
            for got, fn in [
                (ps.value, eval_value),
                (ps.dy2, eval_dv_dy2),
                (ps.d2y2, eval_d2v_dy2),
            ]:
                fd = (fn(Wp, y1, y2, P) - fn(Wm, y1, y2, P)) / (2 * h)
                assert np.allclose(got, fd, rtol=1e-6, atol=1e-9)
            fd1 = (eval_grad_y(Wp, y1, y2, P)[0]
                   - eval_grad_y(Wm, y1, y2, P)[0]) / (2 * h)
            assert np.allclose(ps.grad[0], fd1, rtol=1e-6, atol=1e-9)
