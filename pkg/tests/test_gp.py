import numpy as np
import pytest

from designbench.errors import InsufficientDataError
from designbench.gp import (
    GPHyperparams,
    fit,
    kernel_matern52,
    kernel_matrix,
    log_marginal_likelihood_grad,
    posterior_draws,
    predict,
    predict_batch,
)

THETA = GPHyperparams(
    lengthscales=np.array([0.5, 0.5, 0.5, 0.5]),
    signal_variance=1.0,
    noise_variance=0.01,
    mean_const=0.0,
)


def _rand_points(rng, n):
    return rng.random((n, 4))


class TestKernel:
    def test_self_covariance_is_signal_variance(self):
        x = [0.2, 0.4, 0.6, 0.8]
        assert kernel_matern52(x, x, THETA) == pytest.approx(1.0)

    def test_reference_value(self):
        # Scaled distance r = 0.5: sf2 (1 + sqrt5 r + 5 r^2 / 3) e^{-sqrt5 r}.
        x1 = [0.0, 0.0, 0.0, 0.0]
        x2 = [0.25, 0.0, 0.0, 0.0]
        r = 0.5
        expect = (1 + np.sqrt(5) * r + 5 * r * r / 3) * np.exp(-np.sqrt(5) * r)
        assert kernel_matern52(x1, x2, THETA) == pytest.approx(expect)
        assert expect == pytest.approx(0.8286, abs=5e-5)

    def test_symmetry_and_psd(self):
        rng = np.random.default_rng(2)
        X = _rand_points(rng, 30)
        K = kernel_matrix(X, X, THETA)
        assert np.allclose(K, K.T)
        eig = np.linalg.eigvalsh(K)
        assert eig.min() > -1e-9

    def test_ard_anisotropy(self):
        theta = GPHyperparams(
            lengthscales=np.array([0.1, 10.0, 10.0, 10.0]),
            signal_variance=1.0,
            noise_variance=0.01,
            mean_const=0.0,
        )
        base = np.zeros(4)
        moved_sensitive = np.array([0.3, 0.0, 0.0, 0.0])
        moved_flat = np.array([0.0, 0.3, 0.0, 0.0])
        assert kernel_matern52(base, moved_sensitive, theta) < kernel_matern52(
            base, moved_flat, theta
        )

    def test_decreasing_in_distance(self):
        ds = np.linspace(0, 1, 20)
        vals = [
            kernel_matern52(np.zeros(4), np.array([d, 0, 0, 0]), THETA) for d in ds
        ]
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestLmlGradient:
    def test_matches_finite_differences(self):
        rng = np.random.default_rng(5)
        X = _rand_points(rng, 12)
        y = np.sin(3 * X[:, 0]) + 0.5 * X[:, 1] + 0.1 * rng.standard_normal(12)
        y = (y - y.mean()) / y.std()
        theta = GPHyperparams(
            lengthscales=np.array([0.4, 0.7, 1.2, 0.9]),
            signal_variance=1.5,
            noise_variance=0.05,
            mean_const=0.2,
        )
        lml, grad = log_marginal_likelihood_grad(X, y, theta)
        v0 = theta.as_vector()
        h = 1e-6
        for i in range(7):
            vp, vm = v0.copy(), v0.copy()
            vp[i] += h
            vm[i] -= h
            lp, _ = log_marginal_likelihood_grad(X, y, GPHyperparams.from_vector(vp))
            lm, _ = log_marginal_likelihood_grad(X, y, GPHyperparams.from_vector(vm))
            fd = (lp - lm) / (2 * h)
            assert grad[i] == pytest.approx(fd, rel=1e-4, abs=1e-6)

    def test_vector_roundtrip(self):
        theta = GPHyperparams(
            lengthscales=np.array([0.4, 0.7, 1.2, 0.9]),
            signal_variance=1.5,
            noise_variance=0.05,
            mean_const=0.2,
        )
        back = GPHyperparams.from_vector(theta.as_vector())
        assert np.allclose(back.lengthscales, theta.lengthscales)
        assert back.signal_variance == pytest.approx(theta.signal_variance)
        assert back.noise_variance == pytest.approx(theta.noise_variance)
        assert back.mean_const == pytest.approx(theta.mean_const)


class TestSinglePointPosterior:
    def test_matches_closed_form(self):
        # With one observation the posterior has a textbook closed form:
        # m(x) = mu + k(x,x0)/(k0+sn2) (y - mu), v(x) = k0 - k(x,x0)^2/(k0+sn2).
        # fit() needs n >= 2, so build the model pieces directly.
        from designbench.gp import GPModel, _factorize

        X = np.array([[0.5, 0.5, 0.5, 0.5]])
        y_std = np.array([1.2])
        K = kernel_matrix(X, X, THETA)
        L, _ = _factorize(K, THETA.noise_variance)
        alpha = np.linalg.solve(K + THETA.noise_variance * np.eye(1), y_std)
        model = GPModel(
            X=X,
            y_std=y_std,
            y_mean=0.0,
            y_scale=1.0,
            theta=THETA,
            chol=L,
            alpha=alpha,
            log_marginal_likelihood=0.0,
        )
        for x in ([0.5, 0.5, 0.5, 0.5], [0.1, 0.9, 0.3, 0.6]):
            ks = kernel_matern52(x, X[0], THETA)
            denom = THETA.signal_variance + THETA.noise_variance
            m_ref = ks / denom * 1.2
            v_ref = THETA.signal_variance - ks * ks / denom
            m, v = predict(model, x)
            assert m == pytest.approx(m_ref, abs=1e-10)
            assert v == pytest.approx(v_ref, abs=1e-10)


class TestFit:
    def test_interpolates_smooth_function(self):
        rng = np.random.default_rng(11)
        X = _rand_points(rng, 40)
        y = np.sin(2 * np.pi * X[:, 0]) + X[:, 1]
        model = fit(X, y, seed=0)
        Xq = _rand_points(rng, 20)
        yq = np.sin(2 * np.pi * Xq[:, 0]) + Xq[:, 1]
        mq, _ = predict_batch(model, Xq)
        assert float(np.max(np.abs(mq - yq))) < 0.05

    def test_recovers_noise_level(self):
        rng = np.random.default_rng(13)
        X = _rand_points(rng, 60)
        f = np.sin(2 * np.pi * X[:, 0])
        y = f + 0.3 * rng.standard_normal(60)
        model = fit(X, y, seed=0)
        # Noise variance is learned on standardized targets.
        sn2 = model.theta.noise_variance * model.y_scale**2
        assert 0.03 < sn2 < 0.3

    def test_deterministic(self):
        rng = np.random.default_rng(17)
        X = _rand_points(rng, 15)
        y = X[:, 0] - X[:, 3]
        a = fit(X, y, seed=4)
        b = fit(X, y, seed=4)
        assert a.log_marginal_likelihood == b.log_marginal_likelihood
        assert np.array_equal(a.theta.as_vector(), b.theta.as_vector())

    def test_constant_targets_survive_standardization(self):
        rng = np.random.default_rng(19)
        X = _rand_points(rng, 8)
        model = fit(X, np.full(8, 3.7), seed=0)
        m, v = predict(model, [0.5, 0.5, 0.5, 0.5])
        assert m == pytest.approx(3.7, abs=0.2)
        assert v >= 0.0

    def test_needs_two_points(self):
        with pytest.raises(InsufficientDataError):
            fit(np.zeros((1, 4)), np.zeros(1))
        with pytest.raises(InsufficientDataError):
            fit(np.zeros((5, 3)), np.zeros(5))

    def test_variance_shrinks_near_data(self):
        rng = np.random.default_rng(23)
        X = _rand_points(rng, 25)
        y = X @ np.array([1.0, -1.0, 0.5, 0.0])
        model = fit(X, y, seed=0)
        _, v_at_data = predict(model, X[0])
        _, v_far = predict(model, [0.0, 1.0, 0.0, 1.0])
        assert v_at_data < v_far


class TestPosteriorDraws:
    def test_common_random_numbers_reproduce_moments(self):
        rng = np.random.default_rng(29)
        X = _rand_points(rng, 20)
        models = [fit(X, np.sin(4 * X[:, 0]), seed=0), fit(X, X[:, 1] ** 2, seed=0)]
        x = [0.3, 0.7, 0.2, 0.9]
        base = rng.standard_normal((20_000, 2))
        draws = posterior_draws(models, x, base)
        for j, model in enumerate(models):
            m, v = predict(model, x)
            assert float(draws[:, j].mean()) == pytest.approx(m, abs=4 * np.sqrt(v / 20_000) + 1e-9)
            if v > 1e-12:
                assert float(draws[:, j].var()) == pytest.approx(v, rel=0.1)

    def test_same_base_samples_same_draws(self):
        rng = np.random.default_rng(31)
        X = _rand_points(rng, 10)
        models = [fit(X, X[:, 0], seed=0), fit(X, X[:, 1], seed=0)]
        base = rng.standard_normal((64, 2))
        a = posterior_draws(models, [0.2, 0.2, 0.2, 0.2], base)
        b = posterior_draws(models, [0.2, 0.2, 0.2, 0.2], base)
        assert np.array_equal(a, b)
