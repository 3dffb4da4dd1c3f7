"""Single-output Gaussian-process regression on the unit cube.

Matern-5/2 ARD kernel, constant mean, standardized targets, ML-II fitting
in log-hyperparameter space with analytic gradients. One independent model
is fitted per objective.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve, cholesky, solve_triangular
from scipy.optimize import minimize

from .errors import InsufficientDataError, NumericalError
from .rng import Xoshiro256PP

SQRT5 = np.sqrt(5.0)

# Log-space ML-II bounds.
LENGTHSCALE_BOUNDS = (0.05, 10.0)
SIGNAL_VAR_BOUNDS = (0.05, 20.0)
NOISE_VAR_BOUNDS = (1e-6, 1.0)
MEAN_BOUNDS = (-3.0, 3.0)

JITTER_START = 1e-8
JITTER_MAX = 1e-4


@dataclass(frozen=True)
class GPHyperparams:
    lengthscales: np.ndarray  # (4,)
    signal_variance: float
    noise_variance: float
    mean_const: float

    def as_vector(self) -> np.ndarray:
        """Optimization vector: logs of (l, sf2, sn2) plus raw mean."""
        return np.concatenate(
            [
                np.log(self.lengthscales),
                [np.log(self.signal_variance), np.log(self.noise_variance)],
                [self.mean_const],
            ]
        )

    @classmethod
    def from_vector(cls, v: np.ndarray) -> "GPHyperparams":
        return cls(
            lengthscales=np.exp(v[:4]),
            signal_variance=float(np.exp(v[4])),
            noise_variance=float(np.exp(v[5])),
            mean_const=float(v[6]),
        )


@dataclass(frozen=True)
class GPModel:
    X: np.ndarray  # (n, 4) unit-cube inputs
    y_std: np.ndarray  # standardized targets
    y_mean: float
    y_scale: float
    theta: GPHyperparams
    chol: np.ndarray  # lower factor of K + sn2 I (+ jitter)
    alpha: np.ndarray  # (K + sn2 I)^-1 (y_std - mu0)
    log_marginal_likelihood: float


def _scaled_sq_dists(X1: np.ndarray, X2: np.ndarray, ls: np.ndarray) -> np.ndarray:
    d = X1[:, None, :] / ls - X2[None, :, :] / ls
    return np.sum(d * d, axis=2)


def kernel_matern52(x, x2, theta: GPHyperparams) -> float:
    """Matern-5/2 covariance between two points."""
    return float(
        kernel_matrix(np.atleast_2d(np.asarray(x, float)),
                      np.atleast_2d(np.asarray(x2, float)), theta)[0, 0]
    )


def kernel_matrix(X1: np.ndarray, X2: np.ndarray, theta: GPHyperparams) -> np.ndarray:
    r = np.sqrt(np.maximum(_scaled_sq_dists(X1, X2, theta.lengthscales), 0.0))
    return (
        theta.signal_variance
        * (1.0 + SQRT5 * r + (5.0 / 3.0) * r * r)
        * np.exp(-SQRT5 * r)
    )


def _factorize(K: np.ndarray, noise_variance: float) -> tuple[np.ndarray, float]:
    """Cholesky of K + sn2 I with adaptive jitter escalation."""
    n = K.shape[0]
    jitter = 0.0
    while True:
        try:
            L = cholesky(K + (noise_variance + jitter) * np.eye(n), lower=True)
            return L, jitter
        except np.linalg.LinAlgError:
            pass
        jitter = JITTER_START if jitter == 0.0 else jitter * 10.0
        if jitter > JITTER_MAX:
            raise NumericalError(
                f"covariance factorization failed even with jitter {JITTER_MAX}"
            )


def _lml_and_grad(v: np.ndarray, X: np.ndarray, y: np.ndarray):
    """Log marginal likelihood and gradient w.r.t. the optimization vector."""
    theta = GPHyperparams.from_vector(v)
    n = X.shape[0]
    Kf = kernel_matrix(X, X, theta)
    L, _ = _factorize(Kf, theta.noise_variance)
    r = y - theta.mean_const
    alpha = cho_solve((L, True), r)
    lml = (
        -0.5 * float(r @ alpha)
        - float(np.sum(np.log(np.diag(L))))
        - 0.5 * n * np.log(2.0 * np.pi)
    )

    # d lml / d K = 0.5 * (alpha alpha^T - K^-1)
    Kinv = cho_solve((L, True), np.eye(n))
    W = np.outer(alpha, alpha) - Kinv

    ls = theta.lengthscales
    sq = _scaled_sq_dists(X, X, ls)
    rmat = np.sqrt(np.maximum(sq, 0.0))
    expo = np.exp(-SQRT5 * rmat)

    grad = np.empty(7)
    # dK/dr * (1/r) has the finite closed form (5/3) sf2 (1 + sqrt5 r) e^{-r
    # sqrt5}; per-dimension log-lengthscale gradient uses dr^2/dlog(l_i).
    dk_over_r = (5.0 / 3.0) * theta.signal_variance * (1.0 + SQRT5 * rmat) * expo
    for i in range(4):
        di = (X[:, None, i] - X[None, :, i]) / ls[i]
        dK = dk_over_r * (di * di)  # = dK/dlog(l_i)
        grad[i] = 0.5 * float(np.sum(W * dK))
    grad[4] = 0.5 * float(np.sum(W * Kf))  # d/dlog sf2
    grad[5] = 0.5 * float(np.trace(W)) * theta.noise_variance  # d/dlog sn2
    grad[6] = float(np.sum(alpha))  # d/d mu0
    return lml, grad


def log_marginal_likelihood_grad(
    X: np.ndarray, y_std: np.ndarray, theta: GPHyperparams
) -> tuple[float, np.ndarray]:
    """LML and its analytic gradient over (log l, log sf2, log sn2, mu0)."""
    return _lml_and_grad(theta.as_vector(), np.asarray(X, float), np.asarray(y_std, float))


def _standardize(y: np.ndarray) -> tuple[np.ndarray, float, float]:
    mean = float(np.mean(y))
    scale = float(np.std(y))
    if scale < 1e-12:
        scale = 1.0
    return (y - mean) / scale, mean, scale


def fit(X, y, restarts: int = 8, seed: int = 0) -> GPModel:
    """ML-II fit from seeded random restarts within the hyperparameter box."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or X.shape[1] != 4:
        raise InsufficientDataError("X must be n x 4")
    n = X.shape[0]
    if n < 2:
        raise InsufficientDataError(f"need at least 2 observations, got {n}")
    y_std, y_mean, y_scale = _standardize(y)

    lo = np.array(
        [np.log(LENGTHSCALE_BOUNDS[0])] * 4
        + [np.log(SIGNAL_VAR_BOUNDS[0]), np.log(NOISE_VAR_BOUNDS[0]), MEAN_BOUNDS[0]]
    )
    hi = np.array(
        [np.log(LENGTHSCALE_BOUNDS[1])] * 4
        + [np.log(SIGNAL_VAR_BOUNDS[1]), np.log(NOISE_VAR_BOUNDS[1]), MEAN_BOUNDS[1]]
    )
    bounds = list(zip(lo, hi))

    rng = Xoshiro256PP(0x6770, seed)
    # Default start: moderate lengthscales, unit signal, small noise.
    starts = [
        np.array([np.log(0.3)] * 4 + [np.log(1.0), np.log(1e-2), 0.0])
    ]
    for _ in range(max(0, restarts - 1)):
        u = np.array(rng.uniforms(7))
        starts.append(lo + u * (hi - lo))

    def objective(v):
        lml, g = _lml_and_grad(v, X, y_std)
        return -lml, -g

    best_v, best_lml = None, -np.inf
    for s in starts:
        try:
            res = minimize(objective, s, jac=True, method="L-BFGS-B", bounds=bounds)
        except NumericalError:
            continue
        if -res.fun > best_lml:
            best_lml, best_v = -res.fun, res.x
    if best_v is None:
        raise NumericalError("all restarts failed to factorize")

    theta = GPHyperparams.from_vector(best_v)
    Kf = kernel_matrix(X, X, theta)
    L, _ = _factorize(Kf, theta.noise_variance)
    alpha = cho_solve((L, True), y_std - theta.mean_const)
    return GPModel(
        X=X,
        y_std=y_std,
        y_mean=y_mean,
        y_scale=y_scale,
        theta=theta,
        chol=L,
        alpha=alpha,
        log_marginal_likelihood=best_lml,
    )


def predict(model: GPModel, x_star) -> tuple[float, float]:
    """Latent posterior (mean, variance) at one point, in original units."""
    m, v = predict_batch(model, np.atleast_2d(np.asarray(x_star, float)))
    return float(m[0]), float(v[0])


def predict_batch(model: GPModel, X_star: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized latent posterior over (m, 4) query points."""
    X_star = np.asarray(X_star, dtype=float)
    Ks = kernel_matrix(model.X, X_star, model.theta)  # (n, m)
    mean_std = model.theta.mean_const + Ks.T @ model.alpha
    V = solve_triangular(model.chol, Ks, lower=True)  # (n, m)
    var = model.theta.signal_variance - np.sum(V * V, axis=0)
    if np.any(var < -1e-8):
        warnings.warn("posterior variance clamped from below -1e-8", RuntimeWarning)
    var = np.maximum(var, 0.0)
    mean = model.y_mean + model.y_scale * mean_std
    return mean, var * model.y_scale**2


def posterior_draws(models, x_star, base_samples: np.ndarray) -> np.ndarray:
    """Joint objective samples at one point from independent surrogates.

    ``base_samples`` is (n_draws, n_objectives) standard normals supplied by
    the caller (common random numbers).
    """
    base = np.asarray(base_samples, dtype=float)
    out = np.empty_like(base)
    for j, model in enumerate(models):
        m, v = predict(model, x_star)
        out[:, j] = m + np.sqrt(v) * base[:, j]
    return out
