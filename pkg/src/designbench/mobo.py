"""Pareto computation, exact 2-D hypervolume, Monte-Carlo qEHVI, and the
40-iteration proposal protocol with its decision stage."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .domain import DesignParams, decode_unit, encode_unit
from .errors import ConfigError, DomainError, InvalidSelectionError, ProtocolError
from .evaluation import EvaluationResult
from . import gp
from .rng import Xoshiro256PP

_PROPOSER_TAG = 0x6D6F
_FIT_TAG = 0x6669

PATTERN_STEP_INIT = 0.1
PATTERN_STEP_MIN = 1e-3
PATTERN_MAX_ROUNDS = 50
SCORE_CHUNK = 128


@dataclass(frozen=True)
class MoboConfig:
    n_init: int = 10
    n_total: int = 40
    q: int = 1
    mc_samples: int = 512
    restarts: int = 10
    raw_candidates: int = 1024
    ref_point: tuple = (-1.1, -1.1)
    seed: int = 0
    sobol_init: bool = False

    def __post_init__(self):
        if self.q != 1:
            raise ConfigError("only q=1 batches are supported")
        if not (1 <= self.n_init < self.n_total):
            raise ConfigError("need 1 <= n_init < n_total")
        for name in ("mc_samples", "restarts", "raw_candidates"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")

    def to_dict(self) -> dict:
        return {
            "n_init": self.n_init,
            "n_total": self.n_total,
            "q": self.q,
            "mc_samples": self.mc_samples,
            "restarts": self.restarts,
            "raw_candidates": self.raw_candidates,
            "ref_point": list(self.ref_point),
            "seed": self.seed,
            "sobol_init": self.sobol_init,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MoboConfig":
        d = dict(d)
        if "ref_point" in d:
            d["ref_point"] = tuple(d["ref_point"])
        return cls(**d)


def pareto_front(points) -> list[int]:
    """Ascending indices of non-dominated points (equal duplicates kept)."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    if P.size == 0:
        raise DomainError("pareto_front needs at least one point")
    n = P.shape[0]
    ge = np.all(P[:, None, :] >= P[None, :, :], axis=2)  # ge[j, i]: P_j >= P_i
    gt = np.any(P[:, None, :] > P[None, :, :], axis=2)
    dominated = np.any(ge & gt, axis=0)
    return [int(i) for i in range(n) if not dominated[i]]


def _staircase(front, ref) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Strip bounds/levels for the dominated-region staircase above ``ref``.

    Points not strictly dominating the reference contribute nothing and are
    dropped; so are dominated front members.
    """
    F = np.atleast_2d(np.asarray(front, dtype=float))
    r1, r2 = float(ref[0]), float(ref[1])
    if F.size == 0:
        F = np.empty((0, 2))
    else:
        F = F[(F[:, 0] > r1) & (F[:, 1] > r2)]
    if len(F):
        F = np.unique(F, axis=0)
        F = F[pareto_front(F)]
        F = F[np.argsort(-F[:, 0])]  # speed desc => accuracy asc
    s, a = F[:, 0], F[:, 1]
    uppers = np.concatenate([[np.inf], s])
    lowers = np.concatenate([s, [-np.inf]])
    levels = np.concatenate([[r2], a])
    return uppers, lowers, levels


def hvi_batch(front, Y, ref) -> np.ndarray:
    """Hypervolume improvement of each candidate in ``Y`` (..., 2)."""
    uppers, lowers, levels = _staircase(front, ref)
    r1, r2 = float(ref[0]), float(ref[1])
    Y = np.asarray(Y, dtype=float)
    ys = Y[..., 0][..., None]
    ya = Y[..., 1][..., None]
    widths = np.maximum(0.0, np.minimum(ys, uppers) - np.maximum(r1, lowers))
    heights = np.maximum(0.0, ya - np.maximum(levels, r2))
    return np.sum(widths * heights, axis=-1)


def hypervolume_2d(front, ref) -> float:
    """Exact dominated area above ``ref`` for a 2-D maximization front."""
    uppers, lowers, levels = _staircase(front, ref)
    r1 = float(ref[0])
    if len(levels) == 1:  # nothing dominates the reference
        return 0.0
    # Strips between consecutive front speeds, at the staircase accuracy.
    s = uppers[1:]
    s_next = np.concatenate([s[1:], [r1]])
    a = levels[1:]
    return float(np.sum((s - np.maximum(s_next, r1)) * (a - float(ref[1]))))


def hvi(front, y, ref) -> float:
    """Hypervolume increase from adding ``y`` to the front (>= 0)."""
    return float(hvi_batch(front, np.asarray(y, dtype=float), ref))


def qehvi(models, x, front, cfg: MoboConfig, base_samples) -> float:
    """MC estimate of expected hypervolume improvement at one point."""
    draws = gp.posterior_draws(models, x, base_samples)
    return float(np.mean(hvi_batch(front, draws, cfg.ref_point)))


def qehvi_scores(models, X, front, ref, base_samples) -> np.ndarray:
    """Vectorized qEHVI over (m, 4) candidates with shared base samples."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    base = np.asarray(base_samples, dtype=float)
    means = np.empty((X.shape[0], 2))
    sds = np.empty((X.shape[0], 2))
    for j, model in enumerate(models):
        m, v = gp.predict_batch(model, X)
        means[:, j] = m
        sds[:, j] = np.sqrt(v)
    out = np.empty(X.shape[0])
    for start in range(0, X.shape[0], SCORE_CHUNK):
        sl = slice(start, start + SCORE_CHUNK)
        draws = means[sl, None, :] + sds[sl, None, :] * base[None, :, :]
        out[sl] = np.mean(hvi_batch(front, draws, ref), axis=-1)
    return out


def _pattern_search(score_fn, x0: np.ndarray, f0: float) -> tuple[np.ndarray, float]:
    """Coordinate pattern search clipped to the unit cube, acceptance-only."""
    x, f = x0.copy(), f0
    step = PATTERN_STEP_INIT
    for _ in range(PATTERN_MAX_ROUNDS):
        if step < PATTERN_STEP_MIN:
            break
        moves = np.repeat(x[None, :], 8, axis=0)
        for i in range(4):
            moves[2 * i, i] = min(1.0, x[i] + step)
            moves[2 * i + 1, i] = max(0.0, x[i] - step)
        scores = score_fn(moves)
        best = int(np.argmax(scores))
        if scores[best] > f:
            x, f = moves[best], float(scores[best])
        else:
            step /= 2.0
    return x, f


def optimize_acquisition(models, front, cfg: MoboConfig, rng: Xoshiro256PP) -> np.ndarray:
    """Random-candidate scoring plus pattern-search refinement of the top
    ``cfg.restarts`` starts, under one frozen base-sample set."""
    base = np.array(rng.normals(2 * cfg.mc_samples)).reshape(cfg.mc_samples, 2)
    cands = np.array(rng.uniforms(4 * cfg.raw_candidates)).reshape(cfg.raw_candidates, 4)

    def score(X):
        return qehvi_scores(models, X, front, cfg.ref_point, base)

    raw_scores = score(cands)
    order = np.argsort(-raw_scores, kind="stable")[: cfg.restarts]
    best_x, best_f = None, -np.inf
    for idx in order:
        x, f = _pattern_search(score, cands[idx], float(raw_scores[idx]))
        if f > best_f:
            best_x, best_f = x, f
    return best_x


def fit_objective_models(history, cfg: MoboConfig):
    """One GP per objective on (unit-cube design, normalized objective)."""
    X = np.array([encode_unit(e.design) for e in history])
    models = []
    for j, attr in enumerate(("speed", "accuracy")):
        y = np.array([getattr(e, attr) for e in history])
        models.append(gp.fit(X, y, restarts=8, seed=(_FIT_TAG ^ cfg.seed) + 131 * len(history) + j))
    return models


def propose_next(history, cfg: MoboConfig) -> tuple[DesignParams, str]:
    """Next design plus a provenance tag: ``seed`` or ``acquisition``."""
    history = list(history)
    if len(history) >= cfg.n_total:
        raise ProtocolError(
            f"protocol complete: {len(history)} of {cfg.n_total} evaluations done"
        )
    rng = Xoshiro256PP(_PROPOSER_TAG, cfg.seed, len(history))
    if len(history) < cfg.n_init:
        if cfg.sobol_init:
            from scipy.stats import qmc

            sob = qmc.Sobol(d=4, scramble=True, seed=cfg.seed)
            u = sob.random(cfg.n_init)[len(history)]
        else:
            u = np.array(rng.uniforms(4))
        return decode_unit(u), "seed"
    models = fit_objective_models(history, cfg)
    obj = np.array([(e.speed, e.accuracy) for e in history])
    front = obj[pareto_front(obj)]
    x = optimize_acquisition(models, front, cfg, rng)
    return decode_unit(x), "acquisition"


def decision_stage(history, picks) -> list[EvaluationResult]:
    """Validate and resolve the three final picks against the Pareto set."""
    history = list(history)
    picks = list(picks)
    if len(picks) != 3:
        raise ProtocolError(f"exactly 3 picks required, got {len(picks)}")
    front = set(pareto_front([(e.speed, e.accuracy) for e in history]))
    for i in picks:
        if i not in front:
            raise InvalidSelectionError(f"pick {i} is not Pareto-optimal")
    return [history[i] for i in picks]
