"""Trial metrics and the normalization into the two maximized objectives.

Raw metrics (completion time in ms, spatial error in cm) are minimized;
the affine normalizers flip them into `speed` and `accuracy`, both to be
maximized, with [1600 ms, 900 ms] -> [-1, 1] and [1 cm, 0 cm] -> [-1, 1].
Values are intentionally not clamped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domain import DesignParams, TRIAL_BLOCK_SIZE
from .errors import DomainError, ProtocolError

SPEED_T_LO_MS = 1600.0  # maps to speed = -1
SPEED_T_HI_MS = 900.0  # maps to speed = +1
ACCURACY_E_LO_CM = 1.0  # maps to accuracy = -1


@dataclass(frozen=True)
class TrialOutcome:
    """Measured result of one target-acquisition trial."""

    completion_time_ms: float
    max_overshoot_cm: float
    timed_out: bool = False

    def __post_init__(self):
        if self.completion_time_ms < 0:
            raise DomainError("completion_time_ms must be >= 0")
        if self.max_overshoot_cm < 0:
            raise DomainError("max_overshoot_cm must be >= 0")
        if self.timed_out and self.max_overshoot_cm != 0:
            raise DomainError("timed-out trials carry zero overshoot")


@dataclass(frozen=True)
class EvaluationResult:
    """A formal evaluation: raw means plus normalized objectives."""

    design: DesignParams
    mean_time_ms: float
    mean_error_cm: float
    speed: float
    accuracy: float
    trial_count: int

    def to_dict(self) -> dict:
        return {
            "design": self.design.to_dict(),
            "mean_time_ms": self.mean_time_ms,
            "mean_error_cm": self.mean_error_cm,
            "speed": self.speed,
            "accuracy": self.accuracy,
            "trial_count": self.trial_count,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvaluationResult":
        return cls(
            design=DesignParams.from_dict(d["design"]),
            mean_time_ms=float(d["mean_time_ms"]),
            mean_error_cm=float(d["mean_error_cm"]),
            speed=float(d["speed"]),
            accuracy=float(d["accuracy"]),
            trial_count=int(d["trial_count"]),
        )


def normalize_speed(t_ms: float) -> float:
    """Affine map sending 1600 ms -> -1 and 900 ms -> +1 (not clamped)."""
    if t_ms <= 0:
        raise DomainError(f"completion time must be positive, got {t_ms}")
    return (SPEED_T_LO_MS - t_ms) / ((SPEED_T_LO_MS - SPEED_T_HI_MS) / 2.0) - 1.0


def normalize_accuracy(e_cm: float) -> float:
    """Affine map sending 1 cm -> -1 and 0 cm -> +1 (not clamped)."""
    if e_cm < 0:
        raise DomainError(f"spatial error must be >= 0, got {e_cm}")
    return 1.0 - 2.0 * e_cm / ACCURACY_E_LO_CM


def trial_spatial_error(trajectory, target_center, target_radius_cm: float) -> float:
    """Maximum excursion of the cursor beyond the target's extent, in cm.

    Zero when the target is touched without any overshoot.
    """
    pts = np.atleast_2d(np.asarray(trajectory, dtype=float))
    if pts.size == 0:
        raise DomainError("trajectory must be non-empty")
    center = np.asarray(target_center, dtype=float)
    dists = np.linalg.norm(pts - center, axis=1)
    return float(np.max(np.maximum(0.0, dists - target_radius_cm)))


def aggregate_evaluation(design: DesignParams, trials) -> EvaluationResult:
    """Fold 36 trial outcomes into one formal evaluation."""
    trials = list(trials)
    if len(trials) != TRIAL_BLOCK_SIZE:
        raise ProtocolError(
            f"formal evaluation needs {TRIAL_BLOCK_SIZE} trials, got {len(trials)}"
        )
    mean_time = sum(t.completion_time_ms for t in trials) / len(trials)
    # Timed-out trials never produced an overshoot measurement; they count
    # against time but are excluded from the spatial-error average.
    completed = [t for t in trials if not t.timed_out]
    if completed:
        mean_error = sum(t.max_overshoot_cm for t in completed) / len(completed)
    else:
        mean_error = 0.0
    return evaluation_from_means(design, mean_time, mean_error)


def evaluation_from_means(
    design: DesignParams,
    mean_time_ms: float,
    mean_error_cm: float,
    trial_count: int = TRIAL_BLOCK_SIZE,
) -> EvaluationResult:
    """Build an EvaluationResult from pre-aggregated raw metrics."""
    return EvaluationResult(
        design=design,
        mean_time_ms=mean_time_ms,
        mean_error_cm=mean_error_cm,
        speed=normalize_speed(mean_time_ms),
        accuracy=normalize_accuracy(mean_error_cm),
        trial_count=trial_count,
    )
