"""Design space, unit-cube codec, target geometry, and trial-block sampling."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import RangeViolationError
from .rng import Xoshiro256PP

# (lo, hi) per parameter; G is canonicalized with lo=-5 so the codec is
# increasing in every coordinate.
PARAM_BOUNDS: dict[str, tuple[float, float]] = {
    "D": (0.0, 1.0),
    "k": (0.0, 0.5),
    "G": (-5.0, 15.0),
    "A": (0.0, 2.6),
}
PARAM_NAMES = ("D", "k", "G", "A")

INCLINATIONS_DEG = (30, 45, 60)
AZIMUTHS_DEG = (0, 45, 90, 135, 180, 225, 270, 315)
DISTANCES_UNITS = (0.5, 1.0, 1.5, 2.0)
WIDTHS_CM = (3, 4, 5)

TRIAL_BLOCK_SIZE = 36
TRIALS_PER_STRATUM = 3


@dataclass(frozen=True)
class DesignParams:
    """One point in the 4-D design space, in natural units.

    D: distance threshold (fraction of the operation range).
    k: nonlinearity scale (dimensionless).
    G: activation-vibration gap in cm (positive = cue before touch).
    A: vibration amplitude in g-units.
    """

    D: float
    k: float
    G: float
    A: float

    def __post_init__(self):
        for name in PARAM_NAMES:
            lo, hi = PARAM_BOUNDS[name]
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)  # keep JSON-friendly plain floats
            if not (lo <= v <= hi):
                raise RangeViolationError(name, v, lo, hi)

    def to_dict(self) -> dict[str, float]:
        return {"D": self.D, "k": self.k, "G": self.G, "A": self.A}

    @classmethod
    def from_dict(cls, d: dict) -> "DesignParams":
        return cls(D=float(d["D"]), k=float(d["k"]), G=float(d["G"]), A=float(d["A"]))


def as_unit_point(u) -> np.ndarray:
    """Validate and return a 4-vector with every coordinate in [0, 1]."""
    arr = np.asarray(u, dtype=float)
    if arr.shape != (4,):
        raise RangeViolationError("u", float(arr.size), 4, 4)
    for i, v in enumerate(arr):
        if not (0.0 <= v <= 1.0):
            raise RangeViolationError(f"u[{i}]", float(v), 0.0, 1.0)
    return arr


def encode_unit(p: DesignParams) -> np.ndarray:
    """Affine map from natural units onto the unit cube."""
    u = np.empty(4)
    for i, name in enumerate(PARAM_NAMES):
        lo, hi = PARAM_BOUNDS[name]
        u[i] = (getattr(p, name) - lo) / (hi - lo)
    return u


def decode_unit(u) -> DesignParams:
    """Inverse of :func:`encode_unit`."""
    arr = as_unit_point(u)
    vals = {}
    for i, name in enumerate(PARAM_NAMES):
        lo, hi = PARAM_BOUNDS[name]
        vals[name] = lo + arr[i] * (hi - lo)
    return DesignParams(**vals)


@dataclass(frozen=True)
class TargetSpec:
    """Geometry of one target-acquisition trial."""

    inclination_deg: int
    azimuth_deg: int
    distance_units: float
    width_cm: int

    def __post_init__(self):
        if self.inclination_deg not in INCLINATIONS_DEG:
            raise RangeViolationError("inclination_deg", self.inclination_deg, 30, 60)
        if self.azimuth_deg not in AZIMUTHS_DEG:
            raise RangeViolationError("azimuth_deg", self.azimuth_deg, 0, 315)
        if self.distance_units not in DISTANCES_UNITS:
            raise RangeViolationError("distance_units", self.distance_units, 0.5, 2.0)
        if self.width_cm not in WIDTHS_CM:
            raise RangeViolationError("width_cm", self.width_cm, 3, 5)


def full_variation_set() -> list[TargetSpec]:
    """All 288 targets, inclination-major, then azimuth, distance, width."""
    return [
        TargetSpec(inc, az, d, w)
        for inc, az, d, w in itertools.product(
            INCLINATIONS_DEG, AZIMUTHS_DEG, DISTANCES_UNITS, WIDTHS_CM
        )
    ]


def generate_trial_block(seed: int) -> list[TargetSpec]:
    """36 targets: exactly 3 per (distance, width) stratum, seeded shuffle.

    Within each stratum the (inclination, azimuth) combination is drawn
    uniformly with replacement from the 24 possibilities.
    """
    rng = Xoshiro256PP(seed, 0x7262)
    combos = list(itertools.product(INCLINATIONS_DEG, AZIMUTHS_DEG))
    block: list[TargetSpec] = []
    for d in DISTANCES_UNITS:
        for w in WIDTHS_CM:
            for _ in range(TRIALS_PER_STRATUM):
                inc, az = combos[rng.randint_below(len(combos))]
                block.append(TargetSpec(inc, az, d, w))
    rng.shuffle(block)
    return block
