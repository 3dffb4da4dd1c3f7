"""Go-Go control-display transfer function and its inverse.

The cursor tracks the hand linearly up to the threshold D and accelerates
quadratically beyond it: r_c = r_r + k * (r_r - D)^2. All distances are in
operation-range units (1.0 = full arm extension).
"""

from __future__ import annotations

import math

from .errors import DomainError

#: Physical reach cap (users can lean beyond full arm extension).
DEFAULT_R_MAX = 1.3


def transfer(r_r: float, D: float, k: float) -> float:
    """Cursor distance for hand distance ``r_r``."""
    if r_r < 0:
        raise DomainError(f"hand distance must be >= 0, got {r_r}")
    if r_r <= D:
        return r_r
    return r_r + k * (r_r - D) ** 2


def inverse_transfer(d: float, D: float, k: float) -> float:
    """The unique hand distance whose cursor lands at ``d``."""
    if d < 0:
        raise DomainError(f"cursor distance must be >= 0, got {d}")
    if d <= D or k == 0.0:
        return d
    # Root >= D of k r^2 + (1 - 2 k D) r + (k D^2 - d) = 0.
    b = 1.0 - 2.0 * k * D
    c = k * D * D - d
    disc = b * b - 4.0 * k * c
    return (-b + math.sqrt(disc)) / (2.0 * k)


def gain(r_r: float, D: float, k: float) -> float:
    """Local CD gain dr_c/dr_r; defined as 1 (left limit) at r_r = D."""
    if r_r < 0:
        raise DomainError(f"hand distance must be >= 0, got {r_r}")
    if r_r <= D:
        return 1.0
    return 1.0 + 2.0 * k * (r_r - D)


def max_reach(D: float, k: float, r_max: float = DEFAULT_R_MAX) -> float:
    """Farthest cursor distance attainable with the hand capped at ``r_max``."""
    return transfer(r_max, D, k)
