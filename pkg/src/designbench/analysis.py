"""Exploration metrics (hypercube coverage, successive distance) and the
comparison-harness statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class CoverageReport:
    m: int
    covered: int
    total: int
    covered_cells: list

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "covered": self.covered,
            "total": self.total,
            "covered_cells": [list(c) for c in self.covered_cells],
        }


def _cell_index(u: np.ndarray, m: int) -> tuple:
    # Lower bounds inclusive, upper exclusive; u = 1 falls in the top cell.
    idx = np.minimum(np.floor(u * m).astype(int), m - 1)
    return tuple(int(i) for i in idx)


def hypercube_coverage(designs, m: int) -> CoverageReport:
    """Occupied cells of the m^4 uniform partition of the unit cube."""
    if m < 1:
        raise DomainError("m must be >= 1")
    cells = set()
    for u in designs:
        arr = np.asarray(u, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError(f"design {arr} outside the unit cube")
        cells.add(_cell_index(arr, m))
    return CoverageReport(
        m=m, covered=len(cells), total=m**4, covered_cells=sorted(cells)
    )


def total_successive_distance(designs) -> float:
    """Sum of Euclidean distances between successive designs (unit cube)."""
    U = np.atleast_2d(np.asarray(list(designs), dtype=float))
    if U.size == 0:
        raise DomainError("need at least one design")
    if len(U) == 1:
        return 0.0
    return float(np.sum(np.linalg.norm(np.diff(U, axis=0), axis=1)))


def normalized_successive_distance(designs, per_transition: bool = False) -> float:
    """Total successive distance per design iteration.

    Default denominator is the number of designs N; ``per_transition``
    switches to N - 1.
    """
    designs = list(designs)
    total = total_successive_distance(designs)
    n = len(designs) - 1 if per_transition else len(designs)
    return total / n if n > 0 else 0.0


def session_report(session, m_values=(2, 3), per_transition: bool = False) -> dict:
    """Exploration and outcome summary for one session, as a JSON-ready dict.

    Coverage is reported both over all visited designs (informal tests plus
    evaluations, in event order) and over the session's Pareto set.
    """
    from .domain import encode_unit
    from .mobo import pareto_front

    if not session.evaluations:
        raise DomainError("session has no evaluations")
    visited = [encode_unit(d) for d in session.visited]
    front_idx = pareto_front([(e.speed, e.accuracy) for e in session.evaluations])
    front_units = [encode_unit(session.evaluations[i].design) for i in front_idx]
    report = {
        "session_id": session.id,
        "mode": session.mode,
        "evaluation_count": len(session.evaluations),
        "visited_count": len(visited),
        "pareto_indices": front_idx,
        "coverage": {
            str(m): hypercube_coverage(visited, m).to_dict() for m in m_values
        },
        "pareto_coverage": {
            str(m): hypercube_coverage(front_units, m).to_dict() for m in m_values
        },
        "total_successive_distance": total_successive_distance(visited),
        "normalized_successive_distance": normalized_successive_distance(
            visited, per_transition=per_transition
        ),
        "picks": None,
    }
    if session.picks is not None:
        report["picks"] = [
            {
                "index": i,
                "design": session.evaluations[i].design.to_dict(),
                "mean_time_ms": session.evaluations[i].mean_time_ms,
                "mean_error_cm": session.evaluations[i].mean_error_cm,
                "speed": session.evaluations[i].speed,
                "accuracy": session.evaluations[i].accuracy,
            }
            for i in session.picks
        ]
    return report


def welch_t(sample_a, sample_b) -> tuple[float, float]:
    """Welch's unequal-variance t statistic and Welch-Satterthwaite df."""
    a = np.asarray(list(sample_a), dtype=float)
    b = np.asarray(list(sample_b), dtype=float)
    if len(a) < 2 or len(b) < 2:
        raise DomainError("each sample needs at least 2 values")
    va, vb = a.var(ddof=1) / len(a), b.var(ddof=1) / len(b)
    se = np.sqrt(va + vb)
    if se == 0.0:
        return 0.0, float(len(a) + len(b) - 2)
    t = float((a.mean() - b.mean()) / se)
    df = float(
        (va + vb) ** 2 / (va**2 / (len(a) - 1) + vb**2 / (len(b) - 1))
    )
    return t, df
