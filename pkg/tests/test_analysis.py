import itertools
import math

import numpy as np
import pytest
from scipy import stats

from designbench.analysis import (
    hypercube_coverage,
    normalized_successive_distance,
    session_report,
    total_successive_distance,
    welch_t,
)
from designbench.domain import DesignParams
from designbench.errors import DomainError
from designbench.mobo import MoboConfig
from designbench.oracle import SkillProfile
from designbench.session import (
    MODE_DESIGNER,
    create_session,
    submit_decision,
    submit_evaluation,
)


def _brute_coverage(designs, m):
    cells = set()
    for u in designs:
        cells.add(tuple(min(int(math.floor(v * m)), m - 1) for v in u))
    return len(cells)


class TestHypercubeCoverage:
    def test_single_point(self):
        rep = hypercube_coverage([[0.1, 0.1, 0.1, 0.1]], 2)
        assert (rep.covered, rep.total) == (1, 16)
        assert rep.covered_cells == [(0, 0, 0, 0)]

    def test_boundary_one_goes_to_top_cell(self):
        rep = hypercube_coverage([[1.0, 1.0, 1.0, 1.0]], 3)
        assert rep.covered_cells == [(2, 2, 2, 2)]

    def test_interior_boundary_is_lower_inclusive(self):
        rep = hypercube_coverage([[0.5, 0.0, 0.0, 0.0]], 2)
        assert rep.covered_cells == [(1, 0, 0, 0)]

    def test_full_grid(self):
        m = 2
        pts = [
            [(i + 0.5) / m for i in cell]
            for cell in itertools.product(range(m), repeat=4)
        ]
        rep = hypercube_coverage(pts, m)
        assert rep.covered == rep.total == 16

    def test_against_brute_force(self):
        rng = np.random.default_rng(3)
        for m in (1, 2, 3, 5):
            pts = rng.random((200, 4))
            assert hypercube_coverage(pts, m).covered == _brute_coverage(pts, m)

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            hypercube_coverage([[0.5, 0.5, 0.5, 0.5]], 0)
        with pytest.raises(DomainError):
            hypercube_coverage([[1.5, 0, 0, 0]], 2)

    def test_dict_form(self):
        d = hypercube_coverage([[0, 0, 0, 0]], 2).to_dict()
        assert d == {"m": 2, "covered": 1, "total": 16, "covered_cells": [[0, 0, 0, 0]]}


class TestSuccessiveDistance:
    def test_single_design_is_zero(self):
        assert total_successive_distance([[0.5, 0.5, 0.5, 0.5]]) == 0.0

    def test_two_designs(self):
        a, b = [0, 0, 0, 0], [1, 1, 1, 1]
        assert total_successive_distance([a, b]) == pytest.approx(2.0)

    def test_matches_pairwise_sum(self):
        rng = np.random.default_rng(5)
        U = rng.random((30, 4))
        expect = sum(
            float(np.linalg.norm(U[i + 1] - U[i])) for i in range(len(U) - 1)
        )
        assert total_successive_distance(U) == pytest.approx(expect)

    def test_normalization_denominators(self):
        U = [[0, 0, 0, 0], [1, 0, 0, 0], [1, 1, 0, 0]]
        assert normalized_successive_distance(U) == pytest.approx(2 / 3)
        assert normalized_successive_distance(U, per_transition=True) == pytest.approx(1.0)

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            total_successive_distance([])


class TestWelchT:
    def test_matches_scipy(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            a = rng.normal(0, 1, size=int(rng.integers(3, 40)))
            b = rng.normal(0.5, 2, size=int(rng.integers(3, 40)))
            t, df = welch_t(a, b)
            ref = stats.ttest_ind(a, b, equal_var=False)
            assert t == pytest.approx(float(ref.statistic))
            assert df == pytest.approx(float(ref.df))

    def test_identical_samples(self):
        t, _ = welch_t([1.0, 1.0, 1.0], [1.0, 1.0, 1.0])
        assert t == 0.0

    def test_needs_two_each(self):
        with pytest.raises(DomainError):
            welch_t([1.0], [1.0, 2.0])


class TestSessionReport:
    def _session(self):
        s = create_session(
            MODE_DESIGNER,
            cfg=MoboConfig(seed=1),
            skill=SkillProfile(seed=1),
            session_id="report-test",
        )
        for d in (
            DesignParams(0.2, 0.1, 0.0, 1.0),
            DesignParams(0.8, 0.4, 5.0, 2.0),
            DesignParams(0.5, 0.2, 10.0, 0.5),
        ):
            s = submit_evaluation(s, d)
        return s

    def test_report_shape(self):
        s = self._session()
        rep = session_report(s)
        assert rep["session_id"] == "report-test"
        assert rep["mode"] == MODE_DESIGNER
        assert rep["evaluation_count"] == 3
        assert rep["visited_count"] == 3
        assert set(rep["coverage"]) == {"2", "3"}
        assert rep["picks"] is None
        assert rep["total_successive_distance"] >= 0.0

    def test_report_with_picks(self):
        s = self._session()
        s = submit_decision(s, [0, 0, 1])
        rep = session_report(s)
        assert [p["index"] for p in rep["picks"]] == [0, 0, 1]

    def test_needs_evaluations(self):
        s = create_session(MODE_DESIGNER, session_id="empty")
        with pytest.raises(DomainError):
            session_report(s)
