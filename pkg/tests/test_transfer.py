import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from designbench.errors import DomainError
from designbench.transfer import gain, inverse_transfer, max_reach, transfer

dk_strategy = st.tuples(st.floats(0, 1), st.floats(0, 0.5))


class TestTransfer:
    def test_linear_region(self):
        assert transfer(0.3, 0.5, 0.3) == 0.3

    def test_boundary_continuity(self):
        assert transfer(0.5, 0.5, 0.5) == 0.5

    def test_quadratic_region(self):
        assert transfer(0.8, 0.5, 0.3) == pytest.approx(0.827, abs=1e-9)

    def test_negative_input(self):
        with pytest.raises(DomainError):
            transfer(-0.1, 0.5, 0.3)

    @given(dk_strategy, st.floats(0, 2), st.floats(0, 2))
    @settings(max_examples=300)
    def test_strictly_increasing(self, dk, a, b):
        D, k = dk
        lo, hi = sorted((a, b))
        if hi - lo > 1e-12:
            assert transfer(lo, D, k) < transfer(hi, D, k)

    @given(dk_strategy, st.floats(0, 2))
    def test_never_below_identity(self, dk, r):
        D, k = dk
        assert transfer(r, D, k) >= r


class TestInverse:
    def test_linear_region_identity(self):
        assert inverse_transfer(0.4, 0.5, 0.3) == 0.4

    def test_k_zero_identity(self):
        assert inverse_transfer(0.9, 0.5, 0.0) == 0.9

    def test_roundtrip_example(self):
        assert inverse_transfer(0.827, 0.5, 0.3) == pytest.approx(0.8, abs=1e-9)

    def test_negative_input(self):
        with pytest.raises(DomainError):
            inverse_transfer(-1e-9, 0.5, 0.3)

    def test_roundtrip_bulk(self):
        rng = np.random.default_rng(11)
        for _ in range(10_000):
            D, k = rng.random(), 0.5 * rng.random()
            d = rng.random() * max_reach(D, k, 2.0)
            r = inverse_transfer(d, D, k)
            assert abs(transfer(r, D, k) - d) < 1e-9


class TestGain:
    def test_linear_region(self):
        assert gain(0.2, 0.5, 0.5) == 1.0

    def test_at_threshold_left_limit(self):
        assert gain(0.5, 0.5, 0.5) == 1.0

    def test_quadratic_region(self):
        assert gain(0.8, 0.5, 0.3) == pytest.approx(1.18)
        assert gain(1.3, 0.0, 0.5) == pytest.approx(2.3)

    def test_matches_finite_difference(self):
        rng = np.random.default_rng(5)
        h = 1e-6
        for _ in range(2000):
            D, k = rng.random(), 0.5 * rng.random()
            r = 2.0 * rng.random()
            if abs(r - D) <= 1e-3 or r < h:
                continue
            fd = (transfer(r + h, D, k) - transfer(r - h, D, k)) / (2 * h)
            assert gain(r, D, k) == pytest.approx(fd, abs=1e-5)

    def test_negative_input(self):
        with pytest.raises(DomainError):
            gain(-0.5, 0.5, 0.3)


class TestMaxReach:
    def test_fully_linear(self):
        assert max_reach(1.0, 0.5, 1.0) == 1.0

    def test_examples(self):
        assert max_reach(0.5, 0.3, 1.0) == pytest.approx(1.075)
        assert max_reach(0.0, 0.5, 1.3) == pytest.approx(2.145)
