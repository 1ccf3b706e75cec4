import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from ascheck.domain import (
    DimensionMismatch,
    DomainError,
    InputDomain,
    OutOfBounds,
    corners,
    format_bounds,
    parse_bounds,
    read_bounds,
    to_normalized,
    to_physical,
    write_bounds,
)


class TestInputDomain:
    def test_default_names(self):
        d = InputDomain([0, 1], [2, 3])
        assert d.m == 2
        assert d.names == ("x1", "x2")

    @pytest.mark.parametrize(
        "lower, upper",
        [([0.0], [0.0]), ([1.0], [0.0]), ([0.0, 0.0], [1.0]), ([], []), ([np.nan], [1.0]), ([0.0], [np.inf])],
    )
    def test_rejects_bad_bounds(self, lower, upper):
        with pytest.raises(DomainError):
            InputDomain(lower, upper)

    def test_immutable(self):
        d = InputDomain([0.0], [1.0])
        with pytest.raises(ValueError):
            d.lower[0] = 5.0


class TestMaps:
    @pytest.mark.parametrize(
        "lower, upper, xhat, x",
        [
            ([0], [2], [1], [2]),
            ([0], [2], [-1], [0]),
            ([-3, 5], [1, 9], [0, 0], [-1, 7]),
        ],
    )
    def test_to_physical(self, lower, upper, xhat, x):
        d = InputDomain(lower, upper)
        np.testing.assert_array_equal(to_physical(d, xhat), x)

    @pytest.mark.parametrize(
        "lower, upper, x, xhat",
        [
            ([0], [2], [1], [0]),
            ([0], [2], [2], [1]),
            ([-3, 5], [1, 9], [1, 5], [1, -1]),
        ],
    )
    def test_to_normalized(self, lower, upper, x, xhat):
        d = InputDomain(lower, upper)
        np.testing.assert_array_equal(to_normalized(d, x), xhat)

    def test_endpoints_exact_for_awkward_bounds(self):
        d = InputDomain([0.1, -7.3e5], [0.7, 1e-3])
        np.testing.assert_array_equal(to_physical(d, [1.0, -1.0]), [0.7, -7.3e5])
        np.testing.assert_array_equal(to_physical(d, [-1.0, 1.0]), [0.1, 1e-3])

    def test_dimension_mismatch(self):
        d = InputDomain([0, 0], [1, 1])
        with pytest.raises(DimensionMismatch):
            to_physical(d, [0.0])
        with pytest.raises(DimensionMismatch):
            to_normalized(d, [0.0, 0.0, 0.0])

    def test_clamp_slack(self):
        d = InputDomain([0.0], [2.0])
        assert to_normalized(d, [2.0 + 2e-10])[0] == 1.0
        with pytest.raises(OutOfBounds):
            to_normalized(d, [2.0 + 1e-6])
        with pytest.raises(OutOfBounds):
            to_normalized(d, [np.nan])

    def test_batch(self):
        d = InputDomain([-3, 5], [1, 9])
        xhat = np.array([[1.0, -1.0], [0.0, 0.0]])
        np.testing.assert_array_equal(to_physical(d, xhat), [[1, 5], [-1, 7]])

    def test_corners(self):
        d = InputDomain([0, 10], [1, 20])
        got = {tuple(c) for c in corners(d)}
        assert got == {(0, 10), (0, 20), (1, 10), (1, 20)}


bounds = st.tuples(
    st.floats(-1e6, 1e6, allow_nan=False), st.floats(1e-3, 1e6, allow_nan=False)
).map(lambda t: (t[0], t[0] + t[1]))


@given(st.lists(bounds, min_size=1, max_size=6), st.data())
def test_round_trip_both_ways(bnds, data):
    d = InputDomain([b[0] for b in bnds], [b[1] for b in bnds])
    xhat = data.draw(arrays(float, d.m, elements=st.floats(-1, 1)))
    x = to_physical(d, xhat)
    assert np.all(x >= d.lower) and np.all(x <= d.upper)
    back = to_normalized(d, x)
    scale = np.maximum(np.abs(d.lower), np.abs(d.upper)) / (d.upper - d.lower)
    np.testing.assert_allclose(back, xhat, rtol=0, atol=1e-12 * max(1.0, scale.max()) * 4)
    again = to_physical(d, back)
    np.testing.assert_allclose(again, x, rtol=1e-12, atol=1e-12 * np.abs(d.upper - d.lower).max())


@given(st.floats(-1, 1), st.floats(-1, 1))
def test_monotone(a, b):
    d = InputDomain([3.0], [8.5])
    lo, hi = sorted((a, b))
    if lo < hi:
        assert to_physical(d, [lo])[0] <= to_physical(d, [hi])[0]


class TestBoundsFile:
    def test_parse(self):
        d = parse_bounds("# header\nalpha 0 1\n\n beta -2.5 3e2  # trailing\n")
        assert d.names == ("alpha", "beta")
        np.testing.assert_array_equal(d.lower, [0, -2.5])
        np.testing.assert_array_equal(d.upper, [1, 300])

    @pytest.mark.parametrize("text", ["", "# only\n", "a 0\n", "a x y\n", "a 1 0\n", "a 0 1\na 0 1\n"])
    def test_parse_errors(self, text):
        with pytest.raises(DomainError):
            parse_bounds(text)

    def test_round_trip_full_precision(self, tmp_path):
        d = InputDomain([0.1, 1 / 3], [0.7000000000000001, 2 / 3], ["a", "b"])
        write_bounds(d, tmp_path / "b.txt")
        assert read_bounds(tmp_path / "b.txt") == d
        assert "0.10000000000000001" in format_bounds(d)
