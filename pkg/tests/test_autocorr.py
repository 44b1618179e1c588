import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hydropacket.autocorr import (
    AutocorrSeries,
    evaluate,
    evaluate_many,
    find_peaks,
    recurrence_summary,
    scan,
)
from hydropacket.coefficients import CoefficientTable, weight_table
from hydropacket.spectrum import kepler_period
from oracles import autocorr_mp

TOY = CoefficientTable.from_weights(1, [0.5, 0.5])
TOY_PERIOD = 16 * math.pi / 3


def toy_exact(t):
    return 0.5 + 0.5 * np.cos(3 * np.asarray(t) / 8)


@pytest.mark.parametrize("s", [0.0, 0.5, 5.0, 20.0])
def test_unity_at_zero(s):
    assert evaluate(weight_table(s), 0.0) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("t", [0.0, 1.0, 1e3, 1e8])
def test_single_state_is_stationary(t):
    assert evaluate(weight_table(0.0), t) == pytest.approx(1.0, abs=1e-15)


def test_two_level_analytic():
    ts = np.array([0.0, 1.0, 7.3, TOY_PERIOD / 2, 1e4, 123456.7])
    np.testing.assert_allclose(evaluate_many(TOY, ts), toy_exact(ts), atol=1e-12)


def test_two_level_returns_after_one_period():
    series = scan(TOY, TOY_PERIOD, 1001)
    assert series.values[-1] == pytest.approx(1.0, abs=1e-12)
    assert series.values.min() == pytest.approx(0.0, abs=1e-5)


def test_brute_force_small_tables():
    rng = np.random.default_rng(11)
    for _ in range(5):
        size = int(rng.integers(1, 13))
        n_lo = int(rng.integers(1, 40))
        t = CoefficientTable.from_weights(n_lo, rng.uniform(0.01, 1.0, size))
        for x in rng.uniform(0, 1e6, 5):
            assert evaluate(t, x) == pytest.approx(float(autocorr_mp(t.n, t.weights, x)), abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.0, max_value=1e9))
def test_time_reversal(t):
    table = weight_table(5.0)
    assert evaluate(table, -t) == pytest.approx(evaluate(table, t), abs=1e-12)


@pytest.mark.parametrize("s", [5.0, 20.0])
def test_values_in_unit_interval(s):
    table = weight_table(s)
    series = scan(table, 3 * kepler_period(table.center), 3000)
    assert series.values[0] == pytest.approx(1.0, abs=1e-12)
    assert np.all(series.values >= -1e-12) and np.all(series.values <= 1 + 1e-12)


def test_scan_metadata():
    table = weight_table(5.0)
    series = scan(table, 10.0, 5)
    np.testing.assert_array_equal(series.times, np.linspace(0, 10, 5))
    assert series.kepler_period == kepler_period(25)
    assert series.s == 5.0


def test_scan_validation():
    with pytest.raises(ValueError):
        scan(TOY, 1.0, 1)
    with pytest.raises(ValueError):
        scan(TOY, 0.0, 10)


def test_parallel_scan_is_identical():
    table = weight_table(20.0)
    t_max = 3 * kepler_period(400)
    a = scan(table, t_max, 2000, n_jobs=1).values
    b = scan(table, t_max, 2000, n_jobs=4).values
    assert a.tobytes() == b.tobytes()


def test_pointwise_independent_of_grid():
    table = weight_table(5.0)
    times = np.linspace(0, 1e5, 700)
    full = evaluate_many(table, times)
    singles = np.array([evaluate(table, x) for x in times[::37]])
    assert full[::37].tobytes() == singles.tobytes()


@pytest.mark.parametrize("s", [5.0, 20.0])
def test_threshold_robustness(s):
    tables = [weight_table(s, th) for th in (1e-50, 1e-100, 1e-200)]
    times = np.linspace(0, 3 * kepler_period(tables[0].center), 1500)
    curves = [evaluate_many(t, times) for t in tables]
    assert np.max(np.abs(curves[0] - curves[1])) < 1e-10
    assert np.max(np.abs(curves[1] - curves[2])) < 1e-10


def test_find_peaks_on_cosine():
    times = np.linspace(0, 3.5 * TOY_PERIOD, 3501)
    series = AutocorrSeries(times, toy_exact(times), TOY_PERIOD, None)
    peaks = find_peaks(series)
    step = times[1] - times[0]
    assert len(peaks) == 3
    for k, (t, h) in enumerate(peaks, start=1):
        assert abs(t - k * TOY_PERIOD) <= step
        assert h == pytest.approx(1.0, abs=1e-5)


def test_find_peaks_filters():
    times = np.linspace(0, 3.5 * TOY_PERIOD, 3501)
    series = AutocorrSeries(times, toy_exact(times) * np.exp(-times / 50), TOY_PERIOD, None)
    all_peaks = find_peaks(series)
    assert np.all(np.diff(all_peaks.times) > 0)
    high = find_peaks(series, min_height=0.5)
    late = find_peaks(series, skip_initial=1.5 * TOY_PERIOD)
    assert len(high) < len(all_peaks) and np.all(high.heights >= 0.5)
    assert len(late) == 2 and np.all(late.times > 1.5 * TOY_PERIOD)


def test_find_peaks_ignores_plateaus_and_edges():
    series = AutocorrSeries(np.arange(6.0), np.array([1.0, 0.5, 0.7, 0.7, 0.2, 0.9]), 1.0, None)
    assert len(find_peaks(series)) == 0


def test_peak_times_stable_under_refinement():
    table = weight_table(5.0)
    t_k = kepler_period(25)
    coarse = find_peaks(scan(table, 3 * t_k, 3001), 0.05, 0.5 * t_k)
    fine = find_peaks(scan(table, 3 * t_k, 6001), 0.05, 0.5 * t_k)
    step = 3 * t_k / 3000
    assert len(coarse) == len(fine)
    assert np.max(np.abs(coarse.times - fine.times)) < step


def test_s5_has_partial_recurrences():
    table = weight_table(5.0)
    t_k = kepler_period(25)
    peaks = find_peaks(scan(table, 3 * t_k, 6000), 0.05, 0.5 * t_k)
    assert len(peaks) > 0


def test_recurrence_summary_ordering():
    small = recurrence_summary(0.5, 3, 2000)
    mid = recurrence_summary(5, 3, 2000)
    big = recurrence_summary(20, 3, 2000)
    # few states: near-harmonic beating between n = 1 and 2
    assert small.height > 0.8
    assert 0 < mid.height < 1
    assert big.height < mid.height
    # frozen from direct computation
    assert mid.height == pytest.approx(0.170970, abs=1e-5)
    assert big.height == pytest.approx(0.053357, abs=1e-5)


def test_recurrence_summary_validation():
    with pytest.raises(ValueError):
        recurrence_summary(0.0)
    with pytest.raises(ValueError):
        recurrence_summary(1.0, 0)


def test_csv_export(tmp_path):
    series = scan(TOY, TOY_PERIOD, 4)
    path = tmp_path / "a.csv"
    with open(path, "w") as fh:
        series.write_csv(fh, comment="x=1")
    lines = path.read_text().splitlines()
    assert lines[:2] == ["# x=1", "t_atomic,t_over_kepler,C"]
    assert len(lines) == 6
    t, tk, c = map(float, lines[-1].split(","))
    # the toy table has no s, so its time scale is the Kepler period of its mode n = 1
    assert t == TOY_PERIOD and tk == pytest.approx(8 / 3) and c == pytest.approx(1.0)


def test_brute_force_at_large_times():
    table = weight_table(20.0, 1e-20)
    for x in (1.234e8, 6.0e8, 1.2e9):
        assert evaluate(table, x) == pytest.approx(float(autocorr_mp(table.n, table.weights, x)), abs=1e-12)
