import math

import numpy as np
import pytest

from oisl.catalogue import builtin_shells, golden_doppler
from oisl.constants import SPEED_OF_LIGHT
from oisl.doppler import (CoincidentSatellitesError, doppler_derivative, doppler_series,
                          doppler_shift, extrema_search, urm_bound)
from oisl.orbital import (Link, SatelliteIndex, ShellSpec, link_distance, maximize_periodic,
                          resolve_topology)

SHELLS = builtin_shells()
A1 = SHELLS["A1"]
O = SatelliteIndex(0, 0)


def test_intraorbital_is_null():
    t = np.linspace(0, A1.period, 300)
    # rounding floor of the carrier-scaled range rate
    np.testing.assert_allclose(doppler_shift(A1, O, Link.INTRA_NEXT, t), 0.0, atol=1e-3)
    np.testing.assert_allclose(doppler_derivative(A1, O, Link.INTRA_NEXT, t), 0.0, atol=1.0)


def test_zero_at_range_extremum():
    shell = A1.with_phase_factor(2)
    t_max, _ = maximize_periodic(lambda t: link_distance(shell, O, Link.K_TO_K, t), shell.period)
    peak = np.abs(doppler_series(shell, Link.K_TO_K, 500).delta_f).max()
    assert abs(doppler_shift(shell, O, Link.K_TO_K, t_max)) < 1e-6 * peak


def test_sign_follows_range_rate():
    shell = A1.with_phase_factor(2)
    t = np.linspace(0, shell.period, 1001)
    d = link_distance(shell, O, Link.K_TO_K, t)
    df = doppler_shift(shell, O, Link.K_TO_K, t)
    rate = np.gradient(d, t)
    keep = np.abs(rate) > 1e-3 * np.abs(rate).max()
    assert np.all(np.sign(df[keep]) == np.sign(rate[keep]))


def test_reverse_direction_sees_same_shift():
    # the range rate is symmetric, only the denominators differ (order v/c)
    shell = A1.with_phase_factor(2)
    dst = resolve_topology(shell, O, Link.K_TO_K)
    t = np.linspace(0, shell.period, 400)
    fwd = doppler_shift(shell, O, dst, t)
    back = doppler_shift(shell, dst, O, t)
    v_over_c = shell.speed / SPEED_OF_LIGHT
    assert np.max(np.abs(fwd - back)) <= 2.5 * v_over_c * np.abs(fwd).max()


def test_derivative_matches_dense_series():
    shell = A1.with_phase_factor(2)
    s = doppler_series(shell, Link.K_TO_K, 100_000)
    numeric = np.gradient(s.delta_f, s.t)
    inner = slice(1, -1)
    err = np.abs(numeric[inner] - s.delta_f_dot[inner])
    assert err.max() < 1e-3 * np.abs(s.delta_f_dot).max()


def test_coincident_satellites():
    shell = ShellSpec.from_degrees(550, 53, 1, 2)
    with pytest.raises(CoincidentSatellitesError):
        doppler_shift(shell, O, O, 0.0)


def test_a1_k_to_k_anchor():
    e = extrema_search(A1, Link.K_TO_K)
    assert e.f_at == 2
    assert e.delta_f_max / 1e9 == pytest.approx(1.0837, rel=0.01)
    assert e.delta_f_dot_max / 1e9 == pytest.approx(0.3655, rel=0.10)
    assert e.delta_f_dot_max_any >= e.delta_f_dot_max


def test_workers_give_same_result():
    a = extrema_search(A1, Link.K_TO_K_MINUS_1, samples=2000)
    b = extrema_search(A1, Link.K_TO_K_MINUS_1, samples=2000, workers=2)
    assert a == b


def test_two_plane_brute_force():
    shell = ShellSpec.from_degrees(700, 70, 2, 6, name="syn")
    t = np.linspace(0, shell.period, 400_001)
    for link in (Link.K_TO_K, Link.K_TO_K_MINUS_1):
        brute = [np.abs(doppler_shift(shell.with_phase_factor(f), O, link, t)).max()
                 for f in range(2)]
        e = extrema_search(shell, link)
        assert e.delta_f_max == pytest.approx(max(brute), rel=1e-6)
        assert e.f_at == int(np.argmax(brute))


def test_grid_phase_invariance():
    shell = A1.with_phase_factor(2)
    f = lambda t: np.abs(doppler_shift(shell, O, Link.K_TO_K, t))
    a = maximize_periodic(f, shell.period, 2000)[1]
    b = maximize_periodic(f, shell.period, 2000, offset=1.2345)[1]
    assert a == pytest.approx(b, rel=1e-9)


def test_urm_bound():
    b = urm_bound(400, carrier_Hz=193.4e12)
    assert b.delta_f_bound_Hz == pytest.approx(10e9, rel=0.02)
    assert b.closing_speed_mps == pytest.approx(15343, abs=2)
    hs = [300, 500, 800, 1200]
    vals = [urm_bound(h).delta_f_bound_Hz for h in hs]
    assert all(x > y for x, y in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        urm_bound(0)


def test_reference_peaks_below_urm_bound():
    for g in golden_doppler():
        h = SHELLS[g["shell"]].altitude_km
        assert g["delta_f_max_GHz"] * 1e9 < urm_bound(h).delta_f_bound_Hz


def test_shift_well_below_carrier():
    s = doppler_series(A1.with_phase_factor(2), Link.K_TO_K, 200)
    assert np.abs(s.delta_f).max() < 1e-3 * SPEED_OF_LIGHT / 1550e-9
