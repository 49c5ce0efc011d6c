import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import vibsample as vs
from vibsample.errors import ExplosionGuardError
from vibsample.fcf import FockState
from vibsample.spectrum import (
    Stick,
    binned_to_csv_rows,
    sticks_to_csv_rows,
)


def spectrum_of(pairs):
    return vs.StickSpectrum(tuple(Stick(w, i) for w, i in pairs))


# ---------------------------------------------------------------- bin_sticks

def test_bin_single_stick():
    binned = vs.bin_sticks(spectrum_of([(1566.4602, 0.2717)]), 1.0)
    assert binned.values[1566] == pytest.approx(0.2717)
    assert binned.values.sum() == pytest.approx(0.2717)


def test_bin_sticks_same_bin():
    binned = vs.bin_sticks(spectrum_of([(0.0, 0.3), (150.0, 0.4)]), 200.0)
    assert len(binned.values) == 1
    assert binned.values[0] == pytest.approx(0.7)


def test_bin_empty():
    binned = vs.bin_sticks(spectrum_of([]), 5.0)
    assert np.all(binned.values == 0.0)


@given(st.lists(st.tuples(st.floats(0.0, 5000.0), st.floats(0.0, 1.0)),
                max_size=30),
       st.floats(0.5, 300.0))
@settings(max_examples=100, deadline=None)
def test_bin_conserves_intensity(pairs, width):
    sticks = spectrum_of(pairs)
    binned = vs.bin_sticks(sticks, width)
    assert binned.values.sum() == pytest.approx(sticks.total_intensity, abs=1e-12)


def test_bin_edge_goes_right():
    binned = vs.bin_sticks(spectrum_of([(200.0, 1.0)]), 200.0)
    assert binned.values[1] == pytest.approx(1.0)
    assert binned.values[0] == 0.0


# ------------------------------------------------------- enumerate_bin_states

def test_enumerate_small_window():
    states = vs.enumerate_bin_states([2.0, 3.0], (0.0, 6.0), 3)
    got = {s.occupations for s in states}
    assert got == {(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)}


def test_enumerate_exact_window():
    states = vs.enumerate_bin_states([2.0, 3.0], (6.0, 7.0), 3)
    got = {s.occupations for s in states}
    assert got == {(3, 0), (0, 2)}


def test_enumerate_formic_mode3(formic_acid):
    states = vs.enumerate_bin_states(formic_acid.omega_final, (1566.0, 1567.0), 4)
    assert FockState((0, 0, 1, 0, 0, 0, 0)) in states


def test_enumerate_partition_equals_one_shot():
    omega = [2.0, 3.0, 5.0]
    whole = {s.occupations for s in vs.enumerate_bin_states(omega, (0.0, 30.0), 5)}
    parts = set()
    for lo in range(0, 30, 7):
        parts |= {s.occupations
                  for s in vs.enumerate_bin_states(omega, (float(lo), float(lo + 7)), 5)}
    parts = {occ for occ in parts
             if np.dot(occ, omega) < 30.0}
    assert parts == whole


def test_enumerate_explosion_guard():
    with pytest.raises(ExplosionGuardError):
        vs.enumerate_bin_states([1.0] * 8, (0.0, 50.0), 12, limit=100)


def test_enumerate_window_validation():
    with pytest.raises(ValueError):
        vs.enumerate_bin_states([1.0], (5.0, 5.0), 2)


# ------------------------------------------------------------ convolve_blocks

def test_convolve_product():
    a = spectrum_of([(0.0, 0.6), (5.0, 0.4)])
    b = spectrum_of([(0.0, 0.5), (10.0, 0.5)])
    out = vs.convolve_blocks(a, b)
    got = {(s.omega_vib, round(s.intensity, 12)) for s in out.sticks}
    assert got == {(0.0, 0.3), (5.0, 0.2), (10.0, 0.3), (15.0, 0.2)}


def test_convolve_identity_element():
    a = spectrum_of([(0.0, 0.6), (5.0, 0.4)])
    unit = spectrum_of([(0.0, 1.0)])
    out = vs.convolve_blocks(a, unit)
    got = {(s.omega_vib, s.intensity) for s in out.sticks}
    assert got == {(0.0, 0.6), (5.0, 0.4)}


def test_convolve_total_intensity():
    rng = np.random.default_rng(2)
    a = spectrum_of([(float(w), float(i)) for w, i in
                     zip(rng.uniform(0, 100, 8), rng.uniform(0, 1, 8))])
    b = spectrum_of([(float(w), float(i)) for w, i in
                     zip(rng.uniform(0, 100, 6), rng.uniform(0, 1, 6))])
    out = vs.convolve_blocks(a, b)
    assert out.total_intensity == pytest.approx(
        a.total_intensity * b.total_intensity, abs=1e-12)


def test_convolve_commutative():
    a = spectrum_of([(0.0, 0.3), (7.0, 0.7)])
    b = spectrum_of([(2.0, 0.5), (9.0, 0.5)])
    ab = {(s.omega_vib, round(s.intensity, 12)) for s in vs.convolve_blocks(a, b).sticks}
    ba = {(s.omega_vib, round(s.intensity, 12)) for s in vs.convolve_blocks(b, a).sticks}
    assert ab == ba


def test_convolve_associative():
    a = spectrum_of([(0.0, 0.3), (7.0, 0.7)])
    b = spectrum_of([(2.0, 0.5), (9.0, 0.5)])
    c = spectrum_of([(1.0, 0.4), (3.0, 0.6)])
    left = vs.convolve_blocks(vs.convolve_blocks(a, b), c)
    right = vs.convolve_blocks(a, vs.convolve_blocks(b, c))
    ls = {(s.omega_vib, round(s.intensity, 12)) for s in left.sticks}
    rs = {(s.omega_vib, round(s.intensity, 12)) for s in right.sticks}
    assert ls == rs


def test_convolve_prunes_floor():
    a = spectrum_of([(0.0, 0.99), (5.0, 0.01)])
    out = vs.convolve_blocks(a, a, prob_floor=0.05)
    assert {s.omega_vib for s in out.sticks} == {0.0}


# ------------------------------------------------------------------- broaden

def test_broaden_lorentzian_peak():
    grid = vs.BinnedSpectrum(bin_width=0.5, origin=0.0, values=np.zeros(100))
    gamma = 2.0
    out = vs.broaden(spectrum_of([(0.0, 1.0)]), "lorentzian", gamma, grid)
    assert out.values[0] == pytest.approx(1.0 / (np.pi * gamma))


def test_broaden_empty():
    grid = vs.BinnedSpectrum(bin_width=1.0, origin=0.0, values=np.zeros(10))
    out = vs.broaden(spectrum_of([]), "lorentzian", 1.0, grid)
    assert np.all(out.values == 0.0)


def test_broaden_linearity():
    grid = vs.BinnedSpectrum(bin_width=1.0, origin=0.0, values=np.zeros(50))
    single = vs.broaden(spectrum_of([(10.0, 1.0)]), "gaussian", 3.0, grid)
    double = vs.broaden(spectrum_of([(10.0, 1.0), (10.0, 1.0)]), "gaussian", 3.0, grid)
    np.testing.assert_allclose(double.values, 2.0 * single.values, rtol=1e-14)


def test_broaden_gaussian_hwhm():
    grid = vs.BinnedSpectrum(bin_width=0.1, origin=0.0, values=np.zeros(2000))
    hwhm = 5.0
    out = vs.broaden(spectrum_of([(100.0, 1.0)]), "gaussian", hwhm, grid)
    peak = out.values.max()
    at_hwhm = out.values[int((100.0 + hwhm) / 0.1)]
    assert at_hwhm == pytest.approx(peak / 2.0, rel=1e-6)


def test_broaden_rejects_unknown_profile():
    grid = vs.BinnedSpectrum(bin_width=1.0, origin=0.0, values=np.zeros(5))
    with pytest.raises(ValueError):
        vs.broaden(spectrum_of([]), "voigt", 1.0, grid)


# ----------------------------------------------------------------- csv export

def test_csv_rows():
    sticks = spectrum_of([(1.5, 0.25)])
    rows = sticks_to_csv_rows(sticks)
    assert rows[0] == ("omega_cm1", "intensity")
    binned = vs.bin_sticks(sticks, 1.0)
    rows = binned_to_csv_rows(binned)
    assert rows[0] == ("bin_left_cm1", "value")
    assert float(rows[2][1]) == pytest.approx(0.25)
