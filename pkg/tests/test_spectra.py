"""Spectral densities, finite-time photon numbers, peaks, and areas."""

import math

import numpy as np
import pytest
from scipy.integrate import simpson

from waveqed.core import (
    PRESET_NAMES,
    DickeState,
    Direction,
    SystemParams,
    collective_rates,
    preset_state,
)
from waveqed.observables import emission_rate
from waveqed.spectra import (
    SpectrumSample,
    detunings,
    line_tail_area,
    peak_analysis,
    photon_number,
    single_qubit_baseline,
    spectral_density,
)

GAMMA = 0.05
F, B = Direction.FORWARD, Direction.BACKWARD
OMEGA_GRID = 1.0 + GAMMA * np.linspace(-10.0, 10.0, 41)


def _params(k0d):
    return SystemParams(gamma_ratio=GAMMA, k0d=k0d)


def _samples(name, params, direction, omegas):
    rho0 = preset_state(name)
    return [
        SpectrumSample(
            omega=float(w),
            value=spectral_density(rho0, params, direction, float(w)),
            direction=direction,
            initial=rho0,
        )
        for w in omegas
    ]


@pytest.mark.parametrize("k0d", [0.25 * math.pi, 0.5 * math.pi, 1.2, 2 * math.pi])
@pytest.mark.parametrize("direction", [F, B])
def test_symmetric_state_is_a_single_lorentzian(k0d, direction):
    params = _params(k0d)
    r = collective_rates(params)
    rho0 = preset_state("S")
    for w in OMEGA_GRID:
        d = detunings(params, float(w))
        want = r.gamma_plus / (d.delta_plus**2 + 0.25 * r.gamma_plus**2)
        got = spectral_density(rho0, params, direction, float(w))
        assert got == pytest.approx(want, rel=1e-12)
    # no interference term: both directions identical
    assert spectral_density(rho0, params, F, 1.02) == spectral_density(
        rho0, params, B, 1.02
    )


@pytest.mark.parametrize("k0d", [0.25 * math.pi, math.pi, 2.2])
def test_antisymmetric_state_is_the_minus_line(k0d):
    params = _params(k0d)
    r = collective_rates(params)
    rho0 = preset_state("A")
    for w in OMEGA_GRID:
        d = detunings(params, float(w))
        want = r.gamma_minus / (d.delta_minus**2 + 0.25 * r.gamma_minus**2)
        assert spectral_density(rho0, params, F, float(w)) == pytest.approx(
            want, rel=1e-12
        )


def test_dark_lines_are_flat_zero():
    for w in OMEGA_GRID:
        assert spectral_density(preset_state("A"), _params(2 * math.pi), F, float(w)) == 0.0
        assert spectral_density(preset_state("S"), _params(math.pi), B, float(w)) == 0.0
        assert spectral_density(preset_state("G"), _params(1.1), F, float(w)) == 0.0


def test_doubly_excited_dicke_point_closed_form():
    # at k0d = 2*pi the E spectrum collapses to a rational function of
    # the detuning; its peak is 5/Gamma, i.e. 100 here
    params = _params(2 * math.pi)
    rho0 = preset_state("E")
    g = GAMMA
    for w in OMEGA_GRID:
        d = float(w) - 1.0
        want = (
            2.0
            * g
            * (d * d + 10.0 * g * g)
            / ((d * d + g * g) * (d * d + 4.0 * g * g))
        )
        got = spectral_density(rho0, params, F, float(w))
        assert got == pytest.approx(want, rel=1e-10)
    assert spectral_density(rho0, params, F, 1.0) == pytest.approx(100.0, rel=1e-12)


def test_dicke_point_reached_continuously():
    # generic-branch evaluation a hair off 2*pi agrees with the snapped
    # limit branch.  Off the peak the lines physically shift by
    # (Gamma/2) sin(k0d - 2pi) ~ 2.5e-6, which on a steep shoulder moves
    # the value at fixed omega by ~1e-5 relative; at the slope-free peak
    # the comparison is orders tighter.
    rho0 = preset_state("E")
    at = np.array(
        [spectral_density(rho0, _params(2 * math.pi), F, float(w)) for w in OMEGA_GRID]
    )
    peak = spectral_density(rho0, _params(2 * math.pi), F, 1.0)
    for off in (-1e-4, 1e-4):
        near = np.array(
            [
                spectral_density(rho0, _params(2 * math.pi + off), F, float(w))
                for w in OMEGA_GRID
            ]
        )
        assert np.max(np.abs(near - at) / np.abs(at)) < 1e-4
        near_peak = spectral_density(rho0, _params(2 * math.pi + off), F, 1.0)
        assert near_peak == pytest.approx(peak, rel=1e-6)


def test_mirror_null_and_qubit_swap_symmetry():
    params = _params(0.5 * math.pi)
    assert abs(spectral_density(preset_state("eg"), params, F, 1.0)) < 1e-10
    # exchanging which qubit is excited is the same as reversing the
    # detection direction, operation for operation
    for w in OMEGA_GRID:
        assert spectral_density(
            preset_state("eg"), params, F, float(w)
        ) == spectral_density(preset_state("ge"), params, B, float(w))


def test_peak_separations_on_the_dense_grid():
    omegas = 1.0 + GAMMA * np.linspace(-10.0, 10.0, 1601)
    params = _params(0.5 * math.pi)
    sep_eg_f = peak_analysis(_samples("eg", params, F, omegas)).separation
    sep_eg_b = peak_analysis(_samples("eg", params, B, omegas)).separation
    sep_e = peak_analysis(_samples("E", params, F, omegas)).separation
    assert sep_eg_f == pytest.approx(math.sqrt(2.0) * GAMMA, abs=2e-3 * GAMMA)
    assert sep_eg_b == pytest.approx(0.6870 * GAMMA, abs=2e-3 * GAMMA)
    assert sep_e == pytest.approx(0.6565 * GAMMA, abs=2e-3 * GAMMA)


def test_peak_analysis_mechanics():
    # exact parabola: the refined vertex is recovered to rounding
    x = np.array([0.0, 0.11, 0.23, 0.34, 0.5])
    v = 5.0 - (x - 0.27) ** 2
    samples = [
        SpectrumSample(omega=float(a), value=float(b), direction=F, initial=None)
        for a, b in zip(x, v)
    ]
    result = peak_analysis(samples)
    assert len(result.peaks) == 1
    assert result.peaks[0][0] == pytest.approx(0.27, abs=1e-12)
    assert result.peaks[0][1] == pytest.approx(5.0, abs=1e-12)
    assert result.separation is None
    with pytest.raises(ValueError):
        peak_analysis(samples[:2])
    bad = [samples[0], samples[2], samples[1]]
    with pytest.raises(ValueError):
        peak_analysis(bad)


@pytest.mark.parametrize(
    "k0d",
    [0.25 * math.pi, 0.5 * math.pi, 0.75 * math.pi, 1.25 * math.pi, 2 * math.pi],
)
def test_symmetric_line_area_with_tail_correction(k0d):
    params = _params(k0d)
    half_width = 50.0 * GAMMA
    omegas = np.linspace(1.0 - half_width, 1.0 + half_width, 16001)
    values = [spectral_density(preset_state("S"), params, F, float(w)) for w in omegas]
    area = simpson(values, x=omegas) + line_tail_area(params, half_width, DickeState.S)
    assert area == pytest.approx(2.0 * math.pi, rel=2e-4)


def test_tail_correction_edge_cases():
    assert line_tail_area(_params(math.pi), 2.5, DickeState.S) == 0.0
    assert line_tail_area(_params(2 * math.pi), 2.5, DickeState.A) == 0.0
    with pytest.raises(ValueError):
        line_tail_area(_params(1.0), 2.5, DickeState.E)
    # the correction is exactly what the window integral misses
    params = _params(0.5 * math.pi)
    half_width = 20.0 * GAMMA
    omegas = np.linspace(1.0 - half_width, 1.0 + half_width, 16001)
    values = [spectral_density(preset_state("A"), params, B, float(w)) for w in omegas]
    area = simpson(values, x=omegas) + line_tail_area(params, half_width, DickeState.A)
    assert area == pytest.approx(2.0 * math.pi, rel=5e-4)


def test_single_qubit_baseline_curves():
    params = _params(1.0)
    peak, rate = single_qubit_baseline(params, 1.0)
    assert peak == pytest.approx(4.0 / GAMMA, rel=1e-15)
    assert rate(0.0) == 0.5 * GAMMA
    value, _ = single_qubit_baseline(params, 1.0 + GAMMA)
    assert value == pytest.approx(GAMMA / (GAMMA**2 + 0.25 * GAMMA**2), rel=1e-15)
    t = np.linspace(0.0, 300.0, 30001)
    area = simpson([rate(float(u)) for u in t], x=t)
    assert area == pytest.approx(0.5, rel=1e-6)


def test_photon_number_starts_at_zero_and_grows_to_the_spectrum():
    params = _params(0.5 * math.pi)
    rho0 = preset_state("S")
    r = collective_rates(params)
    omega = r.omega_plus  # on the line center
    assert photon_number(rho0, params, F, omega, 0.0) == 0.0
    previous = -1.0
    for t in (5.0, 20.0, 60.0, 200.0):
        n = photon_number(rho0, params, F, omega, t)
        assert n > previous
        previous = n
    limit = spectral_density(rho0, params, F, omega)
    assert photon_number(rho0, params, F, omega, 2000.0) == pytest.approx(
        limit, rel=1e-6
    )


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_spectra_are_nonnegative_everywhere(name):
    rho0 = preset_state(name)
    for k0d in (0.25 * math.pi, 0.5 * math.pi, math.pi, 2 * math.pi, 1.9):
        params = _params(k0d)
        for direction in (F, B):
            for w in OMEGA_GRID:
                assert (
                    spectral_density(rho0, params, direction, float(w)) >= -1e-12
                )


def test_integrated_spectrum_flux_matches_the_emission_rate():
    # d/dt of the omega-integrated photon number for one direction is
    # the one-direction rate; finite window and finite differences keep
    # this at the percent level
    params = _params(0.5 * math.pi)
    rho0 = preset_state("eg")
    omegas = np.linspace(1.0 - 200.0 * GAMMA, 1.0 + 200.0 * GAMMA, 4001)
    t, h = 20.0, 0.5

    def photons(at):
        vals = [photon_number(rho0, params, F, float(w), at) for w in omegas]
        return simpson(vals, x=omegas) / (4.0 * math.pi)

    fd = (photons(t + h) - photons(t - h)) / (2.0 * h)
    want = emission_rate(rho0, params, t, F)
    assert fd == pytest.approx(want, rel=2e-2)


def test_detuning_difference_is_the_collective_splitting():
    for k0d in (0.3, 0.5 * math.pi, 2.9):
        params = _params(k0d)
        d = detunings(params, 1.017)
        assert d.delta_plus - d.delta_minus == pytest.approx(
            -GAMMA * math.sin(k0d), rel=1e-12
        )


def test_photon_number_argument_validation():
    params = _params(1.0)
    rho0 = preset_state("E")
    with pytest.raises(ValueError):
        photon_number(rho0, params, "Forward", 1.0, 1.0)
    with pytest.raises(ValueError):
        photon_number(rho0, params, F, 1.0, -0.5)
    with pytest.raises(ValueError):
        photon_number(rho0, params, F, 1.0, float("nan"))
