import numpy as np
import pytest

from modules.analyzer import initial_guess
from modules.errors import DipCountError
from modules.global_fitting import FIT_PARAMETERS, GlobalFit, fit_global, splitting_from_model
from modules.lineshape_fitting import extract_ats
from modules.params import SystemParams, mhz
from modules.spectrum import GridSpec, NoiseModel, synthesize


def eia_params(**changes):
    params = SystemParams.from_mhz(omega_p=0.4, omega_c=6.0, omega_mw=5.0, delta_c=100.0, delta_mw=0.0,
                                   gamma2=3.0, gamma3=0.05, gamma4=0.05, od=100.0)
    return params.replace(**changes)


FINE_GRID = GridSpec(-20e6, 20e6, 2001)


def hand_fit(params):
    return GlobalFit(params=params, free=FIT_PARAMETERS, residual_rms=0.0, converged=True, iterations=0,
                     optimality=0.0, message='', span=(mhz(-20.0), mhz(20.0)))


@pytest.fixture(scope="module")
def round_trip():
    truth = eia_params(delta_mw=mhz(0.2), gamma3=mhz(0.06), gamma4=mhz(0.04))
    spectrum = synthesize(truth, FINE_GRID)
    seed = initial_guess(spectrum, truth, extract_ats(spectrum).delta_f)
    return truth, spectrum, fit_global(spectrum, seed)


def test_global_fit_recovers_rabi_frequency(round_trip):
    truth, _, fit = round_trip
    assert fit.converged
    assert fit.params.omega_mw == pytest.approx(truth.omega_mw, rel=1e-5)
    assert fit.residual_rms < 1e-6
    assert fit.free == FIT_PARAMETERS


def test_global_fit_keeps_fixed_parameters(round_trip):
    truth, _, fit = round_trip
    assert fit.params.delta_c == truth.delta_c
    assert fit.params.gamma2 == truth.gamma2
    assert fit.params.omega_p == truth.omega_p
    assert set(fit.fitted_values()) == set(FIT_PARAMETERS)


def test_model_splitting_matches_rabi_frequency(round_trip):
    truth, _, fit = round_trip
    splitting = splitting_from_model(fit)
    assert abs(2 * np.pi * splitting - truth.omega_mw) / truth.omega_mw < 0.01


def test_fixed_parameters_are_not_moved():
    truth = eia_params()
    spectrum = synthesize(truth, FINE_GRID)
    seed = initial_guess(spectrum, truth, extract_ats(spectrum).delta_f)
    fit = fit_global(spectrum, seed, fixed=('delta_mw', 'gamma4'))
    assert fit.params.delta_mw == seed.delta_mw
    assert fit.params.gamma4 == seed.gamma4
    assert 'gamma4' not in fit.free


@pytest.mark.parametrize("fixed", [('omega_p',), FIT_PARAMETERS])
def test_bad_fixed_sets_rejected(fixed):
    spectrum = synthesize(eia_params(), GridSpec(-5e6, 5e6, 101))
    with pytest.raises(ValueError):
        fit_global(spectrum, eia_params(), fixed=fixed)


def test_model_splitting_without_field_raises():
    with pytest.raises(DipCountError):
        splitting_from_model(hand_fit(eia_params(omega_mw=0.0)), points=4001)


def test_model_splitting_rejects_unknown_feature():
    with pytest.raises(ValueError):
        splitting_from_model(hand_fit(eia_params()), feature='edge')


def random_eia_params(seed):
    rng = np.random.default_rng(seed)
    return eia_params(
        omega_c=mhz(rng.uniform(4.0, 8.0)),
        omega_mw=mhz(rng.uniform(2.5, 10.0)),
        delta_mw=mhz(rng.uniform(-0.3, 0.3)),
        gamma3=mhz(rng.uniform(0.03, 0.08)),
        gamma4=mhz(rng.uniform(0.03, 0.08)),
        od=rng.uniform(60.0, 140.0),
    )


@pytest.mark.parametrize("seed", range(50))
def test_global_fit_recovers_all_free_parameters(seed):
    truth = random_eia_params(seed)
    spectrum = synthesize(truth, FINE_GRID)
    fit = fit_global(spectrum, initial_guess(spectrum, truth, extract_ats(spectrum).delta_f))

    assert fit.converged
    for name in ('od', 'omega_c', 'omega_mw', 'gamma3', 'gamma4'):
        assert getattr(fit.params, name) == pytest.approx(getattr(truth, name), rel=1e-6), name
    assert fit.params.delta_mw == pytest.approx(truth.delta_mw, abs=1e-6 * truth.omega_mw)


@pytest.mark.parametrize("seed", range(20))
def test_global_fit_under_one_percent_noise(seed):
    truth = eia_params()
    spectrum = synthesize(truth, FINE_GRID, NoiseModel(additive_rms=0.01, seed=seed))
    fit = fit_global(spectrum, initial_guess(spectrum, truth, extract_ats(spectrum).delta_f))
    assert abs(fit.params.omega_mw - truth.omega_mw) / truth.omega_mw < 0.01


def test_global_fit_does_not_depend_on_local_splitting():
    truth = eia_params()
    spectrum = synthesize(truth, FINE_GRID)
    corrupted = 3.0 * extract_ats(spectrum).delta_f
    fit = fit_global(spectrum, initial_guess(spectrum, truth, corrupted))
    assert fit.converged
    assert fit.params.omega_mw == pytest.approx(truth.omega_mw, rel=1e-6)


def test_global_fit_tracks_rabi_frequency_in_deit():
    truth = SystemParams.from_mhz(omega_p=0.4, omega_c=2.0, omega_mw=5.0, delta_c=0.0, delta_mw=0.0,
                                  gamma2=3.0, gamma3=0.05, gamma4=0.05, od=5.0)
    spectrum = synthesize(truth, FINE_GRID)
    fit = fit_global(spectrum, initial_guess(spectrum, truth, 1.1 * truth.omega_mw / (2 * np.pi)))
    assert abs(fit.params.omega_mw - truth.omega_mw) / truth.omega_mw < 0.02
