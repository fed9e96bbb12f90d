import numpy as np
import pytest

from modules.errors import DegenerateDenominatorError, DegeneratePolesError
from modules.params import SystemParams, mhz
from modules.susceptibility import (
    cubic_coefficients,
    decompose,
    probe_response,
    radical_poles,
    residues,
    rho21,
    solve_poles,
)
from modules.validation import check_partial_fractions


def generic_params(**changes):
    params = SystemParams.from_mhz(omega_p=0.4, omega_c=6.0, omega_mw=5.0, delta_c=0.0, delta_mw=0.0,
                                   gamma2=3.0, gamma3=0.1, gamma4=0.1, od=1.0)
    return params.replace(**changes)


def asymmetric_params():
    return generic_params(delta_c=mhz(3.0), delta_mw=mhz(-1.0), gamma4=mhz(0.2))


def nearest_match(found, reference):
    remaining = list(found)
    matched = []
    for value in reference:
        k = int(np.argmin([abs(r - value) for r in remaining]))
        matched.append(remaining.pop(k))
    return np.array(matched)


GRID = mhz(np.linspace(-20, 20, 201))


def test_partial_fractions_match_direct_form():
    params = asymmetric_params()
    decomposition = decompose(params)
    direct = rho21(params, GRID)
    expanded = 0.5 * params.omega_p * decomposition.response(GRID)
    assert np.max(np.abs(expanded - direct) / np.abs(direct)) <= 1e-9


def test_partial_fractions_on_random_params():
    passed, detail = check_partial_fractions(np.random.default_rng(0), n_sets=100)
    assert passed, detail


def test_residues_sum_to_one():
    for params in (generic_params(), asymmetric_params()):
        assert abs(np.sum(decompose(params).residues) - 1) <= 1e-9


def test_poles_match_companion_eigenvalues():
    params = asymmetric_params()
    coeffs = cubic_coefficients(params)
    companion = np.zeros((3, 3), dtype=complex)
    companion[0, :] = -coeffs[1:]
    companion[1, 0] = 1.0
    companion[2, 1] = 1.0
    eigenvalues = np.linalg.eigvals(companion)

    poles = solve_poles(params).poles
    matched = nearest_match(eigenvalues, poles)
    assert np.max(np.abs(matched - poles)) / np.max(np.abs(poles)) <= 1e-9


def test_poles_lie_in_upper_half_plane():
    poles = solve_poles(asymmetric_params()).poles
    assert np.all(poles.imag > 0)


def test_poles_sorted_by_real_part():
    poles = solve_poles(generic_params()).poles
    assert np.all(np.diff(poles.real) >= 0)


def test_radical_form_matches_companion_roots():
    params = asymmetric_params()
    poles = solve_poles(params).poles
    matched = nearest_match(radical_poles(params), poles)
    assert np.max(np.abs(matched - poles)) / np.max(np.abs(poles)) <= 1e-9


def test_two_level_limit_is_lorentzian():
    params = generic_params(omega_c=0.0, omega_mw=0.0, delta_c=mhz(2.0))
    d2 = GRID - params.delta_c - 1j * params.gamma2
    np.testing.assert_allclose(rho21(params, GRID), 0.5 * params.omega_p / d2, rtol=1e-12)


def test_resonant_absorption_has_positive_imaginary_part():
    params = generic_params(omega_c=0.0, omega_mw=0.0)
    assert rho21(params, 0.0).imag > 0


def test_mirror_symmetry_of_imaginary_part():
    params = generic_params()
    delta = mhz(np.linspace(0, 20, 101))
    np.testing.assert_allclose(probe_response(params, delta).imag, probe_response(params, -delta).imag,
                               rtol=0, atol=1e-22)


def test_undamped_dressed_resonance_raises():
    params = generic_params(omega_c=0.0, omega_mw=0.0, gamma3=0.0, gamma4=0.0)
    with pytest.raises(DegenerateDenominatorError):
        probe_response(params, 0.0)


def test_degenerate_poles_raise():
    params = generic_params()
    poles = np.array([1.0 + 1j, 1.0 + 1j, 3.0 + 1j]) * mhz(1.0)
    with pytest.raises(DegeneratePolesError):
        residues(params, poles)


def test_response_requires_residues():
    decomposition = solve_poles(generic_params())
    with pytest.raises(ValueError):
        decomposition.response(GRID)
