import numpy as np
import pytest

from modules.eia_effective import (
    EffectiveParams,
    check_adiabatic_regime,
    double_lorentzian,
    effective_params,
    eia_poles,
    rho31,
)
from modules.errors import DegeneratePolesError, RegimeValidityError
from modules.params import SystemParams, mhz
from modules.susceptibility import rho21


def eia_params(**changes):
    params = SystemParams.from_mhz(omega_p=0.4, omega_c=6.0, omega_mw=5.0, delta_c=100.0, delta_mw=0.0,
                                   gamma2=3.0, gamma3=0.05, gamma4=0.05, od=100.0)
    return params.replace(**changes)


def test_effective_params_values():
    eff = effective_params(eia_params())
    assert eff.omega_eff == pytest.approx(mhz(0.012), rel=1e-12)
    assert eff.delta_ac == pytest.approx(mhz(0.0904), rel=1e-12)


def test_effective_params_without_probe():
    params = eia_params(omega_p=0.0)
    eff = effective_params(params)
    assert eff.omega_eff == 0.0
    assert eff.delta_ac == pytest.approx(params.omega_c ** 2 / (4 * params.delta_c))


def test_doubling_detuning_halves_outputs():
    eff = effective_params(eia_params())
    doubled = effective_params(eia_params(delta_c=mhz(200.0)))
    assert doubled.omega_eff == pytest.approx(eff.omega_eff / 2)
    assert doubled.delta_ac == pytest.approx(eff.delta_ac / 2)


def test_zero_detuning_rejected_even_without_gate():
    with pytest.raises(ValueError):
        effective_params(eia_params(delta_c=0.0), strict=False)


def test_validity_gate():
    near = eia_params(delta_c=mhz(20.0))
    assert not check_adiabatic_regime(near, strict=False)
    with pytest.raises(RegimeValidityError):
        effective_params(near)
    assert effective_params(near, strict=False).delta_ac > 0


def test_rho31_without_mw_is_single_lorentzian_at_stark_shift():
    params = eia_params(omega_mw=0.0)
    eff = effective_params(params)
    delta = mhz(np.linspace(-1, 1, 2001))
    value = rho31(params, eff, delta)
    expected = 0.5 * eff.omega_eff / (delta - 1j * params.gamma3 + eff.delta_ac)
    np.testing.assert_allclose(value, expected, rtol=1e-12)
    assert delta[np.argmax(value.imag)] == pytest.approx(-eff.delta_ac, abs=mhz(1e-3))


def test_rho31_absorptive_sign():
    params = eia_params()
    eff = effective_params(params)
    delta = mhz(np.linspace(-5, 5, 401))
    assert np.all(rho31(params, eff, delta).imag >= 0)


def test_rho31_equals_two_pole_expansion():
    params = eia_params(delta_mw=mhz(0.3), gamma4=mhz(0.08))
    eff = effective_params(params)
    poles = eia_poles(params, eff)
    delta = mhz(np.linspace(-10, 10, 401))
    expansion = 0.5 * eff.omega_eff * (poles.residue_plus / (delta - poles.plus)
                                       + poles.residue_minus / (delta - poles.minus))
    np.testing.assert_allclose(expansion, rho31(params, eff, delta), rtol=1e-9)


def test_eia_poles_match_quadratic_roots():
    params = eia_params(delta_mw=mhz(0.3), gamma4=mhz(0.08))
    eff = effective_params(params)
    poles = eia_poles(params, eff)
    a3 = 1j * params.gamma3
    a4 = params.delta_mw + 1j * params.gamma4
    roots = np.roots([1.0, -(a4 + a3 - eff.delta_ac), a4 * (a3 - eff.delta_ac) - params.omega_mw ** 2 / 4])
    roots = sorted(roots, key=lambda r: r.real)
    assert abs(roots[1] - poles.plus) <= 1e-10 * abs(poles.plus)
    assert abs(roots[0] - poles.minus) <= 1e-10 * abs(poles.minus)


def test_residue_and_trace_identities():
    params = eia_params(delta_mw=mhz(0.2), gamma3=mhz(0.07))
    eff = effective_params(params)
    poles = eia_poles(params, eff)
    assert abs(poles.residue_plus + poles.residue_minus - 1) <= 1e-12
    trace = params.delta_mw - eff.delta_ac + 1j * (params.gamma3 + params.gamma4)
    assert abs(poles.plus + poles.minus - trace) <= 1e-12 * abs(trace) + 1e-12 * mhz(1.0)


def test_poles_without_fields_are_bare_widths():
    params = eia_params(omega_mw=0.0, gamma3=mhz(0.05), gamma4=mhz(0.2))
    poles = eia_poles(params, EffectiveParams(omega_eff=0.0, delta_ac=0.0))
    assert poles.plus == pytest.approx(1j * params.gamma4)
    assert poles.minus == pytest.approx(1j * params.gamma3)


def test_symmetric_poles_split_by_rabi_frequency():
    params = eia_params(omega_mw=mhz(10.0), gamma3=mhz(0.1), gamma4=mhz(0.1))
    poles = eia_poles(params, EffectiveParams(omega_eff=0.0, delta_ac=0.0))
    assert poles.plus.real == pytest.approx(mhz(5.0), rel=1e-12)
    assert poles.minus.real == pytest.approx(-mhz(5.0), rel=1e-12)


def test_coincident_poles_raise():
    params = eia_params(omega_mw=0.0)
    with pytest.raises(DegeneratePolesError):
        eia_poles(params, EffectiveParams(omega_eff=0.0, delta_ac=0.0))


def test_pole_splitting_converges_quadratically():
    def splitting_error(omega_mw_mhz):
        params = eia_params(omega_mw=mhz(omega_mw_mhz))
        poles = eia_poles(params, effective_params(params))
        return abs((poles.plus - poles.minus).real - params.omega_mw) / params.omega_mw

    ratio = splitting_error(5.0) / splitting_error(10.0)
    assert 3.5 <= ratio <= 4.5


def test_double_lorentzian_gate_and_width():
    params = eia_params()
    eff = effective_params(params)
    with pytest.raises(RegimeValidityError):
        double_lorentzian(params.replace(omega_mw=mhz(0.5)), eff, 0.0)

    delta = mhz(np.linspace(-5, 5, 10001))
    value = double_lorentzian(params, eff, delta)
    peaks = delta[np.argsort(value.imag)[-2:]]
    assert abs(peaks[1] - peaks[0]) == pytest.approx(params.omega_mw, abs=2 * (delta[1] - delta[0]))


def test_double_lorentzian_gate_can_be_overridden():
    params = eia_params(omega_mw=mhz(0.5))
    eff = effective_params(params)
    assert np.isfinite(double_lorentzian(params, eff, 0.0, strict=False))


def far_detuned_params():
    return SystemParams.from_mhz(omega_p=0.4, omega_c=10.0, omega_mw=1.0, delta_c=500.0, delta_mw=0.0,
                                 gamma2=3.0, gamma3=0.1, gamma4=0.1, od=100.0)


def scaled_mismatch(reference, values):
    """values 를 reference 의 복소 상수배로 맞춘 뒤 남는 최대 차이 (values 최대값 기준)"""
    scale = np.vdot(reference, values) / np.vdot(reference, reference)
    return float(np.max(np.abs(scale * reference - values)) / np.max(np.abs(values)))


def test_effective_coherence_matches_full_lineshape():
    params = far_detuned_params()
    delta = np.linspace(-params.omega_mw, params.omega_mw, 401)
    raman = rho21(params, delta) - rho21(params.replace(omega_c=0.0, omega_mw=0.0), delta)
    assert scaled_mismatch(rho31(params, effective_params(params), delta), raman) <= 0.02
