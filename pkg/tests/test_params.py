import math

import pytest

from modules.params import (
    DipoleTransition,
    SystemParams,
    angular_to_hz,
    field_from_rabi,
    field_from_splitting,
    hz_to_angular,
    mhz,
    rabi_from_field,
    splitting_from_field,
)


def eia_params(**changes):
    params = SystemParams.from_mhz(omega_p=0.4, omega_c=6.0, omega_mw=5.0, delta_c=100.0, delta_mw=0.0,
                                   gamma2=3.0, gamma3=0.05, gamma4=0.05, od=100.0)
    return params.replace(**changes)


def test_field_anchor_matches_published_value():
    field = field_from_splitting(250e3, 1926.0)
    assert field == pytest.approx(1.014e-2, rel=2e-3)


def test_field_from_splitting_hand_evaluation():
    expected = 2 * math.pi * 1.054571817e-34 * 1e6 / (1926.0 * 1.602176634e-19 * 5.29177210903e-11)
    assert field_from_splitting(1e6, 1926.0) == pytest.approx(expected, rel=1e-12)


def test_field_zero_splitting_is_zero():
    assert field_from_splitting(0.0, 1926.0) == 0.0


@pytest.mark.parametrize("delta_f, mu", [(-1.0, 1926.0), (1e6, 0.0), (1e6, -5.0)])
def test_field_from_splitting_rejects_bad_input(delta_f, mu):
    with pytest.raises(ValueError):
        field_from_splitting(delta_f, mu)


def test_splitting_and_field_are_inverse():
    field = field_from_splitting(3.7e6, 1926.0)
    assert splitting_from_field(field, 1926.0) == pytest.approx(3.7e6, rel=1e-12)


def test_rabi_and_splitting_give_same_field():
    assert field_from_rabi(hz_to_angular(2.5e6), 1926.0) == pytest.approx(
        field_from_splitting(2.5e6, 1926.0), rel=1e-12
    )
    omega = rabi_from_field(0.035, 1926.0)
    assert field_from_rabi(omega, 1926.0) == pytest.approx(0.035, rel=1e-12)


def test_unit_helpers():
    assert mhz(1.0) == pytest.approx(2 * math.pi * 1e6)
    assert angular_to_hz(hz_to_angular(123.0)) == pytest.approx(123.0)


def test_dipole_transition_requires_positive_moment():
    assert DipoleTransition(1926.0).dipole_moment == 1926.0
    with pytest.raises(ValueError):
        DipoleTransition(0.0)


def test_big_gamma_is_twice_gamma2():
    params = eia_params()
    assert params.big_gamma == pytest.approx(2 * mhz(3.0))


@pytest.mark.parametrize("changes", [
    {'od': -1.0},
    {'gamma2': 0.0},
    {'gamma3': -1.0},
    {'omega_c': float('nan')},
    {'delta_c': float('inf')},
])
def test_invalid_params_rejected(changes):
    with pytest.raises(ValueError):
        eia_params(**changes)


def test_negative_detunings_allowed():
    params = eia_params(delta_c=-mhz(100.0), delta_mw=-mhz(1.0))
    assert params.delta_c < 0


def test_json_round_trip():
    params = eia_params(delta_mw=mhz(0.3))
    data = params.to_json_dict()
    assert data['omega_c_hz'] == pytest.approx(6e6)
    assert data['od'] == 100.0

    restored = SystemParams.from_json_dict(data)
    for name in ('omega_p', 'omega_c', 'omega_mw', 'delta_c', 'delta_mw', 'gamma2', 'gamma3', 'gamma4', 'od'):
        assert getattr(restored, name) == pytest.approx(getattr(params, name), rel=1e-15)


def test_json_missing_and_unknown_keys():
    data = eia_params().to_json_dict()
    missing = dict(data)
    del missing['gamma4_hz']
    with pytest.raises(ValueError, match="누락"):
        SystemParams.from_json_dict(missing)

    unknown = dict(data, extra=1.0)
    with pytest.raises(ValueError, match="알 수 없는"):
        SystemParams.from_json_dict(unknown)
