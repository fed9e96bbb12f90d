import pytest

from modules.params import SystemParams
from modules.regime_classifier import RegimeClassifier, RegimeLabel, classify


def coupling(omega_c_mhz, delta_c_mhz=0.0):
    return SystemParams.from_mhz(omega_p=0.4, omega_c=omega_c_mhz, omega_mw=5.0, delta_c=delta_c_mhz,
                                 delta_mw=0.0, gamma2=3.0, gamma3=0.05, gamma4=0.05, od=5.0)


@pytest.mark.parametrize("omega_c_mhz, delta_c_mhz, expected", [
    (2.0, 0.0, RegimeLabel.DEIT),
    (6.0, 0.0, RegimeLabel.CROSSOVER),
    (16.0, 0.0, RegimeLabel.DATS),
    (6.0, 100.0, RegimeLabel.EIA_ATS),
    (6.0, -100.0, RegimeLabel.EIA_ATS),
])
def test_classify_examples(omega_c_mhz, delta_c_mhz, expected):
    assert classify(coupling(omega_c_mhz, delta_c_mhz)) is expected


def test_thresholds_are_strict():
    # Γ/2π = 6 MHz: DEIT 는 Ωc < 3 MHz, DATS 는 Ωc > 12 MHz
    assert classify(coupling(3.0)) is RegimeLabel.CROSSOVER
    assert classify(coupling(12.0)) is RegimeLabel.CROSSOVER
    assert classify(coupling(2.99)) is RegimeLabel.DEIT
    assert classify(coupling(12.01)) is RegimeLabel.DATS


def test_moderate_detuning_is_not_eia():
    assert classify(coupling(6.0, 30.0)) is RegimeLabel.CROSSOVER


def test_preferred_feature():
    classifier = RegimeClassifier()
    assert classifier.preferred_feature(coupling(6.0, 100.0)) == 'dip'
    assert classifier.preferred_feature(coupling(2.0)) == 'peak'


def test_regime_info():
    info = RegimeClassifier().get_regime_info(coupling(16.0))
    assert info['regime'] == 'DATS'
    assert info['omega_c_over_gamma'] == pytest.approx(16.0 / 6.0)
    assert 'DATS' in info['display']


def test_summarize_counts(capsys):
    counts = RegimeClassifier().summarize([coupling(2.0), coupling(2.5), coupling(16.0), coupling(6.0, 100.0)])
    assert counts == {'DEIT': 2, 'CROSSOVER': 0, 'DATS': 1, 'EIA_ATS': 1}
    assert "영역 분류 결과" in capsys.readouterr().out
