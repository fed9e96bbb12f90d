"""
스펙트럼 영역(regime) 분류 모듈
"""

from enum import Enum

from config import REGIME_CONFIG


class RegimeLabel(str, Enum):
    DEIT = 'DEIT'
    CROSSOVER = 'CROSSOVER'
    DATS = 'DATS'
    EIA_ATS = 'EIA_ATS'


class RegimeClassifier:
    """결합광 세기/디튜닝으로 DEIT, crossover, DATS, EIA ATS 영역을 분류하는 클래스"""

    def __init__(self, regime_config=REGIME_CONFIG):
        self.regime_config = regime_config
        self.detuning_ratio = regime_config['EIA_ATS']['detuning_ratio']
        self.deit_ratio = regime_config['DEIT']['max_coupling_ratio']
        self.dats_ratio = regime_config['DATS']['min_coupling_ratio']
        self.displays = {name: config['display'] for name, config in regime_config.items()}

    def classify(self, params):
        """SystemParams → RegimeLabel (Γ = 2γ2)"""
        big_gamma = params.big_gamma

        if abs(params.delta_c) >= self.detuning_ratio * max(params.omega_c, big_gamma):
            return RegimeLabel.EIA_ATS
        elif params.omega_c < self.deit_ratio * big_gamma:
            return RegimeLabel.DEIT
        elif params.omega_c > self.dats_ratio * big_gamma:
            return RegimeLabel.DATS
        else:
            return RegimeLabel.CROSSOVER

    def preferred_feature(self, params):
        """ATS 를 읽을 스펙트럼 특징: EIA 는 흡수 dip, EIT 계열은 투명 peak"""
        return 'dip' if self.classify(params) is RegimeLabel.EIA_ATS else 'peak'

    def get_regime_info(self, params):
        """특정 파라미터의 영역 정보 반환"""
        label = self.classify(params)
        return {
            'regime': label.value,
            'display': self.displays[label.value],
            'omega_c_over_gamma': params.omega_c / params.big_gamma,
            'delta_c_over_gamma': params.delta_c / params.big_gamma,
        }

    def summarize(self, params_list):
        """여러 파라미터 묶음의 영역별 개수 출력"""
        counts = {label.value: 0 for label in RegimeLabel}
        for params in params_list:
            counts[self.classify(params).value] += 1

        print("🏷️ 영역 분류 결과:")
        for name, count in counts.items():
            print(f"   {self.displays[name]}: {count}개")
        return counts


_DEFAULT_CLASSIFIER = RegimeClassifier()


def classify(params):
    return _DEFAULT_CLASSIFIER.classify(params)
