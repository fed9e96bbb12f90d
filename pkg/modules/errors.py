"""
예외 클래스 모듈
"""


class ElectrometryError(Exception):
    """패키지 공통 예외"""


class DegenerateDenominatorError(ElectrometryError):
    """감수율 분모가 0으로 수렴 (모든 γ = 0 인 공명점)"""


class DegeneratePolesError(ElectrometryError):
    """극점이 거의 겹쳐 부분분수 분해를 할 수 없음"""


class RegimeValidityError(ElectrometryError):
    """근사 모델의 유효 조건을 벗어남"""


class SteadyStateError(ElectrometryError):
    """정상 상태가 유일하지 않거나 수치적으로 불안정"""


class GridMismatchError(ElectrometryError):
    """두 스펙트럼의 δ 그리드가 다름"""


class DipCountError(ElectrometryError):
    """dip(또는 peak) 개수가 기대와 다름"""

    def __init__(self, found, expected, feature="dip"):
        self.found = found
        self.expected = expected
        self.feature = feature
        super().__init__(f"{feature} {expected}개가 필요하지만 {found}개를 찾았습니다")


class FitConvergenceError(ElectrometryError):
    """피팅이 수렴하지 않음"""


class SpectrumFormatError(ElectrometryError):
    """스펙트럼 파일 파싱 실패"""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"{line}번째 줄: {message}"
        super().__init__(message)


class WindowClippedError(FitConvergenceError):
    """국소 피팅 창이 스펙트럼 경계에서 잘림"""
