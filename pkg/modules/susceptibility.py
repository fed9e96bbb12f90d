"""
약한 probe 근사의 4준위 감수율 모듈

ϱ21(δ) = (Ωp/2)·N(δ)/P(δ),
    N(δ) = d3·d4 − Ω_MW²/4
    P(δ) = d2·d3·d4 − d2·Ω_MW²/4 − d4·Ωc²/4
P(δ) 는 δ 에 대한 monic 3차식이므로 세 극점 δi 와 잔여 Si 로 분해된다.
"""

from dataclasses import dataclass

import numpy as np

from config import NUMERIC_CONFIG
from .errors import DegenerateDenominatorError, DegeneratePolesError


@dataclass(frozen=True)
class ComplexDetunings:
    """복소 디튜닝 d2, d3, d4 (rad/s)"""

    d2: np.ndarray
    d3: np.ndarray
    d4: np.ndarray

    @classmethod
    def from_params(cls, params, delta):
        delta = np.asarray(delta, dtype=float)
        return cls(
            d2=delta - params.delta_c - 1j * params.gamma2,
            d3=delta - 1j * params.gamma3,
            d4=delta - params.delta_mw - 1j * params.gamma4,
        )


@dataclass(frozen=True)
class PoleDecomposition:
    """세 극점과 잔여 (residues 는 극점만 구했을 때 None)"""

    poles: np.ndarray
    residues: np.ndarray = None

    def response(self, delta):
        """Σ Si/(δ − δi) = (2/Ωp)·ϱ21"""
        if self.residues is None:
            raise ValueError("잔여가 계산되지 않았습니다")
        delta = np.asarray(delta, dtype=float)[..., np.newaxis]
        return np.sum(self.residues / (delta - self.poles), axis=-1)


def _bare_roots(params):
    """결합이 없을 때의 근 a2, a3, a4 (dk = δ − ak)"""
    a2 = params.delta_c + 1j * params.gamma2
    a3 = 1j * params.gamma3
    a4 = params.delta_mw + 1j * params.gamma4
    return a2, a3, a4


def frequency_scale(params):
    """계수 크기 비교에 쓰는 특성 주파수"""
    a2, a3, a4 = _bare_roots(params)
    return max(abs(a2), abs(a3), abs(a4), params.omega_c, params.omega_mw)


def numerator_coefficients(params):
    """N(δ) 의 계수 (내림차순, monic 2차)"""
    _, a3, a4 = _bare_roots(params)
    return np.array([1.0, -(a3 + a4), a3 * a4 - params.omega_mw ** 2 / 4], dtype=complex)


def cubic_coefficients(params):
    """P(δ) 의 계수 (내림차순, monic 3차)"""
    a2, a3, a4 = _bare_roots(params)
    wc2 = params.omega_c ** 2 / 4
    wm2 = params.omega_mw ** 2 / 4
    return np.array([
        1.0,
        -(a2 + a3 + a4),
        a2 * a3 + a2 * a4 + a3 * a4 - wm2 - wc2,
        -a2 * a3 * a4 + a2 * wm2 + a4 * wc2,
    ], dtype=complex)


def probe_response(params, delta):
    """
    정규화된 probe 응답 N(δ)/P(δ) = (2/Ωp)·ϱ21

    Ωp 와 무관하므로 투과 스펙트럼 계산에 직접 쓰인다.
    """
    d = ComplexDetunings.from_params(params, delta)
    wc2 = params.omega_c ** 2 / 4
    wm2 = params.omega_mw ** 2 / 4

    numerator = d.d3 * d.d4 - wm2
    denominator = d.d2 * d.d3 * d.d4 - d.d2 * wm2 - d.d4 * wc2

    scale = max(frequency_scale(params), float(np.max(np.abs(delta), initial=0.0)))
    if np.any(np.abs(denominator) <= NUMERIC_CONFIG['denominator_rtol'] * scale ** 3):
        raise DegenerateDenominatorError("감수율 분모가 0 입니다 (감쇠 없는 dressed 공명)")
    return numerator / denominator


def rho21(params, delta):
    """약한 probe 근사의 probe 결맞음 ϱ21(δ)"""
    return 0.5 * params.omega_p * probe_response(params, delta)


def _order_poles(poles, scale):
    """실수부 오름차순, 같으면 허수부 오름차순"""
    real_key = np.round(poles.real / scale, 9)
    order = np.lexsort((poles.imag, real_key))
    return poles[order]


def solve_poles(params):
    """
    P(δ) = 0 의 세 근 (companion 행렬 고유값 + Newton 보정)

    Returns:
        PoleDecomposition (residues=None)
    """
    coeffs = cubic_coefficients(params)
    scale = max(abs(coeffs[k]) ** (1.0 / k) for k in range(1, 4))
    scale = max(scale, frequency_scale(params))

    # 스케일을 맞춘 다항식에서 근을 구한 뒤 원래 단위로 복원
    scaled = coeffs / scale ** np.arange(4)
    poles = np.roots(scaled) * scale

    derivative = np.polyder(coeffs)
    for _ in range(2):
        value = np.polyval(coeffs, poles)
        slope = np.polyval(derivative, poles)
        safe = np.abs(slope) > 0
        candidate = poles.copy()
        candidate[safe] = poles[safe] - value[safe] / slope[safe]
        improved = np.abs(np.polyval(coeffs, candidate)) < np.abs(value)
        poles = np.where(improved, candidate, poles)

    return PoleDecomposition(poles=_order_poles(poles, scale))


def residues(params, poles):
    """
    극점 δi 에서의 잔여 Si = N(δi)/Π_{j≠i}(δi − δj)

    Raises:
        DegeneratePolesError: 극점 간격이 상대 1e-10 이하일 때
    """
    poles = np.asarray(poles, dtype=complex)
    separations = np.abs(poles[:, np.newaxis] - poles[np.newaxis, :])
    np.fill_diagonal(separations, np.inf)
    if np.min(separations) <= NUMERIC_CONFIG['degenerate_pole_rtol'] * np.max(np.abs(poles)):
        raise DegeneratePolesError("극점이 거의 겹쳐 잔여를 계산할 수 없습니다")

    numerator = np.polyval(numerator_coefficients(params), poles)
    strengths = np.empty(len(poles), dtype=complex)
    for i, pole in enumerate(poles):
        others = np.delete(poles, i)
        strengths[i] = numerator[i] / np.prod(pole - others)
    return strengths


def decompose(params):
    """극점과 잔여를 함께 계산"""
    poles = solve_poles(params).poles
    return PoleDecomposition(poles=poles, residues=residues(params, poles))


def radical_poles(params):
    """
    3차식 근의 공식(Cardano) 을 그대로 계산한 극점 (교차 검증용)

    d2, d3, d4 는 δ = 0 에서의 값. 세제곱근은 주값(principal branch)을 쓰고,
    L3 가 0 이 되면 제곱근의 다른 부호를 택한다.
    """
    a2, a3, a4 = _bare_roots(params)
    d2, d3, d4 = -a2, -a3, -a4
    wc2 = params.omega_c ** 2
    wm2 = params.omega_mw ** 2

    D = -(d2 + d3 + d4)
    L1 = (-d2 ** 2 + d2 * d3 - d3 ** 2 + d2 * d4 + d3 * d4 - d4 ** 2
          - 0.75 * wc2 - 0.75 * wm2)
    L2 = (2 * d2 ** 3 - 3 * d2 ** 2 * d3 - 3 * d3 ** 2 * d2 - 3 * d2 ** 2 * d4
          - 3 * d3 ** 2 * d4 - 3 * d4 ** 2 * d2 - 3 * d4 ** 2 * d3
          + 2 * d3 ** 3 + 12 * d2 * d3 * d4 + 2 * d4 ** 3
          + 2.25 * d2 * wc2 + 2.25 * d3 * wc2 + 2.25 * d3 * wm2 + 2.25 * d4 * wm2
          - 4.5 * d4 * wc2 - 4.5 * d2 * wm2)

    root = np.sqrt(complex(4 * L1 ** 3 + L2 ** 2))
    L3 = np.power(complex(L2 + root), 1.0 / 3.0)
    if abs(L3) <= 1e-12 * max(abs(L2), abs(L1) ** 1.5, 1e-300) ** (1.0 / 3.0):
        L3 = np.power(complex(L2 - root), 1.0 / 3.0)
    if L3 == 0:
        return np.full(3, D / 3, dtype=complex)

    cbrt2 = 2.0 ** (1.0 / 3.0)
    cbrt4 = 4.0 ** (1.0 / 3.0)
    s3 = 1j * np.sqrt(3.0)

    delta1 = (D + cbrt2 * L1 / L3 - L3 / cbrt2) / 3
    delta2 = (D - (1 + s3) * L1 / (cbrt4 * L3) + (1 - s3) * L3 / (2 * cbrt2)) / 3
    delta3 = (D - (1 - s3) * L1 / (cbrt4 * L3) + (1 + s3) * L3 / (2 * cbrt2)) / 3
    return np.array([delta1, delta2, delta3], dtype=complex)
