"""
단열 소거된 유효 3준위 EIA 모델

|Δc| ≫ Ωc, Γ 에서 |2> 를 소거하면
    Ω_eff = ΩpΩc/(2Δc),  Δ_AC = (Ωp² + Ωc²)/(4Δc)
    ϱ31(δ) = (Ω_eff/2)·d4 / (d4(d3 + Δ_AC) − Ω_MW²/4)
"""

from dataclasses import dataclass

import numpy as np

from config import NUMERIC_CONFIG, REGIME_CONFIG
from .errors import DegenerateDenominatorError, DegeneratePolesError, RegimeValidityError
from .susceptibility import ComplexDetunings


@dataclass(frozen=True)
class EffectiveParams:
    """유효 Rabi 주파수와 AC Stark shift (rad/s)"""

    omega_eff: float
    delta_ac: float


@dataclass(frozen=True)
class EiaPoles:
    """두 흡수 극점 δ± 와 잔여 S±"""

    plus: complex
    minus: complex
    residue_plus: complex
    residue_minus: complex


def check_adiabatic_regime(params, strict=True):
    """|Δc| ≥ 10·max(Ωc, Γ) 인지 확인"""
    ratio = REGIME_CONFIG['EIA_ATS']['detuning_ratio']
    valid = abs(params.delta_c) >= ratio * max(params.omega_c, params.big_gamma)
    if strict and not valid:
        raise RegimeValidityError(
            f"단열 소거 조건 |Δc| ≥ {ratio:g}·max(Ωc, Γ) 를 만족하지 않습니다"
        )
    return valid


def effective_params(params, strict=True):
    """
    유효 3준위 파라미터 계산

    Args:
        params: SystemParams
        strict: False 이면 유효 조건을 검사하지 않음 (Δc = 0 은 항상 거부)
    """
    if params.delta_c == 0:
        raise ValueError("Δc = 0 에서는 단열 소거를 할 수 없습니다")
    check_adiabatic_regime(params, strict=strict)
    return EffectiveParams(
        omega_eff=params.omega_p * params.omega_c / (2 * params.delta_c),
        delta_ac=(params.omega_p ** 2 + params.omega_c ** 2) / (4 * params.delta_c),
    )


def rho31(params, eff, delta):
    """유효 모델의 2광자 결맞음 ϱ31(δ)"""
    d = ComplexDetunings.from_params(params, delta)
    wm2 = params.omega_mw ** 2 / 4
    denominator = d.d4 * (d.d3 + eff.delta_ac) - wm2

    scale = max(abs(eff.delta_ac), params.gamma3, params.gamma4, params.omega_mw,
                abs(params.delta_mw), float(np.max(np.abs(delta), initial=0.0)))
    if np.any(np.abs(denominator) <= NUMERIC_CONFIG['denominator_rtol'] * scale ** 2):
        raise DegenerateDenominatorError("유효 모델의 분모가 0 입니다")
    return 0.5 * eff.omega_eff * d.d4 / denominator


def eia_poles(params, eff):
    """
    d4(d3 + Δ_AC) = Ω_MW²/4 의 두 근과 잔여

    A = Δ_MW + iγ4, B = −Δ_AC + iγ3 일 때
    δ± = [A + B ± √((A − B)² + Ω_MW²)]/2,  S± = (δ± − A)/(δ± − δ∓)
    """
    a = params.delta_mw + 1j * params.gamma4
    b = -eff.delta_ac + 1j * params.gamma3
    root = np.sqrt(complex((a - b) ** 2 + params.omega_mw ** 2))
    plus = 0.5 * (a + b + root)
    minus = 0.5 * (a + b - root)

    split = plus - minus
    if abs(split) <= NUMERIC_CONFIG['degenerate_pole_rtol'] * max(abs(plus), abs(minus)):
        raise DegeneratePolesError("EIA 두 극점이 겹칩니다")
    return EiaPoles(
        plus=complex(plus),
        minus=complex(minus),
        residue_plus=complex((plus - a) / split),
        residue_minus=complex(-(minus - a) / split),
    )


def double_lorentzian(params, eff, delta, strict=True):
    """
    Ω_MW ≫ |γ3 − γ4|, |Δ_AC| 극한의 두 Lorentzian 합

    (Ω_eff/4)·[1/(δ + Ω_MW/2 − iγ̄) + 1/(δ − Ω_MW/2 − iγ̄)],  γ̄ = (γ3 + γ4)/2
    """
    limit = 10 * max(abs(params.gamma3 - params.gamma4), abs(eff.delta_ac))
    if strict and not params.omega_mw > limit:
        raise RegimeValidityError("Ω_MW 가 두 Lorentzian 근사 조건보다 작습니다")

    delta = np.asarray(delta, dtype=float)
    half_width = 0.5 * (params.gamma3 + params.gamma4)
    half_split = 0.5 * params.omega_mw
    return 0.25 * eff.omega_eff * (
        1.0 / (delta + half_split - 1j * half_width)
        + 1.0 / (delta - half_split - 1j * half_width)
    )
