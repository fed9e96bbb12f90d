"""
물리 파라미터 및 단위 변환 모듈

내부 단위는 모두 각주파수(rad/s), 외부 입출력은 Hz.
"""

import math
from dataclasses import dataclass, fields, replace as dataclass_replace

# CODATA 2018
HBAR = 1.054571817e-34          # J·s
ELEMENTARY_CHARGE = 1.602176634e-19   # C
BOHR_RADIUS = 5.29177210903e-11  # m

TWO_PI = 2.0 * math.pi

# JSON 키 (Hz 단위) ↔ 필드 이름
_HZ_FIELDS = (
    'omega_p', 'omega_c', 'omega_mw',
    'delta_c', 'delta_mw',
    'gamma2', 'gamma3', 'gamma4',
)
_NON_NEGATIVE_FIELDS = ('omega_p', 'omega_c', 'omega_mw', 'gamma2', 'gamma3', 'gamma4', 'od')


def hz_to_angular(f):
    """Hz → rad/s"""
    return TWO_PI * f


def angular_to_hz(omega):
    """rad/s → Hz"""
    return omega / TWO_PI


def mhz(value):
    """MHz 값(Ω/2π)을 rad/s 로 변환"""
    return hz_to_angular(value * 1e6)


@dataclass(frozen=True)
class SystemParams:
    """4준위 cascade 원자의 물리 파라미터 (모두 rad/s, od 는 무차원)"""

    omega_p: float
    omega_c: float
    omega_mw: float
    delta_c: float
    delta_mw: float
    gamma2: float
    gamma3: float
    gamma4: float
    od: float

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not math.isfinite(value):
                raise ValueError(f"{f.name} 값이 유한하지 않습니다: {value}")
        for name in _NON_NEGATIVE_FIELDS:
            if getattr(self, name) < 0:
                raise ValueError(f"{name} 는 0 이상이어야 합니다: {getattr(self, name)}")
        if self.gamma2 <= 0:
            raise ValueError("gamma2 는 0보다 커야 합니다 (|2> 는 항상 붕괴)")

    @property
    def big_gamma(self):
        """|2> 의 자연 붕괴율 Γ = 2γ2"""
        return 2.0 * self.gamma2

    def replace(self, **changes):
        return dataclass_replace(self, **changes)

    def to_json_dict(self):
        data = {f"{name}_hz": angular_to_hz(getattr(self, name)) for name in _HZ_FIELDS}
        data['od'] = self.od
        return data

    @classmethod
    def from_json_dict(cls, data):
        expected = {f"{name}_hz" for name in _HZ_FIELDS} | {'od'}
        missing = expected - set(data)
        if missing:
            raise ValueError(f"파라미터 키가 누락되었습니다: {sorted(missing)}")
        unknown = set(data) - expected
        if unknown:
            raise ValueError(f"알 수 없는 파라미터 키: {sorted(unknown)}")
        values = {name: hz_to_angular(float(data[f"{name}_hz"])) for name in _HZ_FIELDS}
        return cls(od=float(data['od']), **values)

    @classmethod
    def from_mhz(cls, omega_p, omega_c, omega_mw, delta_c, delta_mw,
                 gamma2, gamma3, gamma4, od):
        """Ω/2π [MHz] 로 주어진 값으로 생성"""
        return cls(
            omega_p=mhz(omega_p), omega_c=mhz(omega_c), omega_mw=mhz(omega_mw),
            delta_c=mhz(delta_c), delta_mw=mhz(delta_mw),
            gamma2=mhz(gamma2), gamma3=mhz(gamma3), gamma4=mhz(gamma4),
            od=float(od),
        )


@dataclass(frozen=True)
class DipoleTransition:
    """MW 전이의 쌍극자 모멘트 (e·a0 단위)"""

    dipole_moment: float
    mw_frequency: float = 0.0

    def __post_init__(self):
        if not self.dipole_moment > 0:
            raise ValueError(f"쌍극자 모멘트는 0보다 커야 합니다: {self.dipole_moment}")


def _dipole_si(mu):
    if not mu > 0:
        raise ValueError(f"쌍극자 모멘트는 0보다 커야 합니다: {mu}")
    return mu * ELEMENTARY_CHARGE * BOHR_RADIUS


def field_from_splitting(delta_f, mu):
    """
    ATS 분리폭으로부터 MW 전기장 계산

    Args:
        delta_f: ATS 분리폭 Δf (Hz)
        mu: 쌍극자 모멘트 (e·a0)

    Returns:
        |E| = 2πħΔf/μ (V/m)
    """
    if delta_f < 0:
        raise ValueError(f"분리폭은 0 이상이어야 합니다: {delta_f}")
    return TWO_PI * HBAR * delta_f / _dipole_si(mu)


def splitting_from_field(field, mu):
    """field_from_splitting 의 역변환 (V/m → Hz)"""
    if field < 0:
        raise ValueError(f"전기장 세기는 0 이상이어야 합니다: {field}")
    return field * _dipole_si(mu) / (TWO_PI * HBAR)


def field_from_rabi(omega_mw, mu):
    """MW Rabi 주파수(rad/s)에 대응하는 전기장 |E| = ħΩ/μ (V/m)"""
    if omega_mw < 0:
        raise ValueError(f"Rabi 주파수는 0 이상이어야 합니다: {omega_mw}")
    return HBAR * omega_mw / _dipole_si(mu)


def rabi_from_field(field, mu):
    """전기장(V/m) → MW Rabi 주파수 (rad/s)"""
    if field < 0:
        raise ValueError(f"전기장 세기는 0 이상이어야 합니다: {field}")
    return field * _dipole_si(mu) / HBAR
