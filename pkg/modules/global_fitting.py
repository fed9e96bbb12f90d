"""
전역 감수율 피팅 파이프라인 (Ω_MW, Δf')

닫힌 형태 투과율 모델을 스펙트럼 전체에 최소제곱 피팅한다.
Δc, γ2 (와 Ωp) 는 고정, OD, Ωc, Δ_MW, Ω_MW, γ3, γ4 가 자유 파라미터.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares, minimize_scalar
from scipy.signal import find_peaks

from config import FIT_CONFIG
from .errors import DegenerateDenominatorError, DipCountError
from .params import TWO_PI
from .spectrum import transmit

FIT_PARAMETERS = ('od', 'omega_c', 'delta_mw', 'omega_mw', 'gamma3', 'gamma4')
_MHZ = TWO_PI * 1e6
_SIGNED = ('delta_mw',)


@dataclass(frozen=True)
class GlobalFit:
    """전역 피팅 결과"""

    params: object        # SystemParams (자유 + 고정 파라미터 모두 포함)
    free: tuple
    residual_rms: float
    converged: bool
    iterations: int
    optimality: float
    message: str
    span: tuple           # 피팅한 δ 범위 (rad/s)

    def fitted_values(self):
        return {name: getattr(self.params, name) for name in self.free}


def _unit(name):
    return 1.0 if name == 'od' else _MHZ


def _to_vector(params, free):
    return np.array([getattr(params, name) / _unit(name) for name in free])


def _from_vector(base, free, x):
    return base.replace(**{name: float(value * _unit(name)) for name, value in zip(free, x)})


def fit_global(spectrum, initial, fixed=()):
    """
    스펙트럼 전체에 대한 감쇠 최소제곱 (trust-region, 중앙차분 Jacobian)

    Args:
        spectrum: Spectrum
        initial: 초기 SystemParams (Δc, γ2 는 이 값으로 고정)
        fixed: 추가로 고정할 파라미터 이름들

    Returns:
        GlobalFit. 수렴하지 않으면 converged=False 로 최선값을 반환
    """
    unknown = set(fixed) - set(FIT_PARAMETERS)
    if unknown:
        raise ValueError(f"알 수 없는 피팅 파라미터: {sorted(unknown)}")
    free = tuple(name for name in FIT_PARAMETERS if name not in fixed)
    if not free:
        raise ValueError("자유 파라미터가 없습니다")

    x0 = _to_vector(initial, free)
    if not np.all(np.isfinite(x0)):
        raise ValueError("초기값이 유한하지 않습니다")
    lower = np.array([-np.inf if name in _SIGNED else 0.0 for name in free])
    upper = np.full(len(free), np.inf)
    x0 = np.clip(x0, lower, upper)

    grid = spectrum.grid
    data = spectrum.transmission

    def residual(x):
        params = _from_vector(initial, free, np.maximum(x, lower))
        try:
            return transmit(params, grid) - data
        except DegenerateDenominatorError:
            return np.full(len(grid), 10.0)

    result = least_squares(
        residual,
        x0,
        jac='3-point',
        bounds=(lower, upper),
        method='trf',
        x_scale='jac',
        diff_step=FIT_CONFIG['diff_step'],
        xtol=FIT_CONFIG['global_xtol'],
        gtol=FIT_CONFIG['global_gtol'],
        ftol=FIT_CONFIG['global_ftol'],
        max_nfev=FIT_CONFIG['global_max_nfev'],
    )

    return GlobalFit(
        params=_from_vector(initial, free, result.x),
        free=free,
        residual_rms=float(np.sqrt(np.mean(result.fun ** 2))),
        converged=bool(result.status > 0),
        iterations=int(result.nfev),
        optimality=float(result.optimality),
        message=str(result.message),
        span=(float(grid[0]), float(grid[-1])),
    )


def splitting_from_model(fit, delta_c=None, gamma2=None, feature='dip', points=None):
    """
    피팅된 잡음 없는 모델의 두 극값 사이 거리 Δf' (Hz)

    조밀한 그리드에서 극값을 찾은 뒤 각 극값을 이웃 격자점 구간에서 1차원 최소화로 다듬는다.
    """
    if feature not in ('dip', 'peak'):
        raise ValueError(f"feature 는 'dip' 또는 'peak' 여야 합니다: {feature}")
    sign = 1.0 if feature == 'dip' else -1.0

    params = fit.params
    if delta_c is not None:
        params = params.replace(delta_c=delta_c)
    if gamma2 is not None:
        params = params.replace(gamma2=gamma2)
    if points is None:
        points = FIT_CONFIG['model_grid_points']

    u = np.linspace(fit.span[0] / _MHZ, fit.span[1] / _MHZ, points)
    curve = transmit(params, u * _MHZ)
    indices, properties = find_peaks(-sign * curve, prominence=1e-9)
    if len(indices) < 2:
        raise DipCountError(len(indices), 2, feature)

    strongest = indices[np.argsort(properties['prominences'])[::-1][:2]]
    extrema = []
    for i in sorted(strongest):
        refined = minimize_scalar(
            lambda x: sign * float(transmit(params, x * _MHZ)),
            bounds=(u[i - 1], u[i + 1]),
            method='bounded',
            options={'xatol': FIT_CONFIG['splitting_xatol_mhz']},
        )
        extrema.append(refined.x)
    return abs(extrema[1] - extrema[0]) * 1e6
