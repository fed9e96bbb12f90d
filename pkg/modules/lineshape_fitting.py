"""
국소 Lorentzian 피팅 파이프라인 (Δf)

각 dip(또는 투명 peak) 주변만 잘라 T(δ) ≈ offset − A·w²/((δ−c)² + w²) 로 피팅하고
두 중심의 거리로 ATS 분리폭 Δf 를 구한다. 전역 피팅 경로와 코드를 공유하지 않는다.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares
from scipy.signal import find_peaks, peak_widths

from config import FIT_CONFIG
from .errors import DipCountError, FitConvergenceError, WindowClippedError
from .params import TWO_PI

FEATURES = ('dip', 'peak')
_MHZ = TWO_PI * 1e6


@dataclass(frozen=True)
class Dip:
    """검출된 dip/peak 위치"""

    index: int
    delta: float          # rad/s
    transmission: float
    prominence: float
    half_width: float     # rad/s


@dataclass(frozen=True)
class LorentzianFit:
    """국소 Lorentzian 피팅 결과 (center, half_width 는 rad/s)"""

    center: float
    half_width: float
    amplitude: float
    offset: float
    residual_rms: float
    points: int


@dataclass(frozen=True)
class SplittingResult:
    """국소 파이프라인의 ATS 분리폭"""

    delta_f: float        # Hz
    fits: tuple
    discarded: int


def _feature_sign(feature):
    if feature not in FEATURES:
        raise ValueError(f"feature 는 {FEATURES} 중 하나여야 합니다: {feature}")
    return 1.0 if feature == 'dip' else -1.0


def default_prominence(spectrum):
    """잡음 크기를 반영한 prominence 임계값"""
    threshold = FIT_CONFIG['min_prominence']
    noise = spectrum.noise
    if noise is not None:
        threshold = max(threshold, FIT_CONFIG['noise_prominence_factor'] * noise.additive_rms)
    return threshold


def find_dips(spectrum, min_prominence=None, feature='dip'):
    """
    투과율의 국소 최소(feature='peak' 이면 국소 최대)를 δ 오름차순으로 반환

    prominence 는 양쪽 경계 극대값 중 낮은 쪽 대비 깊이 (scipy.signal 정의).
    """
    if len(spectrum) < 5:
        raise ValueError("dip 탐색에는 5점 이상이 필요합니다")
    sign = _feature_sign(feature)
    if min_prominence is None:
        min_prominence = default_prominence(spectrum)

    signal = -sign * spectrum.transmission
    indices, properties = find_peaks(signal, prominence=min_prominence)
    if len(indices) == 0:
        return []

    _, _, left, right = peak_widths(signal, indices, rel_height=0.5,
                                    prominence_data=(properties['prominences'],
                                                     properties['left_bases'],
                                                     properties['right_bases']))
    positions = np.arange(len(spectrum))
    left_delta = np.interp(left, positions, spectrum.grid)
    right_delta = np.interp(right, positions, spectrum.grid)

    return [
        Dip(index=int(i),
            delta=float(spectrum.grid[i]),
            transmission=float(spectrum.transmission[i]),
            prominence=float(p),
            half_width=float(0.5 * (r - l)))
        for i, p, l, r in zip(indices, properties['prominences'], left_delta, right_delta)
    ]


def _window_indices(spectrum, dip, window):
    n = len(spectrum)
    if window is None:
        step = float(np.min(np.diff(spectrum.grid)))
        window = max(FIT_CONFIG['window_half_widths'] * dip.half_width, step)
        selected = np.flatnonzero(np.abs(spectrum.grid - dip.delta) <= window)
        min_points = FIT_CONFIG['min_window_points']
        if len(selected) < min_points:
            half = min_points // 2
            selected = np.arange(dip.index - half, dip.index + half + 1)
            if selected[0] < 0 or selected[-1] >= n:
                raise WindowClippedError("국소 피팅 창이 스펙트럼 경계에서 잘립니다")
            return selected
    else:
        selected = np.flatnonzero(np.abs(spectrum.grid - dip.delta) <= window)

    if dip.delta - window < spectrum.grid[0] or dip.delta + window > spectrum.grid[-1]:
        raise WindowClippedError("국소 피팅 창이 스펙트럼 경계에서 잘립니다")
    if len(selected) < FIT_CONFIG['min_fit_points']:
        raise ValueError(f"피팅 창 안의 점이 {len(selected)}개로 부족합니다")
    return selected


def _lorentzian(p, u):
    center, width, amplitude, offset = p
    return offset - amplitude * width ** 2 / ((u - center) ** 2 + width ** 2)


def _lorentzian_jacobian(p, u):
    center, width, amplitude, _ = p
    du = u - center
    q = du ** 2 + width ** 2
    jac = np.empty((len(u), 4))
    jac[:, 0] = -amplitude * width ** 2 * 2 * du / q ** 2
    jac[:, 1] = -amplitude * 2 * width * du ** 2 / q ** 2
    jac[:, 2] = -width ** 2 / q
    jac[:, 3] = 1.0
    return jac


def fit_lorentzian_local(spectrum, dip, window=None, feature='dip'):
    """
    dip 주변 창에서 Lorentzian 최소제곱 피팅

    Args:
        spectrum: Spectrum
        dip: find_dips 가 반환한 Dip
        window: 창 반폭 (rad/s). None 이면 ±1.5×반치폭, 최소 11점
    """
    sign = _feature_sign(feature)
    selected = _window_indices(spectrum, dip, window)

    # dip 중심 기준 MHz 단위로 피팅
    u = (spectrum.grid[selected] - dip.delta) / _MHZ
    y = spectrum.transmission[selected]

    offset0 = float(np.max(y)) if sign > 0 else float(np.min(y))
    amplitude0 = offset0 - dip.transmission
    width0 = max(dip.half_width, float(np.min(np.diff(spectrum.grid)))) / _MHZ
    p0 = np.array([0.0, width0, amplitude0, offset0])

    result = least_squares(
        lambda p: _lorentzian(p, u) - y,
        p0,
        jac=lambda p: _lorentzian_jacobian(p, u),
        method='lm',
        xtol=FIT_CONFIG['local_xtol'],
        ftol=FIT_CONFIG['local_xtol'],
        gtol=FIT_CONFIG['local_xtol'],
        max_nfev=FIT_CONFIG['local_max_nfev'],
    )
    if not result.success:
        raise FitConvergenceError(f"Lorentzian 피팅이 수렴하지 않았습니다: {result.message}")

    center, width, amplitude, offset = result.x
    if width == 0:
        raise FitConvergenceError("Lorentzian 반치폭이 0 으로 수렴했습니다")
    return LorentzianFit(
        center=float(dip.delta + center * _MHZ),
        half_width=float(abs(width) * _MHZ),
        amplitude=float(amplitude),
        offset=float(offset),
        residual_rms=float(np.sqrt(np.mean(result.fun ** 2))),
        points=int(len(selected)),
    )


def extract_ats(spectrum, feature='dip', min_prominence=None):
    """
    두 dip 의 국소 피팅 중심 거리로 ATS 분리폭 Δf (Hz) 계산

    dip 이 2개보다 많으면 prominence 가 큰 두 개만 쓰고 버린 개수를 기록한다.
    """
    dips = find_dips(spectrum, min_prominence=min_prominence, feature=feature)
    if len(dips) < 2:
        raise DipCountError(len(dips), 2, feature)

    kept = sorted(dips, key=lambda d: d.prominence, reverse=True)[:2]
    kept.sort(key=lambda d: d.delta)
    fits = tuple(fit_lorentzian_local(spectrum, dip, feature=feature) for dip in kept)
    return SplittingResult(
        delta_f=abs(fits[1].center - fits[0].center) / TWO_PI,
        fits=fits,
        discarded=len(dips) - 2,
    )
