"""
추출 결과 분석 모듈

두 파이프라인(국소 Lorentzian / 전역 감수율)의 결과를 묶어 편차 Δ, Δ', 전기장,
EIA 선폭, 가시도(visibility)를 계산한다.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from config import FIT_CONFIG
from .errors import DipCountError, FitConvergenceError
from .global_fitting import fit_global, splitting_from_model
from .lineshape_fitting import extract_ats, find_dips
from .params import TWO_PI, field_from_splitting, hz_to_angular
from .regime_classifier import RegimeClassifier
from .spectrum import transmit

PIPELINES = ('local', 'global', 'both')


@dataclass(frozen=True)
class ExtractionResult:
    """ATS 추출 결과 (없는 값은 None)"""

    delta_f: float = None             # Hz, 국소 파이프라인
    delta_f_prime: float = None       # Hz, 전역 파이프라인
    omega_mw_recovered: float = None  # rad/s
    deviation: float = None           # %
    deviation_prime: float = None     # %
    field: float = None               # V/m
    visibility: float = None
    global_converged: bool = None
    discarded_dips: int = 0
    feature: str = 'dip'

    def to_json_dict(self):
        omega_hz = None if self.omega_mw_recovered is None else self.omega_mw_recovered / TWO_PI
        return {
            'delta_f_hz': self.delta_f,
            'delta_f_prime_hz': self.delta_f_prime,
            'omega_mw_hz': omega_hz,
            'deviation_pct': self.deviation,
            'deviation_prime_pct': self.deviation_prime,
            'field_v_per_m': self.field,
            'visibility': self.visibility,
            'global_converged': self.global_converged,
            'discarded_dips': self.discarded_dips,
            'feature': self.feature,
        }


def deviation(delta_f, omega_mw):
    """Δ = 100·(2πΔf − Ω_MW)/Ω_MW (%)"""
    if not omega_mw > 0:
        raise ValueError(f"Ω_MW 는 0보다 커야 합니다: {omega_mw}")
    return 100.0 * (TWO_PI * delta_f - omega_mw) / omega_mw


def linewidth_law(params):
    """EIA 선폭 근사식 √OD·Ωc²/(8|Δc|) (rad/s)"""
    if params.delta_c == 0:
        raise ValueError("Δc = 0 에서는 EIA 선폭 근사식을 쓸 수 없습니다")
    return np.sqrt(params.od) * params.omega_c ** 2 / (8 * abs(params.delta_c))


def power_law_exponent(x, y):
    """log-log 회귀로 y ≈ a·x^k 의 (k, a) 추정"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 2 or np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("양수 데이터 2점 이상이 필요합니다")
    exponent, intercept = np.polyfit(np.log(x), np.log(y), 1)
    return float(exponent), float(np.exp(intercept))


def linear_response(omega_mw, delta_f):
    """2πΔf 대 Ω_MW 선형 회귀 (기울기 편차 %)"""
    x = np.asarray(omega_mw, dtype=float)
    y = TWO_PI * np.asarray(delta_f, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    return {
        'slope': float(slope),
        'intercept_hz': float(intercept / TWO_PI),
        'slope_deviation_pct': float(100.0 * (slope - 1.0)),
    }


def _background(values):
    """바깥쪽 10% 점들의 중앙값"""
    fraction = FIT_CONFIG['background_fraction']
    edge = max(1, int(round(0.5 * fraction * len(values))))
    return float(np.median(np.concatenate([values[:edge], values[-edge:]])))


def visibility(spectrum, min_prominence=None):
    """
    두 EIA dip 의 가시도 V = (T_max − T_min)/T_bg (투과율 기준)

    T_min 은 깊은 dip 바닥, T_max 는 두 dip 사이 최대값, T_bg 는 바깥 10% 의 중앙값.
    """
    dips = find_dips(spectrum, min_prominence=min_prominence)
    if len(dips) != 2:
        raise DipCountError(len(dips), 2)

    first, second = dips
    t_min = min(first.transmission, second.transmission)
    t_max = float(np.max(spectrum.transmission[first.index:second.index + 1]))
    return (t_max - t_min) / _background(spectrum.transmission)


def _peak_absorbance(transmission):
    absorbance = -np.log(np.clip(transmission, 1e-6, None))
    return float(np.max(absorbance)) - _background(absorbance)


def initial_guess(spectrum, base, delta_f=None):
    """
    전역 피팅 초기값

    Ω_MW 는 국소 파이프라인 Δf 로 (없으면 0), γ3 = γ4 = 2π×50 kHz,
    OD 는 관측/모델 흡광 깊이 비로 추정한다.
    """
    seed_gamma = hz_to_angular(FIT_CONFIG['seed_gamma_mhz'] * 1e6)
    guess = base.replace(
        omega_mw=0.0 if delta_f is None else TWO_PI * delta_f,
        gamma3=seed_gamma,
        gamma4=seed_gamma,
    )
    observed = _peak_absorbance(spectrum.transmission)
    modeled = _peak_absorbance(transmit(guess, spectrum.grid))
    if observed > 0 and modeled > 0 and guess.od > 0:
        guess = guess.replace(od=guess.od * observed / modeled)
    return guess


def eia_linewidth(spectrum, initial=None):
    """
    Ω_MW = 0 스펙트럼의 EIA 선폭 (rad/s FWHM)

    Ω_MW, Δ_MW 를 0 으로 (γ4 는 영향이 없으므로 함께) 고정한 전역 피팅 모델에서 dip 의 반깊이 전폭을 구한다.
    """
    dips = find_dips(spectrum)
    if len(dips) != 1:
        raise DipCountError(len(dips), 1)
    if initial is None:
        initial = spectrum.params
    if initial is None:
        raise ValueError("선폭 피팅에 필요한 초기 파라미터가 없습니다")

    seed = initial_guess(spectrum, initial.replace(delta_mw=0.0))
    fit = fit_global(spectrum, seed, fixed=('omega_mw', 'delta_mw', 'gamma4'))
    if not fit.converged:
        raise FitConvergenceError(f"선폭 피팅이 수렴하지 않았습니다: {fit.message}")

    grid = np.linspace(spectrum.grid[0], spectrum.grid[-1], FIT_CONFIG['model_grid_points'])
    curve = transmit(fit.params, grid)
    bottom = int(np.argmin(curve))
    level = 0.5 * (curve[bottom] + _background(curve))

    def crossing(indices):
        for i in indices:
            if curve[i] >= level:
                return i
        raise DipCountError(0, 1)

    left = crossing(range(bottom, -1, -1))
    right = crossing(range(bottom, len(grid)))

    def excess(x):
        return float(transmit(fit.params, x)) - level

    left_edge = brentq(excess, grid[left], grid[left + 1])
    right_edge = brentq(excess, grid[right - 1], grid[right])
    return right_edge - left_edge


class ExtractionAnalyzer:
    """두 추출 파이프라인을 실행하고 결과를 종합하는 클래스"""

    def __init__(self, dipole, pipeline='both', feature='auto', verbose=False):
        if pipeline not in PIPELINES:
            raise ValueError(f"pipeline 은 {PIPELINES} 중 하나여야 합니다: {pipeline}")
        self.dipole = dipole
        self.pipeline = pipeline
        self.feature = feature
        self.verbose = verbose
        self.classifier = RegimeClassifier()
        self.last_global_fit = None

    def resolve_feature(self, params, spectrum=None):
        """
        'auto' 는 투과율 dip 이 2개 이상이면 dip 분리폭을 읽고,
        그렇지 않으면 영역 분류기의 선호 특징을 따른다.
        """
        if self.feature != 'auto':
            return self.feature
        if spectrum is not None and len(find_dips(spectrum)) >= 2:
            return 'dip'
        return self.classifier.preferred_feature(params)

    def analyze(self, spectrum, initial, omega_mw_reference=None):
        """
        스펙트럼에서 ATS 추출

        Args:
            spectrum: Spectrum
            initial: 초기 SystemParams (Δc, γ2 는 고정값으로 사용)
            omega_mw_reference: 전역 피팅이 없을 때 편차 계산에 쓸 Ω_MW (rad/s)
        """
        feature = self.resolve_feature(initial, spectrum)
        delta_f = delta_f_prime = omega_mw = field = None
        discarded = 0
        global_converged = None

        # 1. 국소 Lorentzian 파이프라인
        if self.pipeline in ('local', 'both'):
            splitting = extract_ats(spectrum, feature=feature)
            delta_f = splitting.delta_f
            discarded = splitting.discarded
            field = field_from_splitting(delta_f, self.dipole.dipole_moment)

        # 2. 전역 감수율 파이프라인
        if self.pipeline in ('global', 'both'):
            seed_splitting = delta_f
            if seed_splitting is None:
                # T 는 Ω_MW² 에만 의존하므로 Ω_MW = 0 에서는 기울기가 0
                try:
                    seed_splitting = extract_ats(spectrum, feature=feature).delta_f
                except (DipCountError, FitConvergenceError, ValueError):
                    seed_splitting = None
            seed = initial_guess(spectrum, initial, seed_splitting)
            fit = fit_global(spectrum, seed)
            self.last_global_fit = fit
            global_converged = fit.converged
            omega_mw = fit.params.omega_mw
            try:
                delta_f_prime = splitting_from_model(fit, feature=feature)
            except DipCountError:
                delta_f_prime = None

        # 3. 편차 계산
        reference = omega_mw if omega_mw else omega_mw_reference
        dev = dev_prime = None
        if reference:
            if delta_f is not None:
                dev = deviation(delta_f, reference)
            if delta_f_prime is not None:
                dev_prime = deviation(delta_f_prime, reference)

        vis = None
        if feature == 'dip':
            try:
                vis = visibility(spectrum)
            except DipCountError:
                vis = None

        result = ExtractionResult(
            delta_f=delta_f,
            delta_f_prime=delta_f_prime,
            omega_mw_recovered=omega_mw,
            deviation=dev,
            deviation_prime=dev_prime,
            field=field,
            visibility=vis,
            global_converged=global_converged,
            discarded_dips=discarded,
            feature=feature,
        )
        if self.verbose:
            self.print_summary(result)
        return result

    def print_summary(self, result):
        print("\n" + "=" * 50)
        print("           📊 ATS 추출 결과")
        print("=" * 50)
        if result.delta_f is not None:
            print(f"   Δf  (국소 Lorentzian): {result.delta_f / 1e6:.6f} MHz")
            print(f"   |E| : {result.field * 1e4:.3f} μV/cm")
        if result.omega_mw_recovered is not None:
            status = "✅" if result.global_converged else "⚠️"
            print(f"   {status} Ω_MW/2π (전역 피팅): {result.omega_mw_recovered / TWO_PI / 1e6:.6f} MHz")
        if result.delta_f_prime is not None:
            print(f"   Δf' (모델 극값): {result.delta_f_prime / 1e6:.6f} MHz")
        if result.deviation is not None:
            print(f"   Δ  = {result.deviation:+.3f} %")
        if result.deviation_prime is not None:
            print(f"   Δ' = {result.deviation_prime:+.3f} %")
        if result.discarded_dips:
            print(f"   ⚠️ 제외된 {result.feature}: {result.discarded_dips}개")
