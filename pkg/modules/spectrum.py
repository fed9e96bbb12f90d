"""
투과 스펙트럼 합성 모듈

P_t/P_0 = exp{−OD·(Γ/Ωp)·Im ϱ21(δ)} = Π_i R_i(δ)
"""

from dataclasses import dataclass, field

import numpy as np

from config import DEFAULT_GRID
from .errors import GridMismatchError
from .params import angular_to_hz, hz_to_angular
from .susceptibility import decompose, probe_response


@dataclass(frozen=True)
class GridSpec:
    """δ/2π 스캔 범위 (Hz) 와 점 개수"""

    start_hz: float = DEFAULT_GRID['start_mhz'] * 1e6
    stop_hz: float = DEFAULT_GRID['stop_mhz'] * 1e6
    points: int = DEFAULT_GRID['points']

    def __post_init__(self):
        if self.points < 2:
            raise ValueError(f"그리드 점 개수는 2 이상이어야 합니다: {self.points}")
        if not self.stop_hz > self.start_hz:
            raise ValueError("그리드 끝값이 시작값보다 커야 합니다")

    def grid(self):
        """δ 그리드 (rad/s)"""
        return hz_to_angular(np.linspace(self.start_hz, self.stop_hz, self.points))


@dataclass(frozen=True)
class NoiseModel:
    """
    합성 잡음 채널

    additive_rms: 투과율 가산 가우시안 잡음
    two_photon_jitter: δ 평가점에 더하는 2광자 디튜닝 잡음 (rad/s RMS)
    intensity_rms: 레이저 세기 잡음 (곱셈형)
    od_drift: 점마다의 상대 OD 변동 (원자 수 요동)
    """

    additive_rms: float = 0.0
    two_photon_jitter: float = 0.0
    seed: int = 0
    intensity_rms: float = 0.0
    od_drift: float = 0.0

    def __post_init__(self):
        for name in ('additive_rms', 'two_photon_jitter', 'intensity_rms', 'od_drift'):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} 는 0 이상이어야 합니다")

    @property
    def upper_bound(self):
        return 1.0 + 5.0 * (self.additive_rms + self.intensity_rms)

    def to_json_dict(self):
        """seed 를 제외한 잡음 설정 (지터는 Hz)"""
        return {
            'additive_rms': self.additive_rms,
            'two_photon_jitter_hz': angular_to_hz(self.two_photon_jitter),
            'intensity_rms': self.intensity_rms,
            'od_drift': self.od_drift,
        }


@dataclass
class Spectrum:
    """δ 그리드 (rad/s) 위의 투과율"""

    grid: np.ndarray
    transmission: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.transmission = np.asarray(self.transmission, dtype=float)
        if self.grid.ndim != 1 or self.grid.shape != self.transmission.shape:
            raise ValueError("grid 와 transmission 의 길이가 같아야 합니다")
        if len(self.grid) < 2:
            raise ValueError("스펙트럼은 2점 이상이어야 합니다")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid 는 엄격히 증가해야 합니다")

    def __len__(self):
        return len(self.grid)

    @property
    def params(self):
        return self.meta.get('params')

    @property
    def noise(self):
        return self.meta.get('noise')


def absorbance(params, delta):
    """OD = 1 당 흡광도 (Γ/Ωp)·Im ϱ21 = (Γ/2)·Im[N/P]"""
    return 0.5 * params.big_gamma * np.imag(probe_response(params, delta))


def transmit(params, delta):
    """잡음 없는 투과율 (직접 닫힌 형태 계산)"""
    return np.exp(-params.od * absorbance(params, delta))


def resonance_factors(params, delta):
    """
    공명별 투과 인자 R_i = exp{−(OD Γ/2) Im[S_i/(δ−δ_i)]}

    Returns:
        shape (..., 3) 배열, 극점 순서는 solve_poles 와 동일
    """
    decomposition = decompose(params)
    delta = np.asarray(delta, dtype=float)[..., np.newaxis]
    terms = decomposition.residues / (delta - decomposition.poles)
    return np.exp(-0.5 * params.od * params.big_gamma * np.imag(terms))


def interference_indicator(params, delta):
    """각 공명의 R_i 가 그리드 어딘가에서 1 을 넘는지 (상쇄 간섭, EIT 특성)"""
    factors = resonance_factors(params, delta)
    return tuple(bool(flag) for flag in np.any(factors > 1.0, axis=0))


def synthesize(params, grid_spec=None, noise=None):
    """
    스펙트럼 합성

    잡음 난수는 점 인덱스 순서로 한 번에 생성하므로 결과가 평가 순서와 무관하다.
    """
    if not params.omega_p > 0:
        raise ValueError("스펙트럼 합성에는 Ωp > 0 이 필요합니다")
    if grid_spec is None:
        grid_spec = GridSpec()

    grid = grid_spec.grid()
    meta = {'params': params, 'grid_spec': grid_spec, 'noise': noise,
            'seed': None if noise is None else noise.seed}

    if noise is None:
        return Spectrum(grid=grid, transmission=transmit(params, grid), meta=meta)

    rng = np.random.default_rng(noise.seed)
    draws = rng.standard_normal((4, len(grid)))
    jitter, od_noise, intensity, additive = draws

    evaluation = grid + noise.two_photon_jitter * jitter
    od = params.od * np.clip(1.0 + noise.od_drift * od_noise, 0.0, None)
    transmission = np.exp(-od * absorbance(params, evaluation))
    transmission = transmission * (1.0 + noise.intensity_rms * intensity)
    transmission = transmission + noise.additive_rms * additive
    transmission = np.clip(transmission, 0.0, noise.upper_bound)

    return Spectrum(grid=grid, transmission=transmission, meta=meta)


def transmission_difference(spec_with_mw, spec_without_mw):
    """기준(MW 없음) 스펙트럼의 EIA dip 위치에서 투과율 차이 ΔT (%)"""
    if not np.array_equal(spec_with_mw.grid, spec_without_mw.grid):
        raise GridMismatchError("두 스펙트럼의 그리드가 다릅니다")
    index = int(np.argmin(spec_without_mw.transmission))
    return 100.0 * float(spec_with_mw.transmission[index] - spec_without_mw.transmission[index])
