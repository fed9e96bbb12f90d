"""
파라미터 스윕 모듈

각 스윕 점마다 합성 → 국소/전역 추출 → 편차 계산을 수행한다.
점별 난수 seed 는 (master seed, 점 인덱스) 로부터 만들어 병렬 실행 순서와 무관하다.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd

from config import DEFAULT_DIPOLE_MOMENT
from .analyzer import ExtractionAnalyzer, deviation
from .errors import ElectrometryError
from .params import DipoleTransition, angular_to_hz, field_from_rabi
from .regime_classifier import classify
from .spectrum import GridSpec, synthesize

# 축 이름 → (SystemParams 필드, 외부 단위)
SWEEP_AXES = {
    'mw_power': ('omega_mw', 'dBm'),
    'omega_mw': ('omega_mw', 'Hz'),
    'od': ('od', ''),
    'omega_c': ('omega_c', 'Hz'),
    'delta_c': ('delta_c', 'Hz'),
    'gamma_rydberg': (('gamma3', 'gamma4'), 'Hz'),
}


def mw_power_to_rabi(power_dbm, cal):
    """
    MW 출력(dBm) → Ω_MW (rad/s)

    Args:
        power_dbm: 안테나 입력 전력 (dBm)
        cal: 보정 상수 (rad/s per √mW)
    """
    if not cal > 0:
        raise ValueError(f"보정 상수는 0보다 커야 합니다: {cal}")
    return cal * np.sqrt(10.0 ** (np.asarray(power_dbm, dtype=float) / 10.0))


def derive_seed(master_seed, index):
    """(master seed, 인덱스) → 점별 seed"""
    return int(np.random.SeedSequence([int(master_seed), int(index)]).generate_state(1)[0])


@dataclass(frozen=True)
class PipelineConfig:
    """스윕 점마다 적용할 합성/추출 설정"""

    grid: GridSpec = field(default_factory=GridSpec)
    noise: object = None          # NoiseModel 또는 None (seed 는 점별로 대체)
    master_seed: int = 0
    pipeline: str = 'both'
    feature: str = 'auto'
    dipole: DipoleTransition = field(default_factory=lambda: DipoleTransition(DEFAULT_DIPOLE_MOMENT))
    mw_calibration: float = None  # rad/s per √mW
    jobs: int = 1

    def snapshot(self):
        noise = None if self.noise is None else self.noise.to_json_dict()
        return {
            'grid': {'start_hz': self.grid.start_hz, 'stop_hz': self.grid.stop_hz,
                     'points': self.grid.points},
            'noise': noise,
            'master_seed': self.master_seed,
            'pipeline': self.pipeline,
            'feature': self.feature,
            'dipole_moment': self.dipole.dipole_moment,
            'mw_calibration': self.mw_calibration,
        }


@dataclass(frozen=True)
class SweepPoint:
    """스윕 한 점의 결과"""

    index: int
    value: float
    regime: str
    omega_mw: float                 # 합성에 쓴 Ω_MW (rad/s)
    applied_field: float = None     # Ω_MW 에 대응하는 인가 전기장 (μV/cm)
    result: object = None           # ExtractionResult
    deviation_true: float = None    # 합성값 Ω_MW 기준 Δ (%)
    error: str = None


@dataclass(frozen=True)
class SweepReport:
    """스윕 결과 묶음"""

    axis: str
    unit: str
    values: tuple
    points: tuple
    config: dict
    base: object                    # SystemParams

    def external_value(self, value):
        return angular_to_hz(value) if self.unit == 'Hz' else value

    def to_json_dict(self):
        points = []
        for point in self.points:
            points.append({
                'index': point.index,
                'value': self.external_value(point.value),
                'regime': point.regime,
                'omega_mw_hz': angular_to_hz(point.omega_mw),
                'applied_field_uv_per_cm': point.applied_field,
                'deviation_true_pct': point.deviation_true,
                'result': None if point.result is None else point.result.to_json_dict(),
                'error': point.error,
            })
        return {
            'axis': {'name': self.axis, 'unit': self.unit,
                     'values': [self.external_value(v) for v in self.values]},
            'base_params': self.base.to_json_dict(),
            'config': self.config,
            'points': points,
        }

    def to_frame(self):
        """점마다 한 행인 평탄한 DataFrame"""
        rows = []
        for point in self.points:
            row = {
                'index': point.index,
                self.axis: self.external_value(point.value),
                'regime': point.regime,
                'omega_mw_hz': angular_to_hz(point.omega_mw),
                'applied_field_uv_per_cm': point.applied_field,
                'deviation_true_pct': point.deviation_true,
            }
            result = {} if point.result is None else point.result.to_json_dict()
            for key in ('delta_f_hz', 'delta_f_prime_hz', 'omega_mw_hz', 'deviation_pct',
                        'deviation_prime_pct', 'field_v_per_m', 'visibility', 'global_converged'):
                column = 'recovered_omega_mw_hz' if key == 'omega_mw_hz' else key
                row[column] = result.get(key)
            row['error'] = point.error
            rows.append(row)
        return pd.DataFrame(rows)

    def successful(self):
        return [p for p in self.points if p.result is not None]


def apply_axis(base, axis, value, config):
    """스윕 축 값을 SystemParams 에 반영"""
    if axis not in SWEEP_AXES:
        raise ValueError(f"알 수 없는 스윕 축: {axis}")
    target, _ = SWEEP_AXES[axis]
    if axis == 'mw_power':
        if config.mw_calibration is None:
            raise ValueError("mw_power 스윕에는 보정 상수가 필요합니다")
        return base.replace(omega_mw=float(mw_power_to_rabi(value, config.mw_calibration)))
    if isinstance(target, tuple):
        return base.replace(**{name: float(value) for name in target})
    return base.replace(**{target: float(value)})


def run_point(index, value, axis, base, config):
    """스윕 한 점 실행 (프로세스 풀에서도 호출)"""
    params = apply_axis(base, axis, value, config)
    noise = None
    if config.noise is not None:
        noise = replace(config.noise, seed=derive_seed(config.master_seed, index))

    # V/m → μV/cm
    applied_field = field_from_rabi(params.omega_mw, config.dipole.dipole_moment) * 1e4
    analyzer = ExtractionAnalyzer(config.dipole, pipeline=config.pipeline, feature=config.feature)
    reference = params.omega_mw if params.omega_mw > 0 else None
    try:
        spectrum = synthesize(params, config.grid, noise)
        result = analyzer.analyze(spectrum, params, omega_mw_reference=reference)
    except (ElectrometryError, ValueError) as e:
        return SweepPoint(index=index, value=float(value), regime=classify(params).value,
                          omega_mw=params.omega_mw, applied_field=applied_field,
                          error=f"{type(e).__name__}: {e}")

    deviation_true = None
    if reference is not None and result.delta_f is not None:
        deviation_true = deviation(result.delta_f, reference)
    return SweepPoint(index=index, value=float(value), regime=classify(params).value,
                      omega_mw=params.omega_mw, applied_field=applied_field,
                      result=result, deviation_true=deviation_true)


class SweepRunner:
    """파라미터 스윕 실행을 담당하는 클래스"""

    def __init__(self, config=None, verbose=False):
        self.config = config or PipelineConfig()
        self.verbose = verbose
        self.elapsed = 0.0

    def run(self, axis, values, base):
        """
        스윕 실행

        Args:
            axis: SWEEP_AXES 의 키
            values: 엄격히 단조인 축 값 (주파수 축은 rad/s, mw_power 는 dBm)
            base: 기준 SystemParams
        """
        if axis not in SWEEP_AXES:
            raise ValueError(f"알 수 없는 스윕 축: {axis} (가능: {sorted(SWEEP_AXES)})")
        if axis == 'mw_power' and self.config.mw_calibration is None:
            raise ValueError("mw_power 스윕에는 보정 상수가 필요합니다")
        values = tuple(float(v) for v in values)
        steps = np.diff(values)
        if len(values) == 0 or not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValueError("스윕 값은 엄격히 단조여야 합니다")

        start = time.time()
        if self.verbose:
            print(f"🎯 스윕 시작: {axis} {len(values)}점 (jobs={self.config.jobs})")

        indices = range(len(values))
        if self.config.jobs > 1:
            with ProcessPoolExecutor(max_workers=self.config.jobs) as executor:
                points = list(executor.map(
                    run_point, indices, values,
                    [axis] * len(values), [base] * len(values), [self.config] * len(values),
                ))
        else:
            points = [run_point(i, v, axis, base, self.config) for i, v in zip(indices, values)]

        self.elapsed = time.time() - start
        report = SweepReport(
            axis=axis,
            unit=SWEEP_AXES[axis][1],
            values=values,
            points=tuple(points),
            config=self.config.snapshot(),
            base=base,
        )
        if self.verbose:
            self.print_summary(report)
        return report

    def print_summary(self, report):
        print(f"\n📊 스윕 결과 ({report.axis}, {self.elapsed:.2f}초)")
        for point in report.points:
            value = report.external_value(point.value)
            label = f"{value / 1e6:.3f} MHz" if report.unit == 'Hz' else f"{value:g} {report.unit}"
            if point.result is None:
                print(f"   ❌ [{point.index}] {label} ({point.regime}): {point.error}")
                continue
            dev = point.result.deviation
            dev_text = "N/A" if dev is None else f"{dev:+.3f} %"
            print(f"   ✅ [{point.index}] {label} ({point.regime}): Δ = {dev_text}")
        failed = len(report.points) - len(report.successful())
        if failed:
            print(f"⚠️ 실패한 점: {failed}개")


def run_sweep(axis, values, base, pipeline_config=None, verbose=False):
    return SweepRunner(pipeline_config, verbose=verbose).run(axis, values, base)
