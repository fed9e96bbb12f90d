"""
리드베리 원자 MW 전기장 측정 툴킷 메인 실행 파일

    python main.py simulate --preset eia-fig2d --omega-mw-mhz 5 --output out/eia.csv
    python main.py fit --input out/eia.csv --pipeline both
    python main.py sweep --axis omega-mw --from-mhz 1 --to-mhz 10 --points 10
    python main.py classify --omega-c-mhz 6 --delta-c-mhz 0
    python main.py validate
"""

import argparse
import os
import sys
import time

import numpy as np

# 모듈 import를 위한 경로 추가
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from config import (
    DEFAULT_DIPOLE_MOMENT, DEFAULT_GAMMA2_MHZ, DEFAULT_GAMMA_RYDBERG_MHZ, DEFAULT_GRID,
    DEFAULT_PRESET, DEFAULT_PROBE_RABI_MHZ, PRESETS, SWEEP_SCENARIOS
)
from modules import (
    DipoleTransition, ElectrometryError, ExperimentManager, ExtractionAnalyzer,
    FitConvergenceError, GridSpec, NoiseModel, PipelineConfig, RegimeClassifier,
    SpectrumFormatError, SpectrumLoader, SweepRunner, SystemParams, find_dips,
    load_params_file, mhz, run_validation_suite, synthesize
)
from modules.params import hz_to_angular

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_NOT_CONVERGED = 3

# CLI 플래그 → SystemParams 필드 (MHz, Ω/2π)
MHZ_FLAGS = {
    'omega_p_mhz': 'omega_p',
    'omega_c_mhz': 'omega_c',
    'omega_mw_mhz': 'omega_mw',
    'delta_c_mhz': 'delta_c',
    'delta_mw_mhz': 'delta_mw',
    'gamma2_mhz': 'gamma2',
    'gamma3_mhz': 'gamma3',
    'gamma4_mhz': 'gamma4',
}

# --axis 값 → SWEEP_AXES 키, 주파수 축 여부
AXIS_FLAGS = {
    'omega-mw': ('omega_mw', True),
    'mw-power': ('mw_power', False),
    'od': ('od', False),
    'omega-c': ('omega_c', True),
    'delta-c': ('delta_c', True),
    'gamma-rydberg': ('gamma_rydberg', True),
}


def preset_params(preset_name):
    """프리셋 → SystemParams (Ω_MW = 0)"""
    if preset_name not in PRESETS:
        raise ValueError(f"알 수 없는 프리셋: {preset_name} (가능: {sorted(PRESETS)})")
    preset = PRESETS[preset_name]
    return SystemParams.from_mhz(
        omega_p=DEFAULT_PROBE_RABI_MHZ,
        omega_c=preset['omega_c_mhz'],
        omega_mw=0.0,
        delta_c=preset['delta_c_mhz'],
        delta_mw=0.0,
        gamma2=DEFAULT_GAMMA2_MHZ,
        gamma3=DEFAULT_GAMMA_RYDBERG_MHZ,
        gamma4=DEFAULT_GAMMA_RYDBERG_MHZ,
        od=preset['od'],
    )


def build_params(args, fallback=None):
    """
    프리셋 / 파라미터 파일 / 개별 플래그를 합쳐 SystemParams 생성

    우선순위: 개별 플래그 > --params-file > fallback (스펙트럼 메타데이터) > --preset
    """
    if args.params_file:
        params = load_params_file(args.params_file)
    elif fallback is not None:
        params = fallback
    else:
        params = preset_params(args.preset or DEFAULT_PRESET)

    overrides = {name: mhz(getattr(args, flag)) for flag, name in MHZ_FLAGS.items()
                 if getattr(args, flag, None) is not None}
    if args.od is not None:
        overrides['od'] = float(args.od)
    return params.replace(**overrides)


def build_noise(args):
    """잡음 플래그가 모두 0 이면 None (잡음 없는 스펙트럼)"""
    if not (args.noise_rms or args.jitter_khz or args.intensity_rms or args.od_drift):
        return None
    return NoiseModel(
        additive_rms=args.noise_rms,
        two_photon_jitter=hz_to_angular(args.jitter_khz * 1e3),
        seed=args.seed,
        intensity_rms=args.intensity_rms,
        od_drift=args.od_drift,
    )


def build_grid(args):
    span = args.span_mhz * 1e6
    return GridSpec(start_hz=-span, stop_hz=span, points=args.grid_points)


def run_simulation(params, grid_spec=None, noise=None, output_path=None, verbose=True):
    """
    스펙트럼 합성 및 저장

    Returns:
        (Spectrum, 저장 경로)
    """
    experiment_manager = ExperimentManager(verbose=verbose)
    if output_path is None:
        _, file_paths = experiment_manager.create_experiment_output_path('custom', 'simulate')
        output_path = file_paths['spectrum']
    else:
        os.makedirs(os.path.dirname(os.path.abspath(output_path)), exist_ok=True)

    spectrum = synthesize(params, grid_spec, noise)

    if verbose:
        info = RegimeClassifier().get_regime_info(params)
        print("🚀 스펙트럼 합성 완료")
        print(f"   영역: {info['display']}")
        print(f"   그리드: {len(spectrum)}점")
        print(f"   dip 개수: {len(find_dips(spectrum))}개")
        print(f"   최소 투과율: {float(np.min(spectrum.transmission)):.6f}")
    experiment_manager.save_spectrum(spectrum, output_path)
    return spectrum, output_path


def run_fit(input_path, initial=None, pipeline='both', feature='auto',
            dipole_moment=DEFAULT_DIPOLE_MOMENT, output_path=None, verbose=True):
    """
    스펙트럼 파일에서 ATS 추출

    Args:
        initial: 초기 파라미터 (None 이면 스펙트럼 메타데이터 사용)

    Returns:
        (ExtractionResult, ExtractionAnalyzer)
    """
    spectrum = SpectrumLoader(input_path).load()
    if initial is None:
        initial = spectrum.params
    if initial is None:
        raise ValueError("초기 파라미터가 없습니다 (메타데이터 파일 또는 --params-file 필요)")

    if verbose:
        print(f"🔍 ATS 추출: {os.path.basename(input_path)} ({len(spectrum)}점, pipeline={pipeline})")
    analyzer = ExtractionAnalyzer(DipoleTransition(dipole_moment), pipeline=pipeline,
                                  feature=feature, verbose=verbose)
    reference = initial.omega_mw if initial.omega_mw > 0 else None
    result = analyzer.analyze(spectrum, initial, omega_mw_reference=reference)

    if output_path is None:
        output_path = os.path.splitext(input_path)[0] + '.result.json'
    regime = analyzer.classifier.classify(initial).value
    ExperimentManager(verbose=verbose).save_extraction(result, initial, output_path, regime=regime)
    return result, analyzer


def sweep_values(axis_flag, start, stop, points):
    """--from/--to (주파수 축은 MHz) → 내부 단위 값 배열"""
    if axis_flag not in AXIS_FLAGS:
        raise ValueError(f"알 수 없는 스윕 축: {axis_flag} (가능: {sorted(AXIS_FLAGS)})")
    if points < 1:
        raise ValueError(f"스윕 점 개수는 1 이상이어야 합니다: {points}")
    values = np.linspace(start, stop, points)
    _, is_frequency = AXIS_FLAGS[axis_flag]
    return mhz(values) if is_frequency else values


def run_sweep(axis_flag, values, base, pipeline_config=None, output_dir=None,
              scenario_name=None, verbose=True):
    """
    파라미터 스윕 실행 및 보고서 저장

    Returns:
        (SweepReport, file_paths)
    """
    axis = AXIS_FLAGS[axis_flag][0]
    scenario_name = scenario_name or axis
    experiment_manager = ExperimentManager(verbose=verbose)
    if output_dir is None:
        _, file_paths = experiment_manager.create_experiment_output_path(scenario_name, 'sweep')
    else:
        file_paths = experiment_manager.file_paths_in(output_dir, f"sweep_{scenario_name}")

    runner = SweepRunner(pipeline_config, verbose=verbose)
    report = runner.run(axis, values, base)
    experiment_manager.save_sweep_report(report, file_paths, scenario_name)
    return report, file_paths


def run_classify(params, verbose=True):
    classifier = RegimeClassifier()
    info = classifier.get_regime_info(params)
    print(info['regime'])
    if verbose:
        print(f"   {info['display']} (Ωc/Γ = {info['omega_c_over_gamma']:.3f}, "
              f"Δc/Γ = {info['delta_c_over_gamma']:.3f})")
    return classifier.classify(params)


def run_validation(seed=0, verbose=True):
    """교차 검증 실행, 모두 통과하면 True"""
    start_time = time.time()
    if verbose:
        print("🔬 교차 검증 시작")
    records = run_validation_suite(seed=seed, verbose=verbose)
    passed = sum(record['passed'] for record in records)
    if verbose:
        print(f"\n📊 통과: {passed}/{len(records)} ({time.time() - start_time:.2f}초)")
    return passed == len(records), records


# ---------------------------------------------------------------- CLI

def _add_param_arguments(parser):
    group = parser.add_argument_group('물리 파라미터 (MHz, Ω/2π)')
    group.add_argument('--preset', default=None, choices=sorted(PRESETS), help=f'기본값: {DEFAULT_PRESET}')
    group.add_argument('--params-file', default=None, help='SystemParams JSON 파일')
    for flag in MHZ_FLAGS:
        group.add_argument('--' + flag.replace('_', '-'), dest=flag, type=float, default=None)
    group.add_argument('--od', type=float, default=None)


def _add_noise_arguments(parser):
    group = parser.add_argument_group('잡음')
    group.add_argument('--seed', type=int, default=0)
    group.add_argument('--noise-rms', type=float, default=0.0)
    group.add_argument('--jitter-khz', type=float, default=0.0)
    group.add_argument('--intensity-rms', type=float, default=0.0)
    group.add_argument('--od-drift', type=float, default=0.0)


def _add_grid_arguments(parser, points_flag):
    parser.add_argument(points_flag, dest='grid_points', type=int, default=DEFAULT_GRID['points'])
    parser.add_argument('--span-mhz', type=float, default=DEFAULT_GRID['stop_mhz'],
                        help='δ/2π 스캔 범위 ±span (MHz)')


def _add_extraction_arguments(parser):
    parser.add_argument('--pipeline', choices=['local', 'global', 'both'], default='both')
    parser.add_argument('--feature', choices=['auto', 'dip', 'peak'], default='auto')
    parser.add_argument('--mu', type=float, default=DEFAULT_DIPOLE_MOMENT, help='쌍극자 모멘트 (e·a0)')


def build_parser():
    parser = argparse.ArgumentParser(description='리드베리 원자 MW 전기장 측정 시뮬레이션/추출 툴킷')
    subparsers = parser.add_subparsers(dest='command', required=True)

    simulate = subparsers.add_parser('simulate', help='투과 스펙트럼 합성')
    _add_param_arguments(simulate)
    _add_noise_arguments(simulate)
    _add_grid_arguments(simulate, '--points')
    simulate.add_argument('--output', default=None, help='스펙트럼 CSV 경로')
    simulate.set_defaults(handler=cmd_simulate)

    fit = subparsers.add_parser('fit', help='스펙트럼에서 ATS 추출')
    _add_param_arguments(fit)
    fit.add_argument('--input', required=True, help='스펙트럼 CSV 경로')
    fit.add_argument('--output', default=None, help='결과 JSON 경로')
    _add_extraction_arguments(fit)
    fit.set_defaults(handler=cmd_fit)

    sweep = subparsers.add_parser('sweep', help='파라미터 스윕')
    _add_param_arguments(sweep)
    _add_noise_arguments(sweep)
    _add_grid_arguments(sweep, '--grid-points')
    _add_extraction_arguments(sweep)
    sweep.add_argument('--scenario', default=None, choices=sorted(SWEEP_SCENARIOS))
    sweep.add_argument('--axis', default=None, choices=sorted(AXIS_FLAGS))
    sweep.add_argument('--from-mhz', '--from', dest='start', type=float, default=None)
    sweep.add_argument('--to-mhz', '--to', dest='stop', type=float, default=None)
    sweep.add_argument('--points', type=int, default=None)
    sweep.add_argument('--jobs', type=int, default=1)
    sweep.add_argument('--calibration-mhz', type=float, default=None,
                       help='mw-power 축 보정 상수 (Ω/2π MHz per √mW)')
    sweep.add_argument('--output', default=None, help='보고서 폴더')
    sweep.set_defaults(handler=cmd_sweep)

    classify = subparsers.add_parser('classify', help='영역 분류')
    _add_param_arguments(classify)
    classify.set_defaults(handler=cmd_classify)

    validate = subparsers.add_parser('validate', help='교차 검증 실행')
    validate.add_argument('--seed', type=int, default=0)
    validate.set_defaults(handler=cmd_validate)

    return parser


def cmd_simulate(args):
    run_simulation(build_params(args), build_grid(args), build_noise(args), args.output)
    return EXIT_OK


def cmd_fit(args):
    initial = None
    if args.params_file or any(getattr(args, flag) is not None for flag in MHZ_FLAGS) or args.od is not None:
        initial = build_params(args, fallback=SpectrumLoader(args.input).load().params)

    result, analyzer = run_fit(args.input, initial, args.pipeline, args.feature, args.mu, args.output)
    if result.global_converged is False:
        fit = analyzer.last_global_fit
        print(f"❌ 전역 피팅이 수렴하지 않았습니다: {fit.message} "
              f"(반복 {fit.iterations}회, 잔차 RMS {fit.residual_rms:.3e})", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_sweep(args):
    scenario = SWEEP_SCENARIOS.get(args.scenario, {}) if args.scenario else {}
    if args.preset is None and scenario:
        args.preset = scenario['preset']
    axis = args.axis or scenario.get('axis', '').replace('_', '-') or None
    start = args.start if args.start is not None else scenario.get('from_mhz')
    stop = args.stop if args.stop is not None else scenario.get('to_mhz')
    points = args.points if args.points is not None else scenario.get('points')
    if axis is None or start is None or stop is None or points is None:
        raise ValueError("--axis, --from, --to, --points (또는 --scenario) 가 필요합니다")

    calibration = None if args.calibration_mhz is None else mhz(args.calibration_mhz)
    config = PipelineConfig(
        grid=build_grid(args),
        noise=build_noise(args),
        master_seed=args.seed,
        pipeline=args.pipeline,
        feature=args.feature,
        dipole=DipoleTransition(args.mu),
        mw_calibration=calibration,
        jobs=args.jobs,
    )
    values = sweep_values(axis, start, stop, points)
    run_sweep(axis, values, build_params(args), config, args.output, args.scenario)
    return EXIT_OK


def cmd_classify(args):
    run_classify(build_params(args))
    return EXIT_OK


def cmd_validate(args):
    passed, _ = run_validation(seed=args.seed)
    return EXIT_OK if passed else EXIT_RUNTIME


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        return args.handler(args)
    except (SpectrumFormatError, ValueError) as e:
        print(f"❌ 입력 오류: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FitConvergenceError as e:
        print(f"❌ 피팅 실패: {e}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except (ElectrometryError, OSError) as e:
        print(f"❌ 실행 중 오류 발생: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
