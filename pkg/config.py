"""
리드베리 원자 MW 전기장 측정 시뮬레이션 설정
"""

# 기본 경로 설정
OUTPUT_PATH = './output'

# 기본 물리 파라미터 (단위: MHz, Ω/2π 기준)
DEFAULT_PROBE_RABI_MHZ = 0.4
DEFAULT_GAMMA2_MHZ = 3.0
DEFAULT_GAMMA_RYDBERG_MHZ = 0.05
DEFAULT_DIPOLE_MOMENT = 1926.0          # e·a0

# 스캔 그리드 설정
DEFAULT_GRID = {
    'start_mhz': -20.0,
    'stop_mhz': 20.0,
    'points': 801
}

# 프리셋 설정 (공진 결합 프리셋의 OD는 별도 지정값)
PRESETS = {
    "eia-fig2d": {
        "description": "EIA ATS (원거리 디튜닝 결합광)",
        "omega_c_mhz": 6.0,
        "delta_c_mhz": 100.0,
        "od": 100.0
    },

    "deit-fig2a": {
        "description": "double EIT (약한 결합광)",
        "omega_c_mhz": 2.0,
        "delta_c_mhz": 0.0,
        "od": 5.0
    },

    "crossover-fig2b": {
        "description": "DEIT-DATS crossover",
        "omega_c_mhz": 6.0,
        "delta_c_mhz": 0.0,
        "od": 5.0
    },

    "dats-fig2c": {
        "description": "double ATS (강한 결합광)",
        "omega_c_mhz": 16.0,
        "delta_c_mhz": 0.0,
        "od": 5.0
    }
}
DEFAULT_PRESET = "eia-fig2d"

# 영역(regime) 분류 설정
REGIME_CONFIG = {
    'EIA_ATS': {
        'name': 'EIA_ATS',
        'display': '🔵 EIA ATS',
        'detuning_ratio': 10.0
    },
    'DEIT': {
        'name': 'DEIT',
        'display': '🟢 DEIT',
        'max_coupling_ratio': 0.5
    },
    'DATS': {
        'name': 'DATS',
        'display': '🔴 DATS',
        'min_coupling_ratio': 2.0
    },
    'CROSSOVER': {
        'name': 'CROSSOVER',
        'display': '🟡 CROSSOVER'
    }
}

# 피팅 설정
FIT_CONFIG = {
    'min_prominence': 0.02,
    'noise_prominence_factor': 5.0,
    'window_half_widths': 1.5,
    'min_window_points': 11,
    'min_fit_points': 7,
    'local_xtol': 1e-12,
    'local_max_nfev': 2000,
    'global_max_nfev': 500,
    'global_xtol': 1e-10,
    'global_gtol': 1e-12,
    'global_ftol': 1e-12,
    'diff_step': 1e-6,
    'seed_gamma_mhz': 0.05,
    'model_grid_points': 20001,
    'splitting_xatol_mhz': 1e-9,
    'background_fraction': 0.10
}

# 수치 해석 허용 오차
NUMERIC_CONFIG = {
    'degenerate_pole_rtol': 1e-10,
    'denominator_rtol': 1e-13,
    'steady_state_residual': 1e-10,
    'nullspace_rtol': 1e-13,
    'probe_scales': (1e-2, 1e-3, 1e-4)
}

# 스윕 실험 시나리오 설정
SWEEP_SCENARIOS = {
    "eia-linearity": {
        "description": "EIA ATS 선형성 (Ω_MW 스윕)",
        "preset": "eia-fig2d",
        "axis": "omega_mw",
        "from_mhz": 1.0,
        "to_mhz": 10.0,
        "points": 10
    },

    "deit-breakdown": {
        "description": "DEIT 영역 선형성 붕괴",
        "preset": "deit-fig2a",
        "axis": "omega_mw",
        "from_mhz": 1.0,
        "to_mhz": 10.0,
        "points": 10
    },

    "dats-breakdown": {
        "description": "DATS 영역 선형성 붕괴",
        "preset": "dats-fig2c",
        "axis": "omega_mw",
        "from_mhz": 1.0,
        "to_mhz": 10.0,
        "points": 10
    }
}
