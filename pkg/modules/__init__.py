"""
모듈 패키지 초기화
"""

from .errors import (
    ElectrometryError, DegenerateDenominatorError, DegeneratePolesError,
    RegimeValidityError, SteadyStateError, GridMismatchError, DipCountError,
    FitConvergenceError, SpectrumFormatError, WindowClippedError
)
from .params import (
    SystemParams, DipoleTransition, hz_to_angular, angular_to_hz, mhz,
    field_from_splitting, splitting_from_field, field_from_rabi, rabi_from_field
)
from .susceptibility import PoleDecomposition, rho21, probe_response, solve_poles, residues, decompose, radical_poles
from .eia_effective import EffectiveParams, EiaPoles, effective_params, rho31, eia_poles, double_lorentzian
from .oracle import GammaSplit, DensityMatrix, steady_state, weak_probe_extrapolation
from .spectrum import (
    GridSpec, NoiseModel, Spectrum, transmit, resonance_factors,
    interference_indicator, synthesize, transmission_difference
)
from .data_loader import SpectrumLoader, write_spectrum, load_params_file
from .lineshape_fitting import LorentzianFit, SplittingResult, find_dips, fit_lorentzian_local, extract_ats
from .global_fitting import GlobalFit, fit_global, splitting_from_model
from .analyzer import ExtractionAnalyzer, ExtractionResult, deviation, eia_linewidth, visibility
from .regime_classifier import RegimeClassifier, RegimeLabel, classify
from .sweeps import SweepRunner, SweepReport, PipelineConfig, mw_power_to_rabi, run_sweep
from .experiment_manager import ExperimentManager
from .validation import run_validation_suite

__all__ = [
    'ElectrometryError', 'DegenerateDenominatorError', 'DegeneratePolesError',
    'RegimeValidityError', 'SteadyStateError', 'GridMismatchError', 'DipCountError',
    'FitConvergenceError', 'SpectrumFormatError', 'WindowClippedError',
    'SystemParams', 'DipoleTransition', 'hz_to_angular', 'angular_to_hz', 'mhz',
    'field_from_splitting', 'splitting_from_field', 'field_from_rabi', 'rabi_from_field',
    'PoleDecomposition', 'rho21', 'probe_response', 'solve_poles', 'residues', 'decompose', 'radical_poles',
    'EffectiveParams', 'EiaPoles', 'effective_params', 'rho31', 'eia_poles', 'double_lorentzian',
    'GammaSplit', 'DensityMatrix', 'steady_state', 'weak_probe_extrapolation',
    'GridSpec', 'NoiseModel', 'Spectrum', 'transmit', 'resonance_factors',
    'interference_indicator', 'synthesize', 'transmission_difference',
    'SpectrumLoader', 'write_spectrum', 'load_params_file',
    'LorentzianFit', 'SplittingResult', 'find_dips', 'fit_lorentzian_local', 'extract_ats',
    'GlobalFit', 'fit_global', 'splitting_from_model',
    'ExtractionAnalyzer', 'ExtractionResult', 'deviation', 'eia_linewidth', 'visibility',
    'RegimeClassifier', 'RegimeLabel', 'classify',
    'SweepRunner', 'SweepReport', 'PipelineConfig', 'mw_power_to_rabi', 'run_sweep',
    'ExperimentManager',
    'run_validation_suite'
]
