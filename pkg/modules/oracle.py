"""
4준위 Lindblad 정상 상태 oracle

H = −[(δ−Δc)A22 + δA33 + (δ−Δ_MW)A44] + ½(Ωp A21 + Ωc A32 + Ω_MW A43 + h.c.)   (ħ = 1)
붕괴: √Γ A12, √γ A23, √γ' A14,  dephasing: √(2γd) A33, √(2γd') A44

밀도 행렬은 column-stacking 으로 벡터화한다: vec(AρB) = (Bᵀ ⊗ A) vec(ρ).
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from config import NUMERIC_CONFIG
from .errors import SteadyStateError

N_LEVELS = 4


def _projector(i, j):
    """|i><j| (1부터 시작하는 준위 번호)"""
    op = np.zeros((N_LEVELS, N_LEVELS), dtype=complex)
    op[i - 1, j - 1] = 1.0
    return op


@dataclass(frozen=True)
class GammaSplit:
    """γ3 = γ/2 + γd, γ4 = γ'/2 + γd' 분해"""

    decay3: float = 0.0      # γ  (|3> → |2>)
    dephasing3: float = 0.0  # γd
    decay4: float = 0.0      # γ' (|4> → |1>)
    dephasing4: float = 0.0  # γd'

    def __post_init__(self):
        for name in ('decay3', 'dephasing3', 'decay4', 'dephasing4'):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} 는 0 이상이어야 합니다")

    @property
    def gamma3(self):
        return 0.5 * self.decay3 + self.dephasing3

    @property
    def gamma4(self):
        return 0.5 * self.decay4 + self.dephasing4

    @classmethod
    def all_dephasing(cls, params):
        return cls(dephasing3=params.gamma3, dephasing4=params.gamma4)

    @classmethod
    def from_decay_fractions(cls, params, fraction3, fraction4):
        """γ3, γ4 중 붕괴가 차지하는 비율로 분해"""
        for fraction in (fraction3, fraction4):
            if not 0.0 <= fraction <= 1.0:
                raise ValueError(f"붕괴 비율은 0~1 사이여야 합니다: {fraction}")
        return cls(
            decay3=2 * fraction3 * params.gamma3,
            dephasing3=(1 - fraction3) * params.gamma3,
            decay4=2 * fraction4 * params.gamma4,
            dephasing4=(1 - fraction4) * params.gamma4,
        )

    def check_consistent(self, params, rtol=1e-12):
        for name, total in (('gamma3', params.gamma3), ('gamma4', params.gamma4)):
            if abs(getattr(self, name) - total) > rtol * max(total, 1.0):
                raise ValueError(f"분해된 {name} 이 파라미터 값과 다릅니다")


@dataclass(frozen=True)
class DensityMatrix:
    """4×4 밀도 행렬"""

    rho: np.ndarray

    def __post_init__(self):
        rho = self.rho
        if rho.shape != (N_LEVELS, N_LEVELS):
            raise ValueError(f"밀도 행렬 크기가 잘못되었습니다: {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
            raise SteadyStateError("밀도 행렬이 Hermitian 이 아닙니다")
        if abs(np.trace(rho) - 1) > 1e-10:
            raise SteadyStateError("밀도 행렬의 trace 가 1 이 아닙니다")
        if np.min(np.linalg.eigvalsh(rho)) < -1e-8:
            raise SteadyStateError("밀도 행렬에 음의 고유값이 있습니다")

    def population(self, level):
        return float(self.rho[level - 1, level - 1].real)

    @property
    def probe_coherence(self):
        """<1|ρ|2> : 약한 probe 극한에서 닫힌 형태 ϱ21 과 같은 부호 규약"""
        return complex(self.rho[0, 1])


def hamiltonian(params, delta):
    h = np.zeros((N_LEVELS, N_LEVELS), dtype=complex)
    h -= (delta - params.delta_c) * _projector(2, 2)
    h -= delta * _projector(3, 3)
    h -= (delta - params.delta_mw) * _projector(4, 4)
    coupling = (params.omega_p * _projector(2, 1)
                + params.omega_c * _projector(3, 2)
                + params.omega_mw * _projector(4, 3))
    return h + 0.5 * (coupling + coupling.conj().T)


def collapse_operators(params, gamma_split):
    ops = [
        np.sqrt(params.big_gamma) * _projector(1, 2),
        np.sqrt(gamma_split.decay3) * _projector(2, 3),
        np.sqrt(gamma_split.decay4) * _projector(1, 4),
        np.sqrt(2 * gamma_split.dephasing3) * _projector(3, 3),
        np.sqrt(2 * gamma_split.dephasing4) * _projector(4, 4),
    ]
    return [op for op in ops if np.any(op)]


def liouvillian(params, delta, gamma_split=None):
    """16×16 Liouvillian 슈퍼연산자 (column-stacking)"""
    if gamma_split is None:
        gamma_split = GammaSplit.all_dephasing(params)
    gamma_split.check_consistent(params)

    identity = np.eye(N_LEVELS)
    h = hamiltonian(params, delta)
    superop = -1j * (np.kron(identity, h) - np.kron(h.T, identity))
    for c in collapse_operators(params, gamma_split):
        cdc = c.conj().T @ c
        superop += (np.kron(c.conj(), c)
                    - 0.5 * np.kron(identity, cdc)
                    - 0.5 * np.kron(cdc.T, identity))
    return superop


def steady_state(params, delta, gamma_split=None):
    """
    L(ρ) = 0 의 정상 상태 (trace 조건으로 한 행을 대체한 dense 직접 풀이)

    Raises:
        SteadyStateError: 정상 상태가 유일하지 않거나 잔차가 큰 경우
    """
    superop = liouvillian(params, delta, gamma_split)
    norm = np.linalg.norm(superop, 2)

    singular = linalg.svdvals(superop)
    if singular[-2] <= NUMERIC_CONFIG['nullspace_rtol'] * singular[0]:
        raise SteadyStateError("Liouvillian 영공간이 1차원보다 큽니다 (정상 상태가 유일하지 않음)")

    system = superop.copy()
    rhs = np.zeros(N_LEVELS ** 2, dtype=complex)
    trace_row = np.zeros(N_LEVELS ** 2, dtype=complex)
    trace_row[[k * (N_LEVELS + 1) for k in range(N_LEVELS)]] = 1.0
    system[0] = trace_row
    rhs[0] = 1.0

    try:
        vec = linalg.solve(system, rhs)
    except linalg.LinAlgError as e:
        raise SteadyStateError(f"정상 상태 선형계 풀이 실패: {e}") from e

    residual = np.linalg.norm(superop @ vec)
    if residual > NUMERIC_CONFIG['steady_state_residual'] * norm:
        raise SteadyStateError(f"정상 상태 잔차가 너무 큽니다: {residual / norm:.3e}")

    rho = vec.reshape((N_LEVELS, N_LEVELS), order='F')
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise SteadyStateError("정상 상태가 Hermitian 이 아닙니다")
    return DensityMatrix(rho=0.5 * (rho + rho.conj().T))


@dataclass(frozen=True)
class ExtrapolationResult:
    """Ωp → 0 외삽 결과 (ϱ21/Ωp)"""

    value: complex
    error_estimate: float
    samples: tuple
    monotone: bool


def _extrapolate_to_zero(x, y):
    """x → 0 Lagrange 보간 (Richardson)"""
    total = 0j
    for k, (xk, yk) in enumerate(zip(x, y)):
        weight = 1.0
        for j, xj in enumerate(x):
            if j != k:
                weight *= xj / (xj - xk)
        total += weight * yk
    return total


def weak_probe_extrapolation(params, delta, probe_scales=None, gamma_split=None):
    """
    Ωp = scale·Γ 에서 구한 ϱ21/Ωp 를 Ωp² 에 대해 0 으로 외삽

    Args:
        probe_scales: Γ 대비 probe Rabi 비율 (엄격히 감소, 3개 이상)
    """
    if probe_scales is None:
        probe_scales = NUMERIC_CONFIG['probe_scales']
    scales = np.asarray(probe_scales, dtype=float)
    if len(scales) < 3:
        raise ValueError("probe_scales 는 3개 이상이어야 합니다")
    if np.any(np.diff(scales) >= 0) or np.any(scales <= 0):
        raise ValueError("probe_scales 는 양수이고 엄격히 감소해야 합니다")

    samples = []
    for scale in scales:
        omega_p = scale * params.big_gamma
        rho = steady_state(params.replace(omega_p=omega_p), delta, gamma_split)
        samples.append(rho.probe_coherence / omega_p)

    x = (scales * params.big_gamma) ** 2
    value = _extrapolate_to_zero(x, samples)
    gaps = np.abs(np.asarray(samples) - value)
    return ExtrapolationResult(
        value=complex(value),
        error_estimate=float(gaps[-1]),
        samples=tuple(complex(s) for s in samples),
        monotone=bool(np.all(np.diff(gaps) <= 0)),
    )
