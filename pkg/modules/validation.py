"""
교차 검증 모듈

닫힌 형태 감수율을 독립적인 계산(Lindblad 정상 상태, companion 행렬, 근의 공식,
2준위 해석해)과 비교한다. `validate` 명령이 이 모듈을 실행한다.
"""

import numpy as np

from .eia_effective import effective_params, eia_poles
from .errors import DegeneratePolesError, ElectrometryError
from .oracle import GammaSplit, steady_state, weak_probe_extrapolation
from .params import SystemParams, field_from_splitting, mhz
from .spectrum import transmit
from .susceptibility import decompose, probe_response, radical_poles, rho21, solve_poles

FIELD_ANCHOR = (250e3, 1926.0, 1.014e-2)   # (Δf Hz, μ e·a0, |E| V/m)


def generic_params():
    """공명 결합의 일반적인 4준위 파라미터"""
    return SystemParams.from_mhz(omega_p=0.4, omega_c=6.0, omega_mw=5.0, delta_c=0.0, delta_mw=0.0,
                                 gamma2=3.0, gamma3=0.1, gamma4=0.1, od=1.0)


def eia_params():
    return SystemParams.from_mhz(omega_p=0.4, omega_c=6.0, omega_mw=5.0, delta_c=100.0, delta_mw=0.0,
                                 gamma2=3.0, gamma3=0.05, gamma4=0.05, od=100.0)


def random_params(rng):
    """Rabi/감쇠율은 2π×[10 kHz, 50 MHz] log-uniform, 디튜닝은 ±2π×200 MHz"""
    def log_uniform():
        return float(mhz(10 ** rng.uniform(np.log10(0.01), np.log10(50.0))))

    return SystemParams(
        omega_p=log_uniform(), omega_c=log_uniform(), omega_mw=log_uniform(),
        delta_c=float(mhz(rng.uniform(-200, 200))), delta_mw=float(mhz(rng.uniform(-200, 200))),
        gamma2=log_uniform(), gamma3=log_uniform(), gamma4=log_uniform(), od=1.0,
    )


def random_oracle_params(rng):
    """
    oracle 비교용 파라미터 (Ωp 는 호출 측에서 Γ 비율로 지정)

    Ωc, Ω_MW ∈ 2π×[2, 20] MHz, γ2 ∈ 2π×[1, 3] MHz, γ3, γ4 ∈ 2π×[0.1, 0.5] MHz,
    디튜닝은 ±2π×10 MHz.
    """
    def log_uniform(low, high):
        return float(mhz(10 ** rng.uniform(np.log10(low), np.log10(high))))

    return SystemParams(
        omega_p=0.0, omega_c=log_uniform(2.0, 20.0), omega_mw=log_uniform(2.0, 20.0),
        delta_c=float(mhz(rng.uniform(-10, 10))), delta_mw=float(mhz(rng.uniform(-10, 10))),
        gamma2=log_uniform(1.0, 3.0), gamma3=log_uniform(0.1, 0.5), gamma4=log_uniform(0.1, 0.5),
        od=1.0,
    )


def _relative(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))


def _match(roots, reference):
    """reference 각 원소에 가장 가까운 roots 원소 순서로 정렬"""
    remaining = list(roots)
    matched = []
    for value in reference:
        k = int(np.argmin([abs(r - value) for r in remaining]))
        matched.append(remaining.pop(k))
    return np.array(matched)


def check_field_anchor():
    delta_f, mu, expected = FIELD_ANCHOR
    error = abs(field_from_splitting(delta_f, mu) - expected) / expected
    return error <= 2e-3, f"상대 오차 {error:.2e}"


def check_partial_fractions(rng, n_sets=100):
    grid = mhz(np.linspace(-20, 20, 201))
    worst = 0.0
    skipped = 0
    for _ in range(n_sets):
        params = random_params(rng)
        try:
            decomposition = decompose(params)
        except DegeneratePolesError:
            skipped += 1
            continue
        worst = max(worst, _relative(decomposition.response(grid), probe_response(params, grid)))
    return worst <= 1e-9, f"최대 상대 오차 {worst:.2e} (건너뜀 {skipped})"


def check_residue_sums():
    four_level = complex(np.sum(decompose(generic_params()).residues))
    params = eia_params()
    poles = eia_poles(params, effective_params(params))
    two_pole = poles.residue_plus + poles.residue_minus
    error = max(abs(four_level - 1), abs(two_pole - 1))
    return error <= 1e-9, f"|ΣS − 1| = {error:.2e}"


def check_two_level():
    params = SystemParams.from_mhz(omega_p=0.4, omega_c=0.0, omega_mw=0.0, delta_c=0.0, delta_mw=0.0,
                                   gamma2=3.0, gamma3=0.1, gamma4=0.1, od=3.0)
    error = abs(float(transmit(params, 0.0)) - np.exp(-params.od))
    return error <= 1e-10, f"|T − e^(−OD)| = {error:.2e}"


def check_mirror_symmetry():
    params = generic_params().replace(od=5.0)
    delta = mhz(np.linspace(0, 20, 401))
    error = float(np.max(np.abs(transmit(params, delta) - transmit(params, -delta))))
    return error <= 1e-10, f"최대 |T(δ) − T(−δ)| = {error:.2e}"


def check_oracle_equivalence():
    """Ωp = 1e-3 Γ 에서 정상 상태 ϱ21 과 닫힌 형태 비교 + Ωp 절반에서 2차 수렴"""
    base = generic_params()
    delta = mhz(2.0)
    discrepancies = []
    for scale in (1e-3, 5e-4):
        params = base.replace(omega_p=scale * base.big_gamma)
        analytic = complex(rho21(params, delta))
        exact = steady_state(params, delta).probe_coherence
        discrepancies.append(abs(exact - analytic) / abs(analytic))
    ratio = discrepancies[0] / discrepancies[1]
    passed = discrepancies[0] <= 1e-3 and 3.5 <= ratio <= 4.5
    return passed, f"상대 오차 {discrepancies[0]:.2e}, 수렴비 {ratio:.2f}"


def oracle_discrepancy(params, delta, rabi_scale):
    """Ωp = rabi_scale·Γ 에서 정상 상태 ϱ21 과 닫힌 형태의 상대 차이 (검출 격자 전체 기준)"""
    params = params.replace(omega_p=rabi_scale * params.big_gamma)
    analytic = rho21(params, delta)
    exact = np.array([steady_state(params, d).probe_coherence for d in delta])
    return _relative(exact, analytic)


def check_oracle_random(rng, n_sets=20, points=21, rabi_scale=3e-4):
    """무작위 파라미터 × 디튜닝 격자에서 oracle 일치 + Ωp 절반마다 오차 1/4"""
    delta = mhz(np.linspace(-20, 20, points))
    worst = 0.0
    ratios = []
    for _ in range(n_sets):
        params = random_oracle_params(rng)
        full = oracle_discrepancy(params, delta, rabi_scale)
        half = oracle_discrepancy(params, delta, 0.5 * rabi_scale)
        worst = max(worst, full)
        ratios.append(full / half)
    passed = worst <= 1e-3 and 3.5 <= min(ratios) and max(ratios) <= 4.5
    return passed, f"최대 상대 오차 {worst:.2e}, 수렴비 {min(ratios):.2f}–{max(ratios):.2f}"


def check_weak_probe_limit():
    """외삽한 ϱ21/Ωp 가 감쇠 분배와 무관하게 닫힌 형태와 일치"""
    params = generic_params()
    delta = mhz(1.0)
    analytic = 0.5 * complex(probe_response(params, delta))
    worst = 0.0
    for split in (GammaSplit.all_dephasing(params), GammaSplit.from_decay_fractions(params, 0.5, 0.5)):
        value = weak_probe_extrapolation(params, delta, gamma_split=split).value
        worst = max(worst, abs(value - analytic) / abs(analytic))
    return worst <= 1e-6, f"최대 상대 오차 {worst:.2e}"


def check_radical_poles():
    params = generic_params().replace(delta_c=mhz(3.0), delta_mw=mhz(-1.0), gamma4=mhz(0.2))
    companion = solve_poles(params).poles
    radical = _match(radical_poles(params), companion)
    error = _relative(radical, companion)
    return error <= 1e-9, f"최대 상대 오차 {error:.2e}"


def check_eia_poles():
    params = eia_params().replace(delta_mw=mhz(0.3), gamma4=mhz(0.08))
    eff = effective_params(params)
    poles = eia_poles(params, eff)
    a3 = 1j * params.gamma3
    a4 = params.delta_mw + 1j * params.gamma4
    quadratic = np.roots([1.0, -(a4 + a3 - eff.delta_ac), a4 * (a3 - eff.delta_ac) - params.omega_mw ** 2 / 4])
    found = np.array([poles.plus, poles.minus])
    error = _relative(_match(quadratic, found), found)
    return error <= 1e-10, f"최대 상대 오차 {error:.2e}"


def run_validation_suite(seed=0, verbose=False):
    """
    모든 교차 검증 실행

    Returns:
        [{'name', 'passed', 'detail'}, ...] (실행 순서 고정)
    """
    rng = np.random.default_rng(seed)
    checks = [
        ('field_anchor', check_field_anchor),
        ('partial_fractions', lambda: check_partial_fractions(rng)),
        ('residue_sums', check_residue_sums),
        ('two_level_limit', check_two_level),
        ('mirror_symmetry', check_mirror_symmetry),
        ('oracle_equivalence', check_oracle_equivalence),
        ('oracle_random', lambda: check_oracle_random(rng)),
        ('weak_probe_limit', check_weak_probe_limit),
        ('radical_poles', check_radical_poles),
        ('eia_poles', check_eia_poles),
    ]

    records = []
    for name, check in checks:
        try:
            passed, detail = check()
        except ElectrometryError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        records.append({'name': name, 'passed': bool(passed), 'detail': detail})
        if verbose:
            print(f"   {'✅' if passed else '❌'} {name}: {detail}")
    return records
