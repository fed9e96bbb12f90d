"""
실험 관리 모듈
"""

import os
import sys
from datetime import datetime

from config import OUTPUT_PATH
from .data_loader import write_json, write_spectrum
from .params import angular_to_hz


def make_json_serializable(obj):
    """JSON 직렬화 가능한 형태로 변환"""
    if isinstance(obj, dict):
        return {str(k): make_json_serializable(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [make_json_serializable(item) for item in obj]
    elif isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    elif isinstance(obj, float):
        return obj if obj == obj and abs(obj) != float('inf') else None
    elif hasattr(obj, 'item'):
        # numpy 스칼라
        return make_json_serializable(obj.item())
    elif hasattr(obj, 'tolist'):
        return make_json_serializable(obj.tolist())
    else:
        return str(obj)


class ExperimentManager:
    """실험 관리 및 결과 저장을 담당하는 클래스"""

    def __init__(self, output_path=OUTPUT_PATH, verbose=True):
        self.output_path = output_path
        self.verbose = verbose

    def _log(self, message):
        if self.verbose:
            print(message)

    def create_experiment_output_path(self, scenario_name, kind):
        """
        실험별 고유한 출력 폴더 및 파일명 생성

        폴더 구조: <output>/<kind>/<scenario>/<MMDD_HHMM>
        """
        timestamp = datetime.now().strftime("%m%d_%H%M")
        experiment_folder = os.path.join(self.output_path, kind, scenario_name, timestamp)
        return experiment_folder, self.file_paths_in(experiment_folder, f"{kind}_{scenario_name}")

    def file_paths_in(self, experiment_folder, file_prefix):
        """주어진 폴더 안의 출력 파일 경로 (폴더가 없으면 생성)"""
        os.makedirs(experiment_folder, exist_ok=True)
        return {
            'spectrum': os.path.join(experiment_folder, f"{file_prefix}_spectrum.csv"),
            'result': os.path.join(experiment_folder, f"{file_prefix}_result.json"),
            'sweep': os.path.join(experiment_folder, f"{file_prefix}_sweep.json"),
            'sweep_table': os.path.join(experiment_folder, f"{file_prefix}_sweep.csv"),
            'summary': os.path.join(experiment_folder, f"{file_prefix}_summary.txt"),
        }

    def save_spectrum(self, spectrum, path):
        write_spectrum(spectrum, path)
        self._log(f"   ✅ 스펙트럼: {os.path.basename(path)}")
        return path

    def save_extraction(self, result, params, path, regime=None):
        """추출 결과 JSON 저장"""
        payload = {
            'regime': regime,
            'initial_params': None if params is None else params.to_json_dict(),
            'result': result.to_json_dict(),
        }
        write_json(make_json_serializable(payload), path)
        self._log(f"   ✅ 추출 결과: {os.path.basename(path)}")
        return path

    def save_sweep_report(self, report, file_paths, scenario_name):
        """스윕 결과 JSON + CSV + 요약 텍스트 저장"""
        self._log(f"\n💾 스윕 결과 저장 중...")
        try:
            write_json(make_json_serializable(report.to_json_dict()), file_paths['sweep'])
            self._log(f"   ✅ 스윕 JSON: {os.path.basename(file_paths['sweep'])}")

            report.to_frame().to_csv(file_paths['sweep_table'], index=False,
                                     float_format='%.17g', lineterminator='\n')
            self._log(f"   ✅ 스윕 표: {os.path.basename(file_paths['sweep_table'])}")

            with open(file_paths['summary'], 'w', encoding='utf-8', newline='\n') as f:
                f.write(self._create_summary_text(report, scenario_name))
            self._log(f"   ✅ 요약: {os.path.basename(file_paths['summary'])}")

            self._log(f"📁 실험 '{scenario_name}' 결과 저장 완료!")
        except Exception as e:
            print(f"❌ 실험 결과 저장 실패: {str(e)}", file=sys.stderr)
            raise

    def _create_summary_text(self, report, scenario_name):
        """스윕 요약 텍스트 생성"""
        successful = report.successful()
        deviations = [p.result.deviation for p in successful if p.result.deviation is not None]
        if deviations:
            worst = max(deviations, key=abs)
            deviation_info = f"- 최대 |Δ|: {abs(worst):.3f} %\n- 평균 Δ: {sum(deviations) / len(deviations):+.3f} %"
        else:
            deviation_info = "- Δ: N/A"

        regimes = sorted({p.regime for p in report.points})
        base_omega = angular_to_hz(report.base.omega_c) / 1e6
        base_delta = angular_to_hz(report.base.delta_c) / 1e6

        return f"""
========================================
스윕 결과 요약 - {scenario_name}
========================================

📊 스윕 설정:
- 축: {report.axis} ({report.unit or '무차원'})
- 점 개수: {len(report.points)}개
- 기준 Ωc/2π: {base_omega:.3f} MHz
- 기준 Δc/2π: {base_delta:.3f} MHz
- 영역: {', '.join(regimes)}

⚡ 추출 결과:
- 성공: {len(successful)}개
- 실패: {len(report.points) - len(successful)}개
{deviation_info}

📁 생성된 파일들:
- sweep.json: 점별 상세 결과
- sweep.csv: 점별 결과 표
- summary.txt: 실험 요약

========================================
"""
