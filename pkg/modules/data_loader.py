"""
스펙트럼 / 파라미터 파일 입출력 모듈

스펙트럼 CSV: 헤더 `delta_hz,transmission`, LF 줄바꿈, 유효숫자 17자리.
메타데이터는 `<이름>.meta.json` sidecar 파일로 저장한다.
"""

import json
import os
import re

import numpy as np
import pandas as pd

from .errors import SpectrumFormatError
from .params import SystemParams, angular_to_hz, hz_to_angular
from .spectrum import GridSpec, NoiseModel, Spectrum

SPECTRUM_COLUMNS = ['delta_hz', 'transmission']
FLOAT_FORMAT = '%.17g'


def load_text_data(text_content, data_type="params"):
    """JSON 문자열 파싱"""
    try:
        return json.loads(text_content)
    except json.JSONDecodeError as e:
        raise SpectrumFormatError(f"{data_type} JSON 파싱 실패: {e.msg}", line=e.lineno) from e


def meta_path_for(csv_path):
    """spectrum.csv → spectrum.meta.json"""
    root, _ = os.path.splitext(csv_path)
    return f"{root}.meta.json"


def spectrum_meta_to_dict(spectrum):
    """Spectrum.meta 를 JSON 직렬화 가능한 dict 로 변환"""
    meta = spectrum.meta
    params = meta.get('params')
    noise = meta.get('noise')
    grid_spec = meta.get('grid_spec')
    return {
        'params': None if params is None else params.to_json_dict(),
        'grid': None if grid_spec is None else {
            'start_hz': grid_spec.start_hz,
            'stop_hz': grid_spec.stop_hz,
            'points': grid_spec.points,
        },
        'noise': None if noise is None else noise.to_json_dict(),
        'seed': meta.get('seed'),
    }


def spectrum_meta_from_dict(data):
    meta = {'seed': data.get('seed')}
    if data.get('params') is not None:
        meta['params'] = SystemParams.from_json_dict(data['params'])
    if data.get('grid') is not None:
        meta['grid_spec'] = GridSpec(**data['grid'])
    if data.get('noise') is not None:
        noise = data['noise']
        meta['noise'] = NoiseModel(
            additive_rms=noise['additive_rms'],
            two_photon_jitter=hz_to_angular(noise['two_photon_jitter_hz']),
            seed=data.get('seed') or 0,
            intensity_rms=noise.get('intensity_rms', 0.0),
            od_drift=noise.get('od_drift', 0.0),
        )
    return meta


def write_json(data, path):
    """결정적(deterministic) JSON 저장"""
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(data, f, indent=2, ensure_ascii=False, allow_nan=False)
        f.write('\n')


def write_spectrum(spectrum, csv_path):
    """스펙트럼 CSV 와 sidecar 메타데이터 저장"""
    df = pd.DataFrame({
        'delta_hz': angular_to_hz(spectrum.grid),
        'transmission': spectrum.transmission,
    })
    df.to_csv(csv_path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    write_json(spectrum_meta_to_dict(spectrum), meta_path_for(csv_path))
    return csv_path


def load_params_file(path):
    """SystemParams JSON 파일 로드"""
    with open(path, 'r', encoding='utf-8') as f:
        data = load_text_data(f.read(), "params")
    try:
        return SystemParams.from_json_dict(data)
    except (TypeError, ValueError) as e:
        raise SpectrumFormatError(f"파라미터 파일 오류: {e}") from e


class SpectrumLoader:
    """스펙트럼 CSV (+ sidecar 메타데이터) 로드를 담당하는 클래스"""

    def __init__(self, csv_path):
        """
        Args:
            csv_path: `delta_hz,transmission` 헤더의 CSV 파일 경로 (필수)
        """
        if not csv_path:
            raise ValueError("스펙트럼 파일 경로가 필요합니다.")
        self.csv_path = csv_path
        self.df_spectrum = None

    def _read_frame(self):
        try:
            raw = pd.read_csv(self.csv_path, header=None, dtype=str, keep_default_na=False)
        except pd.errors.ParserError as e:
            match = re.search(r'line (\d+)', str(e))
            line = int(match.group(1)) if match else None
            raise SpectrumFormatError("열 개수가 맞지 않습니다", line=line) from e
        except pd.errors.EmptyDataError as e:
            raise SpectrumFormatError("빈 파일입니다", line=1) from e

        header = [str(value).strip() for value in raw.iloc[0]]
        if header != SPECTRUM_COLUMNS:
            raise SpectrumFormatError(
                f"헤더는 {','.join(SPECTRUM_COLUMNS)} 이어야 합니다: {','.join(header)}", line=1
            )

        body = raw.iloc[1:].reset_index(drop=True)
        body.columns = SPECTRUM_COLUMNS
        numeric = body.apply(pd.to_numeric, errors='coerce')
        values = numeric.to_numpy(dtype=float)
        bad = ~np.isfinite(values).all(axis=1)
        if bad.any():
            first = int(np.flatnonzero(bad)[0])
            raise SpectrumFormatError("숫자가 아닌 값이 있습니다", line=first + 2)
        return numeric

    def load(self):
        """CSV → Spectrum"""
        self.df_spectrum = self._read_frame()

        meta = {}
        meta_path = meta_path_for(self.csv_path)
        if os.path.exists(meta_path):
            with open(meta_path, 'r', encoding='utf-8') as f:
                meta = spectrum_meta_from_dict(load_text_data(f.read(), "meta"))

        try:
            return Spectrum(
                grid=hz_to_angular(self.df_spectrum['delta_hz'].to_numpy(dtype=float)),
                transmission=self.df_spectrum['transmission'].to_numpy(dtype=float),
                meta=meta,
            )
        except ValueError as e:
            raise SpectrumFormatError(str(e)) from e
