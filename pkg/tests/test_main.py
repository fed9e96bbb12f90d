import json
import os

import numpy as np
import pytest

import main
from modules.data_loader import SpectrumLoader


def read_bytes(path):
    with open(path, 'rb') as f:
        return f.read()


def test_simulate_zero_od_is_flat(tmp_path):
    output = str(tmp_path / "flat.csv")
    assert main.main(['simulate', '--od', '0', '--points', '101', '--output', output]) == main.EXIT_OK
    spectrum = SpectrumLoader(output).load()
    assert len(spectrum) == 101
    np.testing.assert_array_equal(spectrum.transmission, np.ones(101))


def test_simulate_is_deterministic(tmp_path):
    args = ['simulate', '--omega-mw-mhz', '5', '--points', '401', '--noise-rms', '0.01', '--seed', '42']
    first = str(tmp_path / "a.csv")
    second = str(tmp_path / "b.csv")
    assert main.main(args + ['--output', first]) == main.EXIT_OK
    assert main.main(args + ['--output', second]) == main.EXIT_OK
    assert read_bytes(first) == read_bytes(second)


def test_simulate_then_fit_both_pipelines(tmp_path):
    spectrum_path = str(tmp_path / "eia.csv")
    result_path = str(tmp_path / "eia.result.json")
    assert main.main(['simulate', '--omega-mw-mhz', '5', '--points', '2001', '--output', spectrum_path]) == 0
    assert main.main(['fit', '--input', spectrum_path, '--pipeline', 'both', '--output', result_path]) == 0

    with open(result_path, encoding='utf-8') as f:
        payload = json.load(f)
    assert payload['regime'] == 'EIA_ATS'
    result = payload['result']
    assert result['delta_f_hz'] is not None
    assert result['delta_f_prime_hz'] is not None
    assert abs(result['deviation_pct']) < 1.0


def test_fit_default_output_next_to_input(tmp_path):
    spectrum_path = str(tmp_path / "local.csv")
    main.main(['simulate', '--omega-mw-mhz', '5', '--points', '2001', '--output', spectrum_path])
    assert main.main(['fit', '--input', spectrum_path, '--pipeline', 'local']) == 0
    assert os.path.exists(str(tmp_path / "local.result.json"))


def test_fit_malformed_csv_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("delta_hz,transmission\n1,0.5\n2,0.5,9\n", encoding='utf-8')
    assert main.main(['fit', '--input', str(bad)]) == main.EXIT_USAGE
    assert "3번째 줄" in capsys.readouterr().err


def test_fit_missing_file_is_runtime_error(tmp_path):
    assert main.main(['fit', '--input', str(tmp_path / "missing.csv")]) == main.EXIT_RUNTIME


def test_classify_crossover(capsys):
    assert main.main(['classify', '--omega-c-mhz', '6', '--delta-c-mhz', '0']) == main.EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == 'CROSSOVER'


def test_classify_preset(capsys):
    assert main.main(['classify', '--preset', 'dats-fig2c']) == main.EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == 'DATS'


def test_validate_passes():
    assert main.main(['validate']) == main.EXIT_OK


def test_usage_errors():
    assert main.main([]) == main.EXIT_USAGE
    assert main.main(['simulate', '--preset', 'unknown']) == main.EXIT_USAGE
    assert main.main(['sweep', '--axis', 'omega-mw']) == main.EXIT_USAGE


def test_small_sweep_writes_report(tmp_path):
    argv = ['sweep', '--axis', 'omega-mw', '--from-mhz', '4', '--to-mhz', '6', '--points', '2',
            '--pipeline', 'local', '--grid-points', '2001', '--output', str(tmp_path)]
    assert main.main(argv) == main.EXIT_OK

    for suffix in ('sweep.json', 'sweep.csv', 'summary.txt'):
        assert os.path.exists(str(tmp_path / f"sweep_omega_mw_{suffix}"))
    with open(str(tmp_path / "sweep_omega_mw_sweep.json"), encoding='utf-8') as f:
        report = json.load(f)
    assert report['axis']['values'] == pytest.approx([4e6, 6e6])
    assert len(report['points']) == 2
