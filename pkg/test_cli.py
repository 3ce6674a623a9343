#!/usr/bin/env python3
"""
명령행 도구 테스트
eval / sweep / certify / worked-example / list-bounds 와 종료 코드
"""
import sys
import os
import io
import json

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose

sys.path.append(os.path.dirname(__file__))

from scripts.numrad_cli import EXAMPLE_MATRIX, main
from src.harness.matrix_file import write_matrix_file

J = np.array([[0, 1], [0, 0]], dtype=complex)


@pytest.fixture
def matrices(tmp_path):
    paths = {}
    for name, M in {'J': J, 'zero': np.zeros((2, 2)), 'A3': EXAMPLE_MATRIX,
                    'P': np.diag([1.0, 0.0]), 'I': np.eye(2)}.items():
        paths[name] = str(tmp_path / f"{name}.json")
        write_matrix_file(paths[name], M)
    return paths


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


# ----------------------------------------------------------------------
# list-bounds / worked-example
# ----------------------------------------------------------------------
def test_list_bounds(capsys):
    code, catalogue = run_json(capsys, ['list-bounds', '--json'])
    assert code == 0
    assert len(catalogue) == 26
    assert catalogue['ub_cor28']['target'] == 'w_squared'


def test_worked_example(capsys):
    code, rows = run_json(capsys, ['worked-example', '--json'])
    assert code == 0
    assert rows['w'] == pytest.approx(np.sqrt(5.0) / 2.0, abs=1e-10)
    assert rows['ub_thm25_half'] == pytest.approx(2.25, abs=1e-10)
    assert rows['ub_cor28_min'] == pytest.approx(2.07235, abs=1e-5)
    assert rows['alpha_star'] == pytest.approx(rows['r0'], abs=1e-6)
    assert rows['improvement'] > 0.17


def test_worked_example_alias(capsys):
    code, rows = run_json(capsys, ['paper-example', '--json'])
    assert code == 0
    assert rows['ub_thm25_half'] == pytest.approx(2.25, abs=1e-10)


def test_worked_example_text(capsys):
    assert main(['worked-example']) == 0
    assert '2.25' in capsys.readouterr().out


# ----------------------------------------------------------------------
# eval
# ----------------------------------------------------------------------
def test_eval_shift_matrix(capsys, matrices):
    code, payload = run_json(capsys, ['eval', '--matrix', matrices['J'], '--json'])
    assert code == 0
    assert payload['passed']
    assert payload['n'] == 2
    assert payload['targets']['w'] == pytest.approx(0.5, abs=1e-10)
    values = {row['id']: row['value'] for row in payload['reports']}
    assert values['lb_half_norm'] == pytest.approx(0.5)
    assert values['ub_thm24'] == pytest.approx(0.5, abs=1e-10)
    assert 'comm_ub_thm37' not in values


def test_eval_zero_matrix(capsys, matrices):
    code, payload = run_json(capsys, ['eval', '--matrix', matrices['zero'], '--json'])
    assert code == 0
    assert all(row['value'] == pytest.approx(0.0, abs=1e-12) for row in payload['reports'])


def test_eval_selected_bound(capsys, matrices):
    code, payload = run_json(capsys, ['eval', '--matrix', matrices['A3'],
                                      '--bounds', 'ub_cor28,ub_thm25', '--alpha', '0', '--json'])
    assert code == 0
    reports = {row['id']: row for row in payload['reports']}
    assert reports['ub_cor28']['value'] == pytest.approx(2.07235, abs=1e-5)
    assert reports['ub_thm25']['value'] == pytest.approx(6.25, abs=1e-10)
    assert reports['ub_thm25']['params']['alpha'] == 0.0


def test_eval_with_second_matrix(capsys, matrices):
    code, payload = run_json(capsys, ['eval', '--matrix', matrices['J'],
                                      '--second', matrices['I'], '--r', '2', '--json'])
    assert code == 0
    assert payload['targets']['w_BstarA'] == pytest.approx(0.5, abs=1e-10)
    ids = [row['id'] for row in payload['reports']]
    assert ids.count('comm_ub_thm37') == 2
    assert 'fong_xa_ax' in ids
    fong = next(row for row in payload['reports'] if row['id'] == 'comm_ub_fong')
    assert fong['value'] == pytest.approx(np.sqrt(2.0), abs=1e-10)
    assert fong['target_value'] == pytest.approx(1.0, abs=1e-10)


def test_eval_writes_out_file(tmp_path, matrices):
    out = tmp_path / 'eval' / 'report.json'
    assert main(['eval', '--matrix', matrices['P'], '--out', str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload['targets']['w'] == pytest.approx(1.0)


def test_eval_text_output(capsys, matrices):
    assert main(['eval', '--matrix', matrices['A3']]) == 0
    out = capsys.readouterr().out
    assert 'ub_cor28' in out
    assert 'α*' in out


@pytest.mark.parametrize("extra", [
    ['--bounds', 'no_such_bound'],
    ['--bounds', 'prod_ub_thm33'],
    ['--bounds', 'prod_ub_dragomir', '--second', 'SECOND', '--r', '0.5'],
])
def test_eval_usage_errors(matrices, extra):
    extra = [matrices['I'] if arg == 'SECOND' else arg for arg in extra]
    assert main(['eval', '--matrix', matrices['J']] + extra) == 1


def test_eval_bad_matrix_files(tmp_path):
    assert main(['eval', '--matrix', str(tmp_path / 'missing.json')]) == 1
    broken = tmp_path / 'broken.json'
    broken.write_text(json.dumps({'n': 2, 'entries': [[1, 0]]}))
    assert main(['eval', '--matrix', str(broken)]) == 1


# ----------------------------------------------------------------------
# sweep
# ----------------------------------------------------------------------
def test_theta_sweep_csv(tmp_path, matrices):
    out = tmp_path / 'theta.csv'
    assert main(['sweep', '--matrix', matrices['P'], '--mode', 'theta',
                 '--grid', '4', '--out', str(out)]) == 0
    df = pd.read_csv(out)
    assert list(df.columns) == ['theta', 'lambda_max']
    assert_allclose(df['lambda_max'], [1.0, 0.0, 0.0, 0.0], atol=1e-12)


def test_alpha_sweep_to_stdout(capsys, matrices):
    assert main(['sweep', '--matrix', matrices['A3'], '--mode', 'alpha', '--grid', '3']) == 0
    df = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert list(df.columns) == ['alpha', 'value']
    assert_allclose(df['value'], [6.25, 2.25, 4.5], atol=1e-10)


def test_sweep_rejects_small_grid(matrices):
    assert main(['sweep', '--matrix', matrices['P'], '--mode', 'theta', '--grid', '2']) == 1


# ----------------------------------------------------------------------
# certify
# ----------------------------------------------------------------------
CERTIFY_SMALL = ['certify', '--families', 'nilpotent_square_zero,ginibre', '--sizes', '3',
                 '--count', '2', '--r', '1,2', '--alpha-grid', '17', '--lemma-instances', '1']


def test_certify_output_is_byte_identical(tmp_path):
    first, second, parallel = (tmp_path / name for name in ('a.json', 'b.json', 'c.json'))
    assert main(CERTIFY_SMALL + ['--workers', '1', '--out', str(first)]) == 0
    assert main(CERTIFY_SMALL + ['--workers', '1', '--out', str(second)]) == 0
    assert main(CERTIFY_SMALL + ['--workers', '2', '--out', str(parallel)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert first.read_bytes() == parallel.read_bytes()

    report = json.loads(first.read_text())
    assert report['passed']
    assert report['config']['sizes'] == [3]
    assert 'max_workers' not in report['config']


def test_certify_summary_csv(tmp_path):
    summary = tmp_path / 'summary.csv'
    assert main(CERTIFY_SMALL + ['--workers', '1', '--out', str(tmp_path / 'r.json'),
                                 '--summary-csv', str(summary)]) == 0
    df = pd.read_csv(summary)
    assert list(df.columns) == ['check_id', 'n_checks', 'n_fail', 'worst_slack', 'tau']
    assert df['n_fail'].sum() == 0


def test_certify_self_test_fail_exits_two(tmp_path):
    out = tmp_path / 'fail.json'
    code = main(['certify', '--families', 'normal', '--sizes', '2', '--count', '1',
                 '--lemma-instances', '0', '--workers', '1', '--self-test-fail', '--out', str(out)])
    assert code == 2
    report = json.loads(out.read_text())
    assert not report['passed']
    failed = [rec for rec in report['records'] if not rec['pass']]
    assert [rec['check_id'] for rec in failed] == ['ub_norm']
    assert failed[0]['counterexample']['A']['n'] == 2


def test_certify_zero_count_prints_empty_report(capsys):
    code, report = run_json(capsys, ['certify', '--count', '0', '--workers', '1'])
    assert code == 0
    assert report['records'] == []
    assert report['passed']


def test_certify_unknown_family_exits_one():
    assert main(['certify', '--families', 'triangular', '--count', '1', '--workers', '1']) == 1


def test_certify_missing_config_exits_one(tmp_path):
    assert main(['certify', '--config', str(tmp_path / 'none.json'), '--workers', '1']) == 1


def test_unknown_flag_is_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(['certify', '--bogus'])
    assert excinfo.value.code == 1
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 1


if __name__ == "__main__":
    print("🚀 명령행 도구 테스트 시작")
    sys.exit(pytest.main([__file__, "-v"]))
