#!/usr/bin/env python3
"""
인증 하네스 테스트
행렬 계열 생성기, 보조정리 검증기, 인증 실행기/보고서, 설정 관리자, MatrixFile 입출력
"""
import sys
import os
import json
import pickle

import numpy as np
import pytest
from numpy.testing import assert_allclose

sys.path.append(os.path.dirname(__file__))

from src.harness.cert_report import CertReport, make_record
from src.harness.certification_runner import CertificationRunner, run_certification
from src.harness.config_manager import ConfigManager
from src.harness.lemma_verifier import (
    run_lemma_suite,
    verify_buzano,
    verify_convex_norm_lemma,
    verify_heinz,
    verify_polarization,
    verify_power_lemma,
    verify_scalar_lemma,
)
from src.harness.matrix_file import (
    matrix_from_dict,
    matrix_to_dict,
    read_matrix_file,
    write_matrix_file,
)
from src.harness.matrix_generator import GenSpec, MatrixFamily, auxiliary_matrices, generate
from src.matcore.exceptions import ConfigurationError, InternalConsistencyError, MatrixFileError

J = np.array([[0, 1], [0, 0]], dtype=complex)


def small_config(**overrides):
    config = {
        'families': ['nilpotent_square_zero'],
        'sizes': [4],
        'count': 3,
        'seed': 20220401,
        'r_values': [1.0, 2.0],
        'alpha_grid': 17,
        'bound_tau': 1e-8,
        'identity_tau': 1e-10,
        'lemma_instances': 2,
    }
    config.update(overrides)
    return config


# ----------------------------------------------------------------------
# 행렬 생성기
# ----------------------------------------------------------------------
@pytest.mark.parametrize("family", list(MatrixFamily))
def test_generated_matrices_have_requested_shape(family):
    matrices = generate(GenSpec(family, 4, seed=7, count=3))
    assert len(matrices) == 3
    assert all(M.shape == (4, 4) for M in matrices)


def test_family_invariants():
    n = 5
    for M in generate(GenSpec('hermitian', n, 1, 4)):
        assert_allclose(M, M.conj().T, atol=1e-14)
    for M in generate(GenSpec('unitary', n, 1, 4)):
        assert_allclose(M.conj().T @ M, np.eye(n), atol=1e-12)
    for M in generate(GenSpec('normal', n, 1, 4)):
        assert_allclose(M.conj().T @ M, M @ M.conj().T, atol=1e-10)
    for M in generate(GenSpec('nilpotent_square_zero', n, 1, 4)):
        assert_allclose(M @ M, np.zeros((n, n)), atol=0.0)
    for M in generate(GenSpec('rank_deficient', n, 1, 4)):
        assert np.linalg.matrix_rank(M) < n


def test_generation_is_deterministic_per_instance():
    first = generate(GenSpec('ginibre', 3, 42, 5))
    again = generate(GenSpec('ginibre', 3, 42, 2))
    assert_allclose(first[:2], again, atol=0.0)
    other = generate(GenSpec('ginibre', 3, 43, 1))
    assert not np.allclose(first[0], other[0])


def test_auxiliary_matrices_are_independent_streams():
    aux = auxiliary_matrices(1, MatrixFamily.GINIBRE, 3, 0)
    assert set(aux) == {'B', 'X', 'Y'}
    assert not np.allclose(aux['B'], aux['X'])
    assert not np.allclose(aux['B'], generate(GenSpec('ginibre', 3, 1, 1))[0])


def test_generator_rejects_bad_specs():
    with pytest.raises(ConfigurationError):
        GenSpec('triangular', 3, 0, 1)
    with pytest.raises(ConfigurationError):
        GenSpec('ginibre', 0, 0, 1)
    with pytest.raises(ConfigurationError):
        GenSpec('ginibre', 3, 0, -1)
    assert generate(GenSpec('rank_deficient', 1, 0, 1))[0].shape == (1, 1)


# ----------------------------------------------------------------------
# 보조정리
# ----------------------------------------------------------------------
def test_polarization_residual_is_roundoff():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    y = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    scale = np.linalg.norm(A, 2) * (np.linalg.norm(x) + np.linalg.norm(y)) ** 2
    assert verify_polarization(A, x, y) <= 1e-12 * (1.0 + scale)


def test_lemma_examples():
    x = np.array([1.0, 1.0]) / np.sqrt(2.0)
    assert verify_power_lemma(np.diag([0.0, 2.0]), x, 2.0) == pytest.approx(1.0, abs=1e-12)
    assert verify_convex_norm_lemma(np.diag([2.0, 0.0]), np.diag([0.0, 2.0]), 2.0) == \
        pytest.approx(1.0, abs=1e-12)
    assert verify_scalar_lemma(1.0, 0.0) == pytest.approx(np.sqrt(2.0) - 1.0, abs=1e-15)
    assert verify_scalar_lemma(1.0, 1.0) == pytest.approx(0.0, abs=1e-15)
    e = np.array([1.0, 0.0])
    assert verify_buzano([1.0, 0.0], [1.0, 0.0], e) == pytest.approx(0.0, abs=1e-15)
    assert verify_heinz(J, x, x, 0.5) >= -1e-12


def test_lemma_errors():
    with pytest.raises(ConfigurationError):
        verify_buzano([1.0, 0.0], [0.0, 1.0], [1.0, 1.0])
    with pytest.raises(ConfigurationError):
        verify_power_lemma(np.eye(2), [1.0, 0.0], 0.5)
    with pytest.raises(ConfigurationError):
        verify_heinz(J, [1.0, 0.0], [1.0, 0.0], 2.0)


def test_small_lemma_suite_passes():
    records = run_lemma_suite(seed=11, instances=5, sizes=[2, 4])
    assert len(records) == 6 * 2 * 5
    assert all(rec.passed for rec in records)
    assert {rec.family for rec in records} == {'lemma'}


@pytest.mark.slow
def test_large_lemma_suite_passes():
    records = run_lemma_suite(seed=20220401, instances=10_000, sizes=[6])
    assert all(rec.passed for rec in records)


# ----------------------------------------------------------------------
# 인증 레코드 / 보고서
# ----------------------------------------------------------------------
def test_make_record_tolerance_and_counterexample():
    ok = make_record('x', 1.0 + 1e-10, 1.0, 1e-8, matrices={'A': J})
    assert ok.passed
    assert ok.counterexample is None
    bad = make_record('x', 2.0, 1.0, 1e-8, matrices={'A': J})
    assert not bad.passed
    assert bad.slack == pytest.approx(-1.0)
    assert bad.counterexample['A']['n'] == 2
    assert bad.to_dict()['pass'] is False


def test_empty_report_summary():
    report = CertReport(suite_id='s', config={})
    assert report.passed
    assert list(report.summary().columns) == ['check_id', 'n_checks', 'n_fail', 'worst_slack', 'tau']


# ----------------------------------------------------------------------
# 인증 실행기
# ----------------------------------------------------------------------
def test_nilpotent_certification_passes_with_sharp_cases():
    report = run_certification(small_config(), max_workers=1)
    assert report.passed, [rec.to_dict() for rec in report.failures]
    ids = {rec.check_id for rec in report.records}
    assert 'sharp_square_zero_half_norm' in ids
    assert 'implies_half_norm_balance' in ids
    assert 'chain_d_thm33_le_dragomir_doubled' in ids
    assert 'lemma_polarization' in ids
    assert report.suite_id == 'numrad-certification-20220401'

    keys = [rec.sort_key() for rec in report.records]
    assert keys == sorted(keys)

    summary = report.summary()
    assert summary['n_fail'].sum() == 0
    assert set(summary['check_id']) == ids


def test_normal_family_certification_passes():
    report = run_certification(small_config(families=['normal', 'ginibre'], sizes=[5],
                                            count=1, lemma_instances=0), max_workers=1)
    assert report.passed, [rec.to_dict() for rec in report.failures]
    sharp = [rec for rec in report.records if rec.check_id == 'sharp_normal_norm']
    assert len(sharp) == 1
    assert sharp[0].family == 'normal'


def test_zero_count_yields_empty_passing_report():
    report = run_certification(small_config(count=0), max_workers=1)
    assert report.records == []
    assert report.passed
    assert json.loads(report.to_json())['n_checks'] == 0


def test_certification_is_deterministic_across_workers():
    config = small_config(families=['ginibre', 'rank_deficient'], sizes=[3], count=2,
                          lemma_instances=1)
    sequential = run_certification(config, max_workers=1).to_json()
    again = run_certification(config, max_workers=1).to_json()
    parallel = run_certification(config, max_workers=2).to_json()
    assert sequential == again
    assert sequential == parallel


def test_report_config_excludes_workers():
    runner = CertificationRunner(small_config(max_workers=4), max_workers=1)
    assert 'max_workers' not in runner.report_config()
    assert runner.max_workers == 1
    assert len(runner.tasks()) == 3


def test_self_test_failure_attaches_counterexample():
    report = run_certification(small_config(families=['normal'], sizes=[3], count=2,
                                            lemma_instances=0),
                               max_workers=1, self_test_fail=True)
    assert not report.passed
    failures = report.failures
    assert {rec.check_id for rec in failures} == {'ub_norm'}
    assert len(failures) == 2
    for rec in failures:
        assert rec.slack == pytest.approx(-1.0, abs=1e-8)
        matrix = matrix_from_dict(rec.counterexample['A'])
        assert matrix.shape == (3, 3)


def test_internal_consistency_error_survives_pickling():
    err = InternalConsistencyError("bad", {'A': J})
    restored = pickle.loads(pickle.dumps(err))
    assert str(restored) == "bad"
    assert_allclose(restored.matrices['A'], J)


@pytest.mark.slow
def test_default_certification_passes():
    config = ConfigManager().certification_config()
    report = run_certification(config)
    assert report.passed, [rec.to_dict() for rec in report.failures[:5]]
    assert report.config['count'] == 17


# ----------------------------------------------------------------------
# 설정 관리자
# ----------------------------------------------------------------------
def test_default_config_loads_and_validates():
    manager = ConfigManager()
    cert = manager.certification_config()
    assert cert['seed'] == 20220401
    assert cert['sizes'] == [2, 3, 4, 5, 6]
    assert manager.validate_config(cert)['valid']
    # 계산기 기본값은 settings.py 한 곳에서만 온다
    assert set(manager.load_config()) == {'toolkit', 'certification'}


def test_config_overrides_and_user_file(tmp_path):
    (tmp_path / 'default_config.json').write_text(json.dumps({'certification': small_config()}))
    manager = ConfigManager(str(tmp_path))

    cert = manager.certification_config({'count': 5, 'seed': None})
    assert cert['count'] == 5
    assert cert['seed'] == 20220401

    assert manager.set_config_value('certification.count', 9)
    assert manager.get_config_value('certification.count') == 9
    assert manager.get_config_value('certification.missing', 'x') == 'x'


def test_config_validation_errors(tmp_path):
    manager = ConfigManager(str(tmp_path))
    with pytest.raises(ConfigurationError):
        manager.load_config()
    bad = tmp_path / 'bad.json'
    bad.write_text('{not json')
    with pytest.raises(ConfigurationError):
        manager.load_config(bad)

    result = manager.validate_config(small_config(families=['triangular'], r_values=[0.5],
                                                  alpha_grid=4))
    assert not result['valid']
    assert len(result['issues']) == 3


# ----------------------------------------------------------------------
# MatrixFile
# ----------------------------------------------------------------------
def test_matrix_file_round_trip(tmp_path):
    A = np.array([[1 + 2j, -0.5], [0.0, 3j]])
    path = tmp_path / 'a.json'
    write_matrix_file(path, A)
    assert_allclose(read_matrix_file(path), A, atol=0.0)
    assert matrix_to_dict(A)['entries'][0] == [1.0, 2.0]


@pytest.mark.parametrize("payload", [
    {'entries': [[1, 0]]},
    {'n': 2, 'entries': [[1, 0]]},
    {'n': 1, 'entries': [[1, 0, 0]]},
    {'n': 1, 'entries': [["1", 0]]},
    {'n': 1, 'entries': [[float('nan'), 0]]},
    {'n': 0, 'entries': []},
    [1, 2],
])
def test_matrix_file_validation(payload):
    with pytest.raises(MatrixFileError):
        matrix_from_dict(payload)


def test_matrix_file_read_errors(tmp_path):
    with pytest.raises(MatrixFileError):
        read_matrix_file(tmp_path / 'missing.json')
    broken = tmp_path / 'broken.json'
    broken.write_text('[')
    with pytest.raises(MatrixFileError):
        read_matrix_file(broken)


if __name__ == "__main__":
    print("🚀 인증 하네스 테스트 시작")
    sys.exit(pytest.main([__file__, "-v"]))
