"""
부등식 인증 실행기
행렬 계열 × 크기 × 개수의 말뭉치에서 모든 한계, 순서 사슬, 등호 조건,
Aluthge 성질, 보조정리를 검증해 CertReport 로 모은다
"""
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any, Dict, List, Optional

import numpy as np
import sys
import os

# 상위 디렉토리 경로 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from config import settings
from src.bounds.bound_registry import BoundCalculator, BoundReport
from src.harness.cert_report import CertReport, CheckRecord, make_record
from src.harness.lemma_verifier import run_lemma_suite
from src.harness.matrix_generator import (
    MatrixFamily,
    auxiliary_matrices,
    instance_rng,
    sample_family,
)
from src.matcore.exceptions import InternalConsistencyError
from src.matcore.linalg_kernel import CMatrix, adjoint, op_norm
from src.matcore.log_utils import setup_logger
from src.transforms.operator_transforms import aluthge

SQRT2 = np.sqrt(2.0)

# w(A) = ‖A‖ 가 성립해야 하는 정규 계열
NORMAL_FAMILIES = {MatrixFamily.NORMAL, MatrixFamily.HERMITIAN, MatrixFamily.UNITARY}


class InstanceCertifier:
    """행렬 인스턴스 하나에 대한 검증 레코드 수집기"""

    def __init__(self, family: str, n: int, seed_index: int, tau: float,
                 matrices: Dict[str, CMatrix]):
        self.family = family
        self.n = n
        self.seed_index = seed_index
        self.tau = tau
        self.matrices = matrices
        self.records: List[CheckRecord] = []

    def check(self, check_id: str, lhs: float, rhs: float, tau: float = None,
              scale: float = None, params: Optional[Dict[str, Any]] = None,
              names: str = 'A') -> CheckRecord:
        """lhs ≤ rhs 기록"""
        rec = make_record(check_id, lhs, rhs, tau or self.tau,
                          family=self.family, n=self.n, seed_index=self.seed_index,
                          scale=scale, params=params,
                          matrices={k: self.matrices[k] for k in names})
        self.records.append(rec)
        return rec

    def bound(self, report: BoundReport, target: float, offset: float = 0.0,
              params: Optional[Dict[str, Any]] = None, names: str = 'A') -> CheckRecord:
        """한계 보고서를 목표값과 비교 (하한: value ≤ target, 상한: target ≤ value)"""
        value = report.value + offset
        merged = dict(report.params)
        merged.pop('expression', None)
        merged.update(params or {})
        if report.side.value == 'lower':
            return self.check(report.id, value, target, params=merged, names=names)
        return self.check(report.id, target, value, params=merged, names=names)


def certify_instance(family: str, n: int, seed: int, index: int,
                     r_values: List[float], alpha_grid: int, bound_tau: float,
                     self_test_fail: bool = False) -> List[CheckRecord]:
    """
    행렬 하나 (와 보조 행렬 B, X, Y) 에 대한 전체 검증

    Args:
        family: 행렬 계열 이름
        n: 차원
        seed: 말뭉치 시드
        index: 인스턴스 번호
        r_values: 곱 한계의 r 목록
        alpha_grid: α 최소화 격자 크기
        bound_tau: 상대 허용오차
        self_test_fail: ub_norm 을 1 만큼 낮춰 실패를 강제 (자가 점검)

    Returns:
        CheckRecord 목록

    Raises:
        InternalConsistencyError: 이론상 불가능한 값 (행렬 첨부)
    """
    fam = MatrixFamily.parse(family)
    A = sample_family(fam, n, instance_rng(seed, fam, n, index))
    aux = auxiliary_matrices(seed, fam, n, index)
    B, X, Y = aux['B'], aux['X'], aux['Y']

    calc = BoundCalculator(alpha_grid=alpha_grid, radicand_tau=bound_tau)
    cert = InstanceCertifier(family, n, index, bound_tau, {'A': A, 'B': B, 'X': X, 'Y': Y})

    W = calc.w(A)
    W2 = W ** 2
    norm_A = op_norm(A)
    cn = calc.cartesian_norms(A)

    # --- w(A) 한계 ---
    half = calc.lb_half_norm(A)
    norm = calc.ub_norm(A)
    k_sq = calc.ub_kittaneh_sq(A)
    yam = calc.ub_yamazaki(A)
    t21 = calc.lb_thm21(A)
    rot = calc.lb_rotated_max(A)
    pk1 = calc.lb_pk1(A)
    t24 = calc.ub_thm24(A)
    for report in (half, k_sq, yam, t21, rot, pk1, t24):
        cert.bound(report, W)
    cert.bound(norm, W, offset=-1.0 if self_test_fail else 0.0)

    # --- w²(A) 한계 ---
    k_lo, k_hi = calc.kittaneh_pair(A)
    t22 = calc.lb_thm22_sq(A)
    rot_sq = calc.lb_rotated_max_sq(A)
    pk2 = calc.lb_pk2_sq(A)
    heinz = calc.ub_heinz_half(A)
    for report in (k_lo, k_hi, t22, rot_sq, pk2, heinz):
        cert.bound(report, W2)

    curve = calc.ub_cor28(A, grid=alpha_grid)
    samples = curve.samples
    worst = int(np.argmin(samples['value'].to_numpy()))
    cert.check('ub_thm25', W2, float(samples['value'].iloc[worst]),
               params={'alpha': float(samples['alpha'].iloc[worst]), 'samples': int(len(samples))})
    cert.check('ub_cor28', W2, curve.min_value, params={'alpha': curve.argmin})

    # --- 순서 사슬 ---
    cert.check('chain_a_thm24_le_yamazaki', t24.value, yam.value)
    cert.check('chain_a_yamazaki_le_kittaneh_sq', yam.value, k_sq.value)
    cert.check('chain_b_cor28_le_heinz_half', curve.min_value, heinz.value)
    cert.check('chain_f_thm21_ge_half_norm', half.value, t21.value)
    cert.check('chain_f_thm22_sq_ge_kittaneh_lower', k_lo.value, t22.value)
    cert.check('chain_rotated_max_ge_thm21', t21.value, rot.value)
    cert.check('chain_rotated_max_sq_ge_thm22_sq', t22.value, rot_sq.value)
    cert.check('chain_heinz_half_le_kittaneh_upper', heinz.value, k_hi.value)

    # --- Aluthge 성질 ---
    A_tilde = aluthge(A)
    cert.check('aluthge_norm', op_norm(A_tilde), norm_A)
    cert.check('aluthge_w', calc.w(A_tilde), W)

    # --- 등호 사례 ---
    if fam == MatrixFamily.NILPOTENT_SQUARE_ZERO:
        cert.check('sharp_square_zero_half_norm', abs(W - norm_A / 2.0), 0.0, scale=norm_A)
    if fam in NORMAL_FAMILIES:
        cert.check('sharp_normal_norm', abs(W - norm_A), 0.0, scale=norm_A)

    # 등호 필요조건 (정방향 함의만)
    if W - norm_A / 2.0 <= bound_tau * (1.0 + norm_A):
        cert.check('implies_half_norm_balance', abs(cn['plus'] - cn['minus']), 0.0,
                   tau=4.0 * bound_tau, scale=norm_A)
    if W2 - k_lo.value <= bound_tau * (1.0 + W2):
        cert.check('implies_kittaneh_lower_balance', abs(cn['plus'] ** 2 - cn['minus'] ** 2), 0.0,
                   tau=8.0 * bound_tau, scale=W2)

    # --- 곱 B*A ---
    W_BA = calc.w(adjoint(B) @ A)
    for r in r_values:
        drag = calc.prod_ub_dragomir(A, B, r)
        heyd = calc.prod_ub_heydarbeygi(A, B, r)
        t33 = calc.prod_ub_thm33(A, B, r)
        t35 = calc.prod_ub_thm35(A, B, r)
        target_r = W_BA ** r
        target_2r = W_BA ** (2.0 * r)
        cert.check('prod_ub_dragomir', target_r, drag.value, params={'r': r}, names='AB')
        cert.check('prod_ub_dragomir_doubled', target_2r, drag.params['doubled_exponent_value'],
                   params={'r': r}, names='AB')
        for report in (heyd, t33, t35):
            cert.bound(report, target_2r, names='AB')
        cert.check('chain_c_thm35_le_heydarbeygi', t35.value, heyd.value, params={'r': r}, names='AB')
        cert.check('chain_d_thm33_le_dragomir_doubled', t33.value,
                   drag.params['doubled_exponent_value'], params={'r': r}, names='AB')

    # --- 일반화 교환자 ---
    fong = calc.comm_ub_fong(A, B)
    cert.bound(fong, calc.w(A @ B + B @ A), names='AB')
    for sign in (1, -1):
        W_gen = calc.w(A @ X @ B + sign * (B @ Y @ A))
        t37 = calc.comm_ub_thm37(A, B, X, Y, sign)
        kform = calc.comm_ub_kittaneh_form(A, B, X, Y, sign)
        cert.bound(t37, W_gen, names='ABXY')
        cert.bound(kform, W_gen, names='ABXY')
        cert.check('chain_thm37_ge_kittaneh_form', kform.value, t37.value,
                   params={'sign': sign}, names='ABXY')

        W_comm = calc.w(A @ B + sign * (B @ A))
        c38 = calc.comm_ub_cor38(A, B, sign)
        hirz = calc.comm_ub_hirzallah(A, B, sign)
        cert.bound(c38, W_comm, names='AB')
        cert.bound(hirz, W_comm, names='AB')
        cert.check('chain_e_cor38_le_fong', c38.value, fong.value, params={'sign': sign}, names='AB')

        # w(AB+BA) = 2√2‖B‖w(A) 이면 ℜ±ℑ 노름 균형
        norm_B = op_norm(B)
        gap = fong.value - W_comm
        if sign == 1 and norm_B > 0 and gap <= bound_tau * (1.0 + fong.value):
            s = max(W - gap / (2.0 * SQRT2 * norm_B), 0.0)
            cert.check('implies_fong_balance', 0.25 * abs(cn['plus'] ** 2 - cn['minus'] ** 2),
                       W2 - s ** 2, scale=W2, names='AB')

    cert.bound(calc.fong_xa_ax(A, X), calc.w(adjoint(A) @ X + X @ A), names='AX')

    return cert.records


class CertificationRunner:
    """인증 실행기 - 인스턴스별 병렬 검증 후 정렬 집계"""

    def __init__(self, config: Dict[str, Any], max_workers: int = None,
                 self_test_fail: bool = False):
        """
        Args:
            config: certification 설정 (families, sizes, count, seed, r_values, ...)
            max_workers: 프로세스 수 (1 이면 현재 프로세스에서 순차 실행)
            self_test_fail: 실패 강제 자가 점검
        """
        self.config = dict(config)
        self.max_workers = int(max_workers or config.get('max_workers') or settings.MAX_WORKERS)
        self.self_test_fail = bool(self_test_fail)
        self.logger = self._setup_logger()

        self.families = [MatrixFamily.parse(f).value for f in self.config.get('families', [])]
        self.sizes = [int(n) for n in self.config.get('sizes', [])]
        self.count = int(self.config.get('count', 0))
        self.seed = int(self.config.get('seed', 0))
        self.r_values = [float(r) for r in self.config.get('r_values', settings.R_VALUES)]
        self.alpha_grid = int(self.config.get('alpha_grid', 33))
        self.bound_tau = float(self.config.get('bound_tau', settings.BOUND_TAU))
        self.identity_tau = float(self.config.get('identity_tau', settings.IDENTITY_TAU))
        self.lemma_instances = int(self.config.get('lemma_instances', 0))

    def _setup_logger(self):
        """로거 설정"""
        return setup_logger(__name__)

    def report_config(self) -> Dict[str, Any]:
        """보고서에 기록하는 설정 (실행 환경에 무관한 항목만)"""
        return {
            'families': self.families,
            'sizes': self.sizes,
            'count': self.count,
            'seed': self.seed,
            'r_values': self.r_values,
            'alpha_grid': self.alpha_grid,
            'bound_tau': self.bound_tau,
            'identity_tau': self.identity_tau,
            'lemma_instances': self.lemma_instances,
            'self_test_fail': self.self_test_fail,
        }

    def tasks(self) -> List[Dict[str, Any]]:
        return [
            {'family': family, 'n': n, 'index': index}
            for family in self.families
            for n in self.sizes
            for index in range(self.count)
        ]

    def _task_args(self, task: Dict[str, Any]):
        return (task['family'], task['n'], self.seed, task['index'],
                self.r_values, self.alpha_grid, self.bound_tau, self.self_test_fail)

    def run(self) -> CertReport:
        """
        인증 실행

        Returns:
            CertReport (check id, 계열, n, 인스턴스 번호 순 정렬)

        Raises:
            InternalConsistencyError: 인스턴스 검증 중 불가능한 값 발생
        """
        tasks = self.tasks()
        self.logger.info(f"인증 시작: 인스턴스 {len(tasks)}개, 프로세스 {self.max_workers}개")

        records: List[CheckRecord] = []
        if self.max_workers <= 1 or len(tasks) <= 1:
            for done, task in enumerate(tasks, 1):
                records += self._run_task(task)
                self._log_progress(done, len(tasks))
        else:
            records += self._run_parallel(tasks)

        if tasks and self.lemma_instances > 0:
            records += run_lemma_suite(self.seed, self.lemma_instances, self.sizes,
                                       tau_identity=self.identity_tau)

        records.sort(key=CheckRecord.sort_key)
        report = CertReport(suite_id=f"numrad-certification-{self.seed}",
                            config=self.report_config(), records=records)

        if report.passed:
            self.logger.info(f"인증 통과: 검증 {len(records)}건")
        else:
            self.logger.warning(f"인증 실패: {len(report.failures)}/{len(records)}건")
        return report

    def _run_task(self, task: Dict[str, Any]) -> List[CheckRecord]:
        try:
            return certify_instance(*self._task_args(task))
        except InternalConsistencyError as e:
            self.logger.error(f"내부 일관성 오류 ({task}): {str(e)}")
            raise

    def _run_parallel(self, tasks: List[Dict[str, Any]]) -> List[CheckRecord]:
        """병렬 실행 (완료 순서와 무관하게 결과는 이후 정렬)"""
        records: List[CheckRecord] = []
        with ProcessPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_task = {
                executor.submit(certify_instance, *self._task_args(task)): task
                for task in tasks
            }

            for done, future in enumerate(as_completed(future_to_task), 1):
                task = future_to_task[future]
                try:
                    records += future.result()
                except InternalConsistencyError as e:
                    self.logger.error(f"내부 일관성 오류 ({task}): {str(e)}")
                    for pending in future_to_task:
                        pending.cancel()
                    raise
                self._log_progress(done, len(tasks))

        return records

    def _log_progress(self, done: int, total: int):
        step = max(total // 10, 1)
        if done % step == 0 or done == total:
            self.logger.info(f"진행률: {done / total * 100:.1f}% ({done}/{total})")


def run_certification(config: Dict[str, Any], max_workers: int = None,
                      self_test_fail: bool = False) -> CertReport:
    """인증 실행 (CertificationRunner 편의 함수)"""
    return CertificationRunner(config, max_workers, self_test_fail).run()
