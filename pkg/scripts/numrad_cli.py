#!/usr/bin/env python3
"""
수치 반경 한계 툴킷 명령행 도구
사용자 행렬의 한계 평가, α/θ 프로파일 스윕, 인증 실행, 3×3 예제 재현

종료 코드: 0 정상, 1 입출력/파싱/사용법 오류, 2 부등식 위반 또는 내부 일관성 오류
"""
import argparse
import json
import sys
import os
from typing import Any, Dict, List, Optional

import numpy as np

# 상위 디렉토리 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from config import settings
from src.bounds.bound_registry import BOUND_CATALOGUE, BoundCalculator
from src.harness.certification_runner import CertificationRunner
from src.harness.config_manager import ConfigManager
from src.harness.matrix_file import matrix_to_dict, read_matrix_file
from src.matcore.exceptions import (
    ConfigurationError,
    InternalConsistencyError,
    MatrixFileError,
    NumradError,
)
from src.matcore.linalg_kernel import adjoint
from src.matcore.log_utils import set_global_level, setup_logger
from src.numrad.numerical_radius_solver import NumericalRadiusSolver

logger = setup_logger('src.cli')

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

# 3×3 예제 행렬
EXAMPLE_MATRIX = np.array([[0, 1, 0], [0, 0, 2], [0, 0, 0]], dtype=complex)


class CliArgumentParser(argparse.ArgumentParser):
    """사용법 오류를 종료 코드 1 로 보고"""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"❌ {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def fmt(value: float) -> str:
    """유효숫자 12자리"""
    return f"{value:.{settings.FLOAT_DIGITS}g}"


def round_floats(obj: Any) -> Any:
    """JSON 출력용 실수 유효숫자 정리"""
    if isinstance(obj, (float, np.floating)):
        return float(fmt(float(obj)))
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def emit_json(payload: Dict[str, Any], out: Optional[str] = None):
    text = json.dumps(round_floats(payload), indent=2, sort_keys=True, ensure_ascii=False)
    if out:
        write_text(out, text + "\n")
        print(f"💾 저장 완료: {out}")
    else:
        print(text)


def write_text(path: str, text: str):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)


def parse_list(text: Optional[str], cast) -> Optional[List[Any]]:
    if text is None:
        return None
    try:
        return [cast(item.strip()) for item in text.split(',') if item.strip()]
    except ValueError as e:
        raise ConfigurationError(f"목록을 해석할 수 없습니다: {text}") from e


# ----------------------------------------------------------------------
# eval
# ----------------------------------------------------------------------
def cmd_eval(args) -> int:
    """행렬 파일의 한계 평가"""
    A = read_matrix_file(args.matrix)
    B = read_matrix_file(args.second) if args.second else None
    X = read_matrix_file(args.x) if args.x else None
    Y = read_matrix_file(args.y) if args.y else None
    # fong_xa_ax 의 X: --x 가 없으면 두 번째 행렬
    X_aux = X if X is not None else B

    bound_ids = parse_list(args.bounds, str) or [
        bound_id for bound_id, (_, _, _, arity) in BOUND_CATALOGUE.items()
        if arity == 'A' or (arity in ('AB', 'ABXY') and B is not None)
        or (arity == 'AX' and X_aux is not None)
    ]

    calc = BoundCalculator()
    tau = settings.BOUND_TAU
    w_A = calc.w(A)
    targets = {'w': w_A, 'w_squared': w_A ** 2}
    if B is not None:
        targets['w_BstarA'] = calc.w(adjoint(B) @ A)

    rows = []
    for bound_id in bound_ids:
        for report in calc.evaluate(bound_id, A, B=B, X=X_aux if bound_id == 'fong_xa_ax' else X,
                                    Y=Y, r=args.r, alpha=args.alpha):
            target = calc.target_value(report, A, B=B,
                                       X=X_aux if bound_id == 'fong_xa_ax' else X, Y=Y)
            if report.side.value == 'lower':
                slack = target - report.value
            else:
                slack = report.value - target
            passed = slack >= -tau * (1.0 + max(abs(target), abs(report.value)))
            row = report.to_dict()
            row.update({'target_value': target, 'slack': slack, 'pass': bool(passed)})
            rows.append(row)

    violations = [row for row in rows if not row['pass']]
    payload = {'n': int(A.shape[0]), 'targets': targets, 'reports': rows,
               'passed': not violations}

    if args.json or args.out:
        emit_json(payload, args.out)
    else:
        print(f"📐 n = {A.shape[0]}")
        print(f"🎯 w(A) = {fmt(w_A)}, w²(A) = {fmt(w_A ** 2)}")
        if B is not None:
            print(f"🎯 w(B*A) = {fmt(targets['w_BstarA'])}")
        print(f"{'id':<24} {'side':<6} {'target':<16} {'value':>20} {'target value':>20} {'slack':>20}")
        for row in rows:
            mark = '✅' if row['pass'] else '❌'
            print(f"{row['id']:<24} {row['side']:<6} {row['target']:<16} "
                  f"{fmt(row['value']):>20} {fmt(row['target_value']):>20} {fmt(row['slack']):>20} {mark}")
            if row['id'] == 'ub_cor28':
                print(f"    α* = {fmt(row['params']['alpha'])}")

    if violations:
        logger.error(f"부등식 위반 {len(violations)}건: {[row['id'] for row in violations]}")
        return EXIT_VIOLATION
    return EXIT_OK


# ----------------------------------------------------------------------
# sweep
# ----------------------------------------------------------------------
def cmd_sweep(args) -> int:
    """α 또는 θ 프로파일 CSV"""
    A = read_matrix_file(args.matrix)
    if args.mode == 'alpha':
        df = BoundCalculator().alpha_profile(A, args.grid)
    else:
        df = NumericalRadiusSolver().profile(A, args.grid)

    float_format = f"%.{settings.FLOAT_DIGITS}g"
    if args.out:
        try:
            directory = os.path.dirname(args.out)
            if directory:
                os.makedirs(directory, exist_ok=True)
            df.to_csv(args.out, index=False, float_format=float_format)
        except OSError as e:
            print(f"❌ 출력 파일을 쓸 수 없습니다: {str(e)}", file=sys.stderr)
            return EXIT_USAGE
        print(f"💾 {args.mode} 프로파일 저장 완료: {args.out} ({len(df)}행)")
    else:
        sys.stdout.write(df.to_csv(index=False, float_format=float_format))
    return EXIT_OK


# ----------------------------------------------------------------------
# certify
# ----------------------------------------------------------------------
def cmd_certify(args) -> int:
    """인증 실행"""
    overrides = {
        'families': parse_list(args.families, str),
        'sizes': parse_list(args.sizes, int),
        'count': args.count,
        'seed': args.seed,
        'r_values': parse_list(args.r, float),
        'alpha_grid': args.alpha_grid,
        'lemma_instances': args.lemma_instances,
    }
    cert_config = ConfigManager().certification_config(overrides, config_file=args.config)

    runner = CertificationRunner(cert_config, max_workers=args.workers,
                                 self_test_fail=args.self_test_fail)
    try:
        report = runner.run()
    except InternalConsistencyError as e:
        payload = {
            'error': str(e),
            'counterexample': {name: matrix_to_dict(M) for name, M in sorted(e.matrices.items())},
        }
        emit_json(payload, args.out)
        return EXIT_VIOLATION

    text = json.dumps(round_floats(report.to_dict()), indent=2, sort_keys=True, ensure_ascii=False)
    if args.out:
        write_text(args.out, text + "\n")
        print(f"💾 인증 보고서 저장 완료: {args.out}")
        status = '✅ 통과' if report.passed else '❌ 실패'
        print(f"🏥 인증 결과: {status} (검증 {len(report.records)}건, 실패 {len(report.failures)}건)")
    else:
        print(text)

    if args.summary_csv:
        report.summary().to_csv(args.summary_csv, index=False,
                                float_format=f"%.{settings.FLOAT_DIGITS}g")

    return EXIT_OK if report.passed else EXIT_VIOLATION


# ----------------------------------------------------------------------
# worked-example
# ----------------------------------------------------------------------
def cmd_worked_example(args) -> int:
    """3×3 예제: α = ½ 값과 α 최소화 값 비교"""
    A = EXAMPLE_MATRIX
    calc = BoundCalculator()
    w_A = calc.w(A)
    half = calc.ub_thm25(A, 0.5).value
    curve = calc.ub_cor28(A)
    r0 = float(np.log((1.0 + np.sqrt(65.0)) / 2.0) / np.log(16.0))

    rows = {
        'w': w_A,
        'w_squared': w_A ** 2,
        'ub_thm25_half': half,
        'ub_cor28_min': curve.min_value,
        'alpha_star': curve.argmin,
        'r0': r0,
        'improvement': half - curve.min_value,
    }
    if args.json:
        emit_json(rows)
    else:
        print("📊 A = [[0,1,0],[0,0,2],[0,0,0]]")
        print(f"  w(A)                     = {fmt(rows['w'])}")
        print(f"  w²(A)                    = {fmt(rows['w_squared'])}")
        print(f"  α = ½ 상한               = {fmt(rows['ub_thm25_half'])}")
        print(f"  α 최소화 상한            = {fmt(rows['ub_cor28_min'])}")
        print(f"  α*                       = {fmt(rows['alpha_star'])}")
        print(f"  r₀ (16^r₀ = (1+√65)/2)   = {fmt(rows['r0'])}")
        print(f"  개선: {fmt(rows['ub_cor28_min'])} < {fmt(rows['ub_thm25_half'])} "
              f"(차이 {fmt(rows['improvement'])})")
    return EXIT_OK if curve.min_value < half else EXIT_VIOLATION


# ----------------------------------------------------------------------
# list-bounds
# ----------------------------------------------------------------------
def cmd_list_bounds(args) -> int:
    """한계 목록"""
    catalogue = BoundCalculator.catalogue()
    if args.json:
        emit_json(catalogue)
    else:
        print(f"📋 한계 {len(catalogue)}개")
        for bound_id, entry in catalogue.items():
            print(f"  {bound_id:<24} {entry['side']:<6} {entry['target']:<16} {entry['anchor']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = CliArgumentParser(description="수치 반경 한계 툴킷")
    parser.add_argument('--verbose', action='store_true', help='INFO 로그 출력')
    subparsers = parser.add_subparsers(dest='command', required=True)

    p_eval = subparsers.add_parser('eval', help='행렬 파일의 한계 평가')
    p_eval.add_argument('--matrix', required=True, help='MatrixFile JSON')
    p_eval.add_argument('--second', help='두 번째 행렬 B (곱/교환자 한계)')
    p_eval.add_argument('--x', help='일반화 교환자 X (기본: 단위행렬)')
    p_eval.add_argument('--y', help='일반화 교환자 Y (기본: 단위행렬)')
    p_eval.add_argument('--bounds', help='평가할 한계 id (쉼표 구분)')
    p_eval.add_argument('--r', type=float, default=1.0, help='곱 한계 지수 r ≥ 1 (기본: 1)')
    p_eval.add_argument('--alpha', type=float, default=0.5, help='ub_thm25 의 α (기본: 0.5)')
    p_eval.add_argument('--json', action='store_true', help='JSON 출력')
    p_eval.add_argument('--out', help='JSON 저장 경로')
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = subparsers.add_parser('sweep', help='α/θ 프로파일 CSV')
    p_sweep.add_argument('--matrix', required=True, help='MatrixFile JSON')
    p_sweep.add_argument('--mode', choices=['alpha', 'theta'], required=True)
    p_sweep.add_argument('--grid', type=int, default=1000, help='격자 점 수 (기본: 1000)')
    p_sweep.add_argument('--out', help='CSV 저장 경로 (없으면 표준출력)')
    p_sweep.set_defaults(func=cmd_sweep)

    p_cert = subparsers.add_parser('certify', help='부등식 인증 실행')
    p_cert.add_argument('--config', help='인증 설정 JSON (기본: config/default_config.json)')
    p_cert.add_argument('--families', help='행렬 계열 (쉼표 구분)')
    p_cert.add_argument('--sizes', help='행렬 크기 (쉼표 구분)')
    p_cert.add_argument('--count', type=int, help='계열·크기별 행렬 수')
    p_cert.add_argument('--seed', type=int, help='말뭉치 시드')
    p_cert.add_argument('--r', help='r 값 목록 (쉼표 구분)')
    p_cert.add_argument('--alpha-grid', type=int, help='α 격자 크기')
    p_cert.add_argument('--lemma-instances', type=int, help='보조정리별 인스턴스 수')
    p_cert.add_argument('--workers', type=int, help='프로세스 수 (1 = 순차)')
    p_cert.add_argument('--out', help='CertReport JSON 저장 경로 (없으면 표준출력)')
    p_cert.add_argument('--summary-csv', help='요약표 CSV 저장 경로')
    p_cert.add_argument('--self-test-fail', action='store_true',
                        help='ub_norm 을 1 낮춰 실패 경로 점검 (종료 코드 2)')
    p_cert.set_defaults(func=cmd_certify)

    p_example = subparsers.add_parser('worked-example', aliases=['paper-example'], help='3×3 예제 재현')
    p_example.add_argument('--json', action='store_true', help='JSON 출력')
    p_example.set_defaults(func=cmd_worked_example)

    p_list = subparsers.add_parser('list-bounds', help='한계 목록')
    p_list.add_argument('--json', action='store_true', help='JSON 출력')
    p_list.set_defaults(func=cmd_list_bounds)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """메인 실행 함수"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        set_global_level('INFO')

    try:
        return args.func(args)
    except (MatrixFileError, ConfigurationError) as e:
        print(f"❌ {str(e)}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"❌ 입출력 오류: {str(e)}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as e:
        print(f"🚨 내부 일관성 오류: {str(e)}", file=sys.stderr)
        return EXIT_VIOLATION
    except NumradError as e:
        print(f"❌ 계산 오류: {str(e)}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
