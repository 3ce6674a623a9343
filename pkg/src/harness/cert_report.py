"""
인증 결과 레코드와 보고서
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd
import sys
import os

# 상위 디렉토리 경로 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from src.harness.matrix_file import matrix_to_dict


@dataclass
class CheckRecord:
    """
    검증 한 건: lhs ≤ rhs 형태

    slack = rhs − lhs, 허용오차 tau_abs = tau·(1 + scale).
    통과 ⇔ slack ≥ −tau_abs
    """
    check_id: str
    family: str
    n: int
    seed_index: int
    lhs: float
    rhs: float
    slack: float
    tau: float
    tau_abs: float
    passed: bool
    params: Dict[str, Any] = field(default_factory=dict)
    counterexample: Optional[Dict[str, Any]] = None

    def sort_key(self):
        return (self.check_id, self.family, self.n, self.seed_index,
                json.dumps(self.params, sort_keys=True))

    def to_dict(self) -> Dict[str, Any]:
        record = {
            'check_id': self.check_id,
            'family': self.family,
            'n': self.n,
            'seed_index': self.seed_index,
            'lhs': float(self.lhs),
            'rhs': float(self.rhs),
            'slack': float(self.slack),
            'tau': float(self.tau),
            'tau_abs': float(self.tau_abs),
            'pass': bool(self.passed),
            'params': self.params,
        }
        if self.counterexample is not None:
            record['counterexample'] = self.counterexample
        return record


def make_record(check_id: str, lhs: float, rhs: float, tau: float,
                family: str = '', n: int = 0, seed_index: int = 0,
                scale: Optional[float] = None,
                params: Optional[Dict[str, Any]] = None,
                matrices: Optional[Dict[str, Any]] = None) -> CheckRecord:
    """
    lhs ≤ rhs 검증 레코드 생성

    Args:
        scale: 상대 허용오차 배율 (기본: max(|lhs|, |rhs|))
        matrices: 실패 시 반례로 첨부할 행렬
    """
    lhs = float(lhs)
    rhs = float(rhs)
    if scale is None:
        scale = max(abs(lhs), abs(rhs))
    slack = rhs - lhs
    tau_abs = tau * (1.0 + float(scale))
    passed = bool(slack >= -tau_abs)

    counterexample = None
    if not passed and matrices:
        counterexample = {name: matrix_to_dict(M) for name, M in sorted(matrices.items())}

    return CheckRecord(check_id=check_id, family=family, n=int(n), seed_index=int(seed_index),
                       lhs=lhs, rhs=rhs, slack=slack, tau=float(tau), tau_abs=tau_abs,
                       passed=passed, params=dict(params or {}), counterexample=counterexample)


@dataclass
class CertReport:
    """인증 실행 결과"""
    suite_id: str
    config: Dict[str, Any]
    records: List[CheckRecord] = field(default_factory=list)

    @property
    def failures(self) -> List[CheckRecord]:
        return [rec for rec in self.records if not rec.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def worst_slack(self) -> Dict[str, float]:
        """검증 id 별 최소 slack"""
        worst: Dict[str, float] = {}
        for rec in self.records:
            if rec.check_id not in worst or rec.slack < worst[rec.check_id]:
                worst[rec.check_id] = rec.slack
        return dict(sorted(worst.items()))

    def summary(self) -> pd.DataFrame:
        """검증 id 별 요약표 (check_id, n_checks, n_fail, worst_slack, tau)"""
        columns = ['check_id', 'n_checks', 'n_fail', 'worst_slack', 'tau']
        if not self.records:
            return pd.DataFrame(columns=columns)

        df = pd.DataFrame([{
            'check_id': rec.check_id,
            'fail': int(not rec.passed),
            'slack': rec.slack,
            'tau': rec.tau,
        } for rec in self.records])
        summary = df.groupby('check_id', sort=True).agg(
            n_checks=('slack', 'size'),
            n_fail=('fail', 'sum'),
            worst_slack=('slack', 'min'),
            tau=('tau', 'max'),
        ).reset_index()
        return summary[columns]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite_id': self.suite_id,
            'config': self.config,
            'passed': self.passed,
            'n_checks': len(self.records),
            'n_fail': len(self.failures),
            'worst_slack': self.worst_slack(),
            'records': [rec.to_dict() for rec in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)
