"""
벡터 수준 보조정리 검증기
편극 항등식, Heinz, Buzano, 거듭제곱, 스칼라, 볼록 노름 부등식의 여유(slack) 계산
"""
from typing import Any, List

import numpy as np
import sys
import os

# 상위 디렉토리 경로 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from config import settings
from src.harness.cert_report import CheckRecord, make_record
from src.matcore.exceptions import ConfigurationError, MatrixShapeError
from src.matcore.linalg_kernel import SpectralCalculus, adjoint, as_cmatrix, op_norm
from src.matcore.log_utils import setup_logger
from src.transforms.operator_transforms import modulus_calculus

logger = setup_logger(__name__)

SQRT2 = np.sqrt(2.0)
UNIT_TOL = 1e-12


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    """⟨u, v⟩ (첫 인자 선형, 둘째 인자 켤레선형)"""
    return complex(np.vdot(v, u))


def _vector(x: Any, n: int, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=complex).ravel()
    if x.size != n:
        raise MatrixShapeError(f"{name} 의 차원 {x.size} 이 행렬 차원 {n} 과 다릅니다")
    return x


def _check_unit(x: np.ndarray, name: str):
    if abs(np.linalg.norm(x) - 1.0) > UNIT_TOL:
        raise ConfigurationError(f"{name} 는 단위벡터여야 합니다: ‖{name}‖={np.linalg.norm(x):.3e}")


def verify_polarization(A: Any, x: Any, y: Any) -> float:
    """
    편극 항등식 잔차
    |⟨Ax,y⟩ − ¼[⟨A(x+y),x+y⟩ − ⟨A(x−y),x−y⟩] − (i/4)[⟨A(x+iy),x+iy⟩ − ⟨A(x−iy),x−iy⟩]|

    Returns:
        잔차 (≥ 0)
    """
    A = as_cmatrix(A)
    n = A.shape[0]
    x = _vector(x, n, 'x')
    y = _vector(y, n, 'y')

    def q(v):
        return inner(A @ v, v)

    rhs = 0.25 * (q(x + y) - q(x - y)) + 0.25j * (q(x + 1j * y) - q(x - 1j * y))
    return float(abs(inner(A @ x, y) - rhs))


def verify_heinz(A: Any, x: Any, y: Any, alpha: float) -> float:
    """
    Heinz 부등식 여유 ⟨|A|^{2α}x,x⟩⟨|A*|^{2(1−α)}y,y⟩ − |⟨Ax,y⟩|²
    (α ∈ {0, 1} 에서는 0⁰ = 사영 규약)
    """
    if not 0.0 <= alpha <= 1.0:
        raise ConfigurationError(f"α 는 [0,1] 이어야 합니다: {alpha}")
    A = as_cmatrix(A)
    n = A.shape[0]
    x = _vector(x, n, 'x')
    y = _vector(y, n, 'y')

    P = modulus_calculus(A).power(2.0 * alpha)
    Q = modulus_calculus(adjoint(A)).power(2.0 * (1.0 - alpha))
    rhs = inner(P @ x, x).real * inner(Q @ y, y).real
    return float(rhs - abs(inner(A @ x, y)) ** 2)


def verify_buzano(a: Any, b: Any, e: Any) -> float:
    """Buzano 부등식 여유 ½(|⟨a,b⟩| + ‖a‖‖b‖) − |⟨a,e⟩⟨e,b⟩| (‖e‖ = 1)"""
    a = np.asarray(a, dtype=complex).ravel()
    b = _vector(b, a.size, 'b')
    e = _vector(e, a.size, 'e')
    _check_unit(e, 'e')
    rhs = 0.5 * (abs(inner(a, b)) + np.linalg.norm(a) * np.linalg.norm(b))
    return float(rhs - abs(inner(a, e) * inner(e, b)))


def verify_power_lemma(A: Any, x: Any, r: float) -> float:
    """거듭제곱 부등식 여유 ⟨A^r x,x⟩ − ⟨Ax,x⟩^r (A ≥ 0, ‖x‖ = 1, r ≥ 1)"""
    if r < 1.0:
        raise ConfigurationError(f"r 은 1 이상이어야 합니다: {r}")
    calc = SpectralCalculus(A)
    x = _vector(x, calc.eigenvalues.size, 'x')
    _check_unit(x, 'x')
    base = max(inner(calc.power(1.0) @ x, x).real, 0.0)
    return float(inner(calc.power(r) @ x, x).real - base ** r)


def verify_scalar_lemma(a: float, b: float) -> float:
    """스칼라 부등식 여유 √2|a+ib| − |a+b|"""
    return float(SQRT2 * np.hypot(a, b) - abs(a + b))


def verify_convex_norm_lemma(A: Any, B: Any, r: float) -> float:
    """볼록 노름 부등식 여유 ‖(A^r+B^r)/2‖ − ‖((A+B)/2)^r‖ (A, B ≥ 0, f(t)=t^r)"""
    if r < 1.0:
        raise ConfigurationError(f"r 은 1 이상이어야 합니다: {r}")
    A = as_cmatrix(A)
    B = as_cmatrix(B)
    if A.shape != B.shape:
        raise MatrixShapeError(f"행렬 크기가 다릅니다: {A.shape} vs {B.shape}")
    mean_power = SpectralCalculus(0.5 * (A + B)).power(r)
    power_mean = 0.5 * (SpectralCalculus(A).power(r) + SpectralCalculus(B).power(r))
    return float(op_norm(power_mean) - op_norm(mean_power))


# ----------------------------------------------------------------------
# 난수 보조정리 묶음
# ----------------------------------------------------------------------
def _gaussian(rng: np.random.Generator, *shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _unit(rng: np.random.Generator, n: int) -> np.ndarray:
    v = _gaussian(rng, n)
    return v / np.linalg.norm(v)


def _psd(rng: np.random.Generator, n: int) -> np.ndarray:
    """G G* (가끔 랭크 결손)"""
    k = int(rng.integers(1, n + 1))
    G = _gaussian(rng, n, k)
    return G @ G.conj().T


LEMMA_IDS = ['polarization', 'heinz', 'buzano', 'power_lemma', 'scalar_lemma', 'convex_norm_lemma']


def _lemma_instance(lemma_id: str, rng: np.random.Generator, n: int,
                    tau_identity: float, tau_polarization: float) -> CheckRecord:
    """보조정리 하나의 난수 인스턴스 검증"""
    if lemma_id == 'polarization':
        A = _gaussian(rng, n, n)
        x = _gaussian(rng, n)
        y = _gaussian(rng, n)
        residual = verify_polarization(A, x, y)
        scale = op_norm(A) * (np.linalg.norm(x) + np.linalg.norm(y)) ** 2
        return make_record('lemma_polarization', residual, 0.0, tau_polarization, scale=scale)

    if lemma_id == 'heinz':
        A = _gaussian(rng, n, n)
        alpha = float(rng.choice([0.0, 1.0, rng.uniform()]))
        slack = verify_heinz(A, _unit(rng, n), _unit(rng, n), alpha)
        return make_record('lemma_heinz', 0.0, slack, tau_identity,
                           scale=op_norm(A) ** 2, params={'alpha': alpha})

    if lemma_id == 'buzano':
        a = _gaussian(rng, n)
        b = _gaussian(rng, n)
        slack = verify_buzano(a, b, _unit(rng, n))
        return make_record('lemma_buzano', 0.0, slack, tau_identity,
                           scale=np.linalg.norm(a) * np.linalg.norm(b))

    if lemma_id == 'power_lemma':
        A = _psd(rng, n)
        r = float(rng.uniform(1.0, 4.0))
        slack = verify_power_lemma(A, _unit(rng, n), r)
        return make_record('lemma_power', 0.0, slack, tau_identity,
                           scale=op_norm(A) ** r, params={'r': r})

    if lemma_id == 'scalar_lemma':
        a, b = rng.standard_normal(2)
        slack = verify_scalar_lemma(float(a), float(b))
        return make_record('lemma_scalar', 0.0, slack, tau_identity, scale=abs(a) + abs(b))

    if lemma_id == 'convex_norm_lemma':
        A = _psd(rng, n)
        B = _psd(rng, n)
        r = float(rng.uniform(1.0, 4.0))
        slack = verify_convex_norm_lemma(A, B, r)
        return make_record('lemma_convex_norm', 0.0, slack, tau_identity,
                           scale=max(op_norm(A), op_norm(B)) ** r, params={'r': r})

    raise ConfigurationError(f"알 수 없는 보조정리: {lemma_id}")


def run_lemma_suite(seed: int, instances: int, sizes: List[int],
                    tau_identity: float = None, tau_polarization: float = None) -> List[CheckRecord]:
    """
    모든 보조정리에 대해 난수 인스턴스 검증

    Args:
        seed: 기준 시드
        instances: 보조정리·크기별 인스턴스 수
        sizes: 벡터 차원 목록
        tau_identity: 부등식 허용오차 (기본: 1e-10)
        tau_polarization: 편극 항등식 허용오차 (기본: 1e-12)

    Returns:
        CheckRecord 목록 (family='lemma')
    """
    tau_identity = tau_identity or settings.IDENTITY_TAU
    tau_polarization = tau_polarization or settings.POLARIZATION_TAU

    records: List[CheckRecord] = []
    for lemma_index, lemma_id in enumerate(LEMMA_IDS):
        for n in sizes:
            for index in range(instances):
                rng = np.random.default_rng(np.random.SeedSequence([seed, 1000 + lemma_index, n, index]))
                rec = _lemma_instance(lemma_id, rng, n, tau_identity, tau_polarization)
                rec.family = 'lemma'
                rec.n = n
                rec.seed_index = index
                records.append(rec)

    n_fail = sum(not rec.passed for rec in records)
    logger.info(f"보조정리 검증 완료: {len(records)}건, 실패 {n_fail}건")
    return records

