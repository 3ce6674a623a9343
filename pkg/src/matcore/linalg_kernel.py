"""
복소 정방행렬 선형대수 커널
에르미트 고유분해, SVD, 작용소 노름, 양의 준정부호 행렬의 분수 거듭제곱
"""
from dataclasses import dataclass
from typing import Any

import numpy as np
import scipy.linalg
import sys
import os

# 상위 디렉토리 경로 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from config import settings
from src.matcore.exceptions import (
    ConfigurationError,
    ConvergenceError,
    MatrixShapeError,
    NonFiniteMatrixError,
    NotHermitianError,
    NotPositiveSemidefiniteError,
)
from src.matcore.log_utils import setup_logger

# CMatrix: complex128 (n, n) ndarray
CMatrix = np.ndarray

logger = setup_logger(__name__)


@dataclass(frozen=True)
class HermEig:
    """에르미트 고유분해 결과 (고유값 내림차순)"""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[-1])

    def reconstruct(self) -> CMatrix:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


@dataclass(frozen=True)
class Svd:
    """특이값 분해 A = W Σ V* (특이값 내림차순)"""
    singular_values: np.ndarray
    left: np.ndarray
    right: np.ndarray

    @property
    def sigma_max(self) -> float:
        return float(self.singular_values[0]) if self.singular_values.size else 0.0

    def reconstruct(self) -> CMatrix:
        return (self.left * self.singular_values) @ self.right.conj().T


def as_cmatrix(A: Any) -> CMatrix:
    """입력을 검증된 복소 정방행렬로 변환

    Raises:
        MatrixShapeError: 2차원 정방행렬이 아님
        NonFiniteMatrixError: NaN/Inf 포함
    """
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise MatrixShapeError(f"정방행렬이 아닙니다: shape={M.shape}")
    if not np.all(np.isfinite(M)):
        raise NonFiniteMatrixError("행렬에 NaN 또는 Inf 성분이 있습니다")
    return M


def adjoint(A: CMatrix) -> CMatrix:
    """켤레 전치 A*"""
    return np.asarray(A).conj().T


def eps_equal(A: CMatrix, B: CMatrix, eps: float) -> bool:
    """최대 성분 차이 ≤ eps 이면 ε-같음"""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        return False
    return bool(np.max(np.abs(A - B), initial=0.0) <= eps)


def herm_eig(H: Any) -> HermEig:
    """
    에르미트 행렬 고유분해

    (H+H*)/2 로 대칭화한 뒤 분해한다. 비대칭 정도가 1e-8·(1+‖H‖) 를 넘으면
    조용히 고치지 않고 오류를 낸다.

    Args:
        H: 에르미트 행렬 (허용오차 이내)

    Returns:
        HermEig (고유값 내림차순, 정규직교 고유벡터)
    """
    H = as_cmatrix(H)
    scale = 1.0 + np.linalg.norm(H, 2)
    asym = np.max(np.abs(H - H.conj().T))
    if asym > settings.HERMITIAN_TOL * scale:
        raise NotHermitianError(f"에르미트 행렬이 아닙니다: ‖H−H*‖_max={asym:.3e}")
    if asym > 0:
        logger.debug(f"대칭화 적용: ‖H−H*‖_max={asym:.3e}")
    Hs = 0.5 * (H + H.conj().T)

    try:
        w, V = scipy.linalg.eigh(Hs, driver='evd')
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceError(f"에르미트 고유분해 수렴 실패: {str(e)}") from e

    # 오름차순 → 내림차순
    return HermEig(eigenvalues=w[::-1].copy(), eigenvectors=V[:, ::-1].copy())


def svd(A: Any) -> Svd:
    """
    특이값 분해. gesdd 가 수렴하지 않으면 gesvd 로 재시도한다.

    Args:
        A: 복소 정방행렬

    Returns:
        Svd (left, right 는 정규직교 열)
    """
    A = as_cmatrix(A)
    for driver in ('gesdd', 'gesvd'):
        try:
            W, s, Vh = scipy.linalg.svd(A, lapack_driver=driver)
            return Svd(singular_values=s, left=W, right=Vh.conj().T)
        except (scipy.linalg.LinAlgError, ValueError) as e:
            logger.warning(f"SVD 드라이버 {driver} 실패: {str(e)}")
    raise ConvergenceError("SVD 수렴 실패 (gesdd, gesvd)")


def op_norm(A: Any) -> float:
    """작용소 노름 (최대 특이값)"""
    A = as_cmatrix(A)
    try:
        s = scipy.linalg.svdvals(A)
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceError(f"특이값 계산 실패: {str(e)}") from e
    return float(s[0])


class SpectralCalculus:
    """
    양의 준정부호 행렬의 함수 계산 M^p = V diag(λᵢᵖ) V*

    한 번 분해한 뒤 여러 지수를 평가한다 (α 스윕에서 재사용).
    0⁰ := 0 규약: M⁰ 은 range(M) 위로의 직교사영.
    εₚ = 1e-10·(1+‖M‖) 이하의 고유값은 정확히 0 으로 취급한다.
    """

    def __init__(self, M: Any):
        self.eig = herm_eig(M)
        lam = self.eig.eigenvalues
        norm = float(np.max(np.abs(lam))) if lam.size else 0.0
        self.psd_eps = settings.PSD_TOL * (1.0 + norm)

        if lam.size and lam[-1] < -self.psd_eps:
            raise NotPositiveSemidefiniteError(
                f"양의 준정부호가 아닙니다: λ_min={lam[-1]:.3e} < −{self.psd_eps:.3e}"
            )

        # 허용 범위 안의 작은 고유값은 0
        self.eigenvalues = np.where(lam > self.psd_eps, lam, 0.0)
        self.support = self.eigenvalues > 0.0

    def power(self, p: float) -> CMatrix:
        """M^p (p ≥ 0)"""
        if p < 0:
            raise ConfigurationError(f"지수는 0 이상이어야 합니다: p={p}")
        V = self.eig.eigenvectors
        lam_p = np.zeros_like(self.eigenvalues)
        lam_p[self.support] = self.eigenvalues[self.support] ** p
        return (V * lam_p) @ V.conj().T

    def range_projection(self) -> CMatrix:
        return self.power(0.0)


def psd_power(M: Any, p: float) -> CMatrix:
    """
    양의 준정부호 행렬의 분수 거듭제곱

    Args:
        M: PSD 행렬 (허용오차 이내)
        p: 지수 (≥ 0). p = 0 이면 range(M) 사영

    Returns:
        M^p
    """
    return SpectralCalculus(M).power(p)


def psd_sqrt(M: Any) -> CMatrix:
    """PSD 제곱근 M^{1/2}"""
    return psd_power(M, 0.5)
