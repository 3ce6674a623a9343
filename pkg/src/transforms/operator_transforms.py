"""
작용소 분해 및 변환
Cartesian 분해, 핵 조건을 만족하는 극분해, Aluthge 변환
"""
from dataclasses import dataclass
from typing import Any

import numpy as np
import sys
import os

# 상위 디렉토리 경로 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from config import settings
from src.matcore.linalg_kernel import (
    CMatrix,
    SpectralCalculus,
    adjoint,
    as_cmatrix,
    svd,
)
from src.matcore.log_utils import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class CartesianParts:
    """A = re + i·im (둘 다 에르미트)"""
    re: CMatrix
    im: CMatrix

    def rotated(self, sign: int = 1) -> CMatrix:
        """ℜ(A) ± ℑ(A)"""
        return self.re + sign * self.im


@dataclass(frozen=True)
class PolarParts:
    """A = U|A|, ker U = ker A"""
    u: CMatrix
    modulus: CMatrix
    rank: int


def cartesian(A: Any) -> CartesianParts:
    """
    Cartesian 분해 ℜ(A) = (A+A*)/2, ℑ(A) = (A−A*)/(2i)

    Args:
        A: 복소 정방행렬

    Returns:
        CartesianParts
    """
    A = as_cmatrix(A)
    Ah = adjoint(A)
    return CartesianParts(re=0.5 * (A + Ah), im=(A - Ah) / 2j)


def rank_cutoff(singular_values: np.ndarray) -> float:
    """σᵢ ≤ 1e-10·(1+σ_max) 은 0 으로 취급"""
    sigma_max = float(singular_values[0]) if singular_values.size else 0.0
    return settings.RANK_CUTOFF * (1.0 + sigma_max)


def polar(A: Any) -> PolarParts:
    """
    극분해 A = U|A|

    SVD A = W Σ V* 에서 절단값보다 큰 특이 방향만으로 U = W_r V_r* 를 만든다.
    U 는 부분 등거리이고 U*U 는 range(|A|) 위로의 사영이다.

    Args:
        A: 복소 정방행렬

    Returns:
        PolarParts (u, modulus = |A|, rank)
    """
    A = as_cmatrix(A)
    dec = svd(A)
    s = dec.singular_values
    keep = s > rank_cutoff(s)
    W = dec.left[:, keep]
    V = dec.right[:, keep]

    u = W @ V.conj().T
    modulus = (V * s[keep]) @ V.conj().T
    rank = int(np.count_nonzero(keep))
    if rank < A.shape[0]:
        logger.debug(f"랭크 결손 극분해: rank={rank}/{A.shape[0]}")
    return PolarParts(u=u, modulus=modulus, rank=rank)


def modulus(A: Any) -> CMatrix:
    """|A| = (A*A)^{1/2} (SVD 기반)"""
    return polar(A).modulus


def modulus_calculus(A: Any) -> SpectralCalculus:
    """|A| 의 함수 계산 객체 (|A|^p 반복 평가용)"""
    return SpectralCalculus(modulus(A))


def aluthge(A: Any) -> CMatrix:
    """
    Aluthge 변환 Ã = |A|^{1/2} U |A|^{1/2}

    가역성을 가정하는 공식 없이 극분해에서 직접 계산한다.
    """
    parts = polar(A)
    root = SpectralCalculus(parts.modulus).power(0.5)
    return root @ parts.u @ root
