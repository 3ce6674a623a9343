"""
인증용 행렬 말뭉치 생성기
계열별 난수 행렬 (Ginibre, 정규, 에르미트, 제곱 영, 랭크 결손, 유니터리)

난수열: numpy PCG64, 시드는 SeedSequence([seed, 계열 번호, n, 인덱스, 스트림]).
각 인스턴스가 독립적으로 재생성되므로 병렬 실행 순서와 무관하게 결정적이다.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List

import numpy as np
import sys
import os

# 상위 디렉토리 경로 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from src.matcore.exceptions import ConfigurationError
from src.matcore.linalg_kernel import CMatrix


class MatrixFamily(Enum):
    """행렬 계열"""
    GINIBRE = "ginibre"
    NORMAL = "normal"
    HERMITIAN = "hermitian"
    NILPOTENT_SQUARE_ZERO = "nilpotent_square_zero"
    RANK_DEFICIENT = "rank_deficient"
    UNITARY = "unitary"

    @classmethod
    def parse(cls, name: str) -> "MatrixFamily":
        try:
            return cls(name)
        except ValueError:
            raise ConfigurationError(f"알 수 없는 행렬 계열: {name}") from None

    @property
    def index(self) -> int:
        return list(MatrixFamily).index(self)


# 보조 행렬 스트림 번호
PRIMARY_STREAM = 0
AUX_STREAMS = {'B': 1, 'X': 2, 'Y': 3}


@dataclass(frozen=True)
class GenSpec:
    """생성 명세"""
    family: MatrixFamily
    n: int
    seed: int
    count: int

    def __post_init__(self):
        if isinstance(self.family, str):
            object.__setattr__(self, 'family', MatrixFamily.parse(self.family))
        if self.n < 1:
            raise ConfigurationError(f"n 은 1 이상이어야 합니다: {self.n}")
        if self.count < 0:
            raise ConfigurationError(f"count 는 0 이상이어야 합니다: {self.count}")


def instance_rng(seed: int, family: MatrixFamily, n: int, index: int,
                 stream: int = PRIMARY_STREAM) -> np.random.Generator:
    """인스턴스별 독립 난수 생성기"""
    return np.random.default_rng(np.random.SeedSequence([seed, family.index, n, index, stream]))


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> CMatrix:
    """실수부/허수부 독립 표준정규"""
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def haar_unitary(rng: np.random.Generator, n: int) -> CMatrix:
    """QR 분해 + 대각 위상 보정"""
    Q, R = np.linalg.qr(complex_gaussian(rng, n, n))
    d = np.diag(R)
    phases = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return Q * phases


def sample_family(family: MatrixFamily, n: int, rng: np.random.Generator) -> CMatrix:
    """
    계열 하나에서 n×n 행렬 한 개 추출

    Args:
        family: 행렬 계열
        n: 차원
        rng: 난수 생성기

    Returns:
        복소 행렬
    """
    if family == MatrixFamily.GINIBRE:
        return complex_gaussian(rng, n, n)

    if family == MatrixFamily.NORMAL:
        Q = haar_unitary(rng, n)
        eigenvalues = complex_gaussian(rng, n, 1)[:, 0]
        return (Q * eigenvalues) @ Q.conj().T

    if family == MatrixFamily.HERMITIAN:
        G = complex_gaussian(rng, n, n)
        return 0.5 * (G + G.conj().T)

    if family == MatrixFamily.NILPOTENT_SQUARE_ZERO:
        # [[0, M], [0, 0]] 블록 형태, A² = 0 이 정확히 성립
        A = np.zeros((n, n), dtype=complex)
        k = n // 2
        if k > 0:
            A[:k, k:] = complex_gaussian(rng, k, n - k)
        return A

    if family == MatrixFamily.RANK_DEFICIENT:
        if n == 1:
            return np.zeros((1, 1), dtype=complex)
        rank = int(rng.integers(1, n))
        return complex_gaussian(rng, n, rank) @ complex_gaussian(rng, rank, n)

    if family == MatrixFamily.UNITARY:
        return haar_unitary(rng, n)

    raise ConfigurationError(f"알 수 없는 행렬 계열: {family}")


def generate(spec: GenSpec) -> List[CMatrix]:
    """
    명세에 따라 행렬 목록 생성

    Args:
        spec: GenSpec (family, n, seed, count)

    Returns:
        count 개의 행렬 (시드에 대해 결정적)
    """
    return [
        sample_family(spec.family, spec.n, instance_rng(spec.seed, spec.family, spec.n, index))
        for index in range(spec.count)
    ]


def auxiliary_matrices(seed: int, family: MatrixFamily, n: int, index: int) -> Dict[str, CMatrix]:
    """곱/교환자 검증용 보조 행렬 B, X, Y (Ginibre, 인스턴스별 독립 스트림)"""
    return {
        name: complex_gaussian(instance_rng(seed, family, n, index, stream), n, n)
        for name, stream in AUX_STREAMS.items()
    }
