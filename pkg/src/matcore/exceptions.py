"""
수치 반경 툴킷 예외 계층
라이브러리 계층은 예외를 발생시키고, CLI/인증 드라이버가 종료 코드로 변환한다
"""
from typing import Dict, Optional

import numpy as np


class NumradError(Exception):
    """툴킷 기본 예외"""


class MatrixShapeError(NumradError, ValueError):
    """정방행렬이 아니거나 차원이 맞지 않음"""


class NonFiniteMatrixError(NumradError, ValueError):
    """NaN/Inf 성분 포함"""


class NotHermitianError(NumradError, ValueError):
    """대칭화 허용 범위를 넘는 비에르미트 입력"""


class NotPositiveSemidefiniteError(NumradError, ValueError):
    """허용 범위 아래의 음의 고유값"""


class ConvergenceError(NumradError, np.linalg.LinAlgError):
    """고유값 분해 / SVD 수렴 실패"""


class MatrixFileError(NumradError, ValueError):
    """MatrixFile JSON 파싱 및 검증 오류"""


class ConfigurationError(NumradError, ValueError):
    """알 수 없는 행렬 족, 잘못된 격자 크기, 잘못된 플래그 조합"""


class InternalConsistencyError(NumradError):
    """정리로 보장되는 양이 불가능한 값을 가짐 (구현 버그 신호)

    Args:
        message: 오류 설명
        matrices: 문제를 일으킨 행렬들 {이름: 행렬}
    """

    def __init__(self, message: str, matrices: Optional[Dict[str, np.ndarray]] = None):
        super().__init__(message)
        self.matrices = matrices or {}

    def __reduce__(self):
        # 프로세스 경계를 넘을 때 행렬 보존
        return (self.__class__, (str(self), self.matrices))
