"""
MatrixFile JSON 입출력
형식: {"n": int, "entries": [[re, im], ...]} (행 우선, 길이 n²)
"""
import json
import math
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import sys
import os

# 상위 디렉토리 경로 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from src.matcore.exceptions import MatrixFileError, NumradError
from src.matcore.linalg_kernel import CMatrix, as_cmatrix


def matrix_to_dict(A: Any) -> Dict[str, Any]:
    """행렬 → MatrixFile 딕셔너리"""
    A = as_cmatrix(A)
    return {
        'n': int(A.shape[0]),
        'entries': [[float(z.real), float(z.imag)] for z in A.ravel()],
    }


def matrix_from_dict(data: Any) -> CMatrix:
    """
    MatrixFile 딕셔너리 → 행렬

    Raises:
        MatrixFileError: 필드 누락, 길이 불일치, 유한하지 않은 값
    """
    if not isinstance(data, dict) or 'n' not in data or 'entries' not in data:
        raise MatrixFileError("MatrixFile 은 'n' 과 'entries' 필드를 가져야 합니다")

    n = data['n']
    entries = data['entries']
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFileError(f"n 은 1 이상의 정수여야 합니다: {n!r}")
    if not isinstance(entries, list) or len(entries) != n * n:
        length = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise MatrixFileError(f"entries 길이가 n²={n * n} 와 다릅니다: {length}")

    values = []
    for k, pair in enumerate(entries):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)):
            raise MatrixFileError(f"entries[{k}] 는 [re, im] 실수 쌍이어야 합니다: {pair!r}")
        if not all(math.isfinite(v) for v in pair):
            raise MatrixFileError(f"entries[{k}] 에 유한하지 않은 값이 있습니다: {pair!r}")
        values.append(complex(pair[0], pair[1]))

    return np.array(values, dtype=complex).reshape(n, n)


def read_matrix_file(path: Union[str, Path]) -> CMatrix:
    """MatrixFile 읽기"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except OSError as e:
        raise MatrixFileError(f"행렬 파일을 읽을 수 없습니다 ({path}): {str(e)}") from e
    except json.JSONDecodeError as e:
        raise MatrixFileError(f"행렬 파일 JSON 파싱 오류 ({path}): {str(e)}") from e
    return matrix_from_dict(data)


def write_matrix_file(path: Union[str, Path], A: Any) -> None:
    """MatrixFile 쓰기"""
    try:
        payload = matrix_to_dict(A)
    except NumradError as e:
        raise MatrixFileError(f"행렬을 직렬화할 수 없습니다: {str(e)}") from e
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(payload, f, indent=2)
    except OSError as e:
        raise MatrixFileError(f"행렬 파일을 쓸 수 없습니다 ({path}): {str(e)}") from e
