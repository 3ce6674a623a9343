"""
α ∈ [0,1] 최소화기
거친 격자 + 최적 구간 황금분할 정밀화 (구간별로만 매끄러운 목적함수용, 도함수 미사용)
"""
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
import pandas as pd
import sys
import os

# 상위 디렉토리 경로 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from config import settings
from src.matcore.exceptions import ConfigurationError
from src.matcore.log_utils import setup_logger

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass
class AlphaCurve:
    """α 곡선: 샘플 (alpha, value), 최소점 α*, 최솟값"""
    samples: pd.DataFrame
    argmin: float
    min_value: float

    def to_dict(self) -> dict:
        return {
            'argmin': self.argmin,
            'min_value': self.min_value,
            'samples': self.samples.to_dict(orient='list'),
        }


class AlphaMinimizer:
    """[0,1] 위 1차원 최소화 - 격자 스캔 후 황금분할"""

    def __init__(self, grid_size: int = None, refine_width: float = None):
        """
        Args:
            grid_size: α 격자 점 수 (기본: 257, 최소 16)
            refine_width: 황금분할 종료 폭 (기본: 1e-10)
        """
        self.grid_size = int(grid_size or settings.ALPHA_GRID)
        self.refine_width = float(refine_width or settings.ALPHA_REFINE_WIDTH)
        self.logger = self._setup_logger()

        if self.grid_size < 16:
            raise ConfigurationError(f"α 격자는 16점 이상이어야 합니다: {self.grid_size}")

    def _setup_logger(self):
        """로거 설정"""
        return setup_logger(__name__)

    def minimize(self, objective: Callable[[float], float]) -> AlphaCurve:
        """
        objective 를 [0,1] 에서 최소화

        α = ½ 은 격자 크기와 무관하게 항상 샘플에 포함된다.

        Args:
            objective: α ↦ 값

        Returns:
            AlphaCurve
        """
        alphas = np.linspace(0.0, 1.0, self.grid_size)
        if not np.any(np.isclose(alphas, 0.5, rtol=0.0, atol=1e-15)):
            alphas = np.sort(np.append(alphas, 0.5))
        values = np.array([objective(float(a)) for a in alphas])

        k = int(np.argmin(values))
        best = (float(values[k]), float(alphas[k]))

        left = alphas[max(k - 1, 0)]
        right = alphas[min(k + 1, alphas.size - 1)]
        refined = self._golden_section_min(objective, float(left), float(right))
        if refined[0] < best[0]:
            best = refined

        self.logger.debug(f"α 최소화 완료: α*={best[1]:.10f}, min={best[0]:.12g}")
        samples = pd.DataFrame({'alpha': alphas, 'value': values})
        return AlphaCurve(samples=samples, argmin=best[1], min_value=best[0])

    def _golden_section_min(self, f: Callable[[float], float], a: float, b: float) -> Tuple[float, float]:
        """[a, b] 황금분할 최소화, 평가한 최저점 (값, α) 반환"""
        u = a + GOLDEN * (b - a)
        l = a + (1.0 - GOLDEN) * (b - a)
        f_u = f(u)
        f_l = f(l)
        best = min((f_u, u), (f_l, l))

        while b - a > self.refine_width:
            if f_u < f_l:
                a, l, f_l = l, u, f_u
                u = a + GOLDEN * (b - a)
                f_u = f(u)
                best = min(best, (f_u, u))
            else:
                b, u, f_u = u, l, f_l
                l = a + (1.0 - GOLDEN) * (b - a)
                f_l = f(l)
                best = min(best, (f_l, l))

        return best
