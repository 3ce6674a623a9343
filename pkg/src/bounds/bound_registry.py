"""
수치 반경 상/하한 계산기
고전적 비교 한계, Cartesian 분해 기반 하한, Aluthge/Heinz 기반 상한,
곱 B*A 및 일반화 교환자 AXB ± BYA 에 대한 상한을 BoundReport 로 평가
"""
from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
import sys
import os

# 상위 디렉토리 경로 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from config import settings
from src.bounds.alpha_minimizer import AlphaCurve, AlphaMinimizer
from src.matcore.exceptions import ConfigurationError, InternalConsistencyError
from src.matcore.linalg_kernel import CMatrix, adjoint, as_cmatrix, op_norm
from src.matcore.log_utils import setup_logger
from src.numrad.numerical_radius_solver import NumericalRadiusSolver
from src.transforms.operator_transforms import aluthge, cartesian, modulus, modulus_calculus

SQRT2 = np.sqrt(2.0)


class BoundSide(Enum):
    """한계 방향"""
    LOWER = "lower"
    UPPER = "upper"


class BoundTarget(Enum):
    """한계가 겨냥하는 양"""
    W = "w"                                  # w(A)
    W_SQUARED = "w_squared"                  # w²(A)
    W_POWER_R = "w_power_r"                  # w^r(B*A)
    W_POWER_2R = "w_power_2r"                # w^{2r}(B*A)
    W_OF_EXPRESSION = "w_of_expression"      # w(AXB ± BYA) 등 식의 수치 반경


@dataclass
class BoundReport:
    """평가된 한계 하나"""
    id: str
    side: BoundSide
    target: BoundTarget
    value: float
    params: Dict[str, Any] = field(default_factory=dict)
    anchor: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'side': self.side.value,
            'target': self.target.value,
            'value': float(self.value),
            'params': {k: (float(v) if isinstance(v, (float, np.floating)) else v)
                       for k, v in self.params.items()},
            'anchor': self.anchor,
        }


# id → (side, target, anchor, arity)
# arity: 'A' 단일 행렬, 'AB' 두 행렬, 'ABXY' 네 행렬, 'AX' 보조 행렬
BOUND_CATALOGUE: "OrderedDict[str, Tuple[BoundSide, BoundTarget, str, str]]" = OrderedDict([
    ('lb_half_norm', (BoundSide.LOWER, BoundTarget.W, "w(A) ≥ ‖A‖/2", 'A')),
    ('ub_norm', (BoundSide.UPPER, BoundTarget.W, "w(A) ≤ ‖A‖", 'A')),
    ('lb_kittaneh_pair', (BoundSide.LOWER, BoundTarget.W_SQUARED, "w²(A) ≥ ¼‖A*A+AA*‖", 'A')),
    ('ub_kittaneh_pair', (BoundSide.UPPER, BoundTarget.W_SQUARED, "w²(A) ≤ ½‖A*A+AA*‖", 'A')),
    ('ub_kittaneh_sq', (BoundSide.UPPER, BoundTarget.W, "w(A) ≤ ½(‖A‖+‖A²‖^½)", 'A')),
    ('ub_yamazaki', (BoundSide.UPPER, BoundTarget.W, "w(A) ≤ ½(‖A‖+w(Ã))", 'A')),
    ('lb_thm21', (BoundSide.LOWER, BoundTarget.W,
                  "w(A) ≥ ‖A‖/2 + |‖ℜA+ℑA‖−‖ℜA−ℑA‖|/(2√2)", 'A')),
    ('lb_rotated_max', (BoundSide.LOWER, BoundTarget.W,
                        "w(A) ≥ max‖ℜA±ℑA‖/√2", 'A')),
    ('lb_pk1', (BoundSide.LOWER, BoundTarget.W, "w(A) ≥ ‖A‖/2 + |‖ℜA‖−‖ℑA‖|/2", 'A')),
    ('lb_thm22_sq', (BoundSide.LOWER, BoundTarget.W_SQUARED,
                     "w²(A) ≥ ¼‖A*A+AA*‖ + ¼|‖ℜA+ℑA‖²−‖ℜA−ℑA‖²|", 'A')),
    ('lb_rotated_max_sq', (BoundSide.LOWER, BoundTarget.W_SQUARED,
                           "w²(A) ≥ ½·max‖ℜA±ℑA‖²", 'A')),
    ('lb_pk2_sq', (BoundSide.LOWER, BoundTarget.W_SQUARED,
                   "w²(A) ≥ ¼‖A*A+AA*‖ + ½|‖ℜA‖²−‖ℑA‖²|", 'A')),
    ('ub_thm24', (BoundSide.UPPER, BoundTarget.W,
                  "w(A) ≤ ½(‖A‖²+w²(Ã)+w(|A|Ã+Ã|A|))^½", 'A')),
    ('ub_thm25', (BoundSide.UPPER, BoundTarget.W_SQUARED,
                  "w²(A) ≤ ¼‖|A|^{4α}+|A*|^{4(1−α)}‖ + ½w(|A*|^{2(1−α)}|A|^{2α})", 'A')),
    ('ub_heinz_half', (BoundSide.UPPER, BoundTarget.W_SQUARED,
                       "w²(A) ≤ ¼‖|A|²+|A*|²‖ + ½w(|A*||A|)", 'A')),
    ('ub_cor28', (BoundSide.UPPER, BoundTarget.W_SQUARED,
                  "w²(A) ≤ min_α [¼‖|A|^{4α}+|A*|^{4(1−α)}‖ + ½w(|A*|^{2(1−α)}|A|^{2α})]", 'A')),
    ('prod_ub_dragomir', (BoundSide.UPPER, BoundTarget.W_POWER_R,
                          "w^r(B*A) ≤ ½‖|A|^{2r}+|B|^{2r}‖", 'AB')),
    ('prod_ub_heydarbeygi', (BoundSide.UPPER, BoundTarget.W_POWER_2R,
                             "w^{2r}(B*A) ≤ ½w^r(|B|²|A|²) + ¼‖|B|^{4r}+|A|^{4r}‖", 'AB')),
    ('prod_ub_thm33', (BoundSide.UPPER, BoundTarget.W_POWER_2R,
                       "w^{2r}(B*A) ≤ ½w²(|A|^{2r}+i|B|^{2r})", 'AB')),
    ('prod_ub_thm35', (BoundSide.UPPER, BoundTarget.W_POWER_2R,
                       "w^{2r}(B*A) ≤ ½(‖|B|²|A|²+|A|²|B|²‖/2)^r + ¼‖|B|^{4r}+|A|^{4r}‖", 'AB')),
    ('comm_ub_thm37', (BoundSide.UPPER, BoundTarget.W_OF_EXPRESSION,
                       "w(AXB±BYA) ≤ 2√2‖B‖max(‖X‖,‖Y‖)√(w²(A)−¼|‖ℜA+ℑA‖²−‖ℜA−ℑA‖²|)", 'ABXY')),
    ('comm_ub_kittaneh_form', (BoundSide.UPPER, BoundTarget.W_OF_EXPRESSION,
                               "w(AXB±BYA) ≤ √2‖B‖max(‖X‖,‖Y‖)‖AA*+A*A‖^½", 'ABXY')),
    ('comm_ub_cor38', (BoundSide.UPPER, BoundTarget.W_OF_EXPRESSION,
                       "w(AB±BA) ≤ 2√2‖B‖√(w²(A)−¼|‖ℜA+ℑA‖²−‖ℜA−ℑA‖²|)", 'AB')),
    ('comm_ub_fong', (BoundSide.UPPER, BoundTarget.W_OF_EXPRESSION,
                      "w(AB+BA) ≤ 2√2‖B‖w(A)", 'AB')),
    ('comm_ub_hirzallah', (BoundSide.UPPER, BoundTarget.W_OF_EXPRESSION,
                           "w(AB±BA) ≤ 2√2‖B‖√(w²(A)−½|‖ℜA‖²−‖ℑA‖²|)", 'AB')),
    ('fong_xa_ax', (BoundSide.UPPER, BoundTarget.W_OF_EXPRESSION,
                    "w(A*X+XA) ≤ 2‖A‖w(X)", 'AX')),
])


class BoundCalculator:
    """수치 반경 한계 계산기 - 모든 한계를 BoundReport 로 평가"""

    def __init__(self,
                 solver: Optional[NumericalRadiusSolver] = None,
                 alpha_grid: int = None,
                 alpha_refine_width: float = None,
                 radicand_tau: float = None):
        """
        Args:
            solver: 중첩 w(·) 평가에 쓰는 수치 반경 계산기
            alpha_grid: α 최소화 격자 크기 (기본: 257)
            alpha_refine_width: α 황금분할 종료 폭
            radicand_tau: 근호 안 음수 클램핑 허용오차 (상대, 기본: 1e-8)
        """
        self.solver = solver or NumericalRadiusSolver()
        self.alpha_minimizer = AlphaMinimizer(alpha_grid, alpha_refine_width)
        self.radicand_tau = float(radicand_tau or settings.BOUND_TAU)
        self.logger = self._setup_logger()

        # 같은 행렬의 w(·) 중복 계산 방지 (결정적, 크기 제한)
        self._w_cache: "OrderedDict[Tuple, float]" = OrderedDict()
        self._w_cache_size = 64

    def _setup_logger(self):
        """로거 설정"""
        return setup_logger(__name__)

    @staticmethod
    def catalogue() -> Dict[str, Dict[str, str]]:
        """한계 목록 id → {side, target, anchor, arity}"""
        return {
            bound_id: {'side': side.value, 'target': target.value,
                       'anchor': anchor, 'arity': arity}
            for bound_id, (side, target, anchor, arity) in BOUND_CATALOGUE.items()
        }

    def _report(self, bound_id: str, value: float, **params) -> BoundReport:
        side, target, anchor, _ = BOUND_CATALOGUE[bound_id]
        return BoundReport(id=bound_id, side=side, target=target,
                           value=float(value), params=params, anchor=anchor)

    # ------------------------------------------------------------------
    # 공통 양
    # ------------------------------------------------------------------
    def w(self, M: Any) -> float:
        """w(M) (캐시 사용)"""
        M = as_cmatrix(M)
        key = (M.shape, M.tobytes())
        if key in self._w_cache:
            self._w_cache.move_to_end(key)
            return self._w_cache[key]
        value = self.solver.numerical_radius(M).value
        self._w_cache[key] = value
        if len(self._w_cache) > self._w_cache_size:
            self._w_cache.popitem(last=False)
        return value

    @staticmethod
    def cartesian_norms(A: CMatrix) -> Dict[str, float]:
        """‖ℜA‖, ‖ℑA‖, ‖ℜA+ℑA‖, ‖ℜA−ℑA‖"""
        parts = cartesian(A)
        return {
            're': op_norm(parts.re),
            'im': op_norm(parts.im),
            'plus': op_norm(parts.rotated(+1)),
            'minus': op_norm(parts.rotated(-1)),
        }

    @staticmethod
    def _gram_sum_norm(A: CMatrix) -> float:
        """‖A*A + AA*‖"""
        Ah = adjoint(A)
        return op_norm(Ah @ A + A @ Ah)

    def _clamped_sqrt(self, radicand: float, scale: float, bound_id: str,
                      matrices: Dict[str, CMatrix]) -> float:
        """근호 안 값: [−τ, 0) 은 0 으로, 그 아래는 내부 일관성 오류"""
        tau = self.radicand_tau * (1.0 + abs(scale))
        if radicand < -tau:
            raise InternalConsistencyError(
                f"{bound_id}: 근호 안 값이 음수입니다 ({radicand:.3e} < −{tau:.3e})", matrices
            )
        if radicand < 0:
            self.logger.debug(f"{bound_id}: 근호 안 음수 {radicand:.3e} 를 0 으로 클램핑")
            radicand = 0.0
        return float(np.sqrt(radicand))

    # ------------------------------------------------------------------
    # 고전적 비교 한계
    # ------------------------------------------------------------------
    def lb_half_norm(self, A: Any) -> BoundReport:
        A = as_cmatrix(A)
        return self._report('lb_half_norm', op_norm(A) / 2.0)

    def ub_norm(self, A: Any) -> BoundReport:
        A = as_cmatrix(A)
        return self._report('ub_norm', op_norm(A))

    def kittaneh_pair(self, A: Any) -> Tuple[BoundReport, BoundReport]:
        """¼‖A*A+AA*‖ ≤ w² ≤ ½‖A*A+AA*‖"""
        A = as_cmatrix(A)
        s = self._gram_sum_norm(A)
        return (self._report('lb_kittaneh_pair', s / 4.0),
                self._report('ub_kittaneh_pair', s / 2.0))

    def ub_kittaneh_sq(self, A: Any) -> BoundReport:
        A = as_cmatrix(A)
        return self._report('ub_kittaneh_sq', 0.5 * (op_norm(A) + np.sqrt(op_norm(A @ A))))

    def ub_yamazaki(self, A: Any) -> BoundReport:
        A = as_cmatrix(A)
        w_tilde = self.w(aluthge(A))
        return self._report('ub_yamazaki', 0.5 * (op_norm(A) + w_tilde), w_aluthge=w_tilde)

    def lb_pk1(self, A: Any) -> BoundReport:
        A = as_cmatrix(A)
        c = self.cartesian_norms(A)
        return self._report('lb_pk1', op_norm(A) / 2.0 + 0.5 * abs(c['re'] - c['im']))

    def lb_pk2_sq(self, A: Any) -> BoundReport:
        A = as_cmatrix(A)
        c = self.cartesian_norms(A)
        value = self._gram_sum_norm(A) / 4.0 + 0.5 * abs(c['re'] ** 2 - c['im'] ** 2)
        return self._report('lb_pk2_sq', value)

    # ------------------------------------------------------------------
    # Cartesian 분해 기반 하한
    # ------------------------------------------------------------------
    def lb_thm21(self, A: Any) -> BoundReport:
        """‖A‖/2 + |‖ℜ+ℑ‖ − ‖ℜ−ℑ‖| / (2√2)"""
        A = as_cmatrix(A)
        c = self.cartesian_norms(A)
        value = op_norm(A) / 2.0 + abs(c['plus'] - c['minus']) / (2.0 * SQRT2)
        return self._report('lb_thm21', value)

    def lb_rotated_max(self, A: Any) -> BoundReport:
        A = as_cmatrix(A)
        c = self.cartesian_norms(A)
        return self._report('lb_rotated_max', max(c['plus'], c['minus']) / SQRT2)

    def lb_thm22_sq(self, A: Any) -> BoundReport:
        """¼‖A*A+AA*‖ + ¼|‖ℜ+ℑ‖² − ‖ℜ−ℑ‖²|"""
        A = as_cmatrix(A)
        c = self.cartesian_norms(A)
        value = self._gram_sum_norm(A) / 4.0 + 0.25 * abs(c['plus'] ** 2 - c['minus'] ** 2)
        return self._report('lb_thm22_sq', value)

    def lb_rotated_max_sq(self, A: Any) -> BoundReport:
        A = as_cmatrix(A)
        c = self.cartesian_norms(A)
        return self._report('lb_rotated_max_sq', 0.5 * max(c['plus'], c['minus']) ** 2)

    # ------------------------------------------------------------------
    # Aluthge / Heinz 기반 상한
    # ------------------------------------------------------------------
    def ub_thm24(self, A: Any) -> BoundReport:
        """½(‖A‖² + w²(Ã) + w(|A|Ã + Ã|A|))^{1/2}"""
        A = as_cmatrix(A)
        A_tilde = aluthge(A)
        mod = modulus(A)
        w_tilde = self.w(A_tilde)
        w_mixed = self.w(mod @ A_tilde + A_tilde @ mod)
        value = 0.5 * np.sqrt(op_norm(A) ** 2 + w_tilde ** 2 + w_mixed)
        return self._report('ub_thm24', value, w_aluthge=w_tilde, w_mixed=w_mixed)

    def heinz_objective(self, A: CMatrix):
        """α ↦ ¼‖|A|^{4α} + |A*|^{4(1−α)}‖ + ½w(|A*|^{2(1−α)}|A|^{2α})"""
        P = modulus_calculus(A)
        Q = modulus_calculus(adjoint(A))

        def objective(alpha: float) -> float:
            norm_term = op_norm(P.power(4.0 * alpha) + Q.power(4.0 * (1.0 - alpha)))
            w_term = self.w(Q.power(2.0 * (1.0 - alpha)) @ P.power(2.0 * alpha))
            return 0.25 * norm_term + 0.5 * w_term

        return objective

    def ub_thm25(self, A: Any, alpha: float) -> BoundReport:
        if not 0.0 <= alpha <= 1.0:
            raise ConfigurationError(f"α 는 [0,1] 이어야 합니다: {alpha}")
        A = as_cmatrix(A)
        return self._report('ub_thm25', self.heinz_objective(A)(float(alpha)), alpha=float(alpha))

    def ub_heinz_half(self, A: Any) -> BoundReport:
        A = as_cmatrix(A)
        return self._report('ub_heinz_half', self.heinz_objective(A)(0.5), alpha=0.5)

    def ub_cor28(self, A: Any, grid: int = None, refine_width: float = None) -> AlphaCurve:
        """
        Heinz 형 상한의 α ∈ [0,1] 최소화

        Args:
            A: 복소 정방행렬
            grid: α 격자 크기 (None 이면 계산기 기본값)
            refine_width: 황금분할 종료 폭

        Returns:
            AlphaCurve (min_value 는 w² 의 상한)
        """
        A = as_cmatrix(A)
        minimizer = self.alpha_minimizer
        if grid is not None or refine_width is not None:
            minimizer = AlphaMinimizer(grid or minimizer.grid_size,
                                       refine_width or minimizer.refine_width)
        return minimizer.minimize(self.heinz_objective(A))

    def ub_cor28_report(self, A: Any, grid: int = None, refine_width: float = None) -> BoundReport:
        curve = self.ub_cor28(A, grid, refine_width)
        return self._report('ub_cor28', curve.min_value, alpha=curve.argmin)

    def alpha_profile(self, A: Any, grid_size: int) -> pd.DataFrame:
        """α 균일 격자 위 Heinz 형 상한 값 (CSV 열: alpha, value)"""
        if grid_size < 2:
            raise ConfigurationError(f"α 격자는 2점 이상이어야 합니다: {grid_size}")
        A = as_cmatrix(A)
        objective = self.heinz_objective(A)
        alphas = np.linspace(0.0, 1.0, grid_size)
        return pd.DataFrame({'alpha': alphas, 'value': [objective(float(a)) for a in alphas]})

    # ------------------------------------------------------------------
    # 곱 B*A 의 상한
    # ------------------------------------------------------------------
    @staticmethod
    def _check_r(r: float) -> float:
        if r < 1.0:
            raise ConfigurationError(f"r 은 1 이상이어야 합니다: {r}")
        return float(r)

    def prod_ub_dragomir(self, A: Any, B: Any, r: float) -> BoundReport:
        """
        ½‖|A|^{2r} + |B|^{2r}‖ (w^r(B*A) 의 상한)

        params 에 제곱값(squared_value)과 지수 2r 에서의 값(doubled_exponent_value,
        w^{2r}(B*A) 의 상한)을 함께 싣는다.
        """
        r = self._check_r(r)
        A = as_cmatrix(A)
        B = as_cmatrix(B)
        P = modulus_calculus(A)
        Q = modulus_calculus(B)
        value = 0.5 * op_norm(P.power(2.0 * r) + Q.power(2.0 * r))
        doubled = 0.5 * op_norm(P.power(4.0 * r) + Q.power(4.0 * r))
        return self._report('prod_ub_dragomir', value, r=r,
                            squared_value=value ** 2, doubled_exponent_value=doubled)

    def prod_ub_heydarbeygi(self, A: Any, B: Any, r: float) -> BoundReport:
        r = self._check_r(r)
        A = as_cmatrix(A)
        B = as_cmatrix(B)
        P = modulus_calculus(A)
        Q = modulus_calculus(B)
        w_term = self.w(Q.power(2.0) @ P.power(2.0))
        value = 0.5 * w_term ** r + 0.25 * op_norm(Q.power(4.0 * r) + P.power(4.0 * r))
        return self._report('prod_ub_heydarbeygi', value, r=r)

    def prod_ub_thm33(self, A: Any, B: Any, r: float) -> BoundReport:
        """½·w²(|A|^{2r} + i|B|^{2r})"""
        r = self._check_r(r)
        A = as_cmatrix(A)
        B = as_cmatrix(B)
        P = modulus_calculus(A)
        Q = modulus_calculus(B)
        value = 0.5 * self.w(P.power(2.0 * r) + 1j * Q.power(2.0 * r)) ** 2
        return self._report('prod_ub_thm33', value, r=r)

    def prod_ub_thm35(self, A: Any, B: Any, r: float) -> BoundReport:
        """½(‖|B|²|A|² + |A|²|B|²‖/2)^r + ¼‖|B|^{4r} + |A|^{4r}‖"""
        r = self._check_r(r)
        A = as_cmatrix(A)
        B = as_cmatrix(B)
        P = modulus_calculus(A)
        Q = modulus_calculus(B)
        A2, B2 = P.power(2.0), Q.power(2.0)
        mixed = op_norm(B2 @ A2 + A2 @ B2) / 2.0
        value = 0.5 * mixed ** r + 0.25 * op_norm(Q.power(4.0 * r) + P.power(4.0 * r))
        return self._report('prod_ub_thm35', value, r=r)

    # ------------------------------------------------------------------
    # 일반화 교환자의 상한
    # ------------------------------------------------------------------
    @staticmethod
    def _check_sign(sign: int) -> int:
        if sign not in (1, -1):
            raise ConfigurationError(f"sign 은 +1 또는 −1 이어야 합니다: {sign}")
        return int(sign)

    def _squared_cartesian_radicand(self, A: CMatrix, bound_id: str,
                                    matrices: Dict[str, CMatrix]) -> float:
        """√(w²(A) − ¼|‖ℜ+ℑ‖² − ‖ℜ−ℑ‖²|)"""
        w_A = self.w(A)
        c = self.cartesian_norms(A)
        radicand = w_A ** 2 - 0.25 * abs(c['plus'] ** 2 - c['minus'] ** 2)
        return self._clamped_sqrt(radicand, w_A ** 2, bound_id, matrices)

    def comm_ub_thm37(self, A: Any, B: Any, X: Any, Y: Any, sign: int = 1) -> BoundReport:
        sign = self._check_sign(sign)
        A, B, X, Y = (as_cmatrix(M) for M in (A, B, X, Y))
        root = self._squared_cartesian_radicand(A, 'comm_ub_thm37', {'A': A, 'B': B, 'X': X, 'Y': Y})
        value = 2.0 * SQRT2 * op_norm(B) * max(op_norm(X), op_norm(Y)) * root
        return self._report('comm_ub_thm37', value, sign=sign, expression='AXB±BYA')

    def comm_ub_kittaneh_form(self, A: Any, B: Any, X: Any, Y: Any, sign: int = 1) -> BoundReport:
        sign = self._check_sign(sign)
        A, B, X, Y = (as_cmatrix(M) for M in (A, B, X, Y))
        value = SQRT2 * op_norm(B) * max(op_norm(X), op_norm(Y)) * np.sqrt(self._gram_sum_norm(A))
        return self._report('comm_ub_kittaneh_form', value, sign=sign, expression='AXB±BYA')

    def comm_ub_cor38(self, A: Any, B: Any, sign: int = 1) -> BoundReport:
        """X = Y = I 특수화"""
        sign = self._check_sign(sign)
        A = as_cmatrix(A)
        B = as_cmatrix(B)
        root = self._squared_cartesian_radicand(A, 'comm_ub_cor38', {'A': A, 'B': B})
        value = 2.0 * SQRT2 * op_norm(B) * root
        return self._report('comm_ub_cor38', value, sign=sign, expression='AB±BA')

    def comm_ub_fong(self, A: Any, B: Any) -> BoundReport:
        A = as_cmatrix(A)
        B = as_cmatrix(B)
        value = 2.0 * SQRT2 * op_norm(B) * self.w(A)
        return self._report('comm_ub_fong', value, sign=1, expression='AB±BA')

    def comm_ub_hirzallah(self, A: Any, B: Any, sign: int = 1) -> BoundReport:
        sign = self._check_sign(sign)
        A = as_cmatrix(A)
        B = as_cmatrix(B)
        w_A = self.w(A)
        c = self.cartesian_norms(A)
        radicand = w_A ** 2 - 0.5 * abs(c['re'] ** 2 - c['im'] ** 2)
        root = self._clamped_sqrt(radicand, w_A ** 2, 'comm_ub_hirzallah', {'A': A, 'B': B})
        return self._report('comm_ub_hirzallah', 2.0 * SQRT2 * op_norm(B) * root,
                            sign=sign, expression='AB±BA')

    def fong_xa_ax(self, A: Any, X: Any) -> BoundReport:
        """w(A*X + XA) ≤ 2‖A‖w(X)"""
        A = as_cmatrix(A)
        X = as_cmatrix(X)
        return self._report('fong_xa_ax', 2.0 * op_norm(A) * self.w(X), expression='A*X+XA')

    # ------------------------------------------------------------------
    # id 기반 평가
    # ------------------------------------------------------------------
    def evaluate(self, bound_id: str, A: Any, B: Any = None, X: Any = None, Y: Any = None,
                 r: float = 1.0, alpha: float = 0.5) -> List[BoundReport]:
        """
        id 로 한계 평가 (부호가 있는 교환자 한계는 +, − 두 보고서)

        Args:
            bound_id: 목록의 id
            A: 주 행렬
            B: 두 번째 행렬 (곱/교환자 한계)
            X, Y: 일반화 교환자 행렬 (기본: 단위행렬)
            r: 곱 한계 지수
            alpha: ub_thm25 의 α

        Raises:
            ConfigurationError: 알 수 없는 id 또는 필요한 행렬 누락
        """
        if bound_id not in BOUND_CATALOGUE:
            raise ConfigurationError(f"알 수 없는 한계 id: {bound_id}")
        arity = BOUND_CATALOGUE[bound_id][3]
        A = as_cmatrix(A)
        if arity in ('AB', 'ABXY') and B is None:
            raise ConfigurationError(f"{bound_id} 는 두 번째 행렬이 필요합니다")
        if arity == 'AX' and X is None:
            raise ConfigurationError(f"{bound_id} 는 보조 행렬 X 가 필요합니다")

        single = {
            'lb_half_norm': self.lb_half_norm,
            'ub_norm': self.ub_norm,
            'lb_kittaneh_pair': lambda M: self.kittaneh_pair(M)[0],
            'ub_kittaneh_pair': lambda M: self.kittaneh_pair(M)[1],
            'ub_kittaneh_sq': self.ub_kittaneh_sq,
            'ub_yamazaki': self.ub_yamazaki,
            'lb_thm21': self.lb_thm21,
            'lb_rotated_max': self.lb_rotated_max,
            'lb_pk1': self.lb_pk1,
            'lb_thm22_sq': self.lb_thm22_sq,
            'lb_rotated_max_sq': self.lb_rotated_max_sq,
            'lb_pk2_sq': self.lb_pk2_sq,
            'ub_thm24': self.ub_thm24,
            'ub_thm25': lambda M: self.ub_thm25(M, alpha),
            'ub_heinz_half': self.ub_heinz_half,
            'ub_cor28': self.ub_cor28_report,
        }
        if bound_id in single:
            return [single[bound_id](A)]

        if bound_id == 'fong_xa_ax':
            return [self.fong_xa_ax(A, X)]

        B = as_cmatrix(B)
        if B.shape != A.shape:
            raise ConfigurationError(f"행렬 크기가 다릅니다: {A.shape} vs {B.shape}")
        product = {
            'prod_ub_dragomir': self.prod_ub_dragomir,
            'prod_ub_heydarbeygi': self.prod_ub_heydarbeygi,
            'prod_ub_thm33': self.prod_ub_thm33,
            'prod_ub_thm35': self.prod_ub_thm35,
        }
        if bound_id in product:
            return [product[bound_id](A, B, r)]
        if bound_id == 'comm_ub_fong':
            return [self.comm_ub_fong(A, B)]
        if bound_id in ('comm_ub_cor38', 'comm_ub_hirzallah'):
            method = getattr(self, bound_id)
            return [method(A, B, sign) for sign in (1, -1)]

        identity = np.eye(A.shape[0], dtype=complex)
        X = identity if X is None else as_cmatrix(X)
        Y = identity if Y is None else as_cmatrix(Y)
        method = getattr(self, bound_id)
        return [method(A, B, X, Y, sign) for sign in (1, -1)]

    def target_value(self, report: BoundReport, A: Any, B: Any = None,
                     X: Any = None, Y: Any = None) -> float:
        """
        보고서가 겨냥하는 실제 양 (w, w², w^r(B*A), w^{2r}(B*A), 식의 수치 반경)

        X, Y 가 없으면 단위행렬 (fong_xa_ax 는 X 필수)
        """
        A = as_cmatrix(A)
        target = report.target
        if target == BoundTarget.W:
            return self.w(A)
        if target == BoundTarget.W_SQUARED:
            return self.w(A) ** 2

        B = as_cmatrix(B) if B is not None else None
        r = float(report.params.get('r', 1.0))
        if target == BoundTarget.W_POWER_R:
            return self.w(adjoint(B) @ A) ** r
        if target == BoundTarget.W_POWER_2R:
            return self.w(adjoint(B) @ A) ** (2.0 * r)

        if report.id == 'fong_xa_ax':
            X = as_cmatrix(X)
            return self.w(adjoint(A) @ X + X @ A)

        sign = int(report.params.get('sign', 1))
        if report.id in ('comm_ub_thm37', 'comm_ub_kittaneh_form'):
            identity = np.eye(A.shape[0], dtype=complex)
            X = identity if X is None else as_cmatrix(X)
            Y = identity if Y is None else as_cmatrix(Y)
            return self.w(A @ X @ B + sign * (B @ Y @ A))
        return self.w(A @ B + sign * (B @ A))
