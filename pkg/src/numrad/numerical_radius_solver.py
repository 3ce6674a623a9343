"""
수치 반경 계산기
θ ↦ λ_max(Re(e^{iθ}A)) 의 [0, 2π) 전역 최대화로 w(A) 를 계산하고
증인 벡터와 독립 검증용 오라클(조밀 격자, 무작위 단위벡터)을 제공
"""
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

import numpy as np
import pandas as pd
import sys
import os

# 상위 디렉토리 경로 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from config import settings
from src.matcore.exceptions import ConfigurationError, ConvergenceError
from src.matcore.linalg_kernel import CMatrix, as_cmatrix, herm_eig, op_norm
from src.matcore.log_utils import setup_logger

TWO_PI = 2.0 * np.pi
GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0
MAX_ACTIVE_CELLS = 1 << 16
EIG_BLOCK = 4096


@dataclass
class NumRadResult:
    """수치 반경 계산 결과"""
    value: float
    theta_star: float
    witness: np.ndarray
    profile: Optional[pd.DataFrame] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            'value': self.value,
            'theta_star': self.theta_star,
            'witness': [[float(z.real), float(z.imag)] for z in self.witness],
        }


class NumericalRadiusSolver:
    """수치 반경 계산기 - 거친 θ 격자 + 황금분할 + 분기 한정 정밀화"""

    def __init__(self,
                 grid_size: int = None,
                 tol: float = None,
                 refine_width: float = None,
                 max_refinements: int = None):
        """
        Args:
            grid_size: 초기 θ 격자 점 수 (기본: settings.THETA_GRID = 1024)
            tol: 절대 정확도, (1+‖A‖) 배율 (기본: settings.DEFAULT_TOL)
            refine_width: 정밀화 종료 구간 폭 (기본: 1e-12)
            max_refinements: 정밀화할 후보 구간 최대 개수
        """
        self.grid_size = int(grid_size or settings.THETA_GRID)
        self.tol = float(tol if tol is not None else settings.DEFAULT_TOL)
        self.refine_width = float(refine_width or settings.REFINE_WIDTH)
        self.max_refinements = int(max_refinements or settings.MAX_REFINEMENTS)
        self.logger = self._setup_logger()

        if self.grid_size < 4:
            raise ConfigurationError(f"θ 격자는 4점 이상이어야 합니다: {self.grid_size}")
        if self.tol <= 0:
            raise ConfigurationError(f"허용오차는 양수여야 합니다: {self.tol}")

        self.logger.debug(f"수치 반경 계산기 초기화 - grid={self.grid_size}, tol={self.tol:g}")

    def _setup_logger(self):
        """로거 설정"""
        return setup_logger(__name__)

    # ------------------------------------------------------------------
    # 목적함수
    # ------------------------------------------------------------------
    @staticmethod
    def _rotated_real_parts(A: CMatrix, thetas: np.ndarray) -> np.ndarray:
        """Re(e^{iθ}A) 를 θ 별로 쌓은 (G, n, n) 배열"""
        phases = np.exp(1j * thetas)[:, None, None]
        rotated = phases * A[None, :, :]
        return 0.5 * (rotated + np.conj(np.swapaxes(rotated, 1, 2)))

    def _batched_top_eig(self, A: CMatrix, thetas: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """θ 격자 전체의 (λ_max, 고유벡터) 일괄 계산 (메모리 제한을 위해 블록 단위)"""
        values = np.empty(thetas.size)
        vectors = np.empty((thetas.size, A.shape[0]), dtype=complex)
        for start in range(0, thetas.size, EIG_BLOCK):
            H = self._rotated_real_parts(A, thetas[start:start + EIG_BLOCK])
            try:
                w, V = np.linalg.eigh(H)
            except np.linalg.LinAlgError as e:
                raise ConvergenceError(f"θ 격자 고유분해 수렴 실패: {str(e)}") from e
            values[start:start + EIG_BLOCK] = w[:, -1]
            vectors[start:start + EIG_BLOCK] = V[:, :, -1]
        return values, vectors

    def support(self, A: Any, theta: float) -> Tuple[float, float, np.ndarray]:
        """
        단일 θ 에서 λ_max(Re(e^{iθ}A)), 도함수 λ'(θ) = −Im(e^{iθ}⟨Ax,x⟩), 고유벡터

        Args:
            A: 복소 정방행렬
            theta: 회전각

        Returns:
            (λ_max, λ'(θ), x)
        """
        A = as_cmatrix(A)
        lam, x = self._top_eig(A, theta)
        rayleigh = np.vdot(x, A @ x)
        derivative = -float(np.imag(np.exp(1j * theta) * rayleigh))
        return lam, derivative, x

    def _top_eig(self, A: CMatrix, theta: float) -> Tuple[float, np.ndarray]:
        rotated = np.exp(1j * theta) * A
        H = 0.5 * (rotated + rotated.conj().T)
        try:
            w, V = np.linalg.eigh(H)
        except np.linalg.LinAlgError as e:
            raise ConvergenceError(f"고유분해 수렴 실패 (θ={theta:.6f}): {str(e)}") from e
        return float(w[-1]), V[:, -1]

    # ------------------------------------------------------------------
    # 수치 반경
    # ------------------------------------------------------------------
    def numerical_radius(self, A: Any, keep_profile: bool = False) -> NumRadResult:
        """
        수치 반경 w(A) = max_θ λ_max(Re(e^{iθ}A))

        λ_max(Re(e^{i(θ+π)}A)) = −λ_min(Re(e^{iθ}A)) 이므로 [0,2π) 의 λ_max 만으로 충분하다.

        Args:
            A: 복소 정방행렬
            keep_profile: 초기 격자 (θ, λ_max) 를 결과에 포함할지 여부

        Returns:
            NumRadResult (value, theta_star, witness, profile)
        """
        A = as_cmatrix(A)
        n = A.shape[0]

        if n == 1:
            a = complex(A[0, 0])
            theta = float((-np.angle(a)) % TWO_PI) if a != 0 else 0.0
            return NumRadResult(value=abs(a), theta_star=theta,
                                witness=np.ones(1, dtype=complex))

        if self._is_hermitian(A):
            return self._hermitian_radius(A)

        abs_tol = self.tol * (1.0 + op_norm(A))
        thetas = TWO_PI * np.arange(self.grid_size) / self.grid_size
        values, vectors = self._batched_top_eig(A, thetas)
        profile = pd.DataFrame({'theta': thetas, 'lambda_max': values}) if keep_profile else None

        k_best = int(np.argmax(values))
        best = (float(values[k_best]), float(thetas[k_best]), vectors[k_best])

        if values.max() - values.min() > abs_tol:
            best = self._refine(A, thetas, values, best, abs_tol)

        value, theta_star, witness = best
        witness = witness / np.linalg.norm(witness)
        return NumRadResult(value=max(value, 0.0), theta_star=float(theta_star % TWO_PI),
                            witness=witness, profile=profile)

    def _refine(self,
                A: CMatrix,
                thetas: np.ndarray,
                values: np.ndarray,
                best: Tuple[float, float, np.ndarray],
                abs_tol: float) -> Tuple[float, float, np.ndarray]:
        """
        격자 정밀화 (분기 한정)

        최대점 θ* 와 w·e^{-iθ*} = ⟨Ax*,x*⟩ 인 x* 에 대해 h(θ) ≥ w·cos(θ−θ*) 이므로
        θ* 를 담은 폭 δ 의 칸은 양 끝값 중 큰 쪽이 w·cos(δ/2) 이상이다.
        따라서 max(h(a), h(b)) / cos(δ/2) ≤ best + abs_tol 인 칸은 버려도 된다.
        남은 칸은 이등분을 반복하고, 먼저 각 후보 구간의 최고점을 황금분할로
        정밀화해 best 를 끌어올린다.
        """
        step = TWO_PI / self.grid_size
        best = self._seed_peaks(A, thetas, values, best, abs_tol, step)

        # 칸 k = [θ_k, θ_k + δ], 양 끝값 (left, right)
        left = thetas
        f_left = values
        f_right = np.roll(values, -1)
        width = step

        while True:
            keep = np.maximum(f_left, f_right) / np.cos(width / 2.0) > best[0] + abs_tol
            if not keep.any():
                break
            if width / 2.0 < self.refine_width:
                self.logger.debug(f"정밀화 폭 한계 도달: 남은 칸 {int(keep.sum())}개")
                break
            left, f_left, f_right = left[keep], f_left[keep], f_right[keep]
            if left.size > MAX_ACTIVE_CELLS:
                # 목적함수가 거의 평평함: 상한이 높은 칸만 유지
                order = np.argsort(-np.maximum(f_left, f_right))[:MAX_ACTIVE_CELLS]
                self.logger.warning(f"정밀화 칸 {left.size}개 중 {MAX_ACTIVE_CELLS}개만 유지")
                left, f_left, f_right = left[order], f_left[order], f_right[order]

            width /= 2.0
            mid = left + width
            f_mid, x_mid = self._batched_top_eig(A, mid)
            k = int(np.argmax(f_mid))
            if f_mid[k] > best[0]:
                best = (float(f_mid[k]), float(mid[k]), x_mid[k])

            left = np.concatenate([left, mid])
            f_left, f_right = np.concatenate([f_left, f_mid]), np.concatenate([f_mid, f_right])

        return best

    def _seed_peaks(self,
                    A: CMatrix,
                    thetas: np.ndarray,
                    values: np.ndarray,
                    best: Tuple[float, float, np.ndarray],
                    abs_tol: float,
                    step: float) -> Tuple[float, float, np.ndarray]:
        """후보 연속 구간마다 최고 격자점 주변 황금분할 (높은 순서, 최대 max_refinements 개)"""
        shrink = np.cos(step / 2.0)
        candidate = values / shrink > best[0] + abs_tol
        candidate |= values >= best[0] - abs_tol
        runs = self._circular_runs(candidate)
        peaks = sorted((max(run, key=lambda k: values[k]) for run in runs),
                       key=lambda k: -values[k])

        for k in peaks[:self.max_refinements]:
            cand = self._golden_section_max(A, thetas[k] - step, thetas[k] + step)
            if cand[0] > best[0]:
                best = cand
        if len(peaks) > self.max_refinements:
            self.logger.debug(f"황금분할 후보 {len(peaks)}개 중 {self.max_refinements}개만 처리")
        return best

    @staticmethod
    def _circular_runs(mask: np.ndarray) -> List[List[int]]:
        """원형 배열에서 True 연속 구간 인덱스 목록"""
        G = mask.size
        if mask.all():
            return [list(range(G))]
        start = int(np.argmin(mask))  # False 위치에서 시작
        runs, current = [], []
        for offset in range(1, G + 1):
            k = (start + offset) % G
            if mask[k]:
                current.append(k)
            elif current:
                runs.append(current)
                current = []
        if current:
            runs.append(current)
        return runs

    def _golden_section_max(self, A: CMatrix, a: float, b: float) -> Tuple[float, float, np.ndarray]:
        """[a, b] 에서 λ_max(Re(e^{iθ}A)) 황금분할 최대화 (평가한 최고점 반환)"""
        u = a + GOLDEN * (b - a)
        l = a + (1.0 - GOLDEN) * (b - a)
        f_u, x_u = self._top_eig(A, u)
        f_l, x_l = self._top_eig(A, l)
        best = max((f_u, u, x_u), (f_l, l, x_l), key=lambda t: t[0])

        while b - a > self.refine_width:
            if f_u > f_l:
                a, l, f_l, x_l = l, u, f_u, x_u
                u = a + GOLDEN * (b - a)
                f_u, x_u = self._top_eig(A, u)
                if f_u > best[0]:
                    best = (f_u, u, x_u)
            else:
                b, u, f_u, x_u = u, l, f_l, x_l
                l = a + (1.0 - GOLDEN) * (b - a)
                f_l, x_l = self._top_eig(A, l)
                if f_l > best[0]:
                    best = (f_l, l, x_l)

        return best

    @staticmethod
    def _is_hermitian(A: CMatrix) -> bool:
        scale = 1.0 + float(np.max(np.abs(A)))
        return bool(np.max(np.abs(A - A.conj().T)) <= 1e-14 * scale)

    def _hermitian_radius(self, A: CMatrix) -> NumRadResult:
        """에르미트 입력: w = max(|λ_max|, |λ_min|)"""
        eig = herm_eig(A)
        if eig.lambda_max >= -eig.lambda_min:
            return NumRadResult(value=abs(eig.lambda_max), theta_star=0.0,
                                witness=eig.eigenvectors[:, 0])
        return NumRadResult(value=abs(eig.lambda_min), theta_star=float(np.pi),
                            witness=eig.eigenvectors[:, -1])

    # ------------------------------------------------------------------
    # 프로파일 및 오라클
    # ------------------------------------------------------------------
    def profile(self, A: Any, grid_size: int) -> pd.DataFrame:
        """
        목적함수 균일 샘플 (CSV 열: theta, lambda_max)

        Args:
            A: 복소 정방행렬
            grid_size: 샘플 수 (≥ 4)

        Returns:
            theta, lambda_max 열의 DataFrame
        """
        if grid_size < 4:
            raise ConfigurationError(f"프로파일 격자는 4점 이상이어야 합니다: {grid_size}")
        A = as_cmatrix(A)
        thetas = TWO_PI * np.arange(grid_size) / grid_size
        values, _ = self._batched_top_eig(A, thetas)
        return pd.DataFrame({'theta': thetas, 'lambda_max': values})

    def dense_grid_maximum(self, A: Any, grid_size: int = 10_000) -> float:
        """조밀 격자 최댓값 (해 검증 오라클)"""
        return float(self.profile(A, grid_size)['lambda_max'].max())

    @staticmethod
    def lower_random(A: Any, trials: int, seed: Any = None) -> float:
        """
        무작위 단위벡터에 대한 max |⟨Ax,x⟩| (몬테카를로 하한 오라클)

        Args:
            A: 복소 정방행렬
            trials: 시행 횟수 (≥ 1)
            seed: numpy Generator 시드

        Returns:
            하한 값 (항상 ≤ w(A))
        """
        if trials < 1:
            raise ConfigurationError(f"시행 횟수는 1 이상이어야 합니다: {trials}")
        A = as_cmatrix(A)
        n = A.shape[0]
        rng = np.random.default_rng(seed)

        best = 0.0
        block = 10_000
        remaining = trials
        while remaining > 0:
            m = min(block, remaining)
            X = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
            X /= np.linalg.norm(X, axis=1, keepdims=True)
            # 행별 ⟨Ax,x⟩ = x* A x
            AX = X @ A.T
            vals = np.abs(np.sum(AX * X.conj(), axis=1))
            best = max(best, float(vals.max()))
            remaining -= m
        return best


_default_solver: Optional[NumericalRadiusSolver] = None


def _solver(tol: float = None) -> NumericalRadiusSolver:
    global _default_solver
    if tol is not None and tol != settings.DEFAULT_TOL:
        return NumericalRadiusSolver(tol=tol)
    if _default_solver is None:
        _default_solver = NumericalRadiusSolver()
    return _default_solver


def numerical_radius(A: Any, tol: float = None) -> NumRadResult:
    """기본 설정 계산기로 w(A) 계산"""
    return _solver(tol).numerical_radius(A)


def nr_profile(A: Any, grid_size: int) -> pd.DataFrame:
    return _solver().profile(A, grid_size)


def nr_lower_random(A: Any, trials: int, seed: Any = None) -> float:
    return NumericalRadiusSolver.lower_random(A, trials, seed)
