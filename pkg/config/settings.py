"""
Numerical Radius Toolkit Settings
"""
import os
from dotenv import load_dotenv

load_dotenv()

# Solver Tolerances
DEFAULT_TOL = float(os.getenv('NUMRAD_TOL', 1e-10))          # 절대 허용오차, (1+‖A‖) 배율 적용
HERMITIAN_TOL = 1e-8                                         # 대칭화 허용 범위, (1+‖H‖) 배율
PSD_TOL = 1e-10                                              # 음의 고유값 클램핑 범위, (1+‖M‖) 배율
RANK_CUTOFF = 1e-10                                          # 극분해 특이값 절단, (1+σ_max) 배율

# Numerical Radius Solver
THETA_GRID = int(os.getenv('NUMRAD_THETA_GRID', 1024))
REFINE_WIDTH = 1e-12
MAX_REFINEMENTS = 16

# Alpha Minimization (min over α ∈ [0,1])
ALPHA_GRID = int(os.getenv('NUMRAD_ALPHA_GRID', 257))
ALPHA_REFINE_WIDTH = 1e-10

# Certification
BOUND_TAU = 1e-8           # 부등식 검증 상대 허용오차
IDENTITY_TAU = 1e-10       # 대수적 항등식
POLARIZATION_TAU = 1e-12   # 편극 항등식 잔차
R_VALUES = [1.0, 1.5, 2.0, 3.0]
MAX_WORKERS = int(os.getenv('NUMRAD_MAX_WORKERS', min(os.cpu_count() or 1, 8)))

# Output
FLOAT_DIGITS = 12          # 모든 실수 출력 유효숫자

# Logging Configuration
LOG_LEVEL = os.getenv('NUMRAD_LOG_LEVEL', 'WARNING')
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
