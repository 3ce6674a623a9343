"""
인증 설정 관리자
기본 설정 + 사용자 설정 병합, 점 표기법 조회/수정, 설정 검증
"""
import copy
import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

# 상위 디렉토리 경로 추가
sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from src.matcore.exceptions import ConfigurationError
from src.matcore.log_utils import setup_logger

PROJECT_ROOT = Path(__file__).resolve().parents[2]

KNOWN_FAMILIES = [
    'ginibre', 'normal', 'hermitian',
    'nilpotent_square_zero', 'rank_deficient', 'unitary',
]


class ConfigManager:
    """설정 파일 관리자"""

    def __init__(self, config_dir: Optional[str] = None):
        """
        Args:
            config_dir: 설정 디렉토리 (기본: 저장소의 config/)
        """
        self.config_dir = Path(config_dir) if config_dir else PROJECT_ROOT / 'config'
        self.default_config_file = self.config_dir / 'default_config.json'
        self.user_config_file = self.config_dir / 'user_config.json'
        self.logger = self._setup_logger()

    def _setup_logger(self):
        """로거 설정"""
        return setup_logger(__name__)

    def load_config(self, config_file: Optional[Path] = None) -> Dict[str, Any]:
        """
        설정 파일 로드

        config_file 이 없으면 기본 설정 위에 사용자 설정(있을 때)을 덮어쓴다.

        Raises:
            ConfigurationError: 파일이 없거나 JSON 이 아님
        """
        if config_file is not None:
            return self._read_json(Path(config_file))

        config = self._read_json(self.default_config_file)
        if self.user_config_file.exists():
            config = self.merge(config, self._read_json(self.user_config_file))
        return config

    def _read_json(self, path: Path) -> Dict[str, Any]:
        if not path.exists():
            raise ConfigurationError(f"설정 파일이 없습니다: {path}")
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"설정 파일 로드 오류 ({path}): {str(e)}") from e
        if not isinstance(data, dict):
            raise ConfigurationError(f"설정 파일 최상위가 객체가 아닙니다: {path}")
        return data

    @staticmethod
    def merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
        """중첩 딕셔너리 재귀 병합 (override 우선)"""
        merged = copy.deepcopy(base)
        for key, value in override.items():
            if isinstance(value, dict) and isinstance(merged.get(key), dict):
                merged[key] = ConfigManager.merge(merged[key], value)
            else:
                merged[key] = copy.deepcopy(value)
        return merged

    def save_config(self, config: Dict[str, Any], config_file: Optional[Path] = None) -> bool:
        """설정 파일 저장 (기본: 사용자 설정 파일)"""
        config_file = Path(config_file) if config_file else self.user_config_file
        try:
            config_file.parent.mkdir(parents=True, exist_ok=True)
            with open(config_file, 'w', encoding='utf-8') as f:
                json.dump(config, f, indent=2, ensure_ascii=False)
            self.logger.info(f"설정 저장 완료: {config_file}")
            return True
        except OSError as e:
            self.logger.error(f"설정 저장 오류: {str(e)}")
            return False

    def get_config_value(self, key_path: str, default=None) -> Any:
        """설정 값 조회 (점 표기법 지원, 예: 'certification.count')"""
        value: Any = self.load_config()
        try:
            for key in key_path.split('.'):
                value = value[key]
            return value
        except (KeyError, TypeError):
            return default

    def set_config_value(self, key_path: str, value: Any) -> bool:
        """설정 값 수정 후 사용자 설정 파일에 저장"""
        config = self.load_config()
        keys = key_path.split('.')
        current = config
        for key in keys[:-1]:
            current = current.setdefault(key, {})
        current[keys[-1]] = value
        return self.save_config(config)

    def certification_config(self, overrides: Optional[Dict[str, Any]] = None,
                             config_file: Optional[Path] = None) -> Dict[str, Any]:
        """
        인증 실행용 설정 (certification 섹션 + 명령행 덮어쓰기)

        Args:
            overrides: None 이 아닌 값만 덮어쓴다
            config_file: 지정하면 기본/사용자 설정 대신 이 파일을 읽는다

        Returns:
            검증을 통과한 certification 설정

        Raises:
            ConfigurationError: 검증 실패
        """
        config = self.load_config(config_file)
        cert = dict(config.get('certification', config))
        for key, value in (overrides or {}).items():
            if value is not None:
                cert[key] = value

        result = self.validate_config(cert)
        for warning in result['warnings']:
            self.logger.warning(warning)
        if not result['valid']:
            raise ConfigurationError("; ".join(result['issues']))
        return cert

    def validate_config(self, cert: Dict[str, Any]) -> Dict[str, Any]:
        """
        certification 설정 검증

        Returns:
            {'valid': bool, 'issues': [...], 'warnings': [...]}
        """
        issues: List[str] = []
        warnings: List[str] = []

        for key in ('families', 'sizes', 'count', 'seed', 'r_values'):
            if key not in cert:
                issues.append(f"필수 항목이 없습니다: {key}")

        for family in cert.get('families', []):
            if family not in KNOWN_FAMILIES:
                issues.append(f"알 수 없는 행렬 계열: {family}")

        for n in cert.get('sizes', []):
            if not isinstance(n, int) or n < 1:
                issues.append(f"행렬 크기는 1 이상의 정수여야 합니다: {n}")
            elif n > 32:
                warnings.append(f"행렬 크기 {n} 은 인증 실행 시간이 길어질 수 있습니다")

        count = cert.get('count', 0)
        if not isinstance(count, int) or count < 0:
            issues.append(f"count 는 0 이상의 정수여야 합니다: {count}")

        for r in cert.get('r_values', []):
            if not isinstance(r, (int, float)) or r < 1:
                issues.append(f"r 은 1 이상이어야 합니다: {r}")

        if cert.get('alpha_grid', 33) < 16:
            issues.append(f"α 격자는 16점 이상이어야 합니다: {cert.get('alpha_grid')}")

        for key in ('bound_tau', 'identity_tau'):
            if key in cert and not cert[key] > 0:
                issues.append(f"{key} 는 양수여야 합니다: {cert[key]}")

        return {'valid': len(issues) == 0, 'issues': issues, 'warnings': warnings}
