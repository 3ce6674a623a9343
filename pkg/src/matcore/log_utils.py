"""
로거 설정 공통 함수
"""
import logging
import os
import sys

sys.path.append(os.path.join(os.path.dirname(__file__), '../..'))

from config import settings


def setup_logger(name: str, level: str = None) -> logging.Logger:
    """로거 설정

    Args:
        name: 로거 이름 (보통 __name__)
        level: 로그 레벨 문자열 (None이면 settings.LOG_LEVEL)

    Returns:
        StreamHandler 하나가 붙은 로거
    """
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, (level or settings.LOG_LEVEL).upper(), logging.WARNING))

    if not logger.handlers:
        handler = logging.StreamHandler()
        formatter = logging.Formatter(settings.LOG_FORMAT)
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    return logger


def set_global_level(level: str) -> None:
    """이미 생성된 툴킷 로거 전체의 레벨 변경 (CLI --verbose)"""
    settings.LOG_LEVEL = level.upper()
    numeric = getattr(logging, level.upper(), logging.WARNING)
    for name, logger in logging.Logger.manager.loggerDict.items():
        if name.startswith('src.') and isinstance(logger, logging.Logger):
            logger.setLevel(numeric)
