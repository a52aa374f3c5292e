"""
ToralKit 로그 출력
[태그] 메시지 형식의 콘솔 로그 (stderr)
"""

import os
import sys
from typing import Optional

VERBOSE_ENV = "TORALKIT_VERBOSE"
FALLBACK_VERBOSITY = 1


def verbosity_from_env(raw: Optional[str] = None) -> int:
    """환경 변수의 상세 수준 (해석할 수 없으면 경고 후 기본값)"""
    raw = os.environ.get(VERBOSE_ENV, "") if raw is None else raw
    if not raw.strip():
        return FALLBACK_VERBOSITY
    try:
        return max(0, int(raw))
    except ValueError:
        print(f"[설정] ⚠️ {VERBOSE_ENV} 값 오류: {raw!r}, 기본값 {FALLBACK_VERBOSITY} 사용", file=sys.stderr)
        return FALLBACK_VERBOSITY


_verbosity = verbosity_from_env()


def set_verbosity(level: int):
    """로그 상세 수준 설정 (0 조용히, 1 보통, 2 디버그)"""
    global _verbosity
    _verbosity = max(0, int(level))


def get_verbosity() -> int:
    return _verbosity


def log(tag: str, message: str, level: int = 1):
    """태그가 붙은 로그 한 줄 출력"""
    if level <= _verbosity:
        print(f"[{tag}] {message}", file=sys.stderr)


def debug(tag: str, message: str):
    log(tag, message, level=2)


def warn(tag: str, message: str):
    """경고는 조용한 모드에서도 출력"""
    print(f"[{tag}] ⚠️ {message}", file=sys.stderr)
