"""
ToralKit 예외 계층
모든 연산이 공유하는 오류 타입
"""

import json
from typing import Any, Dict, Optional


class ToralKitError(Exception):
    """ToralKit 기본 예외"""
    exit_code = 1


class ConfigError(ToralKitError):
    """잘못된 설정 또는 명령줄 입력"""
    exit_code = 1


class UnsupportedError(ToralKitError):
    """지원 범위 밖의 군/셀/랭크"""
    exit_code = 1


class LatticeError(ToralKitError):
    """부분군 포셋 구성 오류"""
    exit_code = 1


class ModuleError(ToralKitError):
    """가군 데이터 오류 (환 불일치, 비꼬임 페이로드 등)"""
    exit_code = 1


class InvariantViolation(ToralKitError):
    """내부 불변식 위반 - 증거(witness)를 함께 보관"""
    exit_code = 2

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.witness = witness or {}

    def witness_json(self) -> str:
        """증거를 JSON 문자열로"""
        return json.dumps(self.witness, sort_keys=True, indent=2, default=str)


class ResolutionError(InvariantViolation):
    """단사 분해가 주어진 길이 안에 끝나지 않음"""
    pass
