"""
ToralKit 직렬화
JSON(정렬된 키)과 TSV 출력, 가군 리터럴 파일 읽기
"""

import json
import sys
from typing import Any, Dict, Iterable, Optional, Sequence

from .errors import ConfigError
from .log import log


def dumps_json(data: Any) -> str:
    """바이트 단위로 안정적인 JSON 문자열"""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False, default=str) + "\n"


def tsv_table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def load_json(file_path: str) -> Dict:
    """JSON 파일 로드"""
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError(f"파일을 열 수 없음: {file_path} ({e})")
    except json.JSONDecodeError as e:
        raise ConfigError(f"JSON 형식 오류: {file_path} ({e})")
    if not isinstance(data, dict):
        raise ConfigError(f"JSON 최상위는 객체여야 함: {file_path}")
    return data


def write_output(text: str, file_path: Optional[str] = None):
    """파일 또는 표준 출력으로"""
    if not file_path:
        sys.stdout.write(text)
        return
    try:
        with open(file_path, 'w', encoding='utf-8') as f:
            f.write(text)
    except OSError as e:
        raise ConfigError(f"출력 파일 저장 실패: {file_path} ({e})")
    log("출력", f"저장: {file_path}", level=2)
