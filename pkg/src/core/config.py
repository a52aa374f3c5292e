"""
ToralKit 설정
명령줄 인자와 환경 변수에서 실행 설정을 만든다
"""

import os
from typing import Any, Dict, Optional, Tuple

from .errors import ConfigError

DEFAULT_WINDOW_ENV = "TORALKIT_WINDOW"
DEFAULT_N_ENV = "TORALKIT_N"
FALLBACK_WINDOW = "-16:8"
FALLBACK_N = 4

SUPPORTED_GROUPS = ("Circle", "Torus2", "O2", "SO3", "SU3")
OUTPUT_FORMATS = ("json", "tsv", "text")


def parse_window(text: str) -> Tuple[int, int]:
    """'lo:hi' 문자열을 차수 창으로 변환"""
    try:
        lo_text, hi_text = str(text).split(":")
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise ConfigError(f"차수 창 형식 오류: {text!r} (예: -16:8)")
    if lo > hi:
        raise ConfigError(f"차수 창 lo > hi: {text!r}")
    return lo, hi


def default_window() -> Tuple[int, int]:
    """환경 변수의 기본 차수 창"""
    return parse_window(os.environ.get(DEFAULT_WINDOW_ENV, FALLBACK_WINDOW))


def default_truncation() -> int:
    raw = os.environ.get(DEFAULT_N_ENV, str(FALLBACK_N))
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{DEFAULT_N_ENV} 값 오류: {raw!r}")


class Config:
    """실행 설정"""

    def __init__(self, group: str = "SO3", N: Optional[int] = None,
                 window: Optional[Tuple[int, int]] = None, seed: int = 0,
                 jobs: int = 1, fmt: str = "json", out: Optional[str] = None,
                 verbosity: int = 1, extras: Optional[Dict[str, Any]] = None):
        self.group = group
        self.N = default_truncation() if N is None else N
        self.window = tuple(window) if window is not None else default_window()
        self.seed = seed
        self.jobs = jobs
        self.fmt = fmt
        self.out = out
        self.verbosity = verbosity
        self.extras = dict(extras or {})
        self.validate()

    def validate(self):
        """설정 검증"""
        if self.group not in SUPPORTED_GROUPS:
            raise ConfigError(f"지원하지 않는 군: {self.group} (가능: {', '.join(SUPPORTED_GROUPS)})")
        if not isinstance(self.N, int) or self.N < 1:
            raise ConfigError(f"절단 N은 1 이상이어야 함: {self.N}")
        lo, hi = self.window
        if lo > hi:
            raise ConfigError(f"차수 창 lo > hi: {self.window}")
        if self.jobs < 1:
            raise ConfigError(f"jobs는 1 이상이어야 함: {self.jobs}")
        if self.fmt not in OUTPUT_FORMATS:
            raise ConfigError(f"출력 형식 오류: {self.fmt}")

    def get(self, key: str, default: Any = None) -> Any:
        """명령별 추가 인자"""
        return self.extras.get(key, default)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'group': self.group,
            'N': self.N,
            'window': list(self.window),
            'seed': self.seed,
            'jobs': self.jobs,
            'format': self.fmt,
            'out': self.out,
            'verbosity': self.verbosity,
            'extras': self.extras,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Config':
        return cls(
            group=data.get('group', 'SO3'),
            N=data.get('N'),
            window=tuple(data['window']) if data.get('window') else None,
            seed=data.get('seed', 0),
            jobs=data.get('jobs', 1),
            fmt=data.get('format', 'json'),
            out=data.get('out'),
            verbosity=data.get('verbosity', 1),
            extras=data.get('extras'),
        )

    @classmethod
    def from_args(cls, args) -> 'Config':
        """argparse 네임스페이스에서 생성"""
        window = parse_window(args.window) if getattr(args, 'window', None) else None
        verbosity = 1
        if getattr(args, 'quiet', False):
            verbosity = 0
        elif getattr(args, 'verbose', False):
            verbosity = 2
        known = {'command', 'group', 'N', 'window', 'seed', 'jobs', 'format', 'out', 'quiet', 'verbose'}
        extras = {k: v for k, v in vars(args).items() if k not in known}
        return cls(
            group=getattr(args, 'group', 'SO3'),
            N=getattr(args, 'N', None),
            window=window,
            seed=getattr(args, 'seed', 0),
            jobs=getattr(args, 'jobs', 1),
            fmt=getattr(args, 'format', 'json'),
            out=getattr(args, 'out', None),
            verbosity=verbosity,
            extras=extras,
        )
