"""
ToralKit 코어 모듈
오류, 로그, 설정, 직렬화 등 공용 기반
"""

from .errors import (ToralKitError, ConfigError, UnsupportedError, LatticeError,
                     ModuleError, InvariantViolation, ResolutionError)
from .config import Config, parse_window, default_window, default_truncation
from .log import log, debug, warn, set_verbosity, get_verbosity, verbosity_from_env
from .serialization import dumps_json, tsv_table, load_json, write_output

__all__ = ['ToralKitError', 'ConfigError', 'UnsupportedError', 'LatticeError', 'ModuleError',
           'InvariantViolation', 'ResolutionError', 'Config', 'parse_window', 'default_window',
           'default_truncation', 'log', 'debug', 'warn', 'set_verbosity', 'get_verbosity', 'verbosity_from_env',
           'dumps_json', 'tsv_table', 'load_json', 'write_output']
