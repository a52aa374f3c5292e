"""
ToralKit 명령줄 모듈
하위 명령, 명령 관리자, 자체 검사
"""

from .command_manager import Command, CommandManager, CommandResult
from .commands import ALL_COMMANDS, default_manager, load_module
from .selftest import CHECKS, run_selftest
from .parser import build_parser, run

__all__ = [
    'Command', 'CommandManager', 'CommandResult',
    'ALL_COMMANDS', 'default_manager', 'load_module',
    'CHECKS', 'run_selftest',
    'build_parser', 'run',
]
