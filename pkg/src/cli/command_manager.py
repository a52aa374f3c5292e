"""
ToralKit 명령 관리자
하위 명령을 Command 객체로 등록하고 실행 기록과 출력 형식을 관리한다
"""

from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence

from ..core.config import Config
from ..core.errors import ConfigError
from ..core.log import log, set_verbosity
from ..core.serialization import dumps_json, tsv_table, write_output


class CommandResult:
    """명령 결과: 구조화 데이터, 선택적 표, 사람이 읽는 요약"""

    def __init__(self, payload: Dict, summary: str = "",
                 header: Optional[Sequence[str]] = None, rows: Optional[List[Sequence]] = None,
                 exit_code: int = 0):
        self.payload = payload
        self.summary = summary
        self.header = list(header) if header else None
        self.rows = rows or []
        self.exit_code = exit_code

    def render(self, fmt: str) -> str:
        """형식별 출력 문자열"""
        if fmt == "tsv":
            if self.header is None:
                raise ConfigError("이 명령은 TSV 표를 내지 않음 (--format json 사용)")
            return tsv_table(self.header, self.rows)
        if fmt == "text":
            return self.summary.rstrip("\n") + "\n"
        return dumps_json(self.payload)


class Command(ABC):
    """명령 추상 클래스"""

    name = ""

    @abstractmethod
    def execute(self, config: Config) -> CommandResult:
        """명령 실행"""
        pass

    @abstractmethod
    def get_description(self) -> str:
        """명령 설명"""
        pass


class CommandManager:
    """명령 등록부와 실행 기록"""

    def __init__(self, commands: Optional[Sequence[Command]] = None):
        self.commands: Dict[str, Command] = {}
        self.history: List[Dict] = []
        for command in commands or []:
            self.register(command)

    def register(self, command: Command):
        if command.name in self.commands:
            raise ConfigError(f"이미 등록된 명령: {command.name}")
        self.commands[command.name] = command

    def get_command(self, name: str) -> Command:
        if name not in self.commands:
            raise ConfigError(f"알 수 없는 명령: {name} (가능: {', '.join(sorted(self.commands))})")
        return self.commands[name]

    def execute_command(self, name: str, config: Config) -> CommandResult:
        """명령 실행 후 기록에 추가"""
        command = self.get_command(name)
        set_verbosity(config.verbosity)
        log("명령", f"{command.get_description()} ({config.group}, N={config.N}, 창 {config.window})",
            level=2)
        result = command.execute(config)
        self.history.append({'command': name, 'config': config.to_dict()})
        return result

    def run(self, name: str, config: Config) -> int:
        """실행하고 결과를 출력한다 (텍스트 요약은 json/tsv 때 stderr 로그로)"""
        result = self.execute_command(name, config)
        write_output(result.render(config.fmt), config.out)
        if config.fmt != "text" and result.summary:
            log(name, result.summary)
        return result.exit_code

    def get_history(self) -> List[str]:
        return [entry['command'] for entry in self.history]

    def clear_history(self):
        self.history.clear()
