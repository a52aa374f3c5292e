"""
ToralKit 명령줄 해석
argparse 하위 명령 정의와 종료 코드 처리
"""

import argparse
import sys
from typing import List, Optional

from ..core.config import OUTPUT_FORMATS, SUPPORTED_GROUPS, Config
from ..core.errors import ConfigError, InvariantViolation, ToralKitError
from ..cells.change_groups import FUNCTORS
from .commands import default_manager


class ToralKitParser(argparse.ArgumentParser):
    """해석 오류를 ConfigError 로 (종료 코드 1)"""

    def error(self, message):
        raise ConfigError(message)


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--group", default="SO3", choices=SUPPORTED_GROUPS, help="콤팩트 리 군")
    parser.add_argument("--N", type=int, default=None, help="순환 부분군 절단 (기본: TORALKIT_N)")
    parser.add_argument("--window", default=None, help="차수 창 lo:hi, 음수는 --window=-16:8 꼴 (기본: TORALKIT_WINDOW)")
    parser.add_argument("--subgroups", default=None, help="랭크 2 부분군 레이블 목록 (쉼표 구분)")
    parser.add_argument("--seed", type=int, default=0, help="무작위 모음 시드")
    parser.add_argument("--jobs", type=int, default=1, help="병렬 작업 수")
    parser.add_argument("--format", default="json", choices=OUTPUT_FORMATS, help="출력 형식")
    parser.add_argument("--out", default=None, help="출력 파일 (기본: 표준 출력)")
    noise = parser.add_mutually_exclusive_group()
    noise.add_argument("--quiet", action="store_true", help="경고만 출력")
    noise.add_argument("--verbose", action="store_true", help="디버그 로그")


def _module_input(parser: argparse.ArgumentParser, level: str = "G"):
    parser.add_argument("--module", default=None, help="JSON 가군 리터럴 파일")
    parser.add_argument("--cell", default=None, help="셀 문법 (예: sphere, idem:C3, coind:N:idem:C3)")
    parser.add_argument("--level", default=level, choices=("T", "N", "G"), help="가군 수준")


def build_parser() -> ToralKitParser:
    parser = ToralKitParser(prog="toralkit", description="토러스 G-스펙트럼 대수 모델 계산기")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    for name, text in (("poset", "부분군 포셋"), ("structure", "성분 구조"), ("rings", "환 다이어그램 표")):
        _common(sub.add_parser(name, help=text))

    p = sub.add_parser("check-qce", help="준연접/확장 검사")
    _common(p)
    _module_input(p)

    p = sub.add_parser("normal", help="정규성 판정")
    _common(p)
    _module_input(p, "N")

    p = sub.add_parser("resolve", help="단사 분해")
    _common(p)
    _module_input(p)
    p.add_argument("--max-len", dest="max_len", type=int, default=None, help="분해 길이 상한")

    for name, text in (("ext", "Ext 표"), ("e2", "애덤스 E₂ 페이지")):
        p = sub.add_parser(name, help=text)
        _common(p)
        p.add_argument("--X", required=True, help="원천 셀 또는 .json 가군")
        p.add_argument("--Y", required=True, help="대상 셀 또는 .json 가군")
        p.add_argument("--level", default="G", choices=("T", "N", "G"), help="가군 수준")
        p.add_argument("--max-len", dest="max_len", type=int, default=None, help="분해 길이 상한")

    p = sub.add_parser("cells", help="셀 카탈로그")
    _common(p)
    p.add_argument("--list", action="store_true", help="카탈로그 목록")
    p.add_argument("--cell", default=None, help="셀 문법")
    p.add_argument("--level", default="G", choices=("T", "N", "G"), help="가군 수준")
    p.add_argument("--fixed", default=None, help="고정점 분해를 볼 부분군 레이블")
    p.add_argument("--adjoint", action="store_true", help="수반 표현 현수 검사")
    p.add_argument("--dump", action="store_true", help="가군 전체를 JSON 으로")

    p = sub.add_parser("change-groups", help="군 변경 함자")
    _common(p)
    p.add_argument("--target", required=True, choices=SUPPORTED_GROUPS, help="대상 군")
    p.add_argument("--which", default="theta_star", choices=FUNCTORS, help="함자")
    p.add_argument("--module", default=None, help="JSON 가군 리터럴 파일")
    p.add_argument("--cell", default=None, help="셀 문법")

    p = sub.add_parser("selftest", help="수용 검사 모음")
    _common(p)
    p.add_argument("--count", type=int, default=None, help="무작위 모음 크기")
    p.add_argument("--only", default=None, help="실행할 검사 이름 (쉼표 구분)")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """명령줄 실행, 종료 코드 반환 (1 설정 오류, 2 불변식 위반)"""
    try:
        args = build_parser().parse_args(argv)
        config = Config.from_args(args)
        return default_manager().run(args.command, config)
    except ToralKitError as e:
        print(f"[오류] {type(e).__name__}: {e}", file=sys.stderr)
        if isinstance(e, InvariantViolation):
            print(e.witness_json(), file=sys.stderr)
        return e.exit_code
