#!/usr/bin/env python3
"""
ToralKit 애덤스 E₂ 와 명령줄 테스트
붕괴 판정, 종료 코드, 출력 형식, 가군 리터럴, 자체 검사
"""

import sys
import os
import json
import tempfile
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.core import Config, ConfigError, dumps_json, verbosity_from_env
from src.diagram import Level, build_context, corpus
from src.homalg import ExtTable
from src.cells import parse_cell
from src.adams import E2Page, degeneracy_report, e2_page, unstable_degrees
from src.cli import default_manager, load_module, run, run_selftest
from src.cli.selftest import ACCEPTANCE, acceptance

WINDOW = (-16, 8)


def test_e2_sphere():
    print("=== 구면 E₂ 페이지 테스트 ===")
    ctx = build_context("SO3", 2)
    page = e2_page(parse_cell("sphere"), parse_cell("sphere"), ctx, WINDOW)
    print(f"총합: {page.totals}")
    assert page.totals.get(0) == 1
    assert page.collapse_at == 2
    report = degeneracy_report(page)
    assert report.collapsed
    assert report.totals == page.totals
    assert page.to_dict()['source'] == "sphere"


def test_e2_bilinear():
    """E₂ 는 두 인자에 대해 가법이고 Σ^a 는 t−s 를 a 만큼 내린다"""
    print("\n=== E₂ 가법성과 현수 테스트 ===")
    ctx = build_context("SO3", 2)
    sphere = parse_cell("sphere")
    idem = parse_cell("idem:C2")
    base = e2_page(sphere, sphere, ctx, WINDOW).totals
    side = e2_page(idem, sphere, ctx, WINDOW).totals
    total = e2_page(parse_cell("sphere + idem:C2"), sphere, ctx, WINDOW).totals
    print(f"합: {total}")
    for d in set(base) | set(side) | set(total):
        assert total.get(d, 0) == base.get(d, 0) + side.get(d, 0), d
    right = e2_page(sphere, parse_cell("sphere + idem:C2"), ctx, WINDOW).totals
    other = e2_page(sphere, idem, ctx, WINDOW).totals
    for d in set(base) | set(other) | set(right):
        assert right.get(d, 0) == base.get(d, 0) + other.get(d, 0), d

    suspended = e2_page(parse_cell("susp2:sphere"), sphere, ctx, WINDOW)
    print(f"Σ² 총합: {suspended.totals}")
    assert suspended.totals.get(-2) == 1
    for d in (-3, -2, -1, 0):
        assert suspended.totals.get(d, 0) == base.get(d + 2, 0), d
    assert suspended.get(0, -2) == 1


def test_degeneracy_ambiguous():
    """랭크 2 에서 d₂ 가 닿을 수 있는 자리는 모호"""
    print("\n=== 붕괴 판정 모호성 테스트 ===")
    table = ExtTable({(0, 0): 1, (2, 1): 1}, (-4, 4), "Torus2", 2, 2, Level.G)
    report = degeneracy_report(E2Page(table, "X", "Y"))
    print(f"판정: {report.to_dict()}")
    assert not report.collapsed
    assert report.ambiguous == [-1, 0]
    assert report.totals == {}
    empty = degeneracy_report(E2Page(ExtTable({}, (-4, 4), "Circle", 2, 1), "X", "Y"))
    assert empty.collapsed and empty.reason == "empty"


def test_exit_codes():
    print("\n=== 종료 코드 테스트 ===")
    assert run([]) == 1
    assert run(["poset", "--group", "Spin7"]) == 1
    assert run(["poset", "--window", "5:1", "--quiet"]) == 1
    assert run(["ext", "--X", "sphere", "--quiet"]) == 1
    assert run(["cells", "--cell", "bogus", "--quiet"]) == 1
    # 길이 0 안에 끝나지 않는 분해는 불변식 위반
    assert run(["resolve", "--group", "Circle", "--N", "2", "--cell", "cell:C1", "--max-len", "0",
                "--quiet"]) == 2


def test_verbosity_env():
    """TORALKIT_VERBOSE 가 숫자가 아니면 기본값으로"""
    print("\n=== 상세 수준 환경 변수 테스트 ===")
    assert verbosity_from_env("2") == 2
    assert verbosity_from_env("abc") == 1
    assert verbosity_from_env("") == 1
    assert verbosity_from_env(" ") == 1
    assert verbosity_from_env("-3") == 0
    previous = os.environ.get("TORALKIT_VERBOSE")
    os.environ["TORALKIT_VERBOSE"] = "loud"
    try:
        assert verbosity_from_env() == 1
    finally:
        if previous is None:
            del os.environ["TORALKIT_VERBOSE"]
        else:
            os.environ["TORALKIT_VERBOSE"] = previous


def test_output_formats():
    print("\n=== 출력 형식 테스트 ===")
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "poset.json")
        assert run(["poset", "--group", "Circle", "--N", "2", "--out", path, "--quiet"]) == 0
        with open(path, encoding='utf-8') as f:
            data = json.load(f)
        assert data['subgroups'] == ["C1", "C2", "T"]
        assert sorted(map(tuple, data['order'])) == [("T", "C1"), ("T", "C2")]

        path = os.path.join(tmp, "poset.tsv")
        assert run(["poset", "--group", "Circle", "--N", "2", "--format", "tsv", "--out", path, "--quiet"]) == 0
        with open(path, encoding='utf-8') as f:
            lines = f.read().splitlines()
        assert lines[0] == "larger\tsmaller"
        assert len(lines) == 3

        path = os.path.join(tmp, "cells.txt")
        assert run(["cells", "--group", "SO3", "--N", "2", "--list", "--format", "text", "--out", path,
                    "--quiet"]) == 0
        with open(path, encoding='utf-8') as f:
            assert f.read().splitlines()[0] == "sphere"


def test_module_literal():
    print("\n=== 가군 리터럴 테스트 ===")
    ctx = build_context("SO3", 2)
    module = corpus(ctx, Level.G, 1, 4, WINDOW)[0]
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "m.json")
        with open(path, 'w', encoding='utf-8') as f:
            f.write(dumps_json(module.to_dict()))
        loaded = load_module(path, ctx)
        assert loaded.window == module.window
        assert run(["check-qce", "--group", "SO3", "--N", "2", "--module", path, "--quiet",
                    "--out", os.path.join(tmp, "qce.json")]) == 0
        try:
            load_module(path, build_context("SO3", 3))
            assert False, "절단이 다른 가군 파일이 로드됨"
        except ConfigError:
            pass
        broken = os.path.join(tmp, "broken.json")
        with open(broken, 'w', encoding='utf-8') as f:
            f.write("[1, 2")
        try:
            load_module(broken, ctx)
            assert False, "깨진 JSON 이 로드됨"
        except ConfigError:
            pass


def test_command_manager():
    print("\n=== 명령 관리자 테스트 ===")
    manager = default_manager()
    assert "selftest" in manager.commands and "change-groups" in manager.commands
    try:
        manager.get_command("plot")
        assert False, "없는 명령이 조회됨"
    except ConfigError:
        pass
    config = Config(group="Circle", N=2, window=WINDOW, verbosity=0)
    result = manager.execute_command("poset", config)
    assert result.header == ["larger", "smaller"]
    assert manager.get_history() == ["poset"]
    cells = manager.execute_command("cells", Config(group="Circle", N=2, window=WINDOW, verbosity=0,
                                                    extras={"cell": "sphere"}))
    assert cells.render("tsv").startswith("flag\tvalue\n")
    manager.clear_history()
    assert manager.get_history() == []


def test_selftest_determinism():
    print("\n=== 자체 검사 결정성 테스트 ===")
    config = Config(group="SO3", N=2, window=WINDOW, seed=1, verbosity=0, extras={'count': 2})
    only = ["molien", "rings", "counit_control", "transport"]
    first = run_selftest(config, only)
    second = run_selftest(config, only)
    print(f"검사: {[(c['name'], c['passed']) for c in first['checks']]}")
    assert first['passed']
    assert [c['name'] for c in first['checks']] == only
    assert dumps_json(first) == dumps_json(second)
    assert first['count'] == 2


def test_selftest_parameters():
    """수용 매개변수는 고정이고 --count 는 모음 크기만 바꾼다"""
    print("\n=== 자체 검사 매개변수 테스트 ===")
    plain = Config(group="Circle", N=2, window=WINDOW, seed=1, verbosity=0)
    assert acceptance('descent', plain) == {'group': "SO3", 'count': 200, 'N': 4, 'window': (-24, 4)}
    assert acceptance('normality', plain)['count'] == 100
    assert acceptance('injective_dimension', plain)['N'] == 8
    assert acceptance('e2_sphere', plain) == ACCEPTANCE['e2_sphere']
    config = Config(group="Circle", N=2, window=WINDOW, seed=1, verbosity=0, extras={'count': 3})
    assert acceptance('descent', config) == {'group': "SO3", 'count': 3, 'N': 4, 'window': (-24, 4)}
    assert acceptance('normality', config)['corpus'] == 3
    assert acceptance('e2_sphere', config) == ACCEPTANCE['e2_sphere']
    report = run_selftest(config, ["descent"])
    print(f"하강: {report['checks'][0]}")
    assert report['passed']
    assert report['count'] == 3
    assert report['parameters']['descent'] == {'group': "SO3", 'count': 3, 'N': 4, 'window': [-24, 4]}


def test_e2_stability():
    """절단을 키웠을 때 바뀌는 t−s 를 모두 기록"""
    print("\n=== E₂ 안정성 테스트 ===")
    small = E2Page(ExtTable({(0, 0): 1, (1, 4): 2}, WINDOW, "SO3", 8, 1), "X", "Y")
    large = E2Page(ExtTable({(0, 0): 1, (1, 4): 3, (0, 6): 1}, WINDOW, "SO3", 12, 1), "X", "Y")
    assert unstable_degrees(small, large) == [3, 6]
    assert unstable_degrees(small, small) == []
    ctx = build_context("SO3", 2)
    sphere = parse_cell("sphere")
    page = e2_page(sphere, sphere, ctx, WINDOW)
    bigger = e2_page(sphere, sphere, build_context("SO3", 4), WINDOW)
    print(f"N=2→4 불안정 t−s: {unstable_degrees(page, bigger)}")
    assert 0 not in unstable_degrees(page, bigger)


def main():
    """메인 테스트 함수"""
    print("ToralKit 애덤스/명령줄 테스트 시작\n")

    tests = [
        ("구면 E₂ 페이지", test_e2_sphere),
        ("E₂ 가법성과 현수", test_e2_bilinear),
        ("붕괴 판정 모호성", test_degeneracy_ambiguous),
        ("종료 코드", test_exit_codes),
        ("상세 수준 환경 변수", test_verbosity_env),
        ("출력 형식", test_output_formats),
        ("가군 리터럴", test_module_literal),
        ("명령 관리자", test_command_manager),
        ("자체 검사 결정성", test_selftest_determinism),
        ("자체 검사 매개변수", test_selftest_parameters),
        ("E₂ 안정성", test_e2_stability),
    ]

    passed = 0
    failed = 0

    for test_name, test_func in tests:
        try:
            test_func()
            print(f"✅ {test_name} 테스트 통과")
            passed += 1
        except Exception as e:
            print(f"❌ {test_name} 테스트 실패: {e}")
            import traceback
            traceback.print_exc()
            failed += 1

    print(f"\n테스트 결과: {passed}개 통과, {failed}개 실패")
    return failed == 0


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
