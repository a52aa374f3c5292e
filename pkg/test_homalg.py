#!/usr/bin/env python3
"""
ToralKit 호몰로지 대수 모듈 테스트
단사 분해의 길이와 완전성, Ext 표
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.core.errors import ModuleError, ResolutionError
from src.diagram import Level, build_context, corpus
from src.homalg import ext, injective_resolution, localization_sequence_check
from src.cells import parse_cell, pi_A

WINDOW = (-16, 8)


def test_sphere_resolution():
    print("=== 구면 단사 분해 테스트 ===")
    ctx = build_context("Circle", 2)
    sphere = pi_A(parse_cell("sphere"), ctx, WINDOW)
    resolution = injective_resolution(sphere)
    print(f"길이: {resolution.length}, 단사: {[len(stage) for stage in resolution.specs]}")
    assert resolution.length <= 1
    assert resolution.check_exactness() is None
    assert resolution.specs[0]
    assert resolution.to_dict()['target'] == sphere.name


def test_localization_sequence():
    """구면: f_T(ℚ) 다음에 유한 부분군마다 나눗셈 가군"""
    print("\n=== 국소화 수열 테스트 ===")
    ctx = build_context("Circle", 3)
    for level in (Level.N, Level.G):
        report = localization_sequence_check(injective_resolution(pi_A(parse_cell("sphere"), ctx, WINDOW, level)))
        print(f"{level.value}: {report['second']}")
        assert report['holds']
        assert report['missing'] == []
    cell = injective_resolution(pi_A(parse_cell("cell:C1"), ctx, WINDOW))
    assert not localization_sequence_check(cell)['holds']


def test_free_cell_resolution():
    """자유 궤도 T₊ 의 셀은 길이 정확히 1"""
    print("\n=== 자유 셀 분해 테스트 ===")
    ctx = build_context("Circle", 2)
    cell = pi_A(parse_cell("cell:C1"), ctx, WINDOW)
    resolution = injective_resolution(cell)
    assert resolution.length == 1
    try:
        injective_resolution(cell, max_len=0)
        assert False, "길이 0 안에 분해가 끝남"
    except ResolutionError as e:
        assert e.exit_code == 2
        assert 'max_len' in e.witness_json()


def test_corpus_injective_dimension():
    print("\n=== 단사 차원 테스트 ===")
    ctx = build_context("SO3", 2)
    for m in corpus(ctx, Level.G, 3, 0, WINDOW):
        resolution = injective_resolution(m)
        print(f"{m.name}: 길이 {resolution.length}")
        assert resolution.length <= ctx.spec.rank


def test_ext_sphere():
    print("\n=== 구면 Ext 테스트 ===")
    ctx = build_context("SO3", 2)
    sphere = pi_A(parse_cell("sphere"), ctx, WINDOW)
    table = ext(sphere, sphere)
    print(f"t-s 별 합: {table.totals()}")
    assert table.totals().get(0) == 1
    assert set(table.lines()) <= {0, 1}
    assert table.vanishing_failures() == []
    assert table.to_tsv().startswith("s\tt\tdim\n")
    lo, hi = table.window
    assert table.shifted(2).window == (lo + 2, hi + 2)


def test_ext_parallel():
    """작업 수와 무관한 표"""
    print("\n=== 병렬 Ext 테스트 ===")
    ctx = build_context("Circle", 2)
    sphere = pi_A(parse_cell("sphere"), ctx, WINDOW)
    etoral = pi_A(parse_cell("etoral"), ctx, WINDOW)
    assert ext(sphere, etoral, (-6, 2)) == ext(sphere, etoral, (-6, 2), jobs=3)


def test_ext_mismatch():
    print("\n=== Ext 문맥 불일치 테스트 ===")
    a = pi_A(parse_cell("sphere"), build_context("Circle", 2), WINDOW)
    b = pi_A(parse_cell("sphere"), build_context("Circle", 3), WINDOW)
    try:
        ext(a, b)
        assert False, "다른 문맥의 Ext 가 계산됨"
    except ModuleError:
        pass


def main():
    """메인 테스트 함수"""
    print("ToralKit 호몰로지 대수 모듈 테스트 시작\n")

    tests = [
        ("구면 단사 분해", test_sphere_resolution),
        ("국소화 수열", test_localization_sequence),
        ("자유 셀 분해", test_free_cell_resolution),
        ("단사 차원", test_corpus_injective_dimension),
        ("구면 Ext", test_ext_sphere),
        ("병렬 Ext", test_ext_parallel),
        ("Ext 문맥 불일치", test_ext_mismatch),
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
