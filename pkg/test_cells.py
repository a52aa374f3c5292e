#!/usr/bin/env python3
"""
ToralKit 셀 모듈 테스트
셀 문법, 카탈로그, 지지, 고정점 분해, 수반 현수, 군 변경
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.core.errors import ConfigError, UnsupportedError
from src.diagram import Level, build_context, check_qce, counit_check, psi, theta_star
from src.lattice import GroupSpec, ToralSubgroup, WeylAction, build_poset
from src.cells import (CellKind, adjoint_check, adjoint_shift, catalog_names, change_groups,
                       compare_dimensions, fixed_point_decomposition, geometric_support, parse_cell, pi_A,
                       shriek_star_agreement, smash_idempotents, suspend_adjoint)

WINDOW = (-16, 8)


def test_cell_grammar():
    print("=== 셀 문법 테스트 ===")
    idem = parse_cell("idem:C1,C3")
    assert idem.kind == CellKind.IDEMPOTENT
    assert idem.subgroups == ["C1", "C3"]
    assert idem.label == "idem:C1,C3"
    susp = parse_cell("susp2:sphere")
    assert susp.shift == 2 and susp.base.kind == CellKind.SPHERE
    total = parse_cell("sphere + idem:T")
    assert total.kind == CellKind.SUM and len(total.parts) == 2
    nested = parse_cell("coind:N:idem:C2")
    assert nested.source == "N" and nested.base == parse_cell("idem:C2")
    for bad in ("", "bogus", "coind:T:sphere", "idem"):
        try:
            parse_cell(bad)
            assert False, f"잘못된 셀이 해석됨: {bad!r}"
        except ConfigError:
            pass


def test_catalog():
    print("\n=== 셀 카탈로그 테스트 ===")
    so3 = catalog_names(build_context("SO3", 2))
    o2 = catalog_names(build_context("O2", 2))
    print(f"SO3: {so3}")
    assert so3[:3] == ["sphere", "etoral", "idem:T"]
    assert "cell:T" in so3 and "cell:C2" in so3
    assert "cell:T" in o2 and "cell:C2" in o2
    assert "coind:T:idem:C1" in so3 and "free:idem:C2" in so3
    try:
        pi_A(parse_cell("cell:C5"), build_context("SO3", 2), WINDOW)
        assert False, "포셋에 없는 부분군의 셀이 만들어짐"
    except UnsupportedError:
        pass


def test_so3_cells():
    """SO3: C₁ 에는 H*(G/T) 한 벌, 나머지 자리는 O2 와 같은 두 벌"""
    print("\n=== SO3 셀 테스트 ===")
    ctx = build_context("SO3", 4)
    one, two, three = ctx.get_flag("C1"), ctx.get_flag("C2"), ctx.get_flag("C3")
    cell = pi_A(parse_cell("cell:C2"), ctx, WINDOW)
    assert cell.value(one).dims_in(1, 3) == {1: 0, 2: 0, 3: 1}
    assert cell.value(two).dim(1) == 2
    assert cell.value(three).is_zero()
    assert check_qce(cell).holds
    n_level = pi_A(parse_cell("cell:C2"), ctx, WINDOW, Level.N)
    assert n_level.value(one).dims_in(1, 3) == {1: 1, 2: 0, 3: 1}
    assert compare_dimensions(theta_star(cell), n_level) == []
    assert counit_check(n_level).holds
    assert [K.label for K in geometric_support(cell)] == ["C1", "C2"]

    flag_variety = pi_A(parse_cell("cell:T"), ctx, WINDOW)
    print(f"G/T₊ 의 C1 값: {flag_variety.value(one).dims_in(-4, 0)}")
    assert flag_variety.value(one).dims_in(-4, 0) == {-4: 1, -3: 0, -2: 1, -1: 0, 0: 1}
    assert flag_variety.value(ctx.torus_flag()).dim(0) == 2
    assert check_qce(flag_variety).holds
    n_variety = pi_A(parse_cell("cell:T"), ctx, WINDOW, Level.N)
    assert compare_dimensions(theta_star(flag_variety), n_variety) == []
    assert counit_check(n_variety).holds


def test_geometric_support():
    print("\n=== 기하적 지지 테스트 ===")
    ctx = build_context("Circle", 2)

    def support(name):
        return [K.label for K in geometric_support(pi_A(parse_cell(name), ctx, WINDOW))]

    assert support("sphere") == ["C1", "C2", "T"]
    assert support("idem:T") == ["T"]
    assert support("idem:C2") == ["C2"]
    assert support("idem:C1,C2") == ["C1", "C2"]


def test_smash_idempotents():
    print("\n=== 멱등 셀 스매시 테스트 ===")
    result = smash_idempotents(parse_cell("idem:C1,C2,T"), parse_cell("idem:C2,T"))
    assert result.label == "idem:C2,T"
    assert smash_idempotents(parse_cell("idem:C1"), parse_cell("idem:C2")).subgroups == []
    try:
        smash_idempotents(parse_cell("sphere"), parse_cell("idem:C1"))
        assert False, "구면과 스매시가 허용됨"
    except UnsupportedError:
        pass


def test_fixed_point_decomposition():
    """반사가 모든 부분군을 고정하므로 조각은 하나"""
    print("\n=== 고정점 분해 테스트 ===")
    ctx = build_context("SO3", 3)
    for K in ctx.poset.subgroups:
        decomposition = fixed_point_decomposition(K, ctx.poset)
        assert len(decomposition) == 1
        assert decomposition.pieces[0].stabilizer_order == 2
        assert decomposition.subgroups() == [K]


def test_fixed_point_decomposition_rank_two():
    """좌표 교환 바일 작용: K[1,0] 의 궤도는 둘이라 조각 둘, 안정자는 자명"""
    print("\n=== 랭크 2 고정점 분해 테스트 ===")
    swap = WeylAction.from_generators(2, [[[0, 1], [1, 0]]])
    poset = build_poset(GroupSpec("Torus2"), None, ["1", "K[1,0]", "K[0,1]"], weyl=swap)
    L = ToralSubgroup.from_label(2, "K[1,0]")
    other = ToralSubgroup.from_label(2, "K[0,1]")
    decomposition = fixed_point_decomposition(L, poset)
    print(f"조각: {decomposition.to_dict()}")
    assert len(decomposition) == 2
    assert decomposition.subgroups() == [L, other]
    assert [p.stabilizer_order for p in decomposition.pieces] == [1, 1]
    assert [p.coset for p in decomposition.pieces] == [0, 1]
    # 교환으로 고정되는 부분군은 조각 하나
    for fixed in (ToralSubgroup.trivial(2), ToralSubgroup.torus(2)):
        single = fixed_point_decomposition(fixed, poset)
        assert len(single) == 1
        assert single.pieces[0].stabilizer_order == 2


def test_adjoint():
    print("\n=== 수반 표현 현수 테스트 ===")
    ctx = build_context("SO3", 2)
    sphere = pi_A(parse_cell("sphere"), ctx, WINDOW)
    assert adjoint_shift(sphere) == 2
    suspended = suspend_adjoint(sphere)
    one = ctx.get_flag("C1")
    assert suspended.value(one).dim(2) == sphere.value(one).dim(0)
    report = adjoint_check(sphere)
    print(f"SO3: {report.to_dict()['holds']}")
    assert report.holds
    circle = pi_A(parse_cell("sphere"), build_context("Circle", 2), WINDOW)
    assert adjoint_shift(circle) == 0
    assert adjoint_check(circle).holds


def test_change_groups():
    print("\n=== 군 변경 테스트 ===")
    so3 = build_context("SO3", 2)
    circle = build_context("Circle", 2)
    sphere = pi_A(parse_cell("sphere"), so3, WINDOW)
    restricted = change_groups(sphere, circle, "theta_star")
    assert restricted.context is circle
    assert compare_dimensions(restricted, pi_A(parse_cell("sphere"), circle, WINDOW)) == []
    lifted = change_groups(pi_A(parse_cell("sphere"), circle, WINDOW), so3, "theta_upper_star")
    assert lifted.context is so3 and lifted.level == Level.G
    assert shriek_star_agreement(pi_A(parse_cell("idem:C2"), circle, WINDOW), so3) == []
    try:
        change_groups(sphere, build_context("Circle", 3))
        assert False, "절단이 다른 문맥으로 변경됨"
    except UnsupportedError:
        pass
    try:
        change_groups(sphere, circle, "theta_lower_shriek")
        assert False, "알 수 없는 함자가 허용됨"
    except UnsupportedError:
        pass


def test_coinduction_square():
    """π_G(coind:N:X) = Ψ π_N(X), 자유 멱등 = coind:T"""
    print("\n=== 공유도 사각형 테스트 ===")
    ctx = build_context("O2", 2)
    for name in ("sphere", "idem:C2"):
        coinduced = pi_A(parse_cell(f"coind:N:{name}"), ctx, WINDOW)
        expected = psi(pi_A(parse_cell(name), ctx, WINDOW, Level.N))
        assert compare_dimensions(coinduced, expected) == []
        assert check_qce(coinduced).holds
        restricted = theta_star(pi_A(parse_cell(name), ctx, WINDOW))
        assert compare_dimensions(restricted, pi_A(parse_cell(name), ctx, WINDOW, Level.N)) == []
    free = pi_A(parse_cell("free:idem:C2"), ctx, WINDOW)
    closed = pi_A(parse_cell("coind:T:idem:C2"), ctx, WINDOW)
    assert compare_dimensions(free, closed) == []


def main():
    """메인 테스트 함수"""
    print("ToralKit 셀 모듈 테스트 시작\n")

    tests = [
        ("셀 문법", test_cell_grammar),
        ("셀 카탈로그", test_catalog),
        ("SO3 셀", test_so3_cells),
        ("기하적 지지", test_geometric_support),
        ("멱등 셀 스매시", test_smash_idempotents),
        ("고정점 분해", test_fixed_point_decomposition),
        ("랭크 2 고정점 분해", test_fixed_point_decomposition_rank_two),
        ("수반 표현 현수", test_adjoint),
        ("군 변경", test_change_groups),
        ("공유도 사각형", test_coinduction_square),
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
