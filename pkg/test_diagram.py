#!/usr/bin/env python3
"""
ToralKit 다이어그램 모듈 테스트
환 다이어그램, 모음, qce, 하강 함자의 단위/여단위
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.core.errors import ModuleError
from src.gralg import C_RING, D_RING, L_RING, QQ_RING, GradedModule, Summand
from src.lattice.poset import Flag
from src.diagram import (DiagramModule, Level, build_context, check_F_continuity, check_qce, corpus,
                         counit_check, diagram_hom, eigenspace_law, psi, theta_star, triangle_check, unit_check)
from src.cells import parse_cell, pi_A

WINDOW = (-16, 8)


def test_so3_rings():
    """SO3, N=1: 자명군에서는 ℚ[d], 국소화 깃발에서는 ℚ[c,c⁻¹]"""
    print("=== SO3 환 다이어그램 테스트 ===")
    ctx = build_context("SO3", 1)
    one = ctx.get_flag("C1")
    top = ctx.get_flag("T>C1")
    print(f"R̃(C1)={ctx.ring(Level.N, one).label}, R_inv(C1)={ctx.ring(Level.G, one).label}")
    assert ctx.ring(Level.N, one) == C_RING
    assert ctx.ring(Level.G, one) == D_RING
    assert ctx.ring(Level.G, top) == L_RING
    assert ctx.ring(Level.G, ctx.torus_flag()) == QQ_RING
    assert ctx.fixing_part(one)
    assert not ctx.fixing_part(top)
    assert ctx.rinv.check_functoriality() == []
    assert ctx.ra.check_first_last() == []


def test_circle_rings():
    print("\n=== 원군 환 다이어그램 테스트 ===")
    ctx = build_context("Circle", 3)
    for K in ctx.finite_subgroups():
        assert ctx.ring(Level.G, Flag([K])) == C_RING
        assert ctx.ring(Level.G, ctx.localized_flag(K)) == L_RING
        assert not ctx.acts(Level.G, Flag([K]))
    assert len(ctx.singletons()) == 4


def test_corpus_determinism():
    print("\n=== 모음 결정성 테스트 ===")
    ctx = build_context("SO3", 2)
    first = [m.to_dict() for m in corpus(ctx, Level.G, 4, 11, WINDOW)]
    second = [m.to_dict() for m in corpus(ctx, Level.G, 4, 11, WINDOW)]
    assert first == second
    for m in corpus(ctx, Level.G, 4, 11, WINDOW):
        assert m.check() == []
        again = DiagramModule.from_dict(ctx, m.to_dict())
        assert again.window == m.window
        assert again.check() == []


def test_qce_and_continuity():
    print("\n=== qce 와 F-연속성 테스트 ===")
    ctx = build_context("SO3", 2)
    for m in corpus(ctx, Level.G, 4, 3, WINDOW):
        assert check_qce(m).holds, m.name
        n = theta_star(m)
        assert n.level == Level.N
        assert check_qce(n).holds, m.name
        assert check_F_continuity(n).holds, m.name
        assert check_qce(psi(n)).holds, m.name


def test_unit():
    """η: M → Ψθ_*M 은 G 수준 가군에서 동형"""
    print("\n=== 단위 사상 테스트 ===")
    ctx = build_context("SO3", 2)
    for m in corpus(ctx, Level.G, 4, 5, WINDOW):
        report = unit_check(m)
        print(f"{m.name}: {report.to_dict()}")
        assert report.holds
    sphere = pi_A(parse_cell("sphere"), ctx, WINDOW)
    assert triangle_check(sphere).holds
    try:
        unit_check(theta_star(sphere))
        assert False, "N 수준 가군에 단위 사상이 만들어짐"
    except ModuleError:
        pass


def _at_trivial(ctx, summands, name):
    one = ctx.poset.get("C1")
    single = Flag([one])
    value = GradedModule.from_summands(ctx.ring(Level.N, single), summands, -8, 4,
                                       equivariant=True, chi=ctx.chi(Level.N, single))
    return DiagramModule.assemble(ctx, Level.N, None, {one: value}, window=(-8, 4), name=name)


def test_counit():
    """ℚ ⊕ Σ²ℚ̃ 는 G에서 제한된 가군이 아님"""
    print("\n=== 여단위 사상 테스트 ===")
    ctx = build_context("SO3", 1)
    asymmetric = _at_trivial(ctx, [Summand.torsion(0, 1), Summand.torsion(2, 1, 1)], "asymmetric")
    symmetric = _at_trivial(ctx, [Summand.torsion(0, 2)], "symmetric")
    report = counit_check(asymmetric)
    print(f"비대칭: {report.to_dict()}")
    assert not report.holds
    assert report.witness['flag'] == "C1"
    assert counit_check(symmetric).holds
    sphere = pi_A(parse_cell("sphere"), ctx, WINDOW)
    assert counit_check(theta_star(sphere)).holds


def test_eigenspace_law():
    """dim n(F)⁻_t = dim n(F)⁺_{t+2}: ℚ[c]/c² 는 지키고 ℚ ⊕ Σ²ℚ̃ 는 차수 -2 에서 깨짐"""
    print("\n=== 고유공간 법칙 테스트 ===")
    ctx = build_context("SO3", 1)
    single = Flag([ctx.poset.get("C1")])
    asymmetric = _at_trivial(ctx, [Summand.torsion(0, 1), Summand.torsion(2, 1, 1)], "asymmetric")
    symmetric = _at_trivial(ctx, [Summand.torsion(0, 2)], "symmetric")
    print(f"비대칭 실패 차수: {eigenspace_law(asymmetric, single)}")
    assert eigenspace_law(asymmetric, single) == -2
    assert eigenspace_law(symmetric, single) is None
    sphere = theta_star(pi_A(parse_cell("sphere"), ctx, WINDOW))
    assert eigenspace_law(sphere, single) is None


def test_descent_large_corpus():
    """SO3, N=4, 창 [-24, 4] 모음에서 단위 동형과 θ_*, Ψ 의 qce"""
    print("\n=== 큰 창 하강 테스트 ===")
    ctx = build_context("SO3", 4)
    modules = corpus(ctx, Level.G, 12, 17, (-24, 4))
    assert len(modules) == 12
    for m in modules:
        assert unit_check(m).holds, m.name
        n = theta_star(m)
        assert check_qce(n).holds, m.name
        assert check_F_continuity(n).holds, m.name
        assert check_qce(psi(n)).holds, m.name


def test_diagram_hom():
    print("\n=== 다이어그램 Hom 테스트 ===")
    ctx = build_context("Circle", 2)
    sphere = pi_A(parse_cell("sphere"), ctx, WINDOW)
    hom = diagram_hom(sphere, sphere, 0)
    print(f"End(S⁰) 차원: {hom.dim}")
    assert hom.dim == 1
    assert hom.as_map(0).is_iso()


def main():
    """메인 테스트 함수"""
    print("ToralKit 다이어그램 모듈 테스트 시작\n")

    tests = [
        ("SO3 환 다이어그램", test_so3_rings),
        ("원군 환 다이어그램", test_circle_rings),
        ("모음 결정성", test_corpus_determinism),
        ("qce 와 F-연속성", test_qce_and_continuity),
        ("단위 사상", test_unit),
        ("여단위 사상", test_counit),
        ("고유공간 법칙", test_eigenspace_law),
        ("큰 창 하강", test_descent_large_corpus),
        ("다이어그램 Hom", test_diagram_hom),
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
