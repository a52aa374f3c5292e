#!/usr/bin/env python3
"""
ToralKit 차수 대수 모듈 테스트
불변식과 몰리엔 급수, 반불변식, 정규형, Hom, 정규성, 코줄 복합체
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.core.errors import ModuleError, UnsupportedError
from src.cli.selftest import normality_closure
from src.gralg import (C_RING, D_RING, L_RING, EulerSet, GradedModule, RingAction, Summand, SummandKind,
                       check_localization_exchange, classify, cokernel, fixed_points, fixed_ring, hom_space,
                       invariants, is_normal_module, kernel, molien_series, pushout_extension, solomon_check,
                       stable_koszul)
from src.lattice import GroupSpec, MatrixGroup


def _series(codegrees, bound):
    coeffs = [1] + [0] * bound
    for d in codegrees:
        for k in range(d, bound + 1):
            coeffs[k] += coeffs[k - d]
    return coeffs


def test_sign_invariants():
    """ℚ[c]^{±1} = ℚ[c²]"""
    print("=== 부호 작용 불변식 테스트 ===")
    sign = RingAction.sign()
    inv = invariants(C_RING, sign, 40)
    print(f"생성원 여차수: {inv.generator_codegrees}")
    assert inv.generator_codegrees == [4]
    assert inv.dims == _series((4,), 40)
    assert [int(x) for x in molien_series(sign, 40)] == inv.dims
    assert inv.check_generated() and inv.check_fixed()
    assert inv.as_graded_ring('d') == D_RING


def test_su3_molien():
    print("\n=== SU3 몰리엔 급수 테스트 ===")
    spec = GroupSpec("SU3")
    action = RingAction(MatrixGroup(spec.rank, spec.weyl_generators))
    series = [int(x) for x in molien_series(action, 30)]
    print(f"계수: {series[:13]}")
    assert series == _series((4, 6), 30)


def test_solomon():
    print("\n=== 반불변식 검사 테스트 ===")
    report = solomon_check(GroupSpec("SO3"), 20)
    print(f"SO3: {report.to_dict()['holds']}")
    assert report.holds
    assert report.to_dict()['delta_kappa_invariant']
    try:
        solomon_check(GroupSpec("O2"), 20)
        assert False, "반사 없는 바일 군에서 검사가 실행됨"
    except UnsupportedError:
        pass


def test_classify():
    """바코드에서 정규형 복원 (작용 없음)"""
    print("\n=== 정규형 복원 테스트 ===")
    summands = [Summand.free(0), Summand.torsion(-2, 2), Summand.divisible(-6)]
    module = GradedModule.from_summands(C_RING, summands, -16, 4, equivariant=False)
    assert module.dim(0) == 2
    assert module.dim(-2) == 3
    assert module.dim(-6) == 2
    assert module.dim(2) == 1
    nf = classify(module)
    print(f"정규형: {nf.label}")
    assert nf.count(SummandKind.FREE) == 1
    assert nf.count(SummandKind.TORSION) == 1
    assert nf.count(SummandKind.DIVISIBLE) == 1
    assert Summand.torsion(-2, 2) in nf.summands
    try:
        GradedModule.from_summands(L_RING, [Summand.free(0)], -8, 4, equivariant=False)
        assert False, "로랑 환 위에 자유 성분이 만들어짐"
    except ModuleError:
        pass


def test_fixed_points():
    print("\n=== 고정점 가군 테스트 ===")
    assert fixed_ring(C_RING) == D_RING
    poly = GradedModule.from_summands(C_RING, [Summand.free(0)], -12, 4, equivariant=True, chi=-1)
    fixed, inclusion = fixed_points(poly)
    assert fixed.ring == D_RING
    assert fixed.dim(0) == 1
    assert fixed.dim(-2) == 0
    assert fixed.dim(-4) == 1
    assert inclusion.is_injective()


def test_hom_space():
    print("\n=== Hom 공간 테스트 ===")
    poly = GradedModule.from_summands(C_RING, [Summand.free(0)], -12, 4, equivariant=False)
    point = GradedModule.from_summands(C_RING, [Summand.torsion(0, 1)], -12, 4, equivariant=False)
    assert hom_space(poly, poly, 0).dim == 1
    assert hom_space(poly, poly, -2).dim == 1
    assert hom_space(poly, poly, 2).dim == 0
    # 꼬임 없는 가군으로 가는 꼬임 가군의 사상은 없음
    assert hom_space(point, poly, 0).dim == 0
    assert hom_space(poly, point, 0).dim == 1


def test_normality():
    """(c) 는 정규가 아니고 ℚ[c], ℚ[c,c⁻¹] 는 정규"""
    print("\n=== 정규성 판정 테스트 ===")
    ideal = GradedModule.from_summands(C_RING, [Summand.free(-2, 1)], -12, 4, equivariant=True, chi=-1)
    poly = GradedModule.from_summands(C_RING, [Summand.free(0)], -12, 4, equivariant=True, chi=-1)
    laurent = GradedModule.from_summands(L_RING, [Summand.laurent(0)], -12, 4, equivariant=True, chi=-1)
    report = is_normal_module(ideal)
    print(f"아이디얼: {report.to_dict()}")
    assert not report.holds
    assert report.witness is not None
    assert is_normal_module(poly).holds
    assert is_normal_module(laurent)


def test_normality_closure():
    """정규 가군 사이 사상의 핵, 여핵, 밀어내기 확장은 정규"""
    print("\n=== 정규성 닫힘 테스트 ===")
    poly = GradedModule.from_summands(C_RING, [Summand.free(0)], -12, 4, equivariant=True, chi=-1)
    tors = GradedModule.from_summands(C_RING, [Summand.torsion(0, 2)], -12, 4, equivariant=True, chi=-1)
    point = GradedModule.from_summands(C_RING, [Summand.torsion(0, 1)], -12, 4, equivariant=True, chi=-1)
    space = hom_space(poly, tors, 0)
    assert space.dim == 1
    f = space.as_map(0)
    k, inclusion = kernel(f)
    assert k.dims_in(-6, 0) == {-6: 1, -5: 0, -4: 1, -3: 0, -2: 0, -1: 0, 0: 0}
    assert is_normal_module(k).holds
    assert cokernel(f)[0].is_zero()
    assert is_normal_module(cokernel(f)[0]).holds
    # ℚ[c]/c 로의 사영의 핵은 아이디얼 (c): 정규가 아닌 몫에서는 닫힘이 깨진다
    assert not is_normal_module(kernel(hom_space(poly, point, 0).as_map(0))[0]).holds

    g = hom_space(k, poly, 0)
    assert g.dim == 1
    extension, j = pushout_extension(inclusion, g.as_map(0))
    print(f"확장 차원: {extension.dims_in(-4, 0)}")
    assert extension.dims_in(-4, 0) == {-4: 1, -3: 0, -2: 2, -1: 0, 0: 2}
    assert j.is_injective()
    assert is_normal_module(extension).holds
    try:
        pushout_extension(f, f)
        assert False, "단사가 아닌 사상을 밀어냄"
    except ModuleError:
        pass

    free = GradedModule.from_summands(C_RING, [Summand.free(-4)], -12, 4, equivariant=True, chi=-1)
    report = normality_closure([poly, tors, free], 40, seed=3)
    print(f"닫힘: {report}")
    assert report['failures'] == []
    assert report['tried']['sum'] == 40
    assert report['tried']['kernel'] > 0 and report['tried']['cokernel'] > 0
    assert report['tried']['extension'] > 0


def test_koszul():
    print("\n=== 안정 코줄 복합체 테스트 ===")
    koszul = stable_koszul(C_RING, [(1,)], -8, 8)
    coh = koszul.cohomology()
    print(f"코호몰로지: {coh}")
    assert coh[0] == {}
    assert coh[1] == koszul.top_dual_dims()
    assert sorted(coh[1]) == [2, 4, 6, 8]
    try:
        stable_koszul(C_RING, [], -8, 8)
        assert False, "빈 생성원으로 복합체가 만들어짐"
    except ModuleError:
        pass


def test_localization_exchange():
    print("\n=== 국소화 교환 테스트 ===")
    report = check_localization_exchange(C_RING, RingAction.sign(), EulerSet("T>C1", 1, [(1,)]), -24, 0)
    assert report.holds
    try:
        check_localization_exchange(C_RING, RingAction.sign(), EulerSet("C1", 0, []))
        assert False, "빈 오일러 집합이 허용됨"
    except ModuleError:
        pass


def main():
    """메인 테스트 함수"""
    print("ToralKit 차수 대수 모듈 테스트 시작\n")

    tests = [
        ("부호 작용 불변식", test_sign_invariants),
        ("SU3 몰리엔 급수", test_su3_molien),
        ("반불변식 검사", test_solomon),
        ("정규형 복원", test_classify),
        ("고정점 가군", test_fixed_points),
        ("Hom 공간", test_hom_space),
        ("정규성 판정", test_normality),
        ("정규성 닫힘", test_normality_closure),
        ("안정 코줄 복합체", test_koszul),
        ("국소화 교환", test_localization_exchange),
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
