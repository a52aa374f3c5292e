#!/usr/bin/env python3
"""
ToralKit 격자 모듈 테스트
부분군 포셋, 바일 작용, 성분 구조, 수송 범주
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.core.errors import LatticeError, UnsupportedError
from src.lattice import (GroupSpec, IndexKind, ToralSubgroup, build_poset, check_transport_laws,
                         check_weyl_preserves_order, component_structure, connected_structure,
                         discrete_residual, discrete_structure, flag_isotropy_check, wgk_check)


def test_circle_poset():
    """Circle, N=3: 부분군 4개, 공토러스 쌍 3개"""
    print("=== 원군 포셋 테스트 ===")
    poset = build_poset(GroupSpec("Circle"), 3)
    labels = [K.label for K in poset.subgroups]
    print(f"부분군: {labels}")
    assert labels == ["C1", "C2", "C3", "T"]
    pairs = [(K.label, L.label) for K, L in poset.nontrivial_pairs()]
    assert sorted(pairs) == [("T", "C1"), ("T", "C2"), ("T", "C3")]
    assert poset.to_dict()['reflexive']


def test_so3_poset_weyl():
    print("\n=== SO3 포셋과 바일 작용 테스트 ===")
    poset = build_poset(GroupSpec("SO3"), 3)
    assert poset.weyl.order == 2
    assert check_weyl_preserves_order(poset)
    # 반사는 토러스의 모든 부분군을 고정한다
    for K in poset.subgroups:
        assert poset.orbit(K) == [K]
        assert len(poset.stabilizer(K)) == 2
    assert wgk_check(poset)['holds']
    assert flag_isotropy_check(poset, 1)


def test_labels():
    print("\n=== 부분군 레이블 테스트 ===")
    assert ToralSubgroup.from_label(1, "C3") == ToralSubgroup.cyclic(3)
    assert ToralSubgroup.from_label(1, "T").is_torus
    assert ToralSubgroup.cyclic(1).label == "C1"
    assert ToralSubgroup.cyclic(4).contains(ToralSubgroup.cyclic(2))
    assert not ToralSubgroup.cyclic(4).contains(ToralSubgroup.cyclic(3))
    poset = build_poset(GroupSpec("Circle"), 2)
    try:
        poset.get("C5")
        assert False, "절단 밖 부분군이 조회됨"
    except LatticeError:
        pass


def test_rank_two_poset():
    print("\n=== 랭크 2 포셋 테스트 ===")
    poset = build_poset(GroupSpec("Torus2"), None, ["1", "K[1,0]", "K[0,1]"])
    assert len(poset.subgroups) == 4
    assert len(poset.nontrivial_pairs()) == 5
    try:
        GroupSpec("SU3").require_module_scope()
        assert False, "랭크 2 가군 연산이 허용됨"
    except UnsupportedError:
        pass
    try:
        GroupSpec("Spin7")
        assert False, "카탈로그 밖 군이 만들어짐"
    except UnsupportedError:
        pass


def test_component_structures():
    """깃발 색인 리 구조는 감소, 부분군 색인은 감소가 아님 (SO3)"""
    print("\n=== 성분 구조 테스트 ===")
    spec = GroupSpec("SO3")
    poset = build_poset(spec, 4)
    flags = component_structure(spec, poset, 1)
    subgroups = component_structure(spec, poset, 1, IndexKind.SUBGROUPS)
    print(f"깃발: 감소={flags.is_decreasing}, 부분군: 감소={subgroups.is_decreasing}")
    assert flags.is_decreasing and flags.is_normal
    assert not subgroups.is_decreasing
    residual = {F.label: flags.residual_order(F) for F in flags.objects if F.length == 0}
    print(f"잔여군 위수: {residual}")
    # 자명군에서만 W^e 가 바일 군 전체
    assert residual == {"C1": 1, "C2": 2, "C3": 2, "C4": 2, "T": 2}
    assert connected_structure(poset, 1).is_decreasing
    assert discrete_structure(poset, 1).is_normal


def test_transport_laws():
    print("\n=== 수송 범주 법칙 테스트 ===")
    spec = GroupSpec("O2")
    poset = build_poset(spec, 3)
    for index in (IndexKind.FLAGS, IndexKind.SUBGROUPS):
        cs = component_structure(spec, poset, 1, index)
        report = check_transport_laws(poset, cs.objects, cs.inclusion)
        print(f"{index.value}: 사상 {report['morphisms']}개, 세 쌍 {report['triples']}개")
        assert report['holds']
    residual = discrete_residual(discrete_structure(poset, 1))
    assert residual.composition_well_defined


def main():
    """메인 테스트 함수"""
    print("ToralKit 격자 모듈 테스트 시작\n")

    tests = [
        ("원군 포셋", test_circle_poset),
        ("SO3 포셋과 바일 작용", test_so3_poset_weyl),
        ("부분군 레이블", test_labels),
        ("랭크 2 포셋", test_rank_two_poset),
        ("성분 구조", test_component_structures),
        ("수송 범주 법칙", test_transport_laws),
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
