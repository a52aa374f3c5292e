"""
ToralKit 환 다이어그램
깃발 위의 R̃ (Ra), R_inv (Rinv), R_tw (Rtw) 값과 부분깃발 포함에 대한 환 사상
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import Matrix

from ..core.errors import LatticeError, UnsupportedError
from ..core.log import log
from ..gralg.localization import euler_set, localize
from ..gralg.module_ops import fixed_ring
from ..gralg.polynomial import GradedRing, RingAction, RingMap, TwistedGroupRing, polynomial_ring
from ..lattice.component import ComponentStructure
from ..lattice.poset import Flag, SubgroupPoset
from ..lattice.subgroup import ToralSubgroup, coordinates
from ..lattice.weyl import MatrixGroup


class RingFlavor(Enum):
    """환 다이어그램 종류"""
    RA = "Ra"
    RINV = "Rinv"
    RTW = "Rtw"


class RingDiagram:
    """깃발 색인 환 다이어그램 (부분깃발 F' ⊂ F 마다 R(F') → R(F))"""

    def __init__(self, poset: SubgroupPoset, flags: List[Flag], flavor: RingFlavor,
                 values: Dict[Flag, GradedRing], maps: Dict[Tuple[Flag, Flag], RingMap],
                 twisted: Optional[Dict[Flag, TwistedGroupRing]] = None):
        self.poset = poset
        self.flags = list(flags)
        self.flavor = flavor
        self.values = values
        self.maps = maps
        self.twisted = twisted or {}

    def value(self, flag: Flag) -> GradedRing:
        return self.values[flag]

    def map(self, sub: Flag, flag: Flag) -> RingMap:
        if sub == flag:
            return RingMap.identity(self.values[flag])
        if (sub, flag) not in self.maps:
            raise LatticeError(f"환 사상 없음: {sub.label} → {flag.label}")
        return self.maps[(sub, flag)]

    def label(self, flag: Flag) -> str:
        if flag in self.twisted:
            return self.twisted[flag].label
        return self.values[flag].label

    def check_functoriality(self) -> List[Tuple[str, str, str]]:
        """F₁ ⊂ F₂ ⊂ F₃ 마다 합성 일치 확인, 실패 목록 반환"""
        failures = []
        present = set(self.flags)
        for f3 in self.flags:
            subs = [f for f in f3.subflags() if f in present and f != f3]
            for f1 in subs:
                for f2 in subs:
                    if f1 == f2 or not f1.is_subflag_of(f2):
                        continue
                    direct = _substitution(self.map(f1, f3))
                    composite = _substitution(self.map(f2, f3)) * _substitution(self.map(f1, f2))
                    if direct != composite:
                        failures.append((f1.label, f2.label, f3.label))
        return failures

    def check_first_last(self) -> List[str]:
        """값이 (첫 항 ⊃ 끝 항) 깃발의 값과 같은지"""
        failures = []
        for flag in self.flags:
            if flag.length < 2:
                continue
            short = Flag([flag.first, flag.last])
            if short in self.values and self.values[short] != self.values[flag]:
                failures.append(flag.label)
        return failures

    def to_dict(self) -> Dict:
        return {
            'flavor': self.flavor.value,
            'values': {f.label: self.label(f) for f in self.flags},
            'maps': {f"{a.label}->{b.label}": m.to_dict() for (a, b), m in sorted(
                self.maps.items(), key=lambda kv: (kv[0][1].sort_key(), kv[0][0].sort_key()))},
        }


def _substitution(ring_map: RingMap) -> Matrix:
    """합성 비교용 행렬 (랭크 ≤ 1 은 지수 1×1)"""
    if ring_map.substitution is not None:
        return ring_map.substitution
    src, tgt = ring_map.source, ring_map.target
    if src.rank == 0:
        return Matrix.zeros(tgt.rank, 0)
    return Matrix([[ring_map.exponent]])


def _quotient_ring(K: ToralSubgroup) -> GradedRing:
    """H*(B(T/K)): 생성원은 K^⊥ 기저"""
    return polynomial_ring(len(K.annihilator))


def _lattice_map(rank: int, source: GradedRing, target: GradedRing,
                 k_src: ToralSubgroup, k_tgt: ToralSubgroup) -> RingMap:
    """K_src^⊥ ⊆ K_tgt^⊥ 가 유도하는 H*(BT/K_src) → H*(BT/K_tgt) 확장"""
    if source.rank == 0:
        return RingMap(source, target)
    columns = [coordinates(rank, list(k_tgt.annihilator), b) for b in k_src.annihilator]
    matrix = Matrix(len(k_tgt.annihilator), len(columns), lambda i, j: columns[j][i])
    if source.rank == 1 and target.rank == 1:
        return RingMap(source, target, int(matrix[0, 0]))
    return RingMap(source, target, substitution=matrix)


def build_Ra(poset: SubgroupPoset, max_flag_len: Optional[int] = None) -> RingDiagram:
    """R̃(K₀⊃⋯⊃K_s) = ℰ⁻¹_{K₀/K_s} H*(BT/K_s)"""
    length = poset.rank if max_flag_len is None else max_flag_len
    flags = poset.flags(length)
    values = {}
    for flag in flags:
        values[flag] = localize(_quotient_ring(flag.last), euler_set(flag, poset))
    maps = {}
    present = set(flags)
    for flag in flags:
        for sub in flag.subflags():
            if sub == flag or sub not in present:
                continue
            maps[(sub, flag)] = _lattice_map(poset.rank, values[sub], values[flag], sub.last, flag.last)
    log("환", f"R̃ 다이어그램: 깃발 {len(flags)}개, 사상 {len(maps)}개", level=2)
    return RingDiagram(poset, flags, RingFlavor.RA, values, maps)


def _require_structure(cs: ComponentStructure):
    if not cs.is_decreasing:
        raise LatticeError("성분 구조가 감소적이지 않음")
    if not cs.is_normal:
        raise LatticeError("성분 구조가 정규가 아님")


def restricted_action(poset: SubgroupPoset, flag: Flag, members) -> Optional[RingAction]:
    """W_F 부분집합의 H*(BT/K_s) 생성원 (K_s^⊥ 기저) 위 작용"""
    basis = list(flag.last.annihilator)
    q = len(basis)
    if q == 0:
        return None
    matrices = []
    for w in sorted(members):
        if w == 0:
            continue
        images = [coordinates(poset.rank, basis, poset.weyl.apply_vector(w, b)) for b in basis]
        matrices.append(np.array([[images[j][i] for j in range(q)] for i in range(q)], dtype=np.int64))
    return RingAction(MatrixGroup(q, matrices))


def _acts_trivially(action: Optional[RingAction]) -> bool:
    return action is None or all(action.matrix(w) == Matrix.eye(action.rank) for w in action.group.all())


def build_Rinv(poset: SubgroupPoset, cs: ComponentStructure, ra: Optional[RingDiagram] = None) -> RingDiagram:
    """R_inv(F) = R̃(F)^{W_F^e}"""
    _require_structure(cs)
    ra = ra or build_Ra(poset, max(f.length for f in cs.objects))
    flags = [f for f in ra.flags if f in cs.assignment]
    values = {}
    for flag in flags:
        base = ra.value(flag)
        action = restricted_action(poset, flag, cs.assignment[flag])
        if _acts_trivially(action):
            values[flag] = base
        elif base.rank == 1 and action.character() == -1:
            values[flag] = fixed_ring(base)
        else:
            raise UnsupportedError(f"{poset.spec.name}: 깃발 {flag.label}에서 랭크 {base.rank} 불변식 환의 "
                                   f"다이어그램 사상은 미지원")
    maps = {}
    for (sub, flag), ring_map in ra.maps.items():
        if sub not in values or flag not in values:
            continue
        src, tgt = values[sub], values[flag]
        if src == ring_map.source and tgt == ring_map.target:
            maps[(sub, flag)] = ring_map
        elif src.rank == 0:
            maps[(sub, flag)] = RingMap(src, tgt)
        else:
            # d ↦ c² 처럼 고정 환의 생성원 차수 비율만큼 지수가 바뀜
            exponent = ring_map.exponent * src.step * ring_map.target.step // (ring_map.source.step * tgt.step)
            maps[(sub, flag)] = RingMap(src, tgt, exponent)
    log("환", f"R_inv 다이어그램: {', '.join(f'{f.label}={values[f].label}' for f in flags)}", level=2)
    return RingDiagram(poset, flags, RingFlavor.RINV, values, maps)


def build_Rtw(poset: SubgroupPoset, cs: ComponentStructure, rinv: Optional[RingDiagram] = None) -> RingDiagram:
    """R_tw(F) = R_inv(F)[W_F^d]"""
    rinv = rinv or build_Rinv(poset, cs)
    twisted = {}
    for flag in rinv.flags:
        base = rinv.value(flag)
        if cs.residual_order(flag) == 1:
            twisted[flag] = TwistedGroupRing(base, RingAction.trivial(max(base.rank, 1)), [0])
            continue
        if len(cs.assignment[flag]) != 1:
            raise UnsupportedError(f"{flag.label}: W^e와 W^d가 모두 비자명한 꼬인 군환은 미지원")
        action = restricted_action(poset, flag, cs.isotropy[flag])
        if action is None:
            # 환이 ℚ이면 작용은 자명하지만 군환은 남음
            group = MatrixGroup(poset.rank, [poset.weyl.on_lattice(w) for w in sorted(cs.isotropy[flag]) if w])
            action = RingAction(group)
        twisted[flag] = TwistedGroupRing(base, action)
    return RingDiagram(poset, rinv.flags, RingFlavor.RTW, dict(rinv.values), dict(rinv.maps), twisted)
