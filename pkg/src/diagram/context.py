"""
ToralKit 모델 문맥
군, 절단 포셋, 성분 구조, 환 다이어그램을 한 번에 묶고 수준(T/N/G)별 환과 작용을 알려준다
"""

from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.errors import UnsupportedError
from ..core.log import log
from ..gralg.polynomial import GradedRing, RingMap
from ..lattice.component import ComponentStructure, component_structure
from ..lattice.group_spec import GroupSpec
from ..lattice.poset import Flag, SubgroupPoset, build_poset
from ..lattice.subgroup import ToralSubgroup
from .ring_diagram import RingDiagram, build_Ra, build_Rinv, restricted_action


class Level(Enum):
    """가군이 사는 군 수준

    T: 토러스 (작용 없음), N: 정규화군 (R̃ 위 바일 동변), G: 군 (R_inv 위, 잔여군 작용)
    """
    T = "T"
    N = "N"
    G = "G"


class ModelContext:
    """랭크 1 군의 대수 모델 문맥"""

    def __init__(self, spec: GroupSpec, poset: SubgroupPoset, cs: ComponentStructure, max_flag_len: int = 1):
        self.spec = spec
        self.poset = poset
        self.cs = cs
        self.max_flag_len = max_flag_len
        self.ra = build_Ra(poset, max_flag_len)
        self._rinv: Optional[RingDiagram] = None
        self.flags: List[Flag] = [f for f in self.ra.flags if f in cs.assignment]

    @property
    def rinv(self) -> RingDiagram:
        if self._rinv is None:
            self._rinv = build_Rinv(self.poset, self.cs, self.ra)
        return self._rinv

    @property
    def group(self) -> str:
        return self.spec.name

    @property
    def weyl_order(self) -> int:
        return self.poset.weyl.order

    def diagram(self, level: Level) -> RingDiagram:
        return self.rinv if level == Level.G else self.ra

    def ring(self, level: Level, flag: Flag) -> GradedRing:
        return self.diagram(level).value(flag)

    def ring_map(self, level: Level, sub: Flag, flag: Flag) -> RingMap:
        return self.diagram(level).map(sub, flag)

    def acts(self, level: Level, flag: Flag) -> bool:
        """값에 대합(비자명 원소의 작용) 데이터가 붙는지"""
        if level == Level.T:
            return False
        if level == Level.N:
            return len(self.cs.isotropy[flag]) > 1
        return self.cs.residual_order(flag) > 1

    def chi(self, level: Level, flag: Flag) -> int:
        """작용하는 원소가 환 생성원에 곱하는 부호"""
        ring = self.ring(level, flag)
        if not self.acts(level, flag) or ring.rank == 0:
            return 1
        if level == Level.G and len(self.cs.assignment[flag]) > 1:
            raise UnsupportedError(f"{flag.label}: W^e와 W^d가 모두 비자명")
        action = restricted_action(self.poset, flag, self.cs.isotropy[flag])
        return action.character()

    def fixing_part(self, flag: Flag) -> bool:
        """θ_*/Ψ가 고정점을 취하는 깃발인지 (W_F^e 비자명)"""
        return len(self.cs.assignment[flag]) > 1

    def flag(self, *terms) -> Flag:
        """레이블 또는 부분군으로 깃발 생성"""
        subgroups = [self.poset.get(t) if isinstance(t, str) else t for t in terms]
        return Flag(subgroups)

    def get_flag(self, label: str) -> Flag:
        for f in self.flags:
            if f.label == label:
                return f
        raise UnsupportedError(f"{self.group}: 깃발 {label} 없음")

    def singletons(self) -> List[Flag]:
        return [f for f in self.flags if f.length == 0]

    def finite_subgroups(self) -> List[ToralSubgroup]:
        return self.poset.finite_subgroups()

    def edges(self) -> List[Tuple[Flag, Flag]]:
        """부분깃발 포함 (sub ⊂ flag) 전체"""
        present = set(self.flags)
        result = []
        for flag in self.flags:
            for sub in flag.subflags():
                if sub in present:
                    result.append((sub, flag))
        return result

    def torus_flag(self) -> Flag:
        return Flag([self.poset.torus])

    def localized_flag(self, K: ToralSubgroup) -> Flag:
        """(T ⊃ K)"""
        return Flag([self.poset.torus, K])

    def to_dict(self) -> Dict:
        return {
            'group': self.group,
            'truncation': self.poset.truncation,
            'flags': [f.label for f in self.flags],
            'Ra': self.ra.to_dict(),
            'Rinv': self.rinv.to_dict(),
        }


def build_context(group: str, N: Optional[int] = None, subgroups: Optional[Sequence] = None,
                  max_flag_len: Optional[int] = None) -> ModelContext:
    """군 이름에서 문맥 생성 (가군 연산은 랭크 1 군만)"""
    spec = GroupSpec(group)
    spec.require_module_scope()
    poset = build_poset(spec, N, subgroups)
    length = spec.rank if max_flag_len is None else max_flag_len
    cs = component_structure(spec, poset, length)
    context = ModelContext(spec, poset, cs, length)
    log("격자", f"{group} 모델 문맥: 깃발 {len(context.flags)}개", level=2)
    return context
