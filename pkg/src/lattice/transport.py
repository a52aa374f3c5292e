"""
ToralKit 수송 범주
사상 (i, v): 포함 i: x ≤ y 와 바일 원소 v, 목표는 y^v
"""

from typing import Callable, Dict, List, Optional, Sequence

from ..core.errors import LatticeError
from .poset import Flag, SubgroupPoset
from .subgroup import cotoral_leq


class TransportMorphism:
    """수송 범주의 사상"""

    def __init__(self, poset: SubgroupPoset, source: Flag, through: Flag, element: int):
        self.poset = poset
        self.source = source
        self.through = through
        self.element = element
        self.target = poset.right_act_flag(through, element)

    @property
    def is_identity(self) -> bool:
        return self.source == self.through and self.element == 0

    def key(self):
        return (self.source, self.through, self.element)

    def to_dict(self) -> Dict:
        return {
            'source': self.source.label,
            'through': self.through.label,
            'element': self.element,
            'target': self.target.label,
        }

    def __eq__(self, other):
        return isinstance(other, TransportMorphism) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"({self.source.label}≤{self.through.label}, w{self.element})"


def identity_morphism(poset: SubgroupPoset, flag: Flag) -> TransportMorphism:
    return TransportMorphism(poset, flag, flag, 0)


def transport_compose(m1: TransportMorphism, m2: TransportMorphism) -> TransportMorphism:
    """(i,v)(j,w) = (i j^{v⁻¹}, vw)  (m1 다음 m2)"""
    if m1.target != m2.source:
        raise LatticeError(f"수송 사상 합성 끝점 불일치: {m1.target.label} ≠ {m2.source.label}")
    poset = m1.poset
    group = poset.weyl.group
    through = poset.act_flag(m1.element, m2.through)
    return TransportMorphism(poset, m1.source, through, group.mul(m1.element, m2.element))


def flag_inclusion(x: Flag, y: Flag) -> bool:
    return x.is_subflag_of(y)


def subgroup_inclusion(x: Flag, y: Flag) -> bool:
    """길이 0 플래그 (K)→(L): K ⊇ L"""
    return x.length == 0 and y.length == 0 and cotoral_leq(x.first, y.first)


def enumerate_morphisms(poset: SubgroupPoset, objects: Sequence[Flag],
                        inclusion: Callable[[Flag, Flag], bool] = flag_inclusion) -> List[TransportMorphism]:
    """유한 수송 범주의 모든 사상"""
    object_set = set(objects)
    result = []
    for x in objects:
        for y in objects:
            if x == y or inclusion(x, y):
                for v in poset.weyl.group.all():
                    m = TransportMorphism(poset, x, y, v)
                    if m.target in object_set:
                        result.append(m)
    return result


def check_transport_laws(poset: SubgroupPoset, objects: Sequence[Flag],
                         inclusion: Callable[[Flag, Flag], bool] = flag_inclusion,
                         limit: Optional[int] = 200) -> Dict:
    """항등 법칙과 결합 법칙의 전수 검사"""
    morphisms = enumerate_morphisms(poset, objects, inclusion)
    if limit is not None and len(morphisms) > limit:
        raise LatticeError(f"사상이 너무 많음: {len(morphisms)} > {limit}")
    by_source: Dict[Flag, List[TransportMorphism]] = {}
    for m in morphisms:
        by_source.setdefault(m.source, []).append(m)
    failures = []
    for m in morphisms:
        left = transport_compose(identity_morphism(poset, m.source), m)
        right = transport_compose(m, identity_morphism(poset, m.target))
        if left != m or right != m:
            failures.append({'law': 'identity', 'morphism': m.to_dict()})
        # 합성이 다시 포함 관계를 따르는지
        for m2 in by_source.get(m.target, []):
            composite = transport_compose(m, m2)
            if not (composite.source == composite.through or inclusion(composite.source, composite.through)):
                failures.append({'law': 'closure', 'pair': [m.to_dict(), m2.to_dict()]})
    triples = 0
    for m1 in morphisms:
        for m2 in by_source.get(m1.target, []):
            m12 = transport_compose(m1, m2)
            for m3 in by_source.get(m2.target, []):
                triples += 1
                if transport_compose(m12, m3) != transport_compose(m1, transport_compose(m2, m3)):
                    failures.append({'law': 'associativity',
                                     'triple': [m1.to_dict(), m2.to_dict(), m3.to_dict()]})
    return {
        'morphisms': len(morphisms),
        'triples': triples,
        'holds': not failures,
        'failures': failures[:5],
    }
