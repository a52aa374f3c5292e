"""
ToralKit 성분 구조
각 플래그 σ에 W_σ^e ≤ W_σ 를 대응시키고 감소성/정규성, 이산 잔여를 계산
"""

from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..core.errors import LatticeError, UnsupportedError
from ..core.log import log
from .group_spec import GroupSpec
from .poset import Flag, SubgroupPoset
from .subgroup import lattice_contains
from .transport import (TransportMorphism, enumerate_morphisms, flag_inclusion,
                        subgroup_inclusion, transport_compose)


class StructureKind(Enum):
    """성분 구조 종류"""
    LIE = "lie"
    CONNECTED = "connected"
    DISCRETE = "discrete"


class IndexKind(Enum):
    """색인 범주"""
    FLAGS = "flags"
    SUBGROUPS = "subgroups"


class ComponentStructure:
    """성분 구조 σ ↦ W_σ^e ≤ W_σ"""

    def __init__(self, poset: SubgroupPoset, objects: Sequence[Flag], kind: StructureKind,
                 index: IndexKind, assignment: Dict[Flag, frozenset]):
        self.poset = poset
        self.objects = list(objects)
        self.kind = kind
        self.index = index
        self.assignment = dict(assignment)
        self.isotropy = {F: poset.flag_stabilizer(F) for F in self.objects}
        for F in self.objects:
            if not self.assignment[F] <= self.isotropy[F]:
                raise LatticeError(f"W^e가 등방군에 포함되지 않음: {F.label}")
        self.is_decreasing, self.is_normal = check_structure_flags(self)

    @property
    def group(self):
        return self.poset.weyl.group

    @property
    def inclusion(self) -> Callable[[Flag, Flag], bool]:
        return flag_inclusion if self.index == IndexKind.FLAGS else subgroup_inclusion

    def identity_part(self, flag: Flag) -> frozenset:
        return self.assignment[flag]

    def residual(self, flag: Flag) -> List[frozenset]:
        """W_F^d = W_F / W_F^e (잉여류 목록)"""
        return self.group.cosets(self.assignment[flag], self.isotropy[flag])

    def residual_order(self, flag: Flag) -> int:
        return len(self.isotropy[flag]) // len(self.assignment[flag])

    def arrows(self) -> List[Tuple[Flag, Flag]]:
        """색인 범주의 비자명 포함 사상"""
        include = self.inclusion
        return [(x, y) for x in self.objects for y in self.objects if x != y and include(x, y)]

    def to_dict(self) -> Dict:
        rows = []
        for F in self.objects:
            rows.append({
                'flag': F.label,
                'isotropy': sorted(self.isotropy[F]),
                'identity_part': sorted(self.assignment[F]),
                'residual_order': self.residual_order(F) if self.is_normal else None,
            })
        return {
            'kind': self.kind.value,
            'index': self.index.value,
            'is_decreasing': self.is_decreasing,
            'is_normal': self.is_normal,
            'values': rows,
        }


def lie_identity_part(spec: GroupSpec, poset: SubgroupPoset, flag: Flag) -> frozenset:
    """(𝔚G)_F^e: 첫 항 K₀의 소멸자에 놓인 근의 반사가 생성하는 부분군"""
    group = poset.weyl.group
    reflections = []
    for root in spec.positive_roots:
        if lattice_contains(poset.rank, flag.first.annihilator, root):
            s = group.reflection_for_root(root)
            if s is None:
                raise UnsupportedError(f"{spec.name}: 근 {root}의 반사를 찾을 수 없음")
            reflections.append(s)
    return group.subgroup_generated(reflections)


def _objects(poset: SubgroupPoset, index: IndexKind, max_flag_len: Optional[int]) -> List[Flag]:
    if index == IndexKind.SUBGROUPS:
        return poset.flags(0)
    return poset.flags(poset.rank if max_flag_len is None else max_flag_len)


def component_structure(spec: GroupSpec, poset: SubgroupPoset, max_flag_len: Optional[int] = None,
                        index: IndexKind = IndexKind.FLAGS) -> ComponentStructure:
    """리 군 성분 구조"""
    if spec != poset.spec:
        raise UnsupportedError(f"포셋의 군({poset.spec.name})과 명세({spec.name})가 다름")
    objects = _objects(poset, index, max_flag_len)
    assignment = {F: lie_identity_part(spec, poset, F) for F in objects}
    cs = ComponentStructure(poset, objects, StructureKind.LIE, index, assignment)
    log("격자", f"{spec.name} 리 성분 구조 ({index.value}): 감소={cs.is_decreasing}, 정규={cs.is_normal}")
    return cs


def connected_structure(poset: SubgroupPoset, max_flag_len: Optional[int] = None,
                        index: IndexKind = IndexKind.FLAGS) -> ComponentStructure:
    """연결 성분 구조: W_σ^e = W_σ"""
    objects = _objects(poset, index, max_flag_len)
    assignment = {F: poset.flag_stabilizer(F) for F in objects}
    return ComponentStructure(poset, objects, StructureKind.CONNECTED, index, assignment)


def discrete_structure(poset: SubgroupPoset, max_flag_len: Optional[int] = None,
                       index: IndexKind = IndexKind.FLAGS) -> ComponentStructure:
    """이산 성분 구조: W_σ^e = 1"""
    objects = _objects(poset, index, max_flag_len)
    assignment = {F: frozenset({0}) for F in objects}
    return ComponentStructure(poset, objects, StructureKind.DISCRETE, index, assignment)


def check_structure_flags(cs: ComponentStructure) -> Tuple[bool, bool]:
    """(감소성, 정규성): 사상 σ→τ마다 W_τ^e ⊆ W_σ^e, 각 σ에서 W_σ^e ⊴ W_σ"""
    decreasing = all(cs.assignment[y] <= cs.assignment[x] for x, y in cs.arrows())
    group = cs.poset.weyl.group
    normal = all(group.is_normal(cs.assignment[F], cs.isotropy[F]) for F in cs.objects)
    return decreasing, normal


class ResidualOrbifold:
    """이산 잔여: 잔여군과 이중 잉여류 사상 클래스"""

    def __init__(self, groups: Dict[Flag, List[frozenset]], classes: List[Tuple[Flag, Flag, frozenset]],
                 well_defined: bool, failures: List[Dict]):
        self.groups = groups
        self.classes = classes
        self.composition_well_defined = well_defined
        self.failures = failures

    def order(self, flag: Flag) -> int:
        return len(self.groups[flag])

    def to_dict(self) -> Dict:
        return {
            'residual_orders': {F.label: len(c) for F, c in self.groups.items()},
            'morphism_classes': len(self.classes),
            'composition_well_defined': self.composition_well_defined,
            'failures': self.failures[:5],
        }


def discrete_residual(cs: ComponentStructure) -> ResidualOrbifold:
    """잔여 오비폴드: 사상 (i,[v]), [v] = W^e_y · v · W^e_{y^v}"""
    if not cs.is_normal:
        raise LatticeError("정규가 아닌 성분 구조에는 이산 잔여가 없음")
    poset = cs.poset
    group = poset.weyl.group
    groups = {F: cs.residual(F) for F in cs.objects}
    morphisms = enumerate_morphisms(poset, cs.objects, cs.inclusion)

    def klass(m: TransportMorphism) -> Tuple[Flag, Flag, frozenset]:
        return (m.source, m.through,
                group.double_coset(cs.assignment[m.through], m.element, cs.assignment[m.target]))

    classes: Dict[Tuple, List[TransportMorphism]] = {}
    for m in morphisms:
        classes.setdefault(klass(m), []).append(m)
    by_source: Dict[Flag, List[Tuple]] = {}
    for key, reps in classes.items():
        by_source.setdefault(reps[0].source, []).append(key)

    failures = []
    for key1, reps1 in classes.items():
        target = reps1[0].target
        for key2 in by_source.get(target, []):
            reps2 = classes[key2]
            results = {klass(transport_compose(a, b)) for a in reps1 for b in reps2}
            if len(results) != 1:
                failures.append({'first': reps1[0].to_dict(), 'second': reps2[0].to_dict(),
                                 'classes': len(results)})
    ordered = sorted(classes.keys(), key=lambda k: (k[0].sort_key(), k[1].sort_key(), sorted(k[2])))
    return ResidualOrbifold(groups, ordered, not failures, failures)


def wgk_check(poset: SubgroupPoset) -> Dict:
    """𝔚(W_G K) (격자 데이터로 계산) = (𝔚G)_K (부분군 치환의 안정자)"""
    group = poset.weyl.group
    mismatches = []
    for K in poset.subgroups:
        from_lattice = frozenset(
            w for w in group.all()
            if all(lattice_contains(poset.rank, K.annihilator, poset.weyl.apply_vector(w, v))
                   for v in K.annihilator)
        )
        index = poset.index(K)
        from_permutation = frozenset(w for w in group.all() if poset.permutation(w)[index] == index)
        if from_lattice != from_permutation:
            mismatches.append(K.label)
    return {'holds': not mismatches, 'mismatches': mismatches}


def flag_isotropy_check(poset: SubgroupPoset, max_flag_len: int) -> bool:
    """(𝔚G)_E = ∩ (𝔚G)_{K_i}"""
    for F in poset.flags(max_flag_len):
        expected = frozenset(poset.weyl.group.all())
        for K in F.terms:
            expected = expected & poset.stabilizer(K)
        if poset.flag_stabilizer(F) != expected:
            return False
    return True
