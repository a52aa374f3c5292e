"""
ToralKit 유도 공간의 고정점 분해
(G ×_T A)^L 을 바일 궤도의 조각 W_G(L)γ_i ×_{T/L_i} A^{L_i} 로 나눈다
"""

from typing import Dict, List

from ..core.log import debug
from ..lattice.poset import SubgroupPoset
from ..lattice.subgroup import ToralSubgroup


class FixedPointPiece:
    """조각 하나: 잉여류 대표 γ, 켤레 부분군 L_i, 안정자 위수"""

    def __init__(self, coset: int, subgroup: ToralSubgroup, stabilizer_order: int, space: str):
        self.coset = coset
        self.subgroup = subgroup
        self.stabilizer_order = stabilizer_order
        self.space = space

    @property
    def description(self) -> str:
        return f"W_G({self.subgroup.label})γ{self.coset} ×_{{T/{self.subgroup.label}}} {self.space}^{self.subgroup.label}"

    def to_dict(self) -> Dict:
        return {'coset': self.coset, 'subgroup': self.subgroup.label,
                'stabilizer_order': self.stabilizer_order, 'factor': self.description}


class FixedPointDecomposition:
    def __init__(self, subgroup: ToralSubgroup, pieces: List[FixedPointPiece]):
        self.subgroup = subgroup
        self.pieces = pieces

    def __len__(self):
        return len(self.pieces)

    def subgroups(self) -> List[ToralSubgroup]:
        return [p.subgroup for p in self.pieces]

    def to_dict(self) -> Dict:
        return {'subgroup': self.subgroup.label, 'pieces': [p.to_dict() for p in self.pieces]}


def fixed_point_decomposition(L: ToralSubgroup, poset: SubgroupPoset, space: str = "A") -> FixedPointDecomposition:
    """𝔚G / (𝔚G)_L 의 잉여류마다 조각 하나 (L_i = γ_i⁻¹ L γ_i)"""
    poset.index(L)
    group = poset.weyl.group
    stabilizer = poset.stabilizer(L)
    pieces = []
    for i, coset in enumerate(group.cosets(stabilizer, frozenset(group.all()))):
        gamma = min(coset)
        conjugate = poset.act(group.inv(gamma), L)
        pieces.append(FixedPointPiece(i, conjugate, len(poset.stabilizer(conjugate)), space))
    debug("격자", f"({poset.spec.name} ×_T {space})^{L.label}: 조각 {len(pieces)}개")
    return FixedPointDecomposition(L, pieces)
