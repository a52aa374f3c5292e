"""
ToralKit 군 카탈로그
지원하는 콤팩트 리 군의 극대 토러스, 톨러스 바일 군, 근 데이터
"""

from typing import Dict, List, Tuple

import numpy as np

from ..core.errors import UnsupportedError


# 이름 -> (랭크, dim G, 바일 생성원(지표 격자 위 행렬), 양의 근(지표 좌표))
_CATALOG: Dict[str, Tuple[int, int, List[List[List[int]]], List[Tuple[int, ...]]]] = {
    'Circle': (1, 1, [], []),
    'O2': (1, 1, [[[-1]]], []),
    'SO3': (1, 3, [[[-1]]], [(1,)]),
    'Torus2': (2, 2, [], []),
    # 지표 격자 Z^3/(1,1,1)의 기저 x1, x2 (x3 = -x1 - x2), Σ3은 x_i를 치환
    'SU3': (2, 8, [[[0, 1], [1, 0]], [[1, -1], [0, -1]]], [(1, -1), (1, 2), (2, 1)]),
}


class GroupSpec:
    """지원 군 명세"""

    def __init__(self, name: str):
        if name not in _CATALOG:
            raise UnsupportedError(f"지원하지 않는 군: {name}")
        rank, dim, generators, roots = _CATALOG[name]
        self.name = name
        self.rank = rank
        self.dim = dim
        self.weyl_generators = [np.array(g, dtype=np.int64) for g in generators]
        self.positive_roots = [tuple(r) for r in roots]

    @property
    def torus_dim(self) -> int:
        return self.rank

    @property
    def module_scope(self) -> bool:
        """가군 범주 연산 지원 여부 (랭크 1만)"""
        return self.rank == 1

    def require_module_scope(self):
        if not self.module_scope:
            raise UnsupportedError(f"{self.name}: 가군 범주 연산은 랭크 1 군만 지원")

    def to_dict(self) -> Dict:
        return {
            'name': self.name,
            'rank': self.rank,
            'dim': self.dim,
            'weyl_generators': [g.tolist() for g in self.weyl_generators],
            'positive_roots': [list(r) for r in self.positive_roots],
        }

    def __eq__(self, other):
        return isinstance(other, GroupSpec) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"GroupSpec({self.name})"


def supported_groups() -> List[str]:
    return list(_CATALOG.keys())
