"""
ToralKit 유한 행렬군
정수 행렬 생성원에서 닫힘을 계산하고 곱셈표를 만든다
"""

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np


def _key(matrix: np.ndarray) -> Tuple[int, ...]:
    return tuple(int(x) for x in matrix.flatten())


class MatrixGroup:
    """정수 행렬로 표현된 유한군 (원소 0번이 항등원)"""

    def __init__(self, rank: int, generators: Sequence[np.ndarray] = (), max_order: int = 1000):
        self.rank = rank
        identity = np.eye(rank, dtype=np.int64)
        elements = [identity]
        index = {_key(identity): 0}
        frontier = [identity]
        gens = [np.array(g, dtype=np.int64) for g in generators]
        while frontier:
            new_frontier = []
            for element in frontier:
                for gen in gens:
                    product = gen @ element
                    key = _key(product)
                    if key not in index:
                        index[key] = len(elements)
                        elements.append(product)
                        new_frontier.append(product)
                        if len(elements) > max_order:
                            raise ValueError("유한군이 아님 (원소 수 초과)")
            # 결정적 순서
            new_frontier.sort(key=_key)
            frontier = new_frontier
        self.elements: List[np.ndarray] = elements
        self._index: Dict[Tuple[int, ...], int] = index
        self.generators = [index[_key(g)] for g in gens]
        n = len(elements)
        self._mul = [[index[_key(elements[a] @ elements[b])] for b in range(n)] for a in range(n)]
        self._inv = [next(b for b in range(n) if self._mul[a][b] == 0) for a in range(n)]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def matrix(self, a: int) -> np.ndarray:
        return self.elements[a]

    def index_of(self, matrix: np.ndarray) -> int:
        return self._index[_key(np.array(matrix, dtype=np.int64))]

    def det(self, a: int) -> int:
        return int(round(np.linalg.det(self.elements[a])))

    def all(self) -> List[int]:
        return list(range(self.order))

    def subgroup_generated(self, elements: Iterable[int]) -> frozenset:
        """원소들이 생성하는 부분군"""
        result = {0}
        frontier = [0]
        gens = list(elements)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(g, x)
                    if y not in result:
                        result.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(result)

    def is_normal(self, sub: frozenset, ambient: frozenset) -> bool:
        """sub가 ambient의 정규 부분군인지"""
        if not sub <= ambient:
            return False
        for g in ambient:
            for h in sub:
                if self.mul(self.mul(g, h), self.inv(g)) not in sub:
                    return False
        return True

    def cosets(self, sub: frozenset, ambient: frozenset) -> List[frozenset]:
        """좌잉여류 g·sub 목록 (결정적 순서)"""
        seen = set()
        result = []
        for g in sorted(ambient):
            coset = frozenset(self.mul(g, h) for h in sub)
            if coset not in seen:
                seen.add(coset)
                result.append(coset)
        return result

    def double_coset(self, left: frozenset, g: int, right: frozenset) -> frozenset:
        return frozenset(self.mul(self.mul(a, g), b) for a in left for b in right)

    def reflection_for_root(self, root: Sequence[int]) -> Optional[int]:
        """근 α를 -α로 보내는 위수 2, 행렬식 -1 원소"""
        vector = np.array(root, dtype=np.int64)
        for a in range(1, self.order):
            m = self.elements[a]
            if self.mul(a, a) == 0 and self.det(a) == -1 and np.array_equal(m @ vector, -vector):
                return a
        return None


class WeylAction:
    """톨러스 바일 군의 지표 격자 작용"""

    def __init__(self, group: MatrixGroup):
        self.group = group

    @classmethod
    def from_generators(cls, rank: int, generators: Sequence) -> 'WeylAction':
        return cls(MatrixGroup(rank, [np.array(g, dtype=np.int64) for g in generators]))

    @property
    def order(self) -> int:
        return self.group.order

    def on_lattice(self, a: int) -> np.ndarray:
        return self.group.matrix(a)

    def apply_vector(self, a: int, vector: Sequence[int]) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.group.matrix(a) @ np.array(vector, dtype=np.int64))

    def to_dict(self) -> Dict:
        return {
            'order': self.order,
            'generators': [self.group.matrix(g).tolist() for g in self.group.generators],
        }
