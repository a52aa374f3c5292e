"""
ToralKit 토러스 부분군
닫힌 부분군 K ≤ T를 소멸자 격자 K^⊥ (지표 격자의 부분격자)로 표현
"""

import re
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_form

from ..core.errors import LatticeError

Vector = Tuple[int, ...]


def canonical_basis(rank: int, vectors: Sequence[Sequence[int]]) -> Tuple[Vector, ...]:
    """부분격자 생성원 -> 에르미트 정규형 기저 (열 벡터 튜플)"""
    columns = [list(v) for v in vectors if any(int(x) != 0 for x in v)]
    if not columns:
        return ()
    for v in columns:
        if len(v) != rank:
            raise LatticeError(f"벡터 길이 불일치: {v} (랭크 {rank})")
    if rank == 1:
        g = 0
        for v in columns:
            g = gcd(g, abs(int(v[0])))
        return ((g,),)
    m = Matrix(rank, len(columns), lambda i, j: int(columns[j][i]))
    h = hermite_normal_form(m)
    basis = []
    for j in range(h.cols):
        col = tuple(int(h[i, j]) for i in range(rank))
        if any(col):
            basis.append(col)
    return tuple(basis)


def lattice_matrix(rank: int, basis: Sequence[Vector]) -> Matrix:
    return Matrix(rank, len(basis), lambda i, j: basis[j][i])


def lattice_contains(rank: int, basis: Sequence[Vector], vector: Sequence[int]) -> bool:
    """정수 벡터가 격자에 속하는지"""
    if not any(vector):
        return True
    if not basis:
        return False
    b = lattice_matrix(rank, basis)
    v = Matrix(rank, 1, list(vector))
    gram = b.T * b
    x = gram.inv() * b.T * v
    if b * x != v:
        return False
    return all(entry.is_integer for entry in x)


def coordinates(rank: int, basis: Sequence[Vector], vector: Sequence[int]) -> List[int]:
    b = lattice_matrix(rank, basis)
    v = Matrix(rank, 1, list(vector))
    x = (b.T * b).inv() * b.T * v
    return [int(e) for e in x]


class ToralSubgroup:
    """토러스의 닫힌 부분군 (정규형 소멸자 격자로 식별)"""

    def __init__(self, rank: int, annihilator: Sequence[Sequence[int]] = ()):
        self.rank = rank
        self.annihilator: Tuple[Vector, ...] = canonical_basis(rank, annihilator)

    # ----- 생성자 -----

    @classmethod
    def torus(cls, rank: int) -> 'ToralSubgroup':
        return cls(rank, ())

    @classmethod
    def trivial(cls, rank: int) -> 'ToralSubgroup':
        return cls(rank, [tuple(1 if i == j else 0 for i in range(rank)) for j in range(rank)])

    @classmethod
    def cyclic(cls, n: int) -> 'ToralSubgroup':
        """랭크 1의 C_n (C_1 = 자명군)"""
        if n < 1:
            raise LatticeError(f"순환군 위수는 1 이상: {n}")
        return cls(1, [(n,)])

    @classmethod
    def from_label(cls, rank: int, label: str) -> 'ToralSubgroup':
        text = label.strip()
        if text == 'T':
            return cls.torus(rank)
        if text == '1':
            return cls.trivial(rank)
        match = re.fullmatch(r'C(\d+)', text)
        if match and rank == 1:
            return cls.cyclic(int(match.group(1)))
        match = re.fullmatch(r'K\[(.*)\]', text)
        if match:
            vectors = []
            for part in match.group(1).split(';'):
                if part.strip():
                    vectors.append(tuple(int(x) for x in part.split(',')))
            return cls(rank, vectors)
        raise LatticeError(f"부분군 레이블 해석 실패: {label!r}")

    # ----- 속성 -----

    @property
    def dim(self) -> int:
        return self.rank - len(self.annihilator)

    @property
    def is_torus(self) -> bool:
        return not self.annihilator

    @property
    def finite_part(self) -> List[int]:
        """π₀(K)의 불변 인자 (1보다 큰 것만)"""
        if not self.annihilator:
            return []
        snf = smith_normal_form(lattice_matrix(self.rank, self.annihilator), domain=ZZ)
        factors = []
        for i in range(min(snf.rows, snf.cols)):
            value = abs(int(snf[i, i]))
            if value > 1:
                factors.append(value)
        return sorted(factors)

    @property
    def component_count(self) -> int:
        count = 1
        for f in self.finite_part:
            count *= f
        return count

    @property
    def identity_sublattice(self) -> Tuple[Vector, ...]:
        """항등성분 K_e의 여지표(cocharacter) 격자: K^⊥와 직교하는 정수 벡터"""
        if not self.annihilator:
            return canonical_basis(self.rank, [tuple(1 if i == j else 0 for i in range(self.rank))
                                               for j in range(self.rank)])
        null = lattice_matrix(self.rank, self.annihilator).T.nullspace()
        vectors = []
        for v in null:
            denom = 1
            for entry in v:
                denom = denom * entry.q // gcd(denom, entry.q)
            ints = [int(entry * denom) for entry in v]
            g = 0
            for x in ints:
                g = gcd(g, abs(x))
            vectors.append(tuple(x // g for x in ints) if g else tuple(ints))
        return canonical_basis(self.rank, vectors)

    @property
    def label(self) -> str:
        if not self.annihilator:
            return 'T'
        if self.rank == 1:
            return f"C{self.annihilator[0][0]}"
        if len(self.annihilator) == self.rank and self.component_count == 1:
            return '1'
        return 'K[' + ';'.join(','.join(str(x) for x in v) for v in self.annihilator) + ']'

    def sort_key(self) -> Tuple:
        return (self.dim, self.component_count, self.annihilator)

    def contains(self, other: 'ToralSubgroup') -> bool:
        """other ≤ self  ⇔  self^⊥ ⊆ other^⊥"""
        return all(lattice_contains(self.rank, other.annihilator, v) for v in self.annihilator)

    def transform(self, matrix) -> 'ToralSubgroup':
        """바일 원소(지표 격자 위 행렬)의 작용: (wK)^⊥ = w·K^⊥"""
        vectors = []
        for v in self.annihilator:
            vectors.append(tuple(int(sum(int(matrix[i][j]) * v[j] for j in range(self.rank)))
                                 for i in range(self.rank)))
        return ToralSubgroup(self.rank, vectors)

    def to_dict(self) -> Dict:
        return {
            'label': self.label,
            'rank': self.rank,
            'annihilator': [list(v) for v in self.annihilator],
            'dim': self.dim,
            'finite_part': self.finite_part,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'ToralSubgroup':
        return cls(data['rank'], [tuple(v) for v in data.get('annihilator', [])])

    def __eq__(self, other):
        return isinstance(other, ToralSubgroup) and (self.rank, self.annihilator) == (other.rank, other.annihilator)

    def __hash__(self):
        return hash((self.rank, self.annihilator))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return self.label


def is_saturated_in(rank: int, inner: Sequence[Vector], outer: Sequence[Vector]) -> bool:
    """inner ⊆ outer이고 outer/inner가 꼬임 없음 (최대 소행렬식의 gcd = 1)"""
    if not all(lattice_contains(rank, outer, v) for v in inner):
        return False
    if not inner:
        return True
    coords = [coordinates(rank, outer, v) for v in inner]
    m = Matrix(len(outer), len(inner), lambda i, j: coords[j][i])
    g = 0
    for rows in combinations(range(m.rows), m.cols):
        g = gcd(g, abs(int(m.extract(list(rows), list(range(m.cols))).det())))
    return g == 1


def cotoral_leq(K: ToralSubgroup, L: ToralSubgroup) -> bool:
    """K ⊇ L 공토러스 포함: L ≤ K 이고 K/L이 토러스"""
    if K.rank != L.rank:
        raise LatticeError(f"랭크 불일치: {K} / {L}")
    if K == L:
        return True
    # L ≤ K ⇔ K^⊥ ⊆ L^⊥, K/L 토러스 ⇔ (K/L)^∨ = L^⊥/K^⊥ 꼬임 없음
    return is_saturated_in(K.rank, K.annihilator, L.annihilator)


def parse_subgroups(rank: int, labels: Optional[Sequence]) -> List[ToralSubgroup]:
    result = []
    for item in labels or []:
        if isinstance(item, ToralSubgroup):
            result.append(item)
        else:
            result.append(ToralSubgroup.from_label(rank, str(item)))
    return result
