"""
ToralKit 부분군 포셋
절단된 부분군 집합, 공토러스 순서, 플래그, 바일 작용
"""

from typing import Dict, List, Optional, Sequence, Tuple

from ..core.errors import LatticeError
from ..core.log import log, debug
from .group_spec import GroupSpec
from .subgroup import ToralSubgroup, cotoral_leq, parse_subgroups
from .weyl import WeylAction


class Flag:
    """공토러스 사슬 (K₀ ⊃ K₁ ⊃ … ⊃ K_s)"""

    def __init__(self, terms: Sequence[ToralSubgroup]):
        if not terms:
            raise LatticeError("빈 플래그")
        self.terms: Tuple[ToralSubgroup, ...] = tuple(terms)
        for big, small in zip(self.terms, self.terms[1:]):
            if big == small or not cotoral_leq(big, small):
                raise LatticeError(f"공토러스 순감소 사슬이 아님: {big} ⊃ {small}")

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def first(self) -> ToralSubgroup:
        return self.terms[0]

    @property
    def last(self) -> ToralSubgroup:
        return self.terms[-1]

    @property
    def label(self) -> str:
        return '>'.join(k.label for k in self.terms)

    def sort_key(self) -> Tuple:
        return (len(self.terms), tuple(k.sort_key() for k in self.terms))

    def is_subflag_of(self, other: 'Flag') -> bool:
        """순서를 보존하는 부분열인지"""
        it = iter(other.terms)
        return all(any(k == x for x in it) for k in self.terms)

    def subflags(self) -> List['Flag']:
        """자기 자신을 제외한 비어있지 않은 부분 플래그"""
        n = len(self.terms)
        result = []
        for mask in range(1, 2 ** n - 1):
            result.append(Flag([self.terms[i] for i in range(n) if mask >> i & 1]))
        result.sort(key=Flag.sort_key)
        return result

    def transform(self, matrix) -> 'Flag':
        return Flag([k.transform(matrix) for k in self.terms])

    def __eq__(self, other):
        return isinstance(other, Flag) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"({self.label})"


class SubgroupPoset:
    """바일 작용에 닫힌 유한 부분군 포셋"""

    def __init__(self, spec: GroupSpec, subgroups: Sequence[ToralSubgroup],
                 weyl: WeylAction, truncation: Dict):
        self.spec = spec
        self.rank = spec.rank
        self.subgroups: List[ToralSubgroup] = sorted(set(subgroups), key=ToralSubgroup.sort_key)
        self.weyl = weyl
        self.truncation = dict(truncation)
        self._index = {k: i for i, k in enumerate(self.subgroups)}
        self.order = set()
        for K in self.subgroups:
            for L in self.subgroups:
                if cotoral_leq(K, L):
                    self.order.add((K, L))
        self._flag_cache: Dict[int, List[Flag]] = {}

    @property
    def torus(self) -> ToralSubgroup:
        return ToralSubgroup.torus(self.rank)

    @property
    def truncation_N(self) -> Optional[int]:
        return self.truncation.get('N')

    def __contains__(self, K: ToralSubgroup) -> bool:
        return K in self._index

    def index(self, K: ToralSubgroup) -> int:
        if K not in self._index:
            raise LatticeError(f"포셋에 없는 부분군: {K}")
        return self._index[K]

    def leq(self, K: ToralSubgroup, L: ToralSubgroup) -> bool:
        """K ⊇ L (공토러스)"""
        return (K, L) in self.order

    def get(self, label: str) -> ToralSubgroup:
        K = ToralSubgroup.from_label(self.rank, label)
        self.index(K)
        return K

    def finite_subgroups(self) -> List[ToralSubgroup]:
        return [k for k in self.subgroups if k.dim == 0]

    def act(self, w: int, K: ToralSubgroup) -> ToralSubgroup:
        """왼쪽 작용 w·K"""
        return K.transform(self.weyl.on_lattice(w))

    def act_flag(self, w: int, flag: Flag) -> Flag:
        return flag.transform(self.weyl.on_lattice(w))

    def right_act_flag(self, flag: Flag, w: int) -> Flag:
        """오른쪽 작용 F^w = w⁻¹·F"""
        return self.act_flag(self.weyl.group.inv(w), flag)

    def permutation(self, w: int) -> List[int]:
        """부분군 위의 치환"""
        return [self.index(self.act(w, K)) for K in self.subgroups]

    def stabilizer(self, K: ToralSubgroup) -> frozenset:
        return frozenset(w for w in self.weyl.group.all() if self.act(w, K) == K)

    def flag_stabilizer(self, flag: Flag) -> frozenset:
        return frozenset(w for w in self.weyl.group.all() if self.act_flag(w, flag) == flag)

    def orbit(self, K: ToralSubgroup) -> List[ToralSubgroup]:
        return sorted({self.act(w, K) for w in self.weyl.group.all()}, key=ToralSubgroup.sort_key)

    def flags(self, max_len: int) -> List[Flag]:
        if max_len not in self._flag_cache:
            self._flag_cache[max_len] = enumerate_flags(self, max_len)
        return self._flag_cache[max_len]

    def nontrivial_pairs(self) -> List[Tuple[ToralSubgroup, ToralSubgroup]]:
        pairs = [(K, L) for (K, L) in self.order if K != L]
        return sorted(pairs, key=lambda p: (p[0].sort_key(), p[1].sort_key()))

    def to_dict(self) -> Dict:
        return {
            'group': self.spec.name,
            'rank': self.rank,
            'truncation': self.truncation,
            'subgroups': [k.label for k in self.subgroups],
            'order': [[K.label, L.label] for K, L in self.nontrivial_pairs()],
            'reflexive': True,
            'weyl': self.weyl.to_dict(),
            'weyl_permutations': [self.permutation(w) for w in self.weyl.group.all()],
        }


def build_poset(spec: GroupSpec, N: Optional[int] = None, subgroups: Optional[Sequence] = None,
                weyl: Optional[WeylAction] = None) -> SubgroupPoset:
    """절단 부분군 포셋 생성

    랭크 1: {C₁, …, C_N, T}. 랭크 2: 사용자가 준 부분군 목록에 T를 추가하고
    바일 작용에 닫혀 있는지 확인한다.
    """
    action = weyl or WeylAction.from_generators(spec.rank, spec.weyl_generators)
    if spec.rank == 1 and subgroups is None:
        if N is None or N < 1:
            raise LatticeError(f"랭크 1 절단은 N ≥ 1 필요: N={N}")
        members = [ToralSubgroup.cyclic(n) for n in range(1, N + 1)]
        truncation = {'N': N}
    else:
        members = parse_subgroups(spec.rank, subgroups)
        truncation = {'subgroups': sorted(k.label for k in members)}
        if N is not None:
            truncation['N'] = N
    members.append(ToralSubgroup.torus(spec.rank))
    member_set = set(members)
    for K in members:
        for w in action.group.all():
            image = K.transform(action.on_lattice(w))
            if image not in member_set:
                raise LatticeError(f"{spec.name}: 부분군 목록이 바일 작용에 닫혀 있지 않음 ({K} ↦ {image})")
    poset = SubgroupPoset(spec, members, action, truncation)
    log("격자", f"{spec.name} 포셋: 부분군 {len(poset.subgroups)}개, 공토러스 쌍 {len(poset.nontrivial_pairs())}개")
    return poset


def enumerate_flags(poset: SubgroupPoset, max_len: int) -> List[Flag]:
    """길이 ≤ max_len인 모든 순감소 공토러스 사슬 (짧은 것 먼저, 레이블 사전순)"""
    if max_len < 0:
        raise LatticeError(f"max_len ≥ 0 필요: {max_len}")
    chains = [[K] for K in poset.subgroups]
    result = list(chains)
    for _ in range(max_len):
        longer = []
        for chain in chains:
            tail = chain[-1]
            for L in poset.subgroups:
                if L != tail and poset.leq(tail, L):
                    longer.append(chain + [L])
        result.extend(longer)
        chains = longer
        if not chains:
            break
    flags = sorted((Flag(c) for c in result), key=Flag.sort_key)
    debug("격자", f"플래그 {len(flags)}개 (max_len={max_len})")
    return flags


def check_weyl_preserves_order(poset: SubgroupPoset) -> bool:
    """바일 작용이 공토러스 순서를 보존하는지 전수 확인"""
    for w in poset.weyl.group.all():
        for K, L in poset.order:
            if not poset.leq(poset.act(w, K), poset.act(w, L)):
                return False
    return True
