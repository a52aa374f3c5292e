"""
ToralKit 안정 코줄 복합체
K^p = ⊕_{|τ|=p} R[1/∏_{i∈τ} c_i] 의 다중차수별 체흐 계산과 국소 코호몰로지
"""

from itertools import combinations, product
from typing import Dict, List, Sequence, Tuple

from ..core.errors import ModuleError, UnsupportedError
from ..core.log import log
from . import linalg
from .graded_module import GradedModule, NormalForm, Summand
from .module_ops import BaseChange, cokernel, kernel, localized_ring
from .polynomial import GradedRing, LinearForm, RingMap


class KoszulComplex:
    """좌표 생성원에 대한 안정 코줄 (체흐) 복합체"""

    def __init__(self, ring: GradedRing, generators: Sequence[LinearForm], lo: int, hi: int):
        self.ring = ring
        self.generators = [tuple(g) for g in generators]
        self.lo = lo
        self.hi = hi
        self.rank = ring.rank

    def term_label(self, p: int) -> str:
        if p == 0:
            return self.ring.label
        parts = []
        for tau in combinations(range(self.rank), p):
            inv = "".join(self.ring.names[i] for i in tau)
            parts.append(f"R[1/{inv}]")
        return " + ".join(parts)

    def _multidegrees(self, t: int) -> List[Tuple[int, ...]]:
        """내부 차수 t의 다중차수 (음의 지수는 창으로 유계)"""
        if t % 2:
            return []
        total = -t // 2
        bound = max(abs(self.lo), abs(self.hi)) // 2 + 1
        ranges = [range(-bound, total + (self.rank - 1) * bound + 1)] * (self.rank - 1)
        result = []
        for head in product(*ranges):
            last = total - sum(head)
            if last < -bound:
                continue
            result.append(tuple(head) + (last,))
        return result

    def _cech_dims(self, exps: Tuple[int, ...]) -> List[int]:
        """한 다중차수에서 체흐 복합체의 코호몰로지 차원"""
        r = self.rank
        neg = {i for i, e in enumerate(exps) if e < 0}
        terms = [[tau for tau in combinations(range(r), p) if neg <= set(tau)] for p in range(r + 1)]
        ranks = []
        for p in range(r):
            source, target = terms[p], terms[p + 1]
            index = {tau: i for i, tau in enumerate(target)}
            d = linalg.zeros(len(target), len(source))
            for j, tau in enumerate(source):
                for i in range(r):
                    if i in tau:
                        continue
                    bigger = tuple(sorted(tau + (i,)))
                    sign = (-1) ** sum(1 for x in tau if x < i)
                    d[index[bigger], j] = sign
            ranks.append(linalg.rank(d) if d.rows and d.cols else 0)
        dims = []
        for p in range(r + 1):
            incoming = ranks[p - 1] if p > 0 else 0
            outgoing = ranks[p] if p < r else 0
            dims.append(len(terms[p]) - incoming - outgoing)
        return dims

    def cohomology(self) -> Dict[int, Dict[int, int]]:
        """H^p 의 차수별 차원 {p: {t: dim}}"""
        result = {p: {} for p in range(self.rank + 1)}
        for t in range(self.lo, self.hi + 1):
            totals = [0] * (self.rank + 1)
            for exps in self._multidegrees(t):
                for p, d in enumerate(self._cech_dims(exps)):
                    totals[p] += d
            for p in range(self.rank + 1):
                if totals[p]:
                    result[p][t] = totals[p]
        return result

    def top_dual_dims(self) -> Dict[int, int]:
        """H^r 이 가져야 할 차원: ℚ[c₁..c_r] 의 차수 쌍대를 2r 만큼 올린 것"""
        r = self.rank
        dims = {}
        for t in range(self.lo, self.hi + 1):
            if t % 2 or t < 2 * r:
                continue
            k = (t - 2 * r) // 2
            count = len(list(_compositions(k, r)))
            if count:
                dims[t] = count
        return dims

    def module_complex(self, equivariant: bool = False, chi: int = -1) -> Tuple[GradedModule, GradedModule, object]:
        """랭크 1: 0 → R → R[1/c] → 0 을 창 가군과 자연 사상으로"""
        if self.rank != 1:
            raise UnsupportedError("가군 복합체 표현은 랭크 1만")
        free = GradedModule.from_summands(self.ring, [Summand.free(0)], self.lo, self.hi,
                                          equivariant=equivariant, chi=chi)
        bc = BaseChange(free, RingMap(self.ring, localized_ring(self.ring)))
        return free, bc.result, bc.natural_map()

    def local_cohomology(self, equivariant: bool = False, chi: int = -1) -> Dict[int, NormalForm]:
        """랭크 1: H⁰ = 핵, H¹ = 여핵의 정규형"""
        _, _, natural = self.module_complex(equivariant, chi)
        h0, _ = kernel(natural)
        h1, _ = cokernel(natural)
        return {0: h0.normal_form(), 1: h1.normal_form()}

    def to_dict(self) -> Dict:
        coh = self.cohomology()
        return {
            'ring': self.ring.label,
            'generators': [list(g) for g in self.generators],
            'window': [self.lo, self.hi],
            'terms': [self.term_label(p) for p in range(self.rank + 1)],
            'cohomology': {str(p): {str(t): d for t, d in dims.items()} for p, dims in coh.items()},
        }


def _compositions(k: int, parts: int):
    """k를 음이 아닌 parts개로 나누는 방법"""
    if parts == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


def stable_koszul(ring: GradedRing, generators: Sequence[LinearForm], lo: int = -16, hi: int = 16) -> KoszulComplex:
    """생성원 c₁..c_r 에 대한 안정 코줄 복합체

    꼭대기 코호몰로지의 바닥 류 c₁⁻¹⋯c_r⁻¹ 은 내부 차수 2r 에 있다.
    H_*((BT)^{LT}) 는 이것을 r 만큼 내린 것 (바닥 차수 r) 으로 둔다.
    """
    if not generators:
        raise ModuleError("코줄 복합체의 생성원이 비어 있음")
    if ring.rank == 0:
        raise ModuleError("ℚ 위에는 코줄 복합체를 만들지 않음")
    r = ring.rank
    expected = {tuple(1 if i == j else 0 for i in range(r)) for j in range(r)}
    if {tuple(g) for g in generators} != expected or len(generators) != r:
        raise UnsupportedError("좌표 생성원 (c₁, …, c_r) 만 지원")
    log("환", f"안정 코줄 복합체: {ring.label}, 창 [{lo}, {hi}]", level=2)
    return KoszulComplex(ring, generators, lo, hi)


def thom_payload(rank: int = 1, twist: int = 1) -> Summand:
    """H_*((BT)^{LT}) 의 랭크 1 정규형 성분: 바닥 차수 1의 나눗셈 가군"""
    if rank != 1:
        raise UnsupportedError("정규형 성분은 랭크 1만")
    return Summand.divisible(1, twist)
