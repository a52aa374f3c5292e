"""
ToralKit 오일러 집합과 국소화
깃발 (K₀ ⊃ … ⊃ K_s)의 본질적 지표 오일러 류, 바일 궤도 노름, 국소화와 불변식의 교환 검사
"""

from math import gcd
from itertools import product
from typing import Dict, List, Sequence, Tuple

import sympy as sp
from sympy import Matrix, expand

from ..core.errors import ModuleError
from ..core.log import log
from ..lattice.poset import Flag, SubgroupPoset
from ..lattice.subgroup import lattice_contains
from . import linalg
from .graded_module import GradedModule, Summand
from .invariants import invariant_space, invariants
from .module_ops import fixed_points, localized_ring
from .polynomial import GradedRing, LinearForm, RingAction, coefficient_vector, monomials


class EulerSet:
    """곱셈 집합의 생성원 (선형 형식들의 곱)

    forms는 H*(BT/K_s)의 생성원 좌표로 쓴 오일러 류.
    랭크 2 이상에서는 계수 크기 bound까지만 나열하므로 complete = False.
    """

    def __init__(self, label: str, rank: int, forms: Sequence[LinearForm], complete: bool = True):
        self.label = label
        self.rank = rank
        self.forms: List[LinearForm] = [tuple(int(x) for x in f) for f in forms]
        self.complete = complete

    @property
    def is_empty(self) -> bool:
        return not self.forms

    def elements(self, gens) -> List:
        return [expand(sum(a * g for a, g in zip(f, gens))) for f in self.forms]

    def product(self, gens):
        result = sp.Integer(1)
        for e in self.elements(gens):
            result *= e
        return expand(result)

    def norms(self, action: RingAction, gens) -> List:
        """바일 궤도 노름 N e = ∏_w w·e"""
        result = []
        for e in self.elements(gens):
            norm = sp.Integer(1)
            for w in action.group.all():
                norm *= action.apply(w, e, gens)
            result.append(expand(norm))
        return result

    def to_dict(self) -> Dict:
        return {'flag': self.label, 'rank': self.rank,
                'forms': [list(f) for f in self.forms], 'complete': self.complete}

    def __repr__(self):
        return f"EulerSet({self.label}, {self.forms})"


def euler_set(flag: Flag, poset: SubgroupPoset, bound: int = 2) -> EulerSet:
    """ℰ_{K₀/K_s}: K₀에서 고정점이 없는 T/K_s 지표들의 오일러 류"""
    if flag.length == 0:
        return EulerSet(flag.label, 0, [])
    first, last = flag.first, flag.last
    basis = list(last.annihilator)
    q = len(basis)
    n = poset.spec.rank
    if q == 0:
        return EulerSet(flag.label, 0, [])
    if q == 1:
        # 모든 오일러 류가 c의 배수
        essential = first != last
        return EulerSet(flag.label, 1, [(1,)] if essential else [])
    forms = []
    for coeffs in product(range(-bound, bound + 1), repeat=q):
        if not any(coeffs) or _gcd(coeffs) != 1 or next(c for c in coeffs if c) < 0:
            continue
        chi = tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(n))
        if not lattice_contains(n, first.annihilator, chi):
            forms.append(tuple(coeffs))
    log("환", f"오일러 집합 {flag.label}: 형식 {len(forms)}개 (계수 ≤ {bound})", level=2)
    return EulerSet(flag.label, q, sorted(forms), complete=False)


def _gcd(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


def localize(ring: GradedRing, euler: EulerSet) -> GradedRing:
    """ℰ⁻¹R (랭크 1은 로랑 환)"""
    if euler.is_empty:
        return ring
    for f in euler.forms:
        if not any(f):
            raise ModuleError("0을 역원으로 만들 수 없음")
    if len(euler.forms[0]) != ring.rank:
        raise ModuleError(f"오일러 집합 랭크 {len(euler.forms[0])} ≠ 환 랭크 {ring.rank}")
    return ring.localized(euler.forms)


class ExchangeReport:
    """불변식∘국소화 = 노름 국소화∘불변식 검사 결과"""

    def __init__(self, mismatches: List[Tuple[int, int, int]], compared: Dict[int, Tuple[int, int]]):
        self.mismatches = mismatches
        self.compared = compared

    @property
    def holds(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> Dict:
        return {'holds': self.holds, 'degrees': len(self.compared),
                'mismatches': [list(m) for m in self.mismatches]}


def check_localization_exchange(ring: GradedRing, action: RingAction, euler: EulerSet,
                                lo: int = -40, hi: int = 0, depth: int = 1) -> ExchangeReport:
    """(S⁻¹R)^W 와 (NS)⁻¹(R^W)를 차수별로 비교

    랭크 1: 창 위 고정점 계산 대 불변식 환의 국소화.
    랭크 2: 분모 e^m (m = |W|·depth) 조각에서 분수 방정식의 영공간 대 레이놀즈 상.
    """
    if euler.is_empty:
        raise ModuleError("빈 오일러 집합으로는 교환 검사를 하지 않음")
    compared: Dict[int, Tuple[int, int]] = {}
    mismatches: List[Tuple[int, int, int]] = []
    if ring.rank == 1:
        chi = action.character()
        laurent = localized_ring(ring)
        module = GradedModule.from_summands(laurent, [Summand.laurent(0)], lo, hi, equivariant=True, chi=chi)
        fixed, _ = fixed_points(module)
        inv = invariants(ring, action, max(2 * ring.step, -lo))
        inv_ring = inv.as_graded_ring('d') if inv.generators else ring
        local_inv = inv_ring.localized([(1,)])
        for t in range(lo, hi + 1):
            left, right = fixed.dim(t), local_inv.dim(t)
            compared[t] = (left, right)
            if left != right:
                mismatches.append((t, left, right))
    else:
        if not action.preserves_forms(euler.forms):
            raise ModuleError("오일러 집합이 바일 작용에 닫혀 있지 않음")
        gens = ring.gens
        e = euler.product(gens)
        deg_e = 2 * len(euler.forms)
        m = action.order * depth
        for t in range(lo, hi + 1):
            if t % 2:
                continue
            codeg = -t + m * deg_e
            left = _fraction_invariants(ring, action, e, m, codeg)
            right = len(invariant_space(ring, action, codeg))
            compared[t] = (left, right)
            if left != right:
                mismatches.append((t, left, right))
    report = ExchangeReport(mismatches, compared)
    log("환", f"국소화 교환 검사 {ring.label}: {'성립' if report.holds else '실패'}", level=2)
    return report


def _fraction_invariants(ring: GradedRing, action: RingAction, e, m: int, codeg: int) -> int:
    """{p : (w·p)·e^m = p·(w·e)^m ∀w} 의 차원"""
    gens = ring.gens
    basis = monomials(ring.codegrees, codeg)
    if not basis:
        return 0
    target = monomials(ring.codegrees, codeg + m * _degree(e, gens))
    blocks = []
    em = expand(e ** m)
    for w in action.group.all():
        wem = expand(action.apply(w, e, gens) ** m)
        columns = []
        for mono in basis:
            p = sp.Integer(1)
            for g, k in zip(gens, mono):
                p *= g ** k
            diff = expand(action.apply(w, p, gens) * em - p * wem)
            columns.append(coefficient_vector(diff, gens, target))
        blocks.append(Matrix(len(target), len(basis), lambda i, j: columns[j][i]))
    stacked = linalg.vstack(len(basis), blocks)
    return linalg.nullspace(stacked).cols


def _degree(e, gens) -> int:
    """동차 다항식의 여차수"""
    return 2 * sp.Poly(e, *gens).total_degree()
