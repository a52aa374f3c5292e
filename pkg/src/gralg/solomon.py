"""
ToralKit 반불변식 검사
A(V) = E(ΣV) ⊗ P(Σ²V) 에서 δκ 의 불변성과 δ·P 의 불변 원소가 κ 로 나누어지는지
(δ: 외대수의 꼭대기 류, κ: 양의 근의 곱)
"""

from typing import Dict, List

import sympy as sp
from sympy import Matrix, Rational, expand

from ..core.errors import UnsupportedError
from ..core.log import log
from ..lattice.group_spec import GroupSpec
from ..lattice.weyl import MatrixGroup
from . import linalg
from .invariants import invariant_space
from .polynomial import RingAction, coefficient_vector, monomials, polynomial_ring


class SolomonReport:
    """검사 결과: (a) δκ 불변, (b) δ·P 불변 원소의 κ 가분성"""

    def __init__(self, group: str, kappa, invariant_ok: bool, divisible_ok: bool,
                 dims: Dict[int, List[int]]):
        self.group = group
        self.kappa = kappa
        self.invariant_ok = invariant_ok
        self.divisible_ok = divisible_ok
        self.dims = dims

    @property
    def holds(self) -> bool:
        return self.invariant_ok and self.divisible_ok

    def to_dict(self) -> Dict:
        return {
            'group': self.group,
            'kappa': str(self.kappa),
            'delta_kappa_invariant': self.invariant_ok,
            'divisible': self.divisible_ok,
            'holds': self.holds,
            'dims': {str(k): v for k, v in self.dims.items()},
        }


def _anti_invariants(ring, action: RingAction, group: MatrixGroup, codegree: int) -> List:
    """w·p = det(w)·p 인 다항식 기저 (δ·p 가 불변인 p)"""
    basis = monomials(ring.codegrees, codegree)
    if not basis:
        return []
    gens = ring.gens
    images = []
    for mono in basis:
        p = sp.Integer(1)
        for g, e in zip(gens, mono):
            p *= g ** e
        total = 0
        for w in group.all():
            total += group.det(w) * action.apply(w, p, gens)
        images.append(coefficient_vector(expand(total * Rational(1, group.order)), gens, basis))
    columns = Matrix(len(basis), len(basis), lambda i, j: images[j][i])
    space = linalg.column_space(columns)
    result = []
    for j in range(space.cols):
        expr = 0
        for coeff, mono in zip(space[:, j], basis):
            term = coeff
            for g, e in zip(gens, mono):
                term *= g ** e
            expr += term
        result.append(expand(expr))
    return result


def solomon_check(spec: GroupSpec, bound: int = 20) -> SolomonReport:
    """근 데이터에 대해 δκ 불변성과 κ 가분성을 정확한 선형대수로 확인"""
    group = MatrixGroup(spec.rank, spec.weyl_generators)
    reflections = [group.reflection_for_root(root) for root in spec.positive_roots]
    if any(r is None for r in reflections) or \
            len(group.subgroup_generated(reflections)) != group.order:
        raise UnsupportedError(f"{spec.name}: 바일 군이 근 반사로 생성되지 않음")
    ring = polynomial_ring(spec.rank)
    gens = ring.gens
    action = RingAction(group)
    kappa = sp.Integer(1)
    for root in spec.positive_roots:
        kappa *= sum(a * g for a, g in zip(root, gens))
    kappa = expand(kappa)
    kappa_codegree = 2 * len(spec.positive_roots)

    invariant_ok = all(
        expand(group.det(w) * action.apply(w, kappa, gens) - kappa) == 0 for w in group.all())

    divisible_ok = True
    dims: Dict[int, List[int]] = {}
    for k in range(0, bound + 1, 2):
        anti = _anti_invariants(ring, action, group, k)
        inv = invariant_space(ring, action, k - kappa_codegree) if k >= kappa_codegree else []
        dims[k] = [len(anti), len(inv)]
        if len(anti) != len(inv):
            divisible_ok = False
        for p in anti:
            if spec.rank == 0:
                continue
            _, remainder = sp.div(p, kappa, *gens)
            if remainder != 0:
                divisible_ok = False
    log("환", f"반불변식 검사 {spec.name}: κ = {kappa}, {'성립' if invariant_ok and divisible_ok else '실패'}",
        level=2)
    return SolomonReport(spec.name, kappa, invariant_ok, divisible_ok, dims)
