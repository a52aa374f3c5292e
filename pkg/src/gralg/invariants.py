"""
ToralKit 불변식 환
레이놀즈 평균, 최소 생성원, 몰리엔 급수
"""

from typing import Dict, List, Tuple

import sympy as sp
from sympy import Matrix, Rational, expand

from ..core.log import log
from . import linalg
from .polynomial import GradedRing, RingAction, coefficient_vector, monomials


def reynolds(action: RingAction, poly, gens) -> object:
    """레이놀즈 연산자 (1/|W|) Σ_w w·p"""
    total = 0
    for w in action.group.all():
        total += action.apply(w, poly, gens)
    return expand(total * Rational(1, action.order))


def _monomial_expr(gens, exponents) -> object:
    expr = sp.Integer(1)
    for g, e in zip(gens, exponents):
        expr *= g ** e
    return expr


def _from_vector(gens, basis, vector) -> object:
    expr = 0
    for coeff, mono in zip(vector, basis):
        if coeff != 0:
            expr += coeff * _monomial_expr(gens, mono)
    return expand(expr)


def invariant_space(ring: GradedRing, action: RingAction, codegree: int) -> List[object]:
    """여차수 codegree의 불변 다항식 기저"""
    basis = monomials(ring.codegrees, codegree)
    if not basis:
        return []
    images = [coefficient_vector(reynolds(action, _monomial_expr(ring.gens, m), ring.gens), ring.gens, basis)
              for m in basis]
    columns = Matrix(len(basis), len(basis), lambda i, j: images[j][i])
    space = linalg.column_space(columns)
    return [_from_vector(ring.gens, basis, list(space[:, j])) for j in range(space.cols)]


class InvariantRing:
    """불변식 부분환 (생성원은 bound 여차수까지)"""

    def __init__(self, ambient: GradedRing, action: RingAction, bound: int,
                 generators: List[Tuple[object, int]], dims: List[int]):
        self.ambient = ambient
        self.action = action
        self.bound = bound
        self.generators = generators
        self.dims = dims
        # bound < 2 이면 생성원 목록이 비어 있음을 표시
        self.flagged = bound < 2

    @property
    def generator_codegrees(self) -> List[int]:
        return [d for _, d in self.generators]

    def subalgebra_dims(self) -> List[int]:
        """생성원이 만드는 부분대수의 차수별 차원"""
        result = []
        gen_codegrees = self.generator_codegrees
        for k in range(self.bound + 1):
            basis = monomials(self.ambient.codegrees, k)
            if k == 0:
                result.append(1)
                continue
            products = []
            for exps in monomials(gen_codegrees, k):
                expr = sp.Integer(1)
                for (g, _), e in zip(self.generators, exps):
                    expr *= g ** e
                products.append(coefficient_vector(expand(expr), self.ambient.gens, basis))
            if not products or not basis:
                result.append(0)
                continue
            m = Matrix(len(basis), len(products), lambda i, j: products[j][i])
            result.append(linalg.rank(m))
        return result

    def check_generated(self) -> bool:
        return self.subalgebra_dims() == self.dims

    def check_fixed(self) -> bool:
        for g, _ in self.generators:
            for w in self.action.group.all():
                if expand(self.action.apply(w, g, self.ambient.gens) - g) != 0:
                    return False
        return True

    def as_graded_ring(self, symbol: str = 'd') -> GradedRing:
        """생성원이 하나뿐인 경우 다항식환으로 (예: ℚ[c]^W = ℚ[d])"""
        if len(self.generators) == 1:
            return GradedRing((symbol,), (self.generators[0][1],))
        names = tuple(f"{symbol}{i + 1}" for i in range(len(self.generators)))
        return GradedRing(names, tuple(self.generator_codegrees))

    def to_dict(self) -> Dict:
        return {
            'ambient': self.ambient.label,
            'bound': self.bound,
            'generators': [{'poly': str(g), 'codegree': d} for g, d in self.generators],
            'dims': self.dims,
            'flagged': self.flagged,
        }


def invariants(ring: GradedRing, action: RingAction, bound: int) -> InvariantRing:
    """레이놀즈 평균으로 불변식 환과 최소 동차 생성원 계산"""
    generators: List[Tuple[object, int]] = []
    dims = [1] if bound >= 0 else []
    for k in range(1, bound + 1):
        basis = monomials(ring.codegrees, k)
        space = invariant_space(ring, action, k) if basis else []
        dims.append(len(space))
        if not space:
            continue
        products = []
        for exps in monomials([d for _, d in generators], k):
            expr = sp.Integer(1)
            for (g, _), e in zip(generators, exps):
                expr *= g ** e
            products.append(coefficient_vector(expand(expr), ring.gens, basis))
        current = Matrix(len(basis), len(products), lambda i, j: products[j][i]) if products \
            else linalg.zeros(len(basis), 0)
        r = linalg.rank(current)
        for poly in space:
            vec = Matrix(coefficient_vector(poly, ring.gens, basis))
            trial = current.row_join(vec)
            if linalg.rank(trial) > r:
                lead = next(x for x in vec if x != 0)
                generators.append((expand(poly / lead), k))
                current = trial
                r += 1
    log("환", f"불변식 환: {ring.label}, |W|={action.order}, 생성원 여차수 {[d for _, d in generators]}", level=2)
    return InvariantRing(ring, action, bound, generators, dims)


def molien_series(action: RingAction, bound: int) -> List:
    """(1/|W|) Σ_w 1/det(1 - t²·A_w)의 여차수 0..bound 계수"""
    t = sp.Symbol('t')
    n = action.rank
    total = 0
    for w in action.group.all():
        total += 1 / (sp.eye(n) - t ** 2 * action.matrix(w)).det()
    total = total / action.order
    expansion = sp.series(total, t, 0, bound + 1).removeO()
    return [sp.nsimplify(expansion.coeff(t, k)) for k in range(bound + 1)]
