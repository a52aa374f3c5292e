"""
ToralKit 차수환
H*(BT/K) 형태의 다항식환, 국소화, 환 사상, 유한군 작용, 꼬인 군환

내부 차수 = -(여차수). 생성원 c는 내부 차수 -2 (여차수 2).
"""

from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, Poly, Symbol, expand, symbols

from ..core.errors import ModuleError
from ..lattice.weyl import MatrixGroup

LinearForm = Tuple[int, ...]


class GradedRing:
    """ℚ 위 차수 가환 다항식환 (선택적으로 국소화)"""

    def __init__(self, names: Sequence[str] = (), codegrees: Optional[Sequence[int]] = None,
                 inverted: Sequence[LinearForm] = (), laurent: bool = False):
        self.names: Tuple[str, ...] = tuple(names)
        self.codegrees: Tuple[int, ...] = tuple(codegrees) if codegrees is not None else (2,) * len(self.names)
        if len(self.codegrees) != len(self.names):
            raise ModuleError("생성원 이름과 여차수 개수가 다름")
        for form in inverted:
            if len(form) != len(self.names) or not any(form):
                raise ModuleError(f"역원으로 만들 수 없는 원소: {form}")
        self.inverted: Tuple[LinearForm, ...] = tuple(sorted(set(tuple(f) for f in inverted)))
        if laurent and len(self.names) != 1:
            raise ModuleError("로랑 표기는 생성원 1개짜리 환만 가능")
        self.laurent = laurent
        self.gens = symbols(' '.join(self.names)) if self.names else ()
        if len(self.names) == 1:
            self.gens = (self.gens,) if isinstance(self.gens, Symbol) else tuple(self.gens)

    # ----- 기본 속성 -----

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def step(self) -> int:
        """생성원 1개짜리 환에서 생성원의 여차수 (ℚ이면 0)"""
        if self.rank == 0:
            return 0
        if self.rank != 1:
            raise ModuleError(f"다변수 환에는 단일 step이 없음: {self.label}")
        return self.codegrees[0]

    @property
    def symbol(self) -> str:
        return self.names[0] if self.names else ''

    @property
    def is_field(self) -> bool:
        return self.rank == 0

    @property
    def is_localized(self) -> bool:
        return self.laurent or bool(self.inverted)

    @property
    def label(self) -> str:
        if self.rank == 0:
            return "Q"
        if self.laurent:
            return f"Q[{self.symbol},{self.symbol}^-1]"
        body = f"Q[{','.join(self.names)}]"
        if self.inverted:
            return f"E^-1 {body}"
        return body

    def key(self) -> Tuple:
        return (self.names, self.codegrees, self.inverted, self.laurent)

    def dim(self, t: int) -> int:
        """내부 차수 t에서의 ℚ-차원 (국소화된 다변수 환은 무한)"""
        if self.rank == 0:
            return 1 if t == 0 else 0
        if self.rank == 1:
            s = self.step
            if t % s != 0:
                return 0
            return 1 if (self.laurent or t <= 0) else 0
        if self.inverted:
            raise ModuleError(f"{self.label}: 국소화된 다변수 환의 차수별 차원은 유한하지 않음")
        return len(monomials(self.codegrees, -t))

    def hilbert_series(self, bound: int) -> List[int]:
        """여차수 0..bound 계수"""
        return [self.dim(-k) for k in range(bound + 1)]

    def localized(self, forms: Sequence[LinearForm]) -> 'GradedRing':
        if not forms:
            return self
        if self.rank == 1:
            return GradedRing(self.names, self.codegrees, laurent=True)
        return GradedRing(self.names, self.codegrees, inverted=tuple(self.inverted) + tuple(forms))

    def polynomial_part(self) -> 'GradedRing':
        return GradedRing(self.names, self.codegrees)

    def to_dict(self) -> Dict:
        return {
            'label': self.label,
            'generators': list(self.names),
            'codegrees': list(self.codegrees),
            'inverted': [list(f) for f in self.inverted],
            'laurent': self.laurent,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'GradedRing':
        return cls(data.get('generators', []), data.get('codegrees'),
                   [tuple(f) for f in data.get('inverted', [])], data.get('laurent', False))

    def __eq__(self, other):
        return isinstance(other, GradedRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.label


def monomials(codegrees: Sequence[int], total: int) -> List[Tuple[int, ...]]:
    """가중 여차수 합이 total인 지수 벡터 (사전순)"""
    if total < 0:
        return []
    if not codegrees:
        return [()] if total == 0 else []
    result = []
    first, rest = codegrees[0], codegrees[1:]
    for e in range(total // first, -1, -1):
        for tail in monomials(rest, total - e * first):
            result.append((e,) + tail)
    return result


def polynomial_ring(rank: int, symbol: str = 'c') -> GradedRing:
    """ℚ[c₁,…,c_rank], 여차수 2"""
    if rank < 0:
        raise ModuleError(f"랭크는 0 이상: {rank}")
    if rank == 0:
        return GradedRing()
    if rank == 1:
        return GradedRing((symbol,))
    return GradedRing(tuple(f"{symbol}{i + 1}" for i in range(rank)))


QQ_RING = GradedRing()
C_RING = GradedRing(('c',))
D_RING = GradedRing(('d',), (4,))
L_RING = GradedRing(('c',), laurent=True)
LD_RING = GradedRing(('d',), (4,), laurent=True)


def hilbert_series(ring: GradedRing, bound: int) -> List[int]:
    return ring.hilbert_series(bound)


class RingMap:
    """차수환 사상

    생성원 1개짜리 환: 생성원 ↦ 생성원^exponent (예: d ↦ c², exponent 2).
    다변수 환: 생성원 선형 치환 (substitution 행렬의 열 = 원천 생성원의 상).
    """

    def __init__(self, source: GradedRing, target: GradedRing, exponent: int = 1,
                 substitution: Optional[Matrix] = None):
        self.source = source
        self.target = target
        if source.rank == 0:
            exponent = 0
        self.exponent = exponent
        self.substitution = substitution
        if source.rank == 1 and target.rank == 1 and substitution is None:
            if source.step != target.step * exponent:
                raise ModuleError(f"환 사상 차수 불일치: {source.label} → {target.label} (지수 {exponent})")
            if source.laurent and not target.laurent:
                raise ModuleError(f"로랑 환에서 다항식환으로의 사상은 없음: {source.label} → {target.label}")

    @classmethod
    def identity(cls, ring: GradedRing) -> 'RingMap':
        if ring.rank <= 1:
            return cls(ring, ring, 1)
        return cls(ring, ring, substitution=Matrix.eye(ring.rank))

    @property
    def is_identity(self) -> bool:
        if self.source != self.target:
            return False
        if self.source.rank <= 1:
            return self.exponent == 1 or self.source.rank == 0
        return self.substitution == Matrix.eye(self.source.rank)

    @property
    def kind(self) -> str:
        """identity / finite (유한 자유 확장) / localize / field (ℚ → 로랑) / other"""
        s, t = self.source, self.target
        if self.is_identity:
            return 'identity'
        if s.rank == 0:
            return 'field' if t.laurent or t.rank == 0 else 'other'
        if s.rank == 1 and t.rank == 1:
            if s.laurent == t.laurent:
                return 'finite'
            if t.laurent and not s.laurent:
                return 'localize'
        return 'other'

    def compose(self, other: 'RingMap') -> 'RingMap':
        """self 다음 other"""
        if self.target != other.source:
            raise ModuleError(f"환 사상 합성 불가: {self.target.label} ≠ {other.source.label}")
        if self.source.rank <= 1 and other.target.rank <= 1:
            return RingMap(self.source, other.target, self.exponent * other.exponent)
        return RingMap(self.source, other.target, substitution=other.substitution * self.substitution)

    def same_as(self, other: 'RingMap') -> bool:
        if (self.source, self.target) != (other.source, other.target):
            return False
        if self.source.rank <= 1:
            return self.exponent == other.exponent
        return self.substitution == other.substitution

    def to_dict(self) -> Dict:
        data = {'source': self.source.label, 'target': self.target.label, 'kind': self.kind}
        if self.substitution is not None:
            data['substitution'] = [[int(x) for x in self.substitution.row(i)]
                                    for i in range(self.substitution.rows)]
        else:
            data['exponent'] = self.exponent
        return data

    def __repr__(self):
        return f"RingMap({self.source.label} → {self.target.label})"


class RingAction:
    """유한군의 차수 2 부분 위 작용 (원소 ↦ 정수 행렬)"""

    def __init__(self, group: MatrixGroup, matrices: Optional[Dict[int, Matrix]] = None):
        self.group = group
        if matrices is None:
            matrices = {a: Matrix(group.matrix(a).tolist()) for a in group.all()}
        self.matrices = matrices

    @classmethod
    def trivial(cls, rank: int) -> 'RingAction':
        return cls(MatrixGroup(rank, []))

    @classmethod
    def sign(cls) -> 'RingAction':
        """c ↦ -c"""
        return cls(MatrixGroup(1, [[[-1]]]))

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def rank(self) -> int:
        return self.group.rank

    def matrix(self, w: int) -> Matrix:
        return self.matrices[w]

    def character(self, w: int = None) -> int:
        """랭크 1에서 생성원에 작용하는 부호 (w 생략 시 비자명 원소)"""
        if self.rank != 1:
            raise ModuleError("지표는 랭크 1 작용에서만 정의")
        if w is None:
            w = 1 if self.order > 1 else 0
        return int(self.matrices[w][0, 0])

    def apply(self, w: int, poly, gens: Sequence[Symbol]):
        """w·p: 생성원 x_j ↦ Σ_i A[i,j] x_i"""
        a = self.matrices[w]
        images = {gens[j]: sum(a[i, j] * gens[i] for i in range(len(gens))) for j in range(len(gens))}
        return expand(poly.subs(images, simultaneous=True))

    def check_homomorphism(self) -> bool:
        for v in self.group.all():
            for w in self.group.all():
                if self.matrices[self.group.mul(v, w)] != self.matrices[v] * self.matrices[w]:
                    return False
        return True

    def preserves_forms(self, forms: Sequence[LinearForm]) -> bool:
        """역원 집합이 작용에 닫혀 있는지 (부호 차이는 단원)"""
        canon = {_canonical_form(f) for f in forms}
        for w in self.group.all():
            a = self.matrices[w]
            for f in forms:
                image = tuple(int(sum(a[i, j] * f[j] for j in range(len(f)))) for i in range(len(f)))
                if _canonical_form(image) not in canon:
                    return False
        return True


def _canonical_form(form: Sequence[int]) -> LinearForm:
    form = tuple(int(x) for x in form)
    for x in form:
        if x != 0:
            return form if x > 0 else tuple(-y for y in form)
    return form


class TwistedGroupRing:
    """꼬인 군환 R[W]: (rλ)(sγ) = (r·(λ·s))(λγ)"""

    def __init__(self, base: GradedRing, action: RingAction, elements: Optional[Sequence[int]] = None):
        self.base = base
        self.action = action
        self.elements = list(elements) if elements is not None else action.group.all()

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def label(self) -> str:
        if self.order == 1:
            return self.base.label
        return f"{self.base.label}[W{self.order}]"

    def multiply(self, x: Dict[int, object], y: Dict[int, object]) -> Dict[int, object]:
        group = self.action.group
        result: Dict[int, object] = {}
        for lam, r in x.items():
            for gam, s in y.items():
                key = group.mul(lam, gam)
                term = expand(r * self.action.apply(lam, s, self.base.gens))
                result[key] = expand(result.get(key, 0) + term)
        return {k: v for k, v in result.items() if v != 0}

    def dim(self, t: int) -> int:
        return self.order * self.base.dim(t)

    def check_associativity(self, samples: Sequence[Dict[int, object]]) -> bool:
        for a in samples:
            for b in samples:
                for c in samples:
                    left = self.multiply(self.multiply(a, b), c)
                    right = self.multiply(a, self.multiply(b, c))
                    keys = set(left) | set(right)
                    if any(expand(left.get(k, 0) - right.get(k, 0)) != 0 for k in keys):
                        return False
        return True

    def to_dict(self) -> Dict:
        return {'label': self.label, 'base': self.base.to_dict(), 'group_order': self.order}


def coefficient_vector(poly, gens: Sequence[Symbol], basis: Sequence[Tuple[int, ...]]) -> List:
    """단항식 기저에 대한 계수 벡터"""
    if not gens:
        return [poly]
    p = Poly(poly, *gens)
    lookup = dict(p.terms())
    return [lookup.get(tuple(m), 0) for m in basis]
