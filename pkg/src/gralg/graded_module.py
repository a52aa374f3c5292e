"""
ToralKit 차수 가군
랭크 1 환(ℚ, ℚ[c], ℚ[d], 로랑 환) 위의 차수 가군

두 가지 표현:
  - NormalForm: Free / Torsion / Divisible / Laurent 직합 성분 목록
  - 창(window) 표현: 차수 [lo, hi]의 차원, 생성원 작용 행렬, 바일 대합 행렬

창 밖은 안정 끝 규약을 따른다. lo 아래와 hi 위에서는 경계 값이 주기적으로
반복되고 생성원은 항등 행렬로 작용한다 (대합에는 한 걸음마다 환 지표 χ가 곱해짐).
ℚ 위 가군은 창 밖에서 0이다.
"""

from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix

from ..core.errors import ModuleError
from . import linalg
from .polynomial import GradedRing


class SummandKind(Enum):
    """정규형 성분 종류"""
    FREE = "free"
    TORSION = "torsion"
    DIVISIBLE = "divisible"
    LAURENT = "laurent"


class Summand:
    """정규형 성분 하나

    FREE(a): 생성원 차수 a, 원소 c^j g 는 차수 a - s·j
    TORSION(a, e): c^j g (0 ≤ j < e)
    DIVISIBLE(b): 바닥 차수 b, 원소 e_{b+s·j}, c·e_b = 0
    LAURENT(a): 모든 j ∈ ℤ
    twist: 바일 원소가 기준 원소에 곱하는 부호 (0 → +1, 1 → -1), c^j 배에는 χ^j가 추가
    """

    def __init__(self, kind: SummandKind, shift: int, exponent: int = 0, twist: int = 0):
        self.kind = kind
        self.shift = int(shift)
        self.exponent = int(exponent) if kind == SummandKind.TORSION else 0
        self.twist = int(twist) % 2
        if kind == SummandKind.TORSION and self.exponent < 1:
            raise ModuleError(f"꼬임 성분의 지수는 1 이상: {exponent}")

    @property
    def sign(self) -> int:
        return -1 if self.twist else 1

    @classmethod
    def free(cls, shift: int, twist: int = 0) -> 'Summand':
        return cls(SummandKind.FREE, shift, 0, twist)

    @classmethod
    def torsion(cls, shift: int, exponent: int, twist: int = 0) -> 'Summand':
        return cls(SummandKind.TORSION, shift, exponent, twist)

    @classmethod
    def divisible(cls, shift: int, twist: int = 0) -> 'Summand':
        return cls(SummandKind.DIVISIBLE, shift, 0, twist)

    @classmethod
    def laurent(cls, shift: int, twist: int = 0) -> 'Summand':
        return cls(SummandKind.LAURENT, shift, 0, twist)

    def key(self) -> Tuple:
        order = [SummandKind.FREE, SummandKind.TORSION, SummandKind.DIVISIBLE, SummandKind.LAURENT]
        return (order.index(self.kind), self.shift, self.exponent, self.twist)

    @property
    def label(self) -> str:
        mark = "~" if self.twist else ""
        if self.kind == SummandKind.FREE:
            return f"F({self.shift}){mark}"
        if self.kind == SummandKind.TORSION:
            return f"T({self.shift},{self.exponent}){mark}"
        if self.kind == SummandKind.DIVISIBLE:
            return f"D({self.shift}){mark}"
        return f"L({self.shift}){mark}"

    def shifted(self, a: int) -> 'Summand':
        return Summand(self.kind, self.shift + a, self.exponent, self.twist)

    def to_dict(self) -> Dict:
        data = {'kind': self.kind.value, 'shift': self.shift, 'twist': self.twist}
        if self.kind == SummandKind.TORSION:
            data['exponent'] = self.exponent
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> 'Summand':
        try:
            kind = SummandKind(data['kind'])
        except (KeyError, ValueError):
            raise ModuleError(f"알 수 없는 성분 종류: {data.get('kind')!r}")
        return cls(kind, data.get('shift', 0), data.get('exponent', 0), data.get('twist', 0))

    def __eq__(self, other):
        return isinstance(other, Summand) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return self.label


class NormalForm:
    """성분의 다중집합"""

    def __init__(self, summands: Sequence[Summand] = ()):
        self.summands: List[Summand] = sorted(summands, key=Summand.key)

    def count(self, kind: SummandKind) -> int:
        return sum(1 for s in self.summands if s.kind == kind)

    @property
    def is_torsion(self) -> bool:
        return all(s.kind in (SummandKind.TORSION, SummandKind.DIVISIBLE) for s in self.summands)

    @property
    def label(self) -> str:
        return " + ".join(s.label for s in self.summands) if self.summands else "0"

    def to_dict(self) -> Dict:
        return {'summands': [s.to_dict() for s in self.summands]}

    @classmethod
    def from_dict(cls, data: Dict) -> 'NormalForm':
        return cls([Summand.from_dict(s) for s in data.get('summands', [])])

    def __eq__(self, other):
        return isinstance(other, NormalForm) and self.summands == other.summands

    def __repr__(self):
        return f"NormalForm({self.label})"


class Window:
    """차수 창 [lo, hi]"""

    def __init__(self, lo: int, hi: int):
        if lo > hi:
            raise ModuleError(f"차수 창 lo > hi: [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def padded(self, pad: int) -> 'Window':
        return Window(self.lo - pad, self.hi + pad)

    def union(self, other: 'Window') -> 'Window':
        return Window(min(self.lo, other.lo), max(self.hi, other.hi))

    def as_tuple(self) -> Tuple[int, int]:
        return (self.lo, self.hi)

    def __eq__(self, other):
        return isinstance(other, Window) and self.as_tuple() == other.as_tuple()

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


class GradedModule:
    """창 표현의 차수 가군"""

    def __init__(self, ring: GradedRing, lo: int, hi: int, dims: Dict[int, int],
                 gen: Optional[Dict[int, Matrix]] = None, sigma: Optional[Dict[int, Matrix]] = None,
                 chi: int = 1, normal_form: Optional[NormalForm] = None):
        if ring.rank > 1:
            raise ModuleError(f"창 가군은 랭크 ≤ 1 환만 지원: {ring.label}")
        if lo > hi:
            raise ModuleError(f"차수 창 lo > hi: [{lo}, {hi}]")
        self.ring = ring
        self.lo = lo
        self.hi = hi
        self.dims = {t: int(dims.get(t, 0)) for t in range(lo, hi + 1)}
        s = self.step
        if s == 0:
            self.gen = {}
        else:
            self.gen = {}
            for t in range(lo + s, hi + 1):
                m = (gen or {}).get(t)
                if m is None:
                    m = linalg.zeros(self.dims[t - s], self.dims[t])
                if m.shape != (self.dims[t - s], self.dims[t]):
                    raise ModuleError(f"생성원 행렬 크기 오류 (차수 {t}): {m.shape}")
                self.gen[t] = m
        self.sigma = None
        if sigma is not None:
            self.sigma = {}
            for t in range(lo, hi + 1):
                m = sigma.get(t, linalg.eye(self.dims[t]))
                if m.shape != (self.dims[t], self.dims[t]):
                    raise ModuleError(f"대합 행렬 크기 오류 (차수 {t}): {m.shape}")
                self.sigma[t] = m
        self.chi = chi
        self._normal_form = normal_form

    # ----- 기본 속성 -----

    @property
    def step(self) -> int:
        return self.ring.step

    @property
    def window(self) -> Window:
        return Window(self.lo, self.hi)

    @property
    def equivariant(self) -> bool:
        return self.sigma is not None

    def rep(self, t: int) -> Tuple[int, int]:
        """창 밖 차수 t의 대표 차수와 걸음 수"""
        s = self.step
        if self.lo <= t <= self.hi or s == 0:
            return t, 0
        if t < self.lo:
            r = self.lo + (t - self.lo) % s
            return r, (r - t) // s
        r = self.hi - (self.hi - t) % s
        return r, (t - r) // s

    def dim(self, t: int) -> int:
        if self.step == 0:
            return self.dims.get(t, 0)
        return self.dims[self.rep(t)[0]]

    def gen_at(self, t: int) -> Matrix:
        """생성원 작용 M_t → M_{t-s}"""
        s = self.step
        if s == 0:
            raise ModuleError("ℚ 위 가군에는 생성원이 없음")
        if self.lo + s <= t <= self.hi:
            return self.gen[t]
        return linalg.eye(self.dim(t))

    def sigma_at(self, t: int) -> Optional[Matrix]:
        if self.sigma is None:
            return None
        if self.step == 0:
            if self.lo <= t <= self.hi:
                return self.sigma[t]
            return linalg.eye(0)
        r, m = self.rep(t)
        factor = self.chi ** m
        return self.sigma[r] * factor

    def down(self, vec: Matrix, t: int, k: int) -> Matrix:
        """차수 t의 원소(들)에 생성원을 k번 적용"""
        s = self.step
        for i in range(k):
            vec = self.gen_at(t - i * s) * vec
        return vec

    def path(self, u: int, t: int) -> Matrix:
        """차수 u에서 t ≤ u로 내려가는 생성원 합성"""
        s = self.step
        if (u - t) % s != 0 or t > u:
            raise ModuleError(f"생성원 경로 없음: {u} → {t}")
        result = linalg.eye(self.dim(u))
        for i in range((u - t) // s):
            result = self.gen_at(u - i * s) * result
        return result

    def transport(self, vec: Matrix, u: int, t: int) -> Matrix:
        """차수 u의 원소를 생성원의 거듭제곱(음수 허용)으로 차수 t로 옮김"""
        if t <= u:
            return self.path(u, t) * vec
        g = self.path(t, u)
        if g.rows != g.cols or linalg.rank(g) != g.rows:
            raise ModuleError(f"생성원이 가역이 아님: {t} → {u}")
        return linalg.solve(g, vec)

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims.values())

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dims_in(self, lo: int, hi: int) -> Dict[int, int]:
        return {t: self.dim(t) for t in range(lo, hi + 1)}

    # ----- 변환 -----

    def widen(self, lo: int, hi: int) -> 'GradedModule':
        """창을 [lo, hi]로 넓힌 동일 가군 (안정 끝을 실제 행렬로)"""
        lo, hi = min(lo, self.lo), max(hi, self.hi)
        if (lo, hi) == (self.lo, self.hi):
            return self
        dims = {t: self.dim(t) for t in range(lo, hi + 1)}
        gen = {}
        if self.step:
            for t in range(lo + self.step, hi + 1):
                gen[t] = self.gen_at(t)
        sigma = None
        if self.sigma is not None:
            sigma = {t: self.sigma_at(t) for t in range(lo, hi + 1)}
        return GradedModule(self.ring, lo, hi, dims, gen, sigma, self.chi, self._normal_form)

    def restrict(self, lo: int, hi: int) -> 'GradedModule':
        """창을 [lo, hi]로 줄임 (잘라낸 부분은 안정 영역이어야 함)"""
        if lo < self.lo or hi > self.hi:
            raise ModuleError(f"창 [{lo}, {hi}]이 [{self.lo}, {self.hi}] 밖으로 나감")
        s = self.step
        dims = {t: self.dims[t] for t in range(lo, hi + 1)}
        gen = {t: self.gen[t] for t in range(lo + s, hi + 1)} if s else None
        sigma = {t: self.sigma[t] for t in range(lo, hi + 1)} if self.sigma is not None else None
        return GradedModule(self.ring, lo, hi, dims, gen, sigma, self.chi, self._normal_form)

    def with_sigma(self, sigma: Optional[Dict[int, Matrix]], chi: int) -> 'GradedModule':
        return GradedModule(self.ring, self.lo, self.hi, self.dims, self.gen, sigma, chi)

    def without_sigma(self) -> 'GradedModule':
        return GradedModule(self.ring, self.lo, self.hi, self.dims, self.gen, None, self.chi)

    def over_ring(self, ring: GradedRing) -> 'GradedModule':
        """같은 데이터를 다른 환 위 가군으로 (스칼라 제한, 생성원 차수가 같아야 함)"""
        if ring.step != self.step:
            raise ModuleError(f"생성원 차수가 다른 환으로 옮길 수 없음: {self.ring.label} → {ring.label}")
        return GradedModule(ring, self.lo, self.hi, self.dims, self.gen, self.sigma, self.chi)

    def identity_map(self) -> 'ModuleMap':
        return ModuleMap(self, self, {t: linalg.eye(self.dims[t]) for t in range(self.lo, self.hi + 1)})

    # ----- 정규형 -----

    @classmethod
    def zero(cls, ring: GradedRing, lo: int, hi: int, equivariant: bool = False, chi: int = 1) -> 'GradedModule':
        return cls(ring, lo, hi, {}, None, {} if equivariant else None, chi, NormalForm())

    @classmethod
    def from_summands(cls, ring: GradedRing, summands: Sequence[Summand], lo: int, hi: int,
                      equivariant: bool = True, chi: int = 1) -> 'GradedModule':
        """정규형 성분 목록을 창 표현으로"""
        s = ring.step
        elements: Dict[int, List[Tuple[int, int]]] = {t: [] for t in range(lo, hi + 1)}
        signs: Dict[Tuple[int, int], int] = {}
        for idx, summand in enumerate(summands):
            _check_fits(ring, summand, lo, hi)
            for t in range(lo, hi + 1):
                j = _position(ring, summand, t)
                if j is None:
                    continue
                elements[t].append((idx, j))
                signs[(idx, j)] = summand.sign * (chi ** (abs(j) % 2) if s else 1)
        dims = {t: len(elements[t]) for t in elements}
        index = {t: {e: i for i, e in enumerate(elements[t])} for t in elements}
        gen = {}
        if s:
            for t in range(lo + s, hi + 1):
                m = linalg.zeros(dims[t - s], dims[t])
                for col, (idx, j) in enumerate(elements[t]):
                    image = _next_position(summands[idx], j)
                    if image is not None and (idx, image) in index[t - s]:
                        m[index[t - s][(idx, image)], col] = 1
                gen[t] = m
        sigma = None
        if equivariant:
            sigma = {}
            for t in elements:
                m = linalg.zeros(dims[t], dims[t])
                for i, e in enumerate(elements[t]):
                    m[i, i] = signs[e]
                sigma[t] = m
        return cls(ring, lo, hi, dims, gen, sigma, chi, NormalForm(summands))

    def normal_form(self) -> NormalForm:
        if self._normal_form is None:
            self._normal_form = classify(self)
        return self._normal_form

    # ----- 직렬화 -----

    def to_dict(self) -> Dict:
        data = {
            'ring': self.ring.to_dict(),
            'window': [self.lo, self.hi],
            'chi': self.chi,
            'equivariant': self.equivariant,
            'dims': {str(t): d for t, d in self.dims.items() if d},
        }
        # 구조 사상 행렬이 이 기저를 쓰므로 성분 목록이 아니라 기저 데이터를 저장
        if self.gen:
            data['gen'] = {str(t): linalg.as_list(m) for t, m in self.gen.items() if m.rows and m.cols}
        if self.sigma is not None:
            data['sigma'] = {str(t): linalg.as_list(m) for t, m in self.sigma.items() if m.rows}
        if self._normal_form is not None:
            data['normal_form'] = self._normal_form.label
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> 'GradedModule':
        ring = GradedRing.from_dict(data['ring'])
        lo, hi = data['window']
        chi = data.get('chi', 1)
        equivariant = data.get('equivariant', False)
        if 'summands' in data:
            return cls.from_summands(ring, [Summand.from_dict(s) for s in data['summands']], lo, hi,
                                     equivariant, chi)
        dims = {int(t): d for t, d in data.get('dims', {}).items()}
        gen = {}
        s = ring.step
        for t in range(lo + s, hi + 1) if s else []:
            raw = data.get('gen', {}).get(str(t))
            gen[t] = linalg.from_list(dims.get(t - s, 0), dims.get(t, 0), raw) if raw else \
                linalg.zeros(dims.get(t - s, 0), dims.get(t, 0))
        sigma = None
        if equivariant:
            sigma = {}
            for t in range(lo, hi + 1):
                raw = data.get('sigma', {}).get(str(t))
                d = dims.get(t, 0)
                sigma[t] = linalg.from_list(d, d, raw) if raw else linalg.eye(d)
        return cls(ring, lo, hi, dims, gen, sigma, chi)

    def __repr__(self):
        return f"GradedModule({self.ring.label}, [{self.lo},{self.hi}], {self.normal_form().label})"


def _check_fits(ring: GradedRing, summand: Summand, lo: int, hi: int):
    s = ring.step
    kind = summand.kind
    if s == 0:
        if kind != SummandKind.FREE:
            raise ModuleError(f"ℚ 위에서는 {kind.value} 성분을 쓸 수 없음")
        return
    if ring.laurent and kind != SummandKind.LAURENT:
        raise ModuleError(f"로랑 환 위 가군은 Laurent 성분만 가능: {summand.label}")
    ok = True
    if kind == SummandKind.FREE:
        ok = summand.shift <= hi - s
    elif kind == SummandKind.TORSION:
        bottom = summand.shift - (summand.exponent - 1) * s
        ok = summand.shift <= hi - s and bottom >= lo + s
    elif kind == SummandKind.DIVISIBLE:
        ok = summand.shift >= lo + s
    if not ok:
        raise ModuleError(f"성분 {summand.label}이 창 [{lo}, {hi}]에 맞지 않음 (창을 넓히세요)")


def _position(ring: GradedRing, summand: Summand, t: int) -> Optional[int]:
    """차수 t에서 성분의 원소 색인 j (없으면 None)"""
    s = ring.step
    a = summand.shift
    if s == 0:
        return 0 if t == a else None
    if (a - t) % s != 0:
        return None
    j = (a - t) // s
    kind = summand.kind
    if kind == SummandKind.FREE:
        return j if j >= 0 else None
    if kind == SummandKind.TORSION:
        return j if 0 <= j < summand.exponent else None
    if kind == SummandKind.DIVISIBLE:
        # 바닥에서 위로 센 색인: e_{b+s·j}
        j = (t - a) // s
        return j if j >= 0 else None
    return j


def _next_position(summand: Summand, j: int) -> Optional[int]:
    """생성원을 곱한 뒤의 색인"""
    kind = summand.kind
    if kind == SummandKind.FREE or kind == SummandKind.LAURENT:
        return j + 1
    if kind == SummandKind.TORSION:
        return j + 1 if j + 1 < summand.exponent else None
    return j - 1 if j >= 1 else None


def classify(module: GradedModule) -> NormalForm:
    """바코드(합성 사상의 계수)로 정규형 복원"""
    s = module.step
    chi = module.chi
    summands: List[Summand] = []
    if s == 0:
        for t in range(module.lo, module.hi + 1):
            d = module.dims[t]
            if not d:
                continue
            if module.sigma is None:
                summands.extend(Summand.free(t) for _ in range(d))
            else:
                plus = linalg.eigenspace(module.sigma[t], 1).cols
                summands.extend(Summand.free(t, 0) for _ in range(plus))
                summands.extend(Summand.free(t, 1) for _ in range(d - plus))
        return NormalForm(summands)

    wide = module.widen(module.lo - s, module.hi + s)
    for residue in range(s):
        positions = [t for t in range(wide.lo, wide.hi + 1) if t % s == residue]
        if not positions:
            continue
        top = positions[-1]
        parts = [(1, None)] if wide.sigma is None else [(1, 1), (-1, 1)]
        for eps, _ in parts:
            def sign_at(t):
                return eps * chi ** (((top - t) // s) % 2) if wide.sigma is not None else 1

            bases = {}
            for t in positions:
                if wide.sigma is None:
                    bases[t] = linalg.eye(wide.dim(t))
                else:
                    bases[t] = linalg.eigenspace(wide.sigma_at(t), sign_at(t))
            ranks: Dict[Tuple[int, int], int] = {}
            for i in positions:
                current = bases[i]
                for j in reversed([p for p in positions if p <= i]):
                    if j < i:
                        current = wide.gen_at(j + s) * current
                    ranks[(i, j)] = linalg.rank(current) if current.cols and current.rows else 0

            def r(i, j):
                return ranks.get((i, j), 0)

            for i in positions:
                for j in positions:
                    if j > i:
                        continue
                    n = r(i, j) - r(i + s, j) - r(i, j - s) + r(i + s, j - s)
                    if n <= 0:
                        continue
                    top_inf = i == positions[-1]
                    bottom_inf = j == positions[0]
                    for _ in range(n):
                        if top_inf and bottom_inf:
                            a0 = 0 if residue == 0 else residue - s
                            summands.append(Summand.laurent(a0, 0 if sign_at(a0) == 1 else 1))
                        elif top_inf:
                            summands.append(Summand.divisible(j, 0 if sign_at(j) == 1 else 1))
                        elif bottom_inf:
                            summands.append(Summand.free(i, 0 if sign_at(i) == 1 else 1))
                        else:
                            summands.append(Summand.torsion(i, (i - j) // s + 1, 0 if sign_at(i) == 1 else 1))
    return NormalForm(summands)


class ModuleMap:
    """차수 k 가군 사상 (환 사상 위, 생성원 지수 = 원천 step / 목표 step)"""

    def __init__(self, source: GradedModule, target: GradedModule, mats: Dict[int, Matrix], degree: int = 0):
        self.source = source
        self.target = target
        self.degree = degree
        self.mats = {}
        for t in range(source.lo, source.hi + 1):
            m = mats.get(t)
            if m is None:
                m = linalg.zeros(target.dim(t + degree), source.dim(t))
            if m.shape != (target.dim(t + degree), source.dim(t)):
                raise ModuleError(f"사상 행렬 크기 오류 (차수 {t}): {m.shape}")
            self.mats[t] = m

    @property
    def exponent(self) -> int:
        s_src, s_tgt = self.source.step, self.target.step
        if s_src == 0 or s_tgt == 0:
            return 0
        return s_src // s_tgt

    def matrix(self, t: int) -> Matrix:
        src, tgt, k = self.source, self.target, self.degree
        if src.lo <= t <= src.hi:
            return self.mats[t]
        if src.step == 0:
            return linalg.zeros(tgt.dim(t + k), 0)
        rho, _ = src.rep(t)
        if tgt.step == 0:
            return linalg.zeros(0, src.dim(t))
        if t < src.lo:
            return tgt.path(rho + k, t + k) * self.mats[rho]
        g = tgt.path(t + k, rho + k)
        if g.rows != g.cols or linalg.rank(g) != g.rows:
            raise ModuleError(f"창 위쪽 확장 불가: 목표 생성원이 가역이 아님 (차수 {t + k})")
        return linalg.solve(g, self.mats[rho]) if g.rows else linalg.zeros(0, src.dim(t))

    def widen(self, lo: int, hi: int) -> 'ModuleMap':
        src = self.source.widen(lo, hi)
        tgt = self.target.widen(src.lo + self.degree, src.hi + self.degree)
        return ModuleMap(src, tgt, {t: self.matrix(t) for t in range(src.lo, src.hi + 1)}, self.degree)

    def compose(self, other: 'ModuleMap') -> 'ModuleMap':
        """self 다음 other"""
        k = self.degree
        mats = {t: other.matrix(t + k) * self.matrix(t) for t in range(self.source.lo, self.source.hi + 1)}
        return ModuleMap(self.source, other.target, mats, k + other.degree)

    def add(self, other: 'ModuleMap', coeff=1) -> 'ModuleMap':
        mats = {t: self.matrix(t) + coeff * other.matrix(t) for t in range(self.source.lo, self.source.hi + 1)}
        return ModuleMap(self.source, self.target, mats, self.degree)

    def scale(self, coeff) -> 'ModuleMap':
        return ModuleMap(self.source, self.target, {t: m * coeff for t, m in self.mats.items()}, self.degree)

    def is_injective(self) -> bool:
        return all(m.cols == 0 or linalg.rank(m) == m.cols for m in self.mats.values())

    def is_surjective(self) -> bool:
        k = self.degree
        return all(linalg.rank(self.matrix(t)) == self.target.dim(t + k)
                   for t in range(self.source.lo, self.source.hi + 1))

    def failure_degree(self) -> Optional[int]:
        """동형이 아닌 첫 차수 (동형이면 None)"""
        for t in range(self.source.lo, self.source.hi + 1):
            m = self.matrix(t)
            if m.rows != m.cols or linalg.rank(m) != m.rows:
                return t
        return None

    def is_iso(self) -> bool:
        return self.failure_degree() is None

    def is_zero(self) -> bool:
        return all(linalg.is_zero(m) for m in self.mats.values())

    def check_module_map(self) -> Optional[int]:
        """생성원 및 대합과의 가환성 검사, 위반 차수 반환"""
        src, tgt, k = self.source, self.target, self.degree
        r = self.exponent
        for t in range(src.lo, src.hi + 1):
            if src.step and r:
                left = self.matrix(t - src.step) * src.gen_at(t)
                right = tgt.path(t + k, t + k - src.step) * self.matrix(t)
                if left != right:
                    return t
            if src.sigma is not None and tgt.sigma is not None:
                if tgt.sigma_at(t + k) * self.matrix(t) != self.matrix(t) * src.sigma_at(t):
                    return t
        return None

    def __repr__(self):
        return f"ModuleMap({self.source.ring.label} → {self.target.ring.label}, deg {self.degree})"
