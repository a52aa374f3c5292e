"""
ToralKit 가군 연산
기저 변환(텐서), 고정점, 핵/여핵/상, 직합, Hom 공간, 정규성 판정

모든 연산은 창 표현 위의 차수별 정확 선형대수로 계산한다.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix

from ..core.errors import ModuleError, UnsupportedError
from ..core.log import log
from . import linalg
from .graded_module import GradedModule, ModuleMap, NormalForm
from .polynomial import GradedRing, RingMap


def fixed_ring(ring: GradedRing) -> GradedRing:
    """c ↦ -c 의 불변식 환 (ℚ[c] → ℚ[d], d = c²)"""
    if ring.rank != 1:
        raise ModuleError(f"고정 환은 랭크 1에서만: {ring.label}")
    name = 'd' if ring.symbol == 'c' else f"{ring.symbol}2"
    return GradedRing((name,), (2 * ring.step,), laurent=ring.laurent)


def localized_ring(ring: GradedRing) -> GradedRing:
    if ring.rank != 1:
        raise ModuleError(f"랭크 1 환만 로랑 환으로: {ring.label}")
    return GradedRing(ring.names, ring.codegrees, laurent=True)


class BaseChange:
    """환 사상 R → S 를 따른 S ⊗_R M

    기저 슬롯 (a, u): c^a ⊗ x, x ∈ M_u, 차수 u - s_S·a.
      finite:   a ∈ [0, r), u = t + s_S·a  (S가 R 위 자유, 지수 r)
      localize: u는 M의 깊은 띠 [lo - s_R, lo - 1]
      field:    u는 M의 받침 (ℚ → 로랑 환)
    """

    def __init__(self, module: GradedModule, ring_map: RingMap,
                 equivariant: Optional[bool] = None, chi: Optional[int] = None):
        if module.ring != ring_map.source:
            raise ModuleError(f"환 불일치: 가군은 {module.ring.label}, 사상은 {ring_map.source.label}")
        self.module = module
        self.ring_map = ring_map
        self.kind = ring_map.kind
        self.target_ring = ring_map.target
        self.r = ring_map.exponent
        self.equivariant = module.equivariant if equivariant is None else equivariant
        self.chi = module.chi if chi is None else chi

        if self.kind == 'identity':
            self.result = module if self.equivariant == module.equivariant else \
                module.with_sigma(_sigma_or_identity(module) if self.equivariant else None, self.chi)
            return
        if self.kind not in ('finite', 'localize', 'field'):
            raise UnsupportedError(f"지원하지 않는 기저 변환: {ring_map}")

        lo, hi = module.lo, module.hi
        s_t = self.target_ring.step
        dims = {t: self.dim(t) for t in range(lo, hi + 1)}
        gen = {}
        for t in range(lo + s_t, hi + 1):
            columns = []
            for a, u in self.slots(t):
                for i in range(module.dim(u)):
                    columns.append(self.coords(a + 1, u, _unit(module.dim(u), i), t - s_t))
            gen[t] = linalg.hstack(dims[t - s_t], columns)
        sigma = None
        if self.equivariant:
            sigma = {}
            for t in range(lo, hi + 1):
                blocks = []
                for a, u in self.slots(t):
                    s_m = module.sigma_at(u) if module.sigma is not None else linalg.eye(module.dim(u))
                    blocks.append(s_m * (self.chi ** (a % 2)))
                sigma[t] = linalg.block_diag(blocks)
        self.result = GradedModule(self.target_ring, lo, hi, dims, gen, sigma, self.chi)

    def slots(self, t: int) -> List[Tuple[int, int]]:
        module = self.module
        s_t = self.target_ring.step
        if self.kind == 'finite':
            return [(a, t + s_t * a) for a in range(self.r)]
        if self.kind == 'localize':
            s = module.step
            return [((u - t) // s_t, u) for u in range(module.lo - s, module.lo) if (u - t) % s_t == 0]
        return [((u - t) // s_t, u) for u in range(module.lo, module.hi + 1)
                if module.dim(u) and (u - t) % s_t == 0]

    def dim(self, t: int) -> int:
        return sum(self.module.dim(u) for _, u in self.slots(t))

    def normalize(self, a: int, u: int, vec: Matrix) -> Tuple[int, int, Matrix]:
        module = self.module
        if self.kind == 'finite':
            k = a // self.r
            u2 = u - module.step * k
            return a - self.r * k, u2, module.transport(vec, u, u2)
        if self.kind == 'localize':
            s = module.step
            base = module.lo - s
            u2 = base + (u - base) % s
            k = (u - u2) // s
            return a - self.r * k, u2, module.transport(vec, u, u2)
        return a, u, vec

    def coords(self, a: int, u: int, vec: Matrix, t: int) -> Matrix:
        """원소 c^a ⊗ vec (vec ∈ M_u)의 차수 t 좌표"""
        a, u, vec = self.normalize(a, u, vec)
        if vec.rows == 0 or vec.cols == 0:
            return linalg.zeros(self.dim(t), vec.cols)
        offset = 0
        for slot in self.slots(t):
            if slot == (a, u):
                column = linalg.zeros(self.dim(t), vec.cols)
                column[offset:offset + vec.rows, :] = vec
                return column
            offset += self.module.dim(slot[1])
        if linalg.is_zero(vec):
            return linalg.zeros(self.dim(t), vec.cols)
        raise ModuleError(f"기저 변환 슬롯 없음: (a={a}, u={u}) 차수 {t}")

    def natural_map(self) -> ModuleMap:
        """x ↦ 1 ⊗ x"""
        module = self.module
        if self.kind == 'identity':
            return ModuleMap(module, self.result, {t: linalg.eye(module.dims[t]) for t in module.dims})
        mats = {t: self.coords(0, t, linalg.eye(module.dim(t)), t) for t in range(module.lo, module.hi + 1)}
        return ModuleMap(module, self.result, mats)

    def extend_map(self, f: ModuleMap) -> ModuleMap:
        """R-선형 f: M → N 을 S-선형 S ⊗ M → N 으로 확장"""
        if f.source is not self.module and f.source.ring != self.module.ring:
            raise ModuleError("확장할 사상의 원천이 기저 변환 가군과 다름")
        target, k = f.target, f.degree
        if self.kind == 'identity':
            return ModuleMap(self.result, target, {t: f.matrix(t) for t in range(self.result.lo, self.result.hi + 1)}, k)
        mats = {}
        for t in range(self.result.lo, self.result.hi + 1):
            blocks = [target.transport(f.matrix(u), u + k, t + k) for _, u in self.slots(t)]
            mats[t] = linalg.hstack(target.dim(t + k), blocks)
        return ModuleMap(self.result, target, mats, k)

    def map_to(self, other: 'BaseChange', g: ModuleMap) -> ModuleMap:
        """g: M → M' 이 유도하는 S ⊗ M → S ⊗ M'"""
        k = g.degree
        mats = {}
        for t in range(self.result.lo, self.result.hi + 1):
            blocks = [other.coords(a, u + k, g.matrix(u), t + k) for a, u in self.slots(t)]
            mats[t] = linalg.hstack(other.dim(t + k), blocks)
        return ModuleMap(self.result, other.result, mats, k)


def _unit(n: int, i: int) -> Matrix:
    e = linalg.zeros(n, 1)
    e[i, 0] = 1
    return e


def _sigma_or_identity(module: GradedModule) -> Dict[int, Matrix]:
    if module.sigma is not None:
        return module.sigma
    return {t: linalg.eye(d) for t, d in module.dims.items()}


def tensor_over(ring_map: RingMap, module: GradedModule) -> GradedModule:
    return BaseChange(module, ring_map).result


def fixed_points(module: GradedModule, acting: bool = True) -> Tuple[GradedModule, ModuleMap]:
    """위수 2 작용의 고정점과 포함 사상

    환 지표가 -1이면 고정점은 c²으로 생성되는 환 위 가군이 된다.
    """
    if not acting:
        return module, module.identity_map()
    if module.sigma is None:
        raise ModuleError("고정점을 구할 군 작용 데이터가 없음")
    s = module.step
    if s == 0 or module.chi == 1:
        bases = {t: linalg.eigenspace(module.sigma[t], 1) for t in range(module.lo, module.hi + 1)}
        dims = {t: b.cols for t, b in bases.items()}
        gen = {t: linalg.solve(bases[t - s], module.gen_at(t) * bases[t])
               for t in range(module.lo + s, module.hi + 1)} if s else None
        fixed = GradedModule(module.ring, module.lo, module.hi, dims, gen, None, 1)
        return fixed, ModuleMap(fixed, module, bases)

    wide = module.widen(module.lo - s, module.hi + s)
    ring = fixed_ring(module.ring)
    bases = {t: linalg.eigenspace(wide.sigma[t], 1) for t in range(wide.lo, wide.hi + 1)}
    dims = {t: b.cols for t, b in bases.items()}
    gen = {t: linalg.solve(bases[t - 2 * s], wide.gen_at(t - s) * wide.gen_at(t) * bases[t])
           for t in range(wide.lo + 2 * s, wide.hi + 1)}
    fixed = GradedModule(ring, wide.lo, wide.hi, dims, gen, None, 1)
    return fixed, ModuleMap(fixed, wide, bases)


def _aligned(f: ModuleMap) -> ModuleMap:
    """원천 창이 목표 창(차수 이동 반영)을 한 걸음 넘게 덮도록 확장"""
    x, y, k = f.source, f.target, f.degree
    s = max(x.step, y.step)
    return f.widen(min(x.lo, y.lo - k) - s, max(x.hi, y.hi - k) + s)


def kernel(f: ModuleMap) -> Tuple[GradedModule, ModuleMap]:
    f = _aligned(f)
    x = f.source
    s = x.step
    bases = {t: linalg.nullspace(f.mats[t]) for t in range(x.lo, x.hi + 1)}
    dims = {t: b.cols for t, b in bases.items()}
    gen = {t: linalg.solve(bases[t - s], x.gen_at(t) * bases[t]) for t in range(x.lo + s, x.hi + 1)} if s else None
    sigma = {t: linalg.solve(bases[t], x.sigma[t] * bases[t]) for t in bases} if x.sigma is not None else None
    k = GradedModule(x.ring, x.lo, x.hi, dims, gen, sigma, x.chi)
    return k, ModuleMap(k, x, bases)


def image(f: ModuleMap) -> Tuple[GradedModule, ModuleMap]:
    f = _aligned(f)
    y, d = f.target, f.degree
    s = y.step
    bases = {t: linalg.column_space(f.matrix(t - d)) for t in range(y.lo, y.hi + 1)}
    dims = {t: b.cols for t, b in bases.items()}
    gen = {t: linalg.solve(bases[t - s], y.gen_at(t) * bases[t]) for t in range(y.lo + s, y.hi + 1)} if s else None
    sigma = {t: linalg.solve(bases[t], y.sigma[t] * bases[t]) for t in bases} if y.sigma is not None else None
    im = GradedModule(y.ring, y.lo, y.hi, dims, gen, sigma, y.chi)
    return im, ModuleMap(im, y, bases)


def cokernel(f: ModuleMap) -> Tuple[GradedModule, ModuleMap]:
    f = _aligned(f)
    y, d = f.target, f.degree
    s = y.step
    bases, proj = {}, {}
    for t in range(y.lo, y.hi + 1):
        n = y.dim(t)
        img = linalg.column_space(f.matrix(t - d))
        comp = linalg.complement(img, n)
        full = img.row_join(comp) if n else linalg.zeros(0, 0)
        proj[t] = linalg.inverse(full)[img.cols:, :] if n else linalg.zeros(0, 0)
        bases[t] = comp
    dims = {t: b.cols for t, b in bases.items()}
    gen = {t: proj[t - s] * y.gen_at(t) * bases[t] for t in range(y.lo + s, y.hi + 1)} if s else None
    sigma = {t: proj[t] * y.sigma[t] * bases[t] for t in bases} if y.sigma is not None else None
    c = GradedModule(y.ring, y.lo, y.hi, dims, gen, sigma, y.chi)
    return c, ModuleMap(y, c, proj)


def direct_sum(modules: Sequence[GradedModule]) -> Tuple[GradedModule, List[ModuleMap], List[ModuleMap]]:
    """직합과 포함/사영 사상"""
    if not modules:
        raise ModuleError("빈 직합")
    ring = modules[0].ring
    equivariant = modules[0].equivariant
    for m in modules:
        if m.ring != ring:
            raise ModuleError(f"직합의 환 불일치: {ring.label} / {m.ring.label}")
        if m.equivariant != equivariant:
            raise ModuleError("직합 성분의 군 작용 유무가 다름")
    chi = modules[0].chi
    lo = min(m.lo for m in modules)
    hi = max(m.hi for m in modules)
    wide = [m.widen(lo, hi) for m in modules]
    s = ring.step
    dims = {t: sum(m.dim(t) for m in wide) for t in range(lo, hi + 1)}
    gen = {t: linalg.block_diag([m.gen_at(t) for m in wide]) for t in range(lo + s, hi + 1)} if s else None
    sigma = {t: linalg.block_diag([m.sigma_at(t) for m in wide]) for t in dims} if equivariant else None
    total = GradedModule(ring, lo, hi, dims, gen, sigma, chi)
    inclusions, projections = [], []
    offsets = {t: 0 for t in dims}
    for m in wide:
        inc, proj = {}, {}
        for t in dims:
            d = m.dim(t)
            e = linalg.zeros(dims[t], d)
            e[offsets[t]:offsets[t] + d, :] = linalg.eye(d)
            inc[t] = e
            proj[t] = e.T
            offsets[t] += d
        inclusions.append(ModuleMap(m, total, inc))
        projections.append(ModuleMap(total, m, proj))
    return total, inclusions, projections


def pushout_extension(inclusion: ModuleMap, f: ModuleMap) -> Tuple[GradedModule, ModuleMap]:
    """
    단사 ι: A → A' 를 f: A → B 로 밀어낸 확장 E = (A' ⊕ B) / A
    0 → B → E → A'/A → 0 이 완전하고, (E, B → E) 를 반환한다
    """
    if inclusion.degree or f.degree:
        raise ModuleError("확장은 차수 0 사상에서만 만든다")
    if inclusion.source.ring != f.source.ring:
        raise ModuleError("두 사상의 정의역 환이 다르다")
    lo = min(inclusion.source.lo, f.source.lo)
    hi = max(inclusion.source.hi, f.source.hi)
    inclusion, f = inclusion.widen(lo, hi), f.widen(lo, hi)
    if not inclusion.is_injective():
        raise ModuleError("밀어낼 사상이 단사가 아니다")
    total, inclusions, _ = direct_sum([inclusion.target, f.target])
    diagonal = inclusion.compose(inclusions[0]).add(f.compose(inclusions[1]), -1)
    extension, quotient = cokernel(diagonal)
    log("환", f"밀어내기 확장: 창 [{extension.lo}, {extension.hi}], 총 차원 {extension.total_dim()}", level=2)
    return extension, inclusions[1].compose(quotient)


def shift(module: GradedModule, a: int) -> GradedModule:
    """Σ^a: 차수를 a만큼 올림"""
    dims = {t + a: d for t, d in module.dims.items()}
    gen = {t + a: m for t, m in module.gen.items()}
    sigma = {t + a: m for t, m in module.sigma.items()} if module.sigma is not None else None
    shifted = GradedModule(module.ring, module.lo + a, module.hi + a, dims, gen, sigma, module.chi)
    if module._normal_form is not None:
        shifted._normal_form = NormalForm([s.shifted(a) for s in module._normal_form.summands])
    return shifted


def twist(module: GradedModule) -> GradedModule:
    """군 작용에 부호 지표를 곱함"""
    if module.sigma is None:
        raise ModuleError("군 작용이 없는 가군은 꼬을 수 없음")
    return module.with_sigma({t: -m for t, m in module.sigma.items()}, module.chi)


def torsion_submodule(module: GradedModule) -> Tuple[GradedModule, ModuleMap]:
    """Γ M = ker(M → M[c⁻¹])"""
    if module.step == 0 or module.ring.laurent:
        zero = GradedModule.zero(module.ring, module.lo, module.hi, module.equivariant, module.chi)
        return zero, ModuleMap(zero, module, {})
    natural = BaseChange(module, RingMap(module.ring, localized_ring(module.ring))).natural_map()
    return kernel(natural)


def socle(module: GradedModule) -> Tuple[GradedModule, ModuleMap]:
    """생성원이 죽이는 원소들"""
    s = module.step
    if s == 0:
        return module, module.identity_map()
    bases = {t: linalg.nullspace(module.gen_at(t)) for t in range(module.lo, module.hi + 1)}
    dims = {t: b.cols for t, b in bases.items()}
    sigma = None
    if module.sigma is not None:
        sigma = {t: linalg.solve(bases[t], module.sigma[t] * bases[t]) for t in bases}
    soc = GradedModule(module.ring, module.lo, module.hi, dims, None, sigma, module.chi)
    return soc, ModuleMap(soc, module, bases)


def is_divisible(module: GradedModule) -> bool:
    s = module.step
    return s == 0 or all(linalg.rank(module.gen_at(t)) == module.dim(t - s)
                         for t in range(module.lo, module.hi + 1))


class HomSpace:
    """차수 k 가군 사상들의 ℚ-벡터 공간 (확장된 창 위의 행렬로 표현)"""

    def __init__(self, source: GradedModule, target: GradedModule, degree: int,
                 basis: List[Dict[int, Matrix]]):
        self.source = source
        self.target = target
        self.degree = degree
        self.basis = basis
        self.degrees = [t for t in range(source.lo, source.hi + 1)
                        if target.lo <= t + degree <= target.hi]
        self._matrix = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectorize(self, mats: Dict[int, Matrix]) -> Matrix:
        values = []
        for t in self.degrees:
            m = mats.get(t)
            if m is None:
                values.extend([0] * (self.target.dim(t + self.degree) * self.source.dim(t)))
            else:
                values.extend(linalg.flatten(m))
        return Matrix(len(values), 1, values)

    def basis_matrix(self) -> Matrix:
        if self._matrix is None:
            columns = [self.vectorize(b) for b in self.basis]
            n = sum(self.target.dim(t + self.degree) * self.source.dim(t) for t in self.degrees)
            self._matrix = linalg.hstack(n, columns)
        return self._matrix

    def coordinates(self, mats: Dict[int, Matrix]) -> Matrix:
        """기저에 대한 좌표, 공간 밖이면 ModuleError"""
        return linalg.solve(self.basis_matrix(), self.vectorize(mats))

    def combination(self, coeffs: Sequence) -> ModuleMap:
        mats = {}
        for t in range(self.source.lo, self.source.hi + 1):
            m = linalg.zeros(self.target.dim(t + self.degree), self.source.dim(t))
            for c, b in zip(coeffs, self.basis):
                if c != 0 and t in b:
                    m += c * b[t]
            mats[t] = m
        return ModuleMap(self.source, self.target, mats, self.degree)

    def as_map(self, index: int) -> ModuleMap:
        coeffs = [0] * self.dim
        coeffs[index] = 1
        return self.combination(coeffs)

    def to_dict(self) -> Dict:
        return {'degree': self.degree, 'dim': self.dim,
                'window': [self.source.lo, self.source.hi]}


def hom_space(source: GradedModule, target: GradedModule, degree: int = 0,
              window: Optional[Tuple[int, int]] = None, equivariant: bool = True) -> HomSpace:
    """Hom(X, Y)_k: 생성원과 (있으면) 군 작용과 가환인 차수 k 사상

    충분히 넓힌 창에서 잉여류 사슬마다 위에서 아래로 매개변수를 줄여 나간다.
    """
    s = source.step
    if target.step != s:
        raise ModuleError(f"Hom의 환 불일치: {source.ring.label} / {target.ring.label}")
    if equivariant and source.equivariant != target.equivariant:
        raise ModuleError("Hom 양쪽의 군 작용 유무가 다름")
    use_sigma = equivariant and source.equivariant
    if window is None:
        pad = abs(degree) + 2 * s + 2
        lo = min(source.lo, target.lo) - pad
        hi = max(source.hi, target.hi) + pad
    else:
        lo, hi = window
    x = source.widen(lo, hi)
    y = target.widen(lo, hi)
    k = degree
    degrees = [t for t in range(lo, hi + 1) if lo <= t + k <= hi]
    chains: Dict[int, List[int]] = {}
    for t in degrees:
        chains.setdefault(t % s if s else t, []).append(t)

    basis: List[Dict[int, Matrix]] = []
    for key in sorted(chains):
        chain = sorted(chains[key], reverse=True)
        params: Dict[int, Matrix] = {}
        p = 0
        prev = None
        for t in chain:
            n_y, n_x = y.dim(t + k), x.dim(t)
            n = n_y * n_x
            for u in params:
                params[u] = params[u].row_join(linalg.zeros(params[u].rows, n))
            params[t] = linalg.zeros(n, p).row_join(linalg.eye(n))
            p += n
            rows = []
            if prev is not None:
                left = linalg.kron(y.gen_at(prev + k), linalg.eye(x.dim(prev))) * params[prev]
                right = linalg.kron(linalg.eye(n_y), x.gen_at(prev).T) * params[t]
                rows.append(left - right)
            if use_sigma:
                op = linalg.kron(y.sigma_at(t + k), linalg.eye(n_x)) - linalg.kron(linalg.eye(n_y), x.sigma_at(t).T)
                rows.append(op * params[t])
            constraint = linalg.vstack(p, rows)
            if constraint.rows and p:
                null = linalg.nullspace(constraint)
                params = {u: m * null for u, m in params.items()}
                p = null.cols
            prev = t
        for j in range(p):
            element = {}
            for t in chain:
                col = params[t][:, j]
                element[t] = Matrix(y.dim(t + k), x.dim(t), list(col))
            basis.append(element)
    log("환", f"Hom 차수 {k}: 차원 {len(basis)} (창 [{lo}, {hi}])", level=2)
    return HomSpace(x.restrict(degrees[0], degrees[-1]), y, k, basis)


class NormalityReport:
    """정규성 판정 결과"""

    def __init__(self, holds: bool, witness: Optional[int], dims: Dict[int, Tuple[int, int]]):
        self.holds = holds
        self.witness = witness
        self.dims = dims

    def __bool__(self):
        return self.holds

    def to_dict(self) -> Dict:
        data = {'holds': self.holds, 'witness_degree': self.witness}
        if self.witness is not None:
            data['dims'] = list(self.dims.get(self.witness, (0, 0)))
        return data


def is_normal_module(module: GradedModule) -> NormalityReport:
    """ν: R ⊗_{R^W} M^W → M 이 창 위에서 동형인지"""
    fixed, inclusion = fixed_points(module)
    target = inclusion.target
    if fixed.ring == target.ring:
        nu = inclusion
    else:
        bc = BaseChange(fixed, RingMap(fixed.ring, target.ring, fixed.step // target.step), equivariant=False)
        nu = bc.extend_map(inclusion)
    dims = {}
    witness = None
    for t in range(module.lo, module.hi + 1):
        m = nu.matrix(t)
        dims[t] = (m.cols, m.rows)
        if witness is None and (m.rows != m.cols or linalg.rank(m) != m.rows):
            witness = t
    return NormalityReport(witness is None, witness, dims)


def inverse_map(f: ModuleMap) -> ModuleMap:
    """차수별 역행렬 (동형이 아니면 ModuleError)"""
    if f.degree:
        raise ModuleError("차수 0 사상만 역을 구함")
    x, y = f.source, f.target
    if (y.lo, y.hi) != (x.lo, x.hi):
        f = f.widen(min(x.lo, y.lo), max(x.hi, y.hi))
        x, y = f.source, f.target
    mats = {t: linalg.inverse(f.matrix(t)) for t in range(y.lo, y.hi + 1)}
    return ModuleMap(y, x, mats)


def restrict_scalars(module: GradedModule, ring: GradedRing) -> GradedModule:
    """S-가군을 R → S (생성원 ↦ 생성원^r) 을 따라 R-가군으로"""
    s = module.step
    if ring.rank == 0:
        return GradedModule(ring, module.lo, module.hi, module.dims, None, module.sigma, 1)
    if s == 0 or ring.step % s:
        raise ModuleError(f"스칼라 제한 불가: {module.ring.label} → {ring.label}")
    wide = module.widen(module.lo - ring.step, module.hi)
    gen = {t: wide.path(t, t - ring.step) for t in range(wide.lo + ring.step, wide.hi + 1)}
    chi = module.chi ** (ring.step // s)
    return GradedModule(ring, wide.lo, wide.hi, wide.dims, gen, wide.sigma, chi)
